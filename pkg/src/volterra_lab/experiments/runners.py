"""Experiment drivers: orbit export, property sweeps, distribution checks,
six-point certificates, and the desk-scale winner-mass demonstration.

Every driver takes a RunConfig, writes its report files under the config's
output directory, and returns the report dictionary. Identical configs
produce byte-identical files: no timestamps, no floats outside the SVG
presentation layer, and all randomness flows from the config seed.
"""

from __future__ import annotations

import json
import os
import random
from typing import Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq, mpz

from ..arith.interval import diverged, le
from ..arith.rational import decimal_str, rat, rat_to_json
from ..arith.simplex import SimplexPoint, clear_denominators, point_to_interval, uniform
from ..arith.verdict import EscalationPolicy, Verdict
from ..errors import (
    BadConfig,
    BudgetExceeded,
    CapExceeded,
    EmptyPart,
    ExactBlowup,
    UndecidedAtCap,
)
from .. import qso
from ..qso import operator_of, root_distribution
from ..sixpoints import (
    amplified_to_json,
    amplify_triple,
    certificate_to_json,
    chain_to_json,
    coverage_scan,
    d0_search,
    empirical_depth,
    largest_remainder,
    points_to_tournaments,
    seed_anchor,
    seed_triple,
    symbolic_parameter_chain,
    triple_to_json,
)
from ..spiral import (
    EXACT_STEP_CAP,
    close_corner,
    close_side,
    decay_check,
    first_vertex_hit,
    growth_bounds_check,
    in_M,
    phi,
    raw_v_step,
    rotate,
    v_iterate,
    v_step,
    vertex_hit_bound,
)
from ..tournament import Tournament, build, build_tripartite, three_cycle
from ..votetree import mc_winner_distribution

DEFAULT_DIGITS = 12


# -- shared plumbing ----------------------------------------------------


def _write_text(out_dir: str, name: str, text: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, name), "w", encoding="utf-8") as fh:
        fh.write(text)
    return name


def _write_json(out_dir: str, name: str, obj: dict) -> str:
    return _write_text(out_dir, name, json.dumps(obj, sort_keys=True, indent=1) + "\n")


def _dec_directed(q, digits: int, mode: str) -> str:
    """Fixed-point decimal rounded toward -inf ('floor') or +inf ('ceil')."""
    q = mpq(q)
    neg = q < 0
    scaled = abs(q) * (10 ** digits)
    i, r = divmod(scaled.numerator, scaled.denominator)
    if r and ((mode == "ceil") != neg):
        i += 1
    s = str(i).rjust(digits + 1, "0")
    txt = s[:-digits] + "." + s[-digits:] if digits else str(i)
    return ("-" if neg else "") + txt


def _mid(iv) -> mpq:
    lo, hi = iv.as_bounds()
    return (lo + hi) / 2


def _scalar_decimal(v, digits: int = DEFAULT_DIGITS) -> str:
    if isinstance(v, mpq):
        return decimal_str(v, digits)
    return decimal_str(_mid(v), digits)


# -- orbit export -------------------------------------------------------


def _orbit_svg(rows: List[Tuple[float, float, float]]) -> str:
    w, h = 640, 600
    vx, vy, vz = (320.0, 44.0), (44.0, 532.0), (596.0, 532.0)

    def proj(x: float, y: float, z: float) -> Tuple[float, float]:
        return (x * vx[0] + y * vy[0] + z * vz[0],
                x * vx[1] + y * vy[1] + z * vz[1])

    pts = " ".join("%.2f,%.2f" % proj(*r) for r in rows)
    tri = "%.2f,%.2f %.2f,%.2f %.2f,%.2f" % (vx + vy + vz)
    sx, sy = proj(*rows[0])
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">\n'
        f'<rect width="{w}" height="{h}" fill="white"/>\n'
        f'<polygon points="{tri}" fill="none" stroke="#999" stroke-width="1"/>\n'
        f'<polyline points="{pts}" fill="none" stroke="#20639b" stroke-width="1"/>\n'
        f'<circle cx="%.2f" cy="%.2f" r="3" fill="#ed553b"/>\n' % (sx, sy) +
        '<text x="320" y="32" text-anchor="middle" font-size="14">x</text>\n'
        '<text x="28" y="550" font-size="14">y</text>\n'
        '<text x="588" y="550" font-size="14">z</text>\n'
        '</svg>\n'
    )


def cmd_orbit(cfg) -> dict:
    """Iterate a start point and export the trajectory as CSV plus SVG.

    On the exact backend denominators square every step, so a bit budget
    guards the scan; the interval backend instead escalates precision until
    the potential column is certified non-increasing row to row.
    """
    start = cfg.get_point("start", ("2/5", "7/20", "1/4"))
    steps = cfg.get_int("steps", 200)
    if steps < 0:
        raise BadConfig("steps must be nonnegative")
    want_svg = cfg.get_bool("svg", True)
    digits = cfg.get_int("digits", DEFAULT_DIGITS)
    status = "pass"
    precision_used: Optional[int] = None
    violations = 0

    if cfg.backend == "exact":
        bit_budget = cfg.get_int("exact_bits", 1 << 20)
        rows = [start]
        for k in range(steps):
            nxt = v_step(rows[-1])
            if max(int(c.denominator).bit_length() for c in nxt.coords) > bit_budget:
                raise ExactBlowup(
                    f"exact orbit passed {bit_budget} denominator bits at step "
                    f"{k + 1}; rerun with backend = interval")
            rows.append(nxt)
        phis = [phi(r) for r in rows]
        violations = sum(1 for k in range(steps) if phis[k + 1] > phis[k])
        if violations:
            status = "violation"
    else:
        policy = cfg.policy()
        rows_by_prec = None
        for prec in policy.ladder():
            q = point_to_interval(start, prec)
            rows = [q]
            for _ in range(steps):
                nxt = v_step(rows[-1])
                rows.append(nxt)
                if any(diverged(c) for c in nxt.coords):
                    break
            if len(rows) < steps + 1:  # precision exhausted mid-orbit
                continue
            phis = [phi(r) for r in rows]
            verdicts = [le(phis[k + 1], phis[k]) for k in range(steps)]
            if any(v is Verdict.FALSE for v in verdicts):
                violations = sum(1 for v in verdicts if v is Verdict.FALSE)
                status = "violation"
                rows_by_prec = rows
                precision_used = prec
                break
            if all(v is Verdict.TRUE for v in verdicts):
                rows_by_prec = rows
                precision_used = prec
                break
        if rows_by_prec is None:
            status = "undecided"
            rows_by_prec = rows  # last rung, for inspection
            precision_used = policy.cap_bits
        rows = rows_by_prec
        phis = [phi(r) for r in rows]

    lines = ["step,x,y,z,phi"]
    for k, r in enumerate(rows):
        cells = [_scalar_decimal(c, digits) for c in r.coords]
        lines.append("%d,%s,%s,%s,%s" % (k, cells[0], cells[1], cells[2],
                                         _scalar_decimal(phis[k], digits)))
    files = [_write_text(cfg.out_dir, "orbit.csv", "\n".join(lines) + "\n")]
    if want_svg:
        f_rows = [tuple(float(_mid(c)) if not isinstance(c, mpq) else float(c)
                        for c in r.coords) for r in rows]
        files.append(_write_text(cfg.out_dir, "orbit.svg", _orbit_svg(f_rows)))

    report = {
        "command": "orbit",
        "backend": cfg.backend,
        "start": [str(c) for c in start.coords] if start.backend == "exact" else None,
        "steps": steps,
        "rows": len(rows),
        "phi_first": _scalar_decimal(phis[0], digits),
        "phi_last": _scalar_decimal(phis[-1], digits),
        "phi_nonincreasing_violations": violations,
        "precision_used": precision_used,
        "files": files,
        "status": status,
    }
    files.append(_write_json(cfg.out_dir, "orbit.json", report))
    return report


# -- property sweeps ----------------------------------------------------


def _rand_rat(rng: random.Random, grain: int = 1 << 16) -> mpq:
    return mpq(rng.randrange(0, grain + 1), grain)


def _rand_point(rng: random.Random) -> SimplexPoint:
    a, b, c = (rng.randrange(1, 1 << 20) for _ in range(3))
    s = a + b + c
    return SimplexPoint((mpq(a, s), mpq(b, s), mpq(c, s)))


def _rand_point_in_M(rng: random.Random, eps) -> SimplexPoint:
    while True:
        p = _rand_point(rng)
        if in_M(p, eps) is Verdict.TRUE:
            return p


def _rand_side_start(rng: random.Random, eps, eps_prime) -> SimplexPoint:
    """A point eps_prime-close to the xy side but not eps-close to the x corner."""
    while True:
        z = eps_prime * _rand_rat(rng)
        x = (1 - z) * _rand_rat(rng)
        y = 1 - z - x
        if y < 0:
            continue
        if max(1 - x, y, z) > eps:
            return SimplexPoint((x, y, z))


def _rand_corner_start(rng: random.Random, eps_prime) -> SimplexPoint:
    y = eps_prime * _rand_rat(rng) / 2
    z = eps_prime * _rand_rat(rng) / 2
    return SimplexPoint((1 - y - z, y, z))


def cmd_verify_props(cfg) -> dict:
    """Randomized sweeps of the five orbit properties, exact where possible.

    growth-bounds and potential-decay are exact pointwise inequalities;
    side-transit and corner-dwell drive short exact trajectories from
    adversarially placed starts; vertex-hit runs the certified search and
    compares against the closed-form depth bound.
    """
    rng = random.Random(cfg.seed)
    samples = cfg.get_int("samples", 10 ** 4)
    eps_grid = cfg.get_rat_list("eps_grid", ("1/20", "1/10"))
    transit_eps = cfg.get_rat("transit_eps", "1/10")
    transit_depth = cfg.get_int("transit_depth", 3)
    transit_eps_prime = cfg.get_rat("transit_eps_prime", mpq(1, 20 ** 8))
    dwell_eps = cfg.get_rat("dwell_eps", "1/10")
    dwell_depth = cfg.get_int("dwell_depth", 3)
    dwell_eps_prime = cfg.get_rat("dwell_eps_prime", "1/640")
    hit_eps = cfg.get_rat("hit_eps", "3/10")
    hit_samples = cfg.get_int("hit_samples", min(samples, 1000))
    hit_cap = cfg.get_int("hit_cap", 10 ** 4)
    policy = cfg.policy()
    sweeps = []

    bad = sum(1 for _ in range(samples) if not growth_bounds_check(_rand_point(rng)))
    sweeps.append({"name": "growth-bounds", "samples": samples,
                   "violations": bad, "undecided": 0})

    for eps in eps_grid:
        bad = 0
        for _ in range(samples):
            p = _rand_point_in_M(rng, eps)
            if not decay_check(p, eps):
                bad += 1
        sweeps.append({"name": "potential-decay", "eps": str(eps),
                       "samples": samples, "violations": bad, "undecided": 0})

    bad = 0
    for _ in range(samples):
        p = _rand_side_start(rng, transit_eps, transit_eps_prime)
        for _k in range(transit_depth):
            if close_side(p, transit_eps_prime, "xz") is Verdict.TRUE:
                bad += 1
                break
            p = v_step(p)
    sweeps.append({"name": "side-transit", "eps": str(transit_eps),
                   "depth": transit_depth, "eps_prime": str(transit_eps_prime),
                   "samples": samples, "violations": bad, "undecided": 0})

    bad = 0
    for _ in range(samples):
        p = _rand_corner_start(rng, dwell_eps_prime)
        for _k in range(dwell_depth + 1):
            if close_corner(p, dwell_eps, "x") is not Verdict.TRUE:
                bad += 1
                break
            p = v_step(p)
    sweeps.append({"name": "corner-dwell", "eps": str(dwell_eps),
                   "depth": dwell_depth, "eps_prime": str(dwell_eps_prime),
                   "samples": samples, "violations": bad, "undecided": 0})

    bound = vertex_hit_bound(hit_eps)
    bad = undecided = 0
    worst = 0
    for _ in range(hit_samples):
        p = _rand_point_in_M(rng, hit_eps)
        try:
            f, _corner = first_vertex_hit(p, hit_eps, cap=hit_cap, policy=policy)
            worst = max(worst, f)
            if f > bound.D:
                bad += 1
        except CapExceeded:
            bad += 1
        except UndecidedAtCap:
            undecided += 1
    sweeps.append({"name": "vertex-hit", "eps": str(hit_eps),
                   "bound": bound.D, "heuristic_range": bound.heuristic_range,
                   "worst_hit": worst, "samples": hit_samples,
                   "violations": bad, "undecided": undecided})

    total_bad = sum(s["violations"] for s in sweeps)
    total_open = sum(s["undecided"] for s in sweeps)
    status = "violation" if total_bad else ("undecided" if total_open else "pass")
    report = {
        "command": "verify-props",
        "seed": cfg.seed,
        "sweeps": sweeps,
        "violations": total_bad,
        "undecided": total_open,
        "status": status,
    }
    report["files"] = [_write_json(cfg.out_dir, "verify_props.json", report)]
    return report


# -- root distribution vs Monte Carlo ----------------------------------


def _tournament_from_config(cfg) -> Tournament:
    name = cfg.get_str("tournament", "three-cycle")
    if name == "three-cycle":
        return three_cycle()
    if name == "two-chain":
        return build(2, [(1, 2)])
    if name == "edges":
        n = cfg.get_int("n", 0)
        raw = cfg.get_str("edges", "")
        pairs = []
        for tok in raw.replace(",", " ").split():
            if ">" not in tok:
                raise BadConfig(f"edges: expected winner>loser tokens, got {tok!r}")
            a, b = tok.split(">", 1)
            pairs.append((int(a), int(b)))
        return build(n, pairs)
    raise BadConfig(f"unknown tournament {name!r}")


def cmd_rpt(cfg) -> dict:
    """Exact random-tree root distribution against a Monte Carlo replay."""
    t = _tournament_from_config(cfg)
    if t.n > 10:
        raise BudgetExceeded("exact root distributions are limited to n <= 10")
    d = cfg.get_int("d", 5)
    samples = cfg.get_int("samples", 10 ** 5)
    tolerance = cfg.get_rat("tolerance", "1/100")
    exact = root_distribution(t, d)
    mc = mc_winner_distribution(d, t.n, t, samples, seed=cfg.seed)
    tv = sum(abs(e - m) for e, m in zip(exact.coords, mc.coords)) / 2

    lines = ["candidate,exact,exact_decimal,mc,mc_decimal"]
    for i in range(t.n):
        lines.append("%d,%s,%s,%s,%s" % (
            i + 1, exact.coords[i], decimal_str(exact.coords[i], DEFAULT_DIGITS),
            mc.coords[i], decimal_str(mc.coords[i], DEFAULT_DIGITS)))
    files = [_write_text(cfg.out_dir, "rpt.csv", "\n".join(lines) + "\n")]

    status = "pass" if tv <= tolerance else "violation"
    report = {
        "command": "rpt",
        "n": t.n,
        "d": d,
        "samples": samples,
        "seed": cfg.seed,
        "exact": [str(c) for c in exact.coords],
        "mc": [str(c) for c in mc.coords],
        "tv_distance": str(tv),
        "tv_decimal": decimal_str(tv, 8),
        "tolerance": str(tolerance),
        "files": files,
        "status": status,
    }
    files.append(_write_json(cfg.out_dir, "rpt.json", report))
    return report


# -- six-point certificate ----------------------------------------------


def cmd_sixpoints(cfg) -> dict:
    """Seed, amplify, locate the potential threshold, and certify coverage."""
    eps = cfg.get_rat("eps", "1/5")
    window = cfg.get_int("window", 100)
    if window < 1:
        raise BadConfig("window must be at least 1")
    seed_cap = cfg.get_int("seed_cap", EXACT_STEP_CAP)
    scan_cap = cfg.get_int("scan_cap", 10 ** 4)
    d0_cap = cfg.get_int("d0_cap", 10 ** 4)
    log2_thr = cfg.get_int("d0_log2_threshold", -2048)
    explicit_thr = cfg.get_str("d0_threshold")
    coverage_target = cfg.get_rat("coverage_target", "99/100")
    policy = cfg.policy()

    triple = seed_triple(eps, cap=seed_cap, policy=policy)
    depth_eps = cfg.get_str("depth_eps")
    depth = empirical_depth(triple, eps1=rat(depth_eps) if depth_eps else None,
                            cap=scan_cap, policy=policy)
    amps = amplify_triple(triple, depth, cap=seed_cap, scan_cap=scan_cap,
                          policy=policy)
    points = [s.point for s in triple.seeds()] + [a.point for a in amps]
    closeness = [close_corner(p, eps, "x") is Verdict.TRUE for p in points]

    if explicit_thr is not None:
        d0 = d0_search(triple.a.point, threshold=rat(explicit_thr),
                       cap=d0_cap, policy=policy)
    else:
        d0 = d0_search(triple.a.point, log2_threshold=log2_thr,
                       cap=d0_cap, policy=policy)
    cert = coverage_scan(points, eps, d0 + 1, d0 + window,
                         policy=policy, d0_used=d0)

    open_entries = sum(1 for e in cert.coverage if e.verdict == "undecided")
    if not all(closeness):
        status = "violation"
    elif open_entries:
        status = "undecided"
    elif cert.covered_fraction < coverage_target:
        status = "violation"
    else:
        status = "pass"

    report = {
        "command": "sixpoints",
        "eps": rat_to_json(eps),
        "triple": triple_to_json(triple),
        "empirical_depth": depth,
        "amplified": [amplified_to_json(a) for a in amps],
        "points_close": closeness,
        "d0": d0,
        "certificate": certificate_to_json(cert),
        "covered_fraction": rat_to_json(cert.covered_fraction),
        "status": status,
    }
    chain_eps = cfg.get_str("chain_eps")
    if chain_eps is not None:
        report["chain"] = chain_to_json(
            symbolic_parameter_chain(rat(chain_eps), policy=policy))
    report["files"] = [_write_json(cfg.out_dir, "sixpoints.json", report)]
    return report


# -- desk-scale winner-mass demonstration -------------------------------


def _catalog_tournaments(delta, q: int, depth: int, need: int):
    """First few distinct admissible roundings of rotated anchor iterates.

    Scans R^k(V^m(a0)) in (m, k) order, keeps roundings with no empty part
    whose first two parts respect the delta*q cap, and dedupes on the size
    triple. The anchor's own orbit supplies x-heavy points; the rotations
    fill in the other two phases of the cycle.
    """
    a0 = seed_anchor(delta)
    bound = rat(delta) * q
    chosen: List[dict] = []
    seen = set()
    for m in range(depth + 1):
        pm = v_iterate(a0, m)
        cand = pm
        for k in range(3):
            if k > 0:
                cand = rotate(cand)
            sizes = largest_remainder(cand.coords, q)
            if min(sizes) < 1 or sizes[0] > bound or sizes[1] > bound:
                continue
            if sizes in seen:
                continue
            seen.add(sizes)
            chosen.append({"point": cand, "orbit_step": m, "rotation": k,
                           "sizes": sizes})
            if len(chosen) == need:
                return chosen
    raise CapExceeded(f"only {len(chosen)} admissible tournaments within "
                      f"orbit depth {depth}")


def _aggregation_crosscheck(starts: Sequence[SimplexPoint], grid: int,
                            depth: int) -> dict:
    """Exact agreement of the 3-part recursion with the full n-candidate one.

    Each start is rounded onto the small grid and realized as a tripartite
    tournament; both recursions are then run gcd-free over a shared
    denominator and compared as raw integers, so no normalization ever
    happens. Roundings that lose a part are reported as skipped.
    """
    entries = []
    all_ok = True
    for p in starts:
        sizes = largest_remainder(p.coords, grid)
        try:
            t, part = build_tripartite(sizes)
        except EmptyPart:
            entries.append({"sizes": list(sizes), "skipped": "empty part"})
            continue
        op = operator_of(t)
        nums, den = clear_denominators(uniform(grid))
        n3 = tuple(mpz(s) for s in sizes)
        den3 = mpz(grid)
        idx = [tuple(v - 1 for v in pp) for pp in part.parts]
        agrees = True
        for _d in range(1, depth + 1):
            nums, den = qso.raw_step(op, nums, den)
            n3, den3 = raw_v_step(n3, den3)
            if den != den3 or any(sum(nums[i] for i in ix) != n3[k]
                                  for k, ix in enumerate(idx)):
                agrees = False
                break
        entries.append({"sizes": list(sizes), "depth": depth, "agrees": agrees})
        all_ok = all_ok and agrees
    return {"grid": grid, "depth": depth, "entries": entries, "ok": all_ok}


def cmd_theorem_demo(cfg) -> dict:
    """Winner-mass demonstration on a 1/q grid.

    Builds six tripartite tournaments whose first two parts are small,
    finds the depth where the aggregated potential has collapsed, and
    certifies that beyond it some tournament keeps the winner inside its
    first part with probability at least 1 - delta.
    """
    delta = cfg.get_rat("delta", "3/10")
    q = cfg.get_int("q", 1000)
    window = cfg.get_int("window", 100)
    if window < 1:
        raise BadConfig("window must be at least 1")
    catalog_depth = cfg.get_int("catalog_depth", 12)
    log2_thr = cfg.get_int("d0_log2_threshold", -786432)
    d0_cap = cfg.get_int("d0_cap", 1500)
    grid = cfg.get_int("crosscheck_grid", 30)
    cc_depth = cfg.get_int("crosscheck_depth", EXACT_STEP_CAP)
    width_target = cfg.get_rat("width_target", mpq(1, 10 ** 10))
    fraction_target = cfg.get_rat("fraction_target", "99/100")
    digits = cfg.get_int("digits", DEFAULT_DIGITS)
    policy = cfg.policy()

    chosen = _catalog_tournaments(delta, q, catalog_depth, need=6)
    realized = points_to_tournaments([c["point"] for c in chosen], q)
    for c, (t, part) in zip(chosen, realized):
        assert part.sizes == c["sizes"]
    starts = [SimplexPoint(tuple(mpq(s, q) for s in c["sizes"])) for c in chosen]
    bound = delta * q
    part_bound_ok = all(c["sizes"][0] <= bound and c["sizes"][1] <= bound
                        for c in chosen)

    d0 = d0_search(starts[0], log2_threshold=log2_thr, cap=d0_cap, policy=policy)
    d_lo, d_hi = d0 + 1, d0 + window

    threshold = 1 - delta
    entries: Dict[int, Optional[Tuple[int, mpq, mpq]]] = {}
    pending = set(range(d_lo, d_hi + 1))
    rungs = 0
    top_bits = policy.start_bits
    for prec in policy.ladder():
        if not pending:
            break
        rungs += 1
        top_bits = prec
        orbits = [point_to_interval(s, prec) for s in starts]
        for d in range(1, d_hi + 1):
            orbits = [v_step(o) for o in orbits]
            if any(diverged(c) for o in orbits for c in o.coords):
                break  # this rung is spent; escalate
            if d < d_lo or d not in pending:
                continue
            bounds = [o.coords[0].as_bounds() for o in orbits]
            best = max(range(len(starts)), key=lambda i: (bounds[i][0], -i))
            lo, hi = bounds[best]
            if hi - lo <= width_target:
                entries[d] = (best, max(lo, mpq(0)), min(hi, mpq(1)))
                pending.discard(d)
    for d in pending:
        entries[d] = None

    per_d = []
    meets = 0
    open_entries = 0
    for d in range(d_lo, d_hi + 1):
        e = entries[d]
        if e is None:
            per_d.append({"d": d, "verdict": "undecided"})
            open_entries += 1
            continue
        best, lo, hi = e
        ok = lo >= threshold
        meets += ok
        per_d.append({
            "d": d,
            "tournament": best,
            "p_lo": _dec_directed(lo, digits, "floor"),
            "p_hi": _dec_directed(hi, digits, "ceil"),
            "meets": bool(ok),
        })
    fraction = mpq(meets, window)

    crosscheck = _aggregation_crosscheck(starts, grid, cc_depth)

    if not part_bound_ok or not crosscheck["ok"] or fraction < fraction_target:
        status = "violation"
    elif open_entries:
        status = "undecided"
    else:
        status = "pass"

    report = {
        "command": "theorem-demo",
        "n": q,
        "delta": str(delta),
        "tournaments": [{"sizes": list(c["sizes"]), "orbit_step": c["orbit_step"],
                         "rotation": c["rotation"]} for c in chosen],
        "part_bound": {"bound": str(bound), "ok": part_bound_ok},
        "d0": d0,
        "window": {"d_lo": d_lo, "d_hi": d_hi},
        "threshold": str(threshold),
        "digits": digits,
        "per_d": per_d,
        "meets": meets,
        "fraction_meeting": {"value": str(fraction),
                             "decimal": decimal_str(fraction, 4)},
        "undecided": open_entries,
        "crosscheck": crosscheck,
        "precision": {"start_bits": policy.start_bits, "cap_bits": policy.cap_bits,
                      "rungs_used": rungs, "top_bits_used": top_bits},
        "status": status,
    }
    report["files"] = [_write_json(cfg.out_dir, "theorem_demo.json", report)]
    return report
