"""Six-point pipeline: seeds near the x corner, amplified companions on the
same orbits, symbolic parameter chains, and certified coverage windows.

The goal of the construction: exhibit six exact rational points whose
forward images under the spiral map jointly keep revisiting the x corner,
so that every depth d in a scanned window has at least one eps-close
witness among the six iterates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq, mpz

from .arith import (
    EscalationPolicy,
    Rational,
    SimplexPoint,
    Verdict,
    diverged,
    floor_q,
    lt,
    point_to_interval,
    point_to_json,
    rat,
    rat_to_json,
)
from .errors import CapExceeded, UndecidedAtCap
from .spiral import (
    EXACT_STEP_CAP,
    BoundReport,
    _ExactOrbit,
    bound_report_to_json,
    close_corner,
    corner_dwell_eps,
    first_vertex_hit,
    hit_corner,
    phi,
    rotate,
    side_transit_eps,
    spiral_point,
    v_iterate,
    v_step,
    vertex_hit_bound,
)
from .tournament import Tournament, TripartitePartition, build_tripartite

POINT_NAMES = ("a", "b", "c", "A", "B", "C")

DEFAULT_SCAN_CAP = 10**4


# -- seed construction -------------------------------------------------


@dataclass(frozen=True)
class SeedPoint:
    """An x-corner-close point together with how it was built."""

    point: SimplexPoint
    base: SimplexPoint
    rotation: int
    offset: int


@dataclass(frozen=True)
class SeedTriple:
    eps: Rational
    a: SeedPoint
    b: SeedPoint
    c: SeedPoint

    def seeds(self) -> Tuple[SeedPoint, SeedPoint, SeedPoint]:
        return (self.a, self.b, self.c)

    @property
    def hit_times(self) -> Tuple[int, int, int]:
        return (self.a.offset, self.b.offset, self.c.offset)


@dataclass(frozen=True)
class AmplifiedPoint:
    """A later x-corner visit on a seed's trajectory.

    advanced is True when the two-stage forward rule (drift steps, then
    next corner visit) fit inside the exact budget; otherwise the point
    falls back to the earliest corner visit on the seed's base trajectory.
    """

    point: SimplexPoint
    source: SeedPoint
    offset: int
    advanced: bool

    @property
    def relative_steps(self) -> int:
        return self.offset - self.source.offset


def seed_anchor(eps) -> SimplexPoint:
    """Anchor (eps/2, eps/2, 1-eps); sits in M(eps) exactly when eps <= 1/3."""
    eps = rat(eps)
    if not 0 < eps <= rat(1, 3):
        raise ValueError("need 0 < eps <= 1/3")
    return spiral_point(eps / 2, eps / 2, 1 - eps)


def seed_triple(
    eps,
    cap: int = EXACT_STEP_CAP,
    policy: Optional[EscalationPolicy] = None,
) -> SeedTriple:
    """Advance the anchor and its two rotations to their first x-corner visits.

    The anchor itself starts next to the z corner, so each of the three
    rotated copies needs a certified hitting-time search before the exact
    advancement is performed.
    """
    eps = rat(eps)
    anchor = seed_anchor(eps)
    bases = [anchor, rotate(anchor), rotate(rotate(anchor))]
    seeds = []
    for k, base in enumerate(bases):
        t = hit_corner(base, eps, "x", cap=cap, policy=policy, exact_cap=cap)
        seeds.append(SeedPoint(point=v_iterate(base, t, exact_cap=cap),
                               base=base, rotation=k, offset=t))
    return SeedTriple(eps=eps, a=seeds[0], b=seeds[1], c=seeds[2])


def empirical_depth(
    triple: SeedTriple,
    eps1=None,
    cap: int = DEFAULT_SCAN_CAP,
    policy: Optional[EscalationPolicy] = None,
) -> int:
    """Largest first vertex-visit time of the seeds at a finer closeness eps1.

    Stand-in for the chain's unusable second depth parameter: eps1 defaults
    to eps/10 and the returned depth is what the amplification stage uses.
    """
    eps1 = rat(eps1) if eps1 is not None else triple.eps / 10
    hits = [first_vertex_hit(s.point, eps1, cap=cap, policy=policy)[0]
            for s in triple.seeds()]
    return max(hits)


def _earliest_corner_visit(base: SimplexPoint, eps, limit: int) -> Tuple[int, SimplexPoint]:
    pt = base
    for j in range(limit + 1):
        if j > 0:
            pt = v_step(pt)
        if close_corner(pt, eps, "x") is Verdict.TRUE:
            return j, pt
    raise CapExceeded(f"no x-corner visit on the base trajectory within {limit} steps")


def _amplify_one(
    seed: SeedPoint,
    eps,
    depth: int,
    cap: int,
    scan_cap: int,
    policy: Optional[EscalationPolicy],
) -> AmplifiedPoint:
    m = seed.offset
    if m + depth <= cap:
        mid = v_iterate(seed.point, depth, exact_cap=cap) if depth else seed.point
        try:
            i = hit_corner(mid, eps, "x", cap=scan_cap, policy=policy,
                           exact_cap=max(0, cap - m - depth))
        except CapExceeded:
            i = None
        if i is not None and m + depth + i <= cap:
            return AmplifiedPoint(point=v_iterate(mid, i, exact_cap=cap),
                                  source=seed, offset=m + depth + i, advanced=True)
    j, pt = _earliest_corner_visit(seed.base, eps, min(m, cap))
    return AmplifiedPoint(point=pt, source=seed, offset=j, advanced=False)


def amplify_triple(
    triple: SeedTriple,
    depth: int,
    cap: int = EXACT_STEP_CAP,
    scan_cap: int = DEFAULT_SCAN_CAP,
    policy: Optional[EscalationPolicy] = None,
) -> Tuple[AmplifiedPoint, AmplifiedPoint, AmplifiedPoint]:
    """Advance each seed by depth steps and on to the next x-corner visit.

    Exact coordinates square their denominators every step, so the forward
    rule is only executed when the seed's total step count stays within the
    exact budget; a seed whose next visit lies beyond it falls back to the
    earliest x-corner visit of its base trajectory, which is still on the
    same orbit and still eps-close.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    return tuple(_amplify_one(s, triple.eps, depth, cap, scan_cap, policy)
                 for s in triple.seeds())


# -- the symbolic parameter chain --------------------------------------


@dataclass(frozen=True)
class ParameterChain:
    """Threshold/depth cascade showing why the construction is out of
    numeric reach: each stage feeds the next and the exponents tower."""

    eps: Rational
    d1: int
    eps1: BoundReport
    d2: BoundReport
    d3_lower: int
    eps2: BoundReport
    d0_condition: str

    def entries(self) -> Tuple[Tuple[str, object, str], ...]:
        return (
            ("d1", self.d1,
             "largest first x-visit time among the three rotated anchors"),
            ("eps1", self.eps1.result, self.eps1.description),
            ("d2", self.d2.D, self.d2.description),
            ("d3_lower", self.d3_lower,
             "d2 plus one step for each of three further x-visits (lower bound)"),
            ("eps2", self.eps2.result, self.eps2.description),
            ("d0", self.d0_condition,
             "reported only; the threshold exponent is a power tower"),
        )


def symbolic_parameter_chain(
    eps,
    hit_cap: int = 512,
    policy: Optional[EscalationPolicy] = None,
) -> ParameterChain:
    """Evaluate the full threshold cascade at eps, keeping huge values symbolic.

    d1 comes from certified hitting-time searches; everything after it is
    formula plug-in. The final side-transit threshold eps2 always ends up
    a symbolic power because its exponent is 2^(d3).
    """
    eps = rat(eps)
    if not 0 < eps < rat(1, 10):
        raise ValueError("need 0 < eps < 0.1")
    anchor = seed_anchor(eps)
    bases = [anchor, rotate(anchor), rotate(rotate(anchor))]
    times = [hit_corner(b, eps, "x", cap=hit_cap, policy=policy) for b in bases]
    d1 = max(times)
    eps1 = corner_dwell_eps(eps, d1)
    d2 = vertex_hit_bound(eps1.result)
    d3_lower = d2.D + 3
    eps2 = side_transit_eps(eps1.result, d3_lower)
    condition = "least d0 with phi(V^d0(a)) < eps2^3"
    return ParameterChain(eps=eps, d1=d1, eps1=eps1, d2=d2,
                          d3_lower=d3_lower, eps2=eps2, d0_condition=condition)


# -- certified potential threshold search ------------------------------


def d0_search(
    p: SimplexPoint,
    threshold=None,
    log2_threshold: Optional[int] = None,
    cap: int = DEFAULT_SCAN_CAP,
    policy: Optional[EscalationPolicy] = None,
    exact_cap: int = EXACT_STEP_CAP,
) -> int:
    """Least d >= 1 with certified phi(V^d(p)) strictly below the threshold.

    The threshold is either a positive rational or a power of two given by
    its exponent, which keeps astronomically small targets exact. phi is
    non-increasing along orbits, so the first certified crossing is the
    crossing.
    """
    if p.n != 3:
        raise ValueError("three coordinates required")
    if p.backend != "exact":
        raise ValueError("need an exact start point")
    if min(p.coords) <= 0:
        raise ValueError("need an interior start point")
    if p.coords == (mpq(1, 3),) * 3:
        raise ValueError("the barycenter never crosses any positive threshold")
    if (threshold is None) == (log2_threshold is None):
        raise ValueError("give exactly one of threshold and log2_threshold")
    if threshold is not None:
        thr = rat(threshold)
        if thr <= 0:
            raise ValueError("threshold must be positive")
    else:
        t = int(log2_threshold)
        thr = mpq(mpz(1) << t) if t >= 0 else mpq(1, mpz(1) << (-t))
    policy = policy or EscalationPolicy()
    exact = _ExactOrbit(p, exact_cap)
    stuck = None
    for prec in policy.ladder():
        q = point_to_interval(p, prec)
        stuck = None
        for d in range(1, cap + 1):
            q = v_step(q)
            v = lt(phi(q), thr)
            if v is Verdict.UNDECIDED:
                pt = exact.at(d)
                if pt is not None:
                    v = Verdict.TRUE if phi(pt) < thr else Verdict.FALSE
            if v is Verdict.TRUE:
                return d
            if v is Verdict.UNDECIDED:
                stuck = d
                break
        if stuck is None:
            raise CapExceeded(f"phi stayed above the threshold through {cap} steps")
    raise UndecidedAtCap(
        f"phi comparison at step {stuck} undecided at precision cap {policy.cap_bits}")


# -- coverage certification --------------------------------------------


@dataclass(frozen=True)
class CoverageEntry:
    d: int
    witness: Optional[str]
    verdict: str  # covered | uncovered | undecided


@dataclass(frozen=True)
class SixPointCertificate:
    eps: Rational
    points: Dict[str, SimplexPoint]
    d_lo: int
    d_hi: int
    d0_used: int
    coverage: Tuple[CoverageEntry, ...]
    violations: Tuple[int, ...]
    precision_stats: Dict[str, int]

    @property
    def covered_fraction(self) -> Rational:
        total = self.d_hi - self.d_lo + 1
        good = sum(1 for e in self.coverage if e.verdict == "covered")
        return mpq(good, total)


def coverage_scan(
    points: Sequence[SimplexPoint],
    eps,
    d_lo: int,
    d_hi: int,
    policy: Optional[EscalationPolicy] = None,
    d0_used: Optional[int] = None,
) -> SixPointCertificate:
    """Certify, for each d in [d_lo, d_hi], which point's d-th image is
    eps-close to the x corner.

    The witness is the first point in a,b,c,A,B,C order whose verdict is
    certified TRUE. Depths that stay undecided at the precision cap are
    recorded as violations rather than raised: absence of coverage is data.
    """
    if len(points) != len(POINT_NAMES):
        raise ValueError(f"exactly {len(POINT_NAMES)} points required")
    for p in points:
        if p.n != 3 or p.backend != "exact":
            raise ValueError("exact three-coordinate points required")
    if not 0 <= d_lo <= d_hi:
        raise ValueError("need 0 <= d_lo <= d_hi")
    eps = rat(eps)
    policy = policy or EscalationPolicy()
    results: Dict[int, CoverageEntry] = {}
    pending = set(range(d_lo, d_hi + 1))
    rungs = 0
    top_bits = 0
    for prec in policy.ladder():
        if not pending:
            break
        rungs += 1
        top_bits = prec
        orbits = [point_to_interval(p, prec) for p in points]
        for d in range(0, d_hi + 1):
            if d > 0:
                orbits = [v_step(q) for q in orbits]
                if any(diverged(c) for q in orbits for c in q.coords):
                    break  # this rung is spent; escalate
            if d < d_lo or d not in pending:
                continue
            witness = None
            open_names = []
            for name, q in zip(POINT_NAMES, orbits):
                v = close_corner(q, eps, "x")
                if v is Verdict.TRUE:
                    witness = name
                    break
                if v is Verdict.UNDECIDED:
                    open_names.append(name)
            if witness is not None:
                results[d] = CoverageEntry(d=d, witness=witness, verdict="covered")
                pending.discard(d)
            elif not open_names:
                results[d] = CoverageEntry(d=d, witness=None, verdict="uncovered")
                pending.discard(d)
    for d in pending:
        results[d] = CoverageEntry(d=d, witness=None, verdict="undecided")
    coverage = tuple(results[d] for d in range(d_lo, d_hi + 1))
    violations = tuple(e.d for e in coverage if e.verdict != "covered")
    stats = {"start_bits": policy.start_bits, "cap_bits": policy.cap_bits,
             "rungs_used": rungs, "top_bits_used": top_bits}
    return SixPointCertificate(
        eps=eps, points=dict(zip(POINT_NAMES, points)),
        d_lo=d_lo, d_hi=d_hi,
        d0_used=d0_used if d0_used is not None else d_lo - 1,
        coverage=coverage, violations=violations, precision_stats=stats)


# -- realizing points as tripartite tournaments ------------------------


def largest_remainder(coords, q: int) -> Tuple[int, ...]:
    """Round q*coords to integers summing to q, largest fractional part first."""
    if q < 1:
        raise ValueError("q must be positive")
    scaled = [rat(c) * q for c in coords]
    floors = [int(floor_q(s)) for s in scaled]
    leftover = q - sum(floors)
    order = sorted(range(len(floors)), key=lambda i: (floors[i] - scaled[i], i))
    sizes = list(floors)
    for i in order[:leftover]:
        sizes[i] += 1
    return tuple(sizes)


def points_to_tournaments(
    points: Sequence[SimplexPoint],
    q: int,
) -> Tuple[Tuple[Tournament, TripartitePartition], ...]:
    """Round each point to the 1/q grid and realize it as a tripartite
    tournament on q vertices whose part masses are the rounded coordinates.

    Intra-part edges are transitive by index; the cyclic part dominance
    means the aggregated win/loss balance of every vertex depends only on
    its part, which is what makes the three-coordinate dynamics exact.
    """
    out = []
    for p in points:
        if p.n != 3 or p.backend != "exact":
            raise ValueError("exact three-coordinate points required")
        sizes = largest_remainder(p.coords, q)
        out.append(build_tripartite(sizes))
    return tuple(out)


# -- serialization ------------------------------------------------------


def seed_to_json(s: SeedPoint) -> dict:
    return {"point": point_to_json(s.point), "rotation": s.rotation,
            "offset": s.offset}


def triple_to_json(t: SeedTriple) -> dict:
    return {"eps": rat_to_json(t.eps), "a": seed_to_json(t.a),
            "b": seed_to_json(t.b), "c": seed_to_json(t.c)}


def amplified_to_json(a: AmplifiedPoint) -> dict:
    return {"point": point_to_json(a.point), "rotation": a.source.rotation,
            "offset": a.offset, "advanced": a.advanced}


def chain_to_json(ch: ParameterChain) -> dict:
    return {
        "eps": rat_to_json(ch.eps),
        "d1": ch.d1,
        "eps1": bound_report_to_json(ch.eps1),
        "d2": bound_report_to_json(ch.d2),
        "d3_lower": ch.d3_lower,
        "eps2": bound_report_to_json(ch.eps2),
        "d0_condition": ch.d0_condition,
    }


def certificate_to_json(c: SixPointCertificate) -> dict:
    return {
        "eps": rat_to_json(c.eps),
        "points": {name: point_to_json(p) for name, p in c.points.items()},
        "window": {"d_lo": c.d_lo, "d_hi": c.d_hi},
        "d0_used": c.d0_used,
        "coverage": [{"d": e.d, "witness": e.witness, "verdict": e.verdict}
                     for e in c.coverage],
        "violations": list(c.violations),
        "covered_fraction": rat_to_json(c.covered_fraction),
        "precision": dict(c.precision_stats),
    }
