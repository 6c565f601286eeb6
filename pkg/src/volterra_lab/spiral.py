"""The quadratic spiral map on the 2-simplex and its certified predicates.

The map sends (x, y, z) to (x(1+y-z), y(1+z-x), z(1+x-y)). Orbits drift
outward from the barycenter and circulate the three corners; all searches
below either run on exact rationals or return interval-certified verdicts,
never uncertified floating-point guesses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

from gmpy2 import mpq, mpz
from mpmath.libmp import from_int, mpf_log, mpf_mul, mpf_sub

from .arith.interval import Interval, le, ge, raw_to_mpq
from .arith.rational import ceil_q, rat
from .arith.simplex import (
    SimplexPoint,
    clear_denominators,
    inf_dist,
    make_simplex,
    point_to_interval,
    uniform,
)
from .arith.verdict import EscalationPolicy, Verdict, from_bool
from .errors import CapExceeded, ExactBlowup, NotInM, UndecidedAtCap

EXACT_STEP_CAP = 24

CORNERS = ("x", "y", "z")
SIDES = ("xy", "yz", "xz")
_SIDE_OPPOSITE = {"xy": 2, "yz": 0, "xz": 1}
_CORNER_INDEX = {"x": 0, "y": 1, "z": 2}


def spiral_point(x, y, z) -> SimplexPoint:
    return make_simplex([rat(x) if not isinstance(x, Interval) else x,
                         rat(y) if not isinstance(y, Interval) else y,
                         rat(z) if not isinstance(z, Interval) else z])


def center() -> SimplexPoint:
    return uniform(3)


def _check3(p: SimplexPoint) -> None:
    if p.n != 3:
        raise ValueError("spiral dynamics live on 3 coordinates")


def v_step(p: SimplexPoint) -> SimplexPoint:
    _check3(p)
    x, y, z = p.coords
    return SimplexPoint((x * (1 + y - z), y * (1 + z - x), z * (1 + x - y)))


def raw_v_step(nums: Tuple[mpz, mpz, mpz], den: mpz) -> Tuple[Tuple[mpz, mpz, mpz], mpz]:
    """One gcd-free map step on a cleared-denominator state (see qso.raw_step)."""
    nx, ny, nz = nums
    return (nx * (den + ny - nz), ny * (den + nz - nx), nz * (den + nx - ny)), den * den


def _iterate_exact(p: SimplexPoint, t: int) -> SimplexPoint:
    nums, den = clear_denominators(p)
    for _ in range(t):
        nums, den = raw_v_step(nums, den)
    return SimplexPoint((mpq(nums[0], den), mpq(nums[1], den), mpq(nums[2], den)))


def v_iterate(p: SimplexPoint, t: int, exact_cap: int = EXACT_STEP_CAP) -> SimplexPoint:
    _check3(p)
    if t < 0:
        raise ValueError("t must be nonnegative")
    if p.backend == "exact":
        if t > exact_cap:
            raise ExactBlowup(f"{t} exact steps above cap {exact_cap}")
        return _iterate_exact(p, t)
    x = p
    for _ in range(t):
        x = v_step(x)
    return x


def rotate(p: SimplexPoint) -> SimplexPoint:
    _check3(p)
    x, y, z = p.coords
    return SimplexPoint((y, z, x))


def phi(p: SimplexPoint):
    _check3(p)
    x, y, z = p.coords
    return x * y * z


def corner_point(c: str) -> SimplexPoint:
    i = _CORNER_INDEX[c]
    return SimplexPoint(tuple(mpq(1) if j == i else mpq(0) for j in range(3)))


def corner_dist(p: SimplexPoint, c: str):
    """Sup-norm distance to a corner (scalar of the point's backend)."""
    _check3(p)
    i = _CORNER_INDEX[c]
    return inf_dist(p, point_to_interval(corner_point(c), p.coords[0].prec)
                    if p.backend == "interval" else corner_point(c))


def in_M(p: SimplexPoint, eps) -> Verdict:
    """Is the point at sup-distance at least eps from the barycenter?"""
    _check3(p)
    c = point_to_interval(center(), p.coords[0].prec) if p.backend == "interval" else center()
    return ge(_as_comparable(inf_dist(p, c)), rat(eps))


def close_corner(p: SimplexPoint, eps, c: str) -> Verdict:
    return le(_as_comparable(corner_dist(p, c)), rat(eps))


def close_side(p: SimplexPoint, eps, s: str) -> Verdict:
    _check3(p)
    return le(_as_comparable(p.coords[_SIDE_OPPOSITE[s]]), rat(eps))


def _as_comparable(v):
    return v  # both mpq and Interval are accepted by the comparison helpers


def is_interior(p: SimplexPoint) -> bool:
    return p.backend == "exact" and all(c > 0 for c in p.coords)


# -- property checks (exact backend) -------------------------------


def growth_bounds_check(p: SimplexPoint) -> bool:
    """Per-coordinate growth bounds: c' <= 2c and (1-c)^2 <= 1-c'."""
    _check3(p)
    q = v_step(p)
    for c, c2 in zip(p.coords, q.coords):
        if not (c2 <= 2 * c and (1 - c) ** 2 <= 1 - c2):
            return False
    return True


def decay_check(p: SimplexPoint, eps, strong: bool = False) -> bool:
    """Potential drop off the barycenter: phi(V(p)) <= (1 - eps^3) phi(p).

    With strong=True the sharper product bound
    abc <= (1 - (eps/5)^2 / 27)^3 for the three step factors is asserted
    instead; it holds on all of M(eps) by a strengthened mean inequality.
    """
    _check3(p)
    eps = rat(eps)
    if in_M(p, eps) is not Verdict.TRUE:
        raise NotInM(f"point is within {eps} of the barycenter")
    x, y, z = p.coords
    if strong:
        a, b, c = 1 + y - z, 1 + z - x, 1 + x - y
        bound = (1 - mpq(1, 27) * (eps / 5) ** 2) ** 3
        return a * b * c <= bound
    return phi(v_step(p)) <= (1 - eps**3) * phi(p)


# -- certified hitting-time searches ----------------------------------


class _ExactOrbit:
    """Lazily extended exact orbit prefix, shared by escalation rungs.

    Denominators square every step, so the reachable prefix is capped by a
    bit budget as well as by the step cap; beyond either, at() returns None
    and the caller stays on the interval backend.
    """

    BIT_BUDGET = 1 << 22

    def __init__(self, p: SimplexPoint, cap: int, bit_budget: int = BIT_BUDGET):
        self.points = [p]
        den_bits = max(int(c.denominator).bit_length() for c in p.coords)
        affordable = max(0, (bit_budget // max(1, den_bits)).bit_length() - 1)
        self.cap = min(cap, affordable)

    def at(self, i: int) -> Optional[SimplexPoint]:
        if i > self.cap:
            return None
        while len(self.points) <= i:
            self.points.append(v_step(self.points[-1]))
        return self.points[i]


def hit_corner(
    p: SimplexPoint,
    eps,
    c: str,
    cap: int,
    policy: Optional[EscalationPolicy] = None,
    exact_cap: int = EXACT_STEP_CAP,
) -> int:
    """Least i >= 1 with V^i(p) certified eps-close to the corner.

    The scan runs on the interval backend and escalates precision from
    scratch whenever a step verdict stays undecided; ties at the predicate
    boundary are resolved exactly when the step is within the exact cap.
    An uncertified answer is never returned.
    """
    _check3(p)
    if p.backend != "exact" or not is_interior(p) or p.coords == center().coords:
        raise ValueError("need an exact interior start point off the barycenter")
    if cap < 1:
        raise ValueError("cap must be at least 1")
    eps = rat(eps)
    policy = policy or EscalationPolicy()
    exact = _ExactOrbit(p, exact_cap)
    stuck = None
    for prec in policy.ladder():
        q = point_to_interval(p, prec)
        stuck = None
        for i in range(1, cap + 1):
            q = v_step(q)
            v = close_corner(q, eps, c)
            if v is Verdict.UNDECIDED:
                pt = exact.at(i)
                if pt is not None:
                    v = close_corner(pt, eps, c)
            if v is Verdict.TRUE:
                return i
            if v is Verdict.UNDECIDED:
                stuck = i
                break
        if stuck is None:
            raise CapExceeded(f"no certified {eps}-visit to corner {c} within {cap} steps")
    raise UndecidedAtCap(f"verdict at step {stuck} undecided at precision cap {policy.cap_bits}")


def first_vertex_hit(
    p: SimplexPoint,
    eps,
    cap: int,
    policy: Optional[EscalationPolicy] = None,
    exact_cap: int = EXACT_STEP_CAP,
) -> Tuple[int, str]:
    """Least f >= 0 with V^f(p) certified eps-close to some corner."""
    _check3(p)
    eps = rat(eps)
    if p.backend != "exact":
        raise ValueError("need an exact start point")
    if in_M(p, eps) is not Verdict.TRUE:
        raise NotInM("start point is not eps-far from the barycenter")
    policy = policy or EscalationPolicy()
    exact = _ExactOrbit(p, exact_cap)
    stuck = None
    for prec in policy.ladder():
        q = point_to_interval(p, prec)
        stuck = None
        f = 0
        while f <= cap:
            undecided_corner = None
            for c in CORNERS:
                v = close_corner(q, eps, c)
                if v is Verdict.UNDECIDED:
                    pt = exact.at(f)
                    if pt is not None:
                        v = close_corner(pt, eps, c)
                if v is Verdict.TRUE:
                    return f, c
                if v is Verdict.UNDECIDED:
                    undecided_corner = c
            if undecided_corner is not None:
                stuck = f
                break
            q = v_step(q)
            f += 1
        if stuck is None:
            raise CapExceeded(f"no certified {eps}-visit to any corner within {cap} steps")
    raise UndecidedAtCap(f"verdict at step {stuck} undecided at precision cap {policy.cap_bits}")


def rotation_distance(a: SimplexPoint, b: SimplexPoint, window: int, exact_cap: int = EXACT_STEP_CAP) -> Optional[int]:
    """Minimal |i| within the window such that V^i(a) and b are rotated.

    Two points are rotated when one is the cyclic shift of the other.
    Negative i is reached without inverting the map: by equivariance,
    V^i(a) rotated with b for i < 0 is equivalent to a forward condition
    on V^|i| applied to b and R(b).
    """
    _check3(a)
    _check3(b)
    if a.backend != "exact" or b.backend != "exact":
        raise ValueError("rotation distance is an exact-backend operation")
    if window > exact_cap:
        raise ExactBlowup(f"window {window} above exact step cap {exact_cap}")

    def rotated(u: SimplexPoint, v: SimplexPoint) -> bool:
        return rotate(u).coords == v.coords or rotate(v).coords == u.coords

    fa, fb, frb = a, b, rotate(b)
    if rotated(fa, b):
        return 0
    ra = rotate(a)
    for i in range(1, window + 1):
        fa = v_step(fa)
        fb = v_step(fb)
        frb = v_step(frb)
        # forward direction: V^i(a) rotated with b
        if rotated(fa, b):
            return i
        # backward direction, pushed forward by equivariance:
        # R(V^-i(a)) == b  <=>  R(a) == V^i(b);  R(b) == V^-i(a)  <=>  V^i(R(b)) == a
        if ra.coords == fb.coords or frb.coords == a.coords:
            return i
    return None


# -- explicit bound formulas ------------------------------------------


@dataclass(frozen=True)
class ScaledPower:
    """coeff * base**exponent, with the exponent possibly given as 2**exponent_log2."""

    coeff: mpq
    base: mpq
    exponent: Optional[int] = None
    exponent_log2: Optional[int] = None

    def log2_value(self) -> float:
        if self.coeff <= 0 or self.base <= 0:
            return float("-inf")
        try:
            e = float(self.exponent) if self.exponent is not None else 2.0 ** self.exponent_log2
        except OverflowError:
            e = float("inf")
        lb = math.log2(float(self.base)) if float(self.base) > 0 else float("-inf")
        return math.log2(float(self.coeff)) + e * lb


@dataclass(frozen=True)
class BoundReport:
    eps: mpq
    D: int
    result: Union[mpq, ScaledPower]
    C: Optional[int] = None
    n1_bound: Optional[int] = None
    n2_bound: Optional[int] = None
    n3_bound: Optional[int] = None
    heuristic_range: bool = False
    description: str = ""


SYMBOLIC_BIT_CAP = 4096


def side_transit_eps(eps, D: int, bit_cap: int = SYMBOLIC_BIT_CAP) -> BoundReport:
    """Threshold (eps/2)^(2^D): a point this close to the xy side, off the
    x corner, needs at least D steps before coming near the xz side."""
    eps = rat(eps)
    if not 0 < eps <= rat(1, 10):
        raise ValueError("need 0 < eps <= 0.1")
    if D < 0:
        raise ValueError("D must be nonnegative")
    base = eps / 2
    # bits of the exact value grow like 2^D * log2(2/eps)
    needed = None
    if D <= 62:
        needed = (1 << D) * max(1, ceil_q(-_log2_rational_upper(base)))
    if needed is not None and needed <= bit_cap:
        value: Union[mpq, ScaledPower] = base ** (1 << D)
    else:
        value = ScaledPower(coeff=mpq(1), base=base, exponent_log2=D)
    return BoundReport(eps=eps, D=D, result=value,
                       description="side-transit threshold (eps/2)^(2^D)")


def corner_dwell_eps(eps, D: int, bit_cap: int = SYMBOLIC_BIT_CAP) -> BoundReport:
    """Threshold eps/2^(2D): a point this close to the x corner stays
    eps-close to it for at least D further steps."""
    eps = rat(eps)
    if not 0 < eps <= rat(1, 10):
        raise ValueError("need 0 < eps <= 0.1")
    if D < 0:
        raise ValueError("D must be nonnegative")
    if 2 * D <= bit_cap:
        value: Union[mpq, ScaledPower] = eps / (mpz(1) << (2 * D))
    else:
        value = ScaledPower(coeff=eps, base=mpq(1, 2), exponent=2 * D)
    return BoundReport(eps=eps, D=D, result=value,
                       description="corner-dwell threshold eps/2^(2D)")


def _log2_rational_upper(q: mpq) -> mpq:
    """Cheap upper bound on log2 of a positive rational."""
    num_bits = int(q.numerator).bit_length()
    den_bits = int(q.denominator).bit_length()
    return mpq(num_bits - den_bits + 1)


def ln_ceil_10(eps) -> int:
    """ceil(10 ln(1/eps)) for rational 0 < eps < 1, certified by directed rounding.

    10 ln(1/eps) is irrational for rational eps != 1, so the enclosure
    eventually separates from every integer and the loop terminates.
    """
    eps = rat(eps)
    if not 0 < eps < 1:
        raise ValueError("need 0 < eps < 1")
    num = from_int(int(eps.denominator))  # 1/eps = den/num
    den = from_int(int(eps.numerator))
    prec = 64
    while prec <= (1 << 24):
        lo = mpf_mul(mpf_sub(mpf_log(num, prec, "f"), mpf_log(den, prec, "c"), prec, "f"),
                     from_int(10), prec, "f")
        hi = mpf_mul(mpf_sub(mpf_log(num, prec, "c"), mpf_log(den, prec, "f"), prec, "c"),
                     from_int(10), prec, "c")
        c_lo = ceil_q(raw_to_mpq(lo))
        c_hi = ceil_q(raw_to_mpq(hi))
        if c_lo == c_hi:
            return c_lo
        prec *= 2
    raise UndecidedAtCap("log enclosure did not separate from an integer")


def vertex_hit_bound(eps) -> BoundReport:
    """Step bound D = ceil(eps^-15) + 2 ceil(10 ln(1/eps)) + 100 for reaching
    some eps-corner from M(eps).

    The derivation assumes eps < 2^-100; for larger eps the same formula is
    reported with heuristic_range set. The log base is fixed to natural log,
    rounded up.
    """
    eps = rat(eps)
    if not 0 < eps < 1:
        raise ValueError("need 0 < eps < 1")
    inv15 = (1 / eps) ** 15
    c = ceil_q(inv15)
    n1 = ln_ceil_10(eps)
    n2 = n1 + 100
    n3 = n2 + n1
    d = c + n3
    return BoundReport(
        eps=eps,
        D=d,
        result=mpq(d),
        C=c,
        n1_bound=n1,
        n2_bound=n2,
        n3_bound=n3,
        heuristic_range=bool(eps > mpq(1, mpz(1) << 100)),
        description="corner-visit step bound C + N3",
    )


def scaled_power_to_json(sp: ScaledPower) -> dict:
    from .arith.rational import rat_to_json

    return {
        "coeff": rat_to_json(sp.coeff),
        "base": rat_to_json(sp.base),
        "exponent": sp.exponent,
        "exponent_log2": sp.exponent_log2,
    }


def bound_report_to_json(r: BoundReport) -> dict:
    from .arith.rational import rat_to_json

    result = rat_to_json(r.result) if isinstance(r.result, mpq) else scaled_power_to_json(r.result)
    return {
        "eps": rat_to_json(r.eps),
        "D": r.D,
        "result": result,
        "C": r.C,
        "n1_bound": r.n1_bound,
        "n2_bound": r.n2_bound,
        "n3_bound": r.n3_bound,
        "heuristic_range": r.heuristic_range,
        "description": r.description,
    }
