"""Probability vectors over either scalar backend."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

from gmpy2 import mpq, mpz

from ..errors import DimensionMismatch, NotOnSimplex
from .interval import Interval, le, ge, interval_to_json, interval_from_json
from .rational import rat, rat_to_json, rat_from_json
from .verdict import Verdict

Scalar = Union[mpq, Interval]


@dataclass(frozen=True)
class SimplexPoint:
    coords: tuple

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def backend(self) -> str:
        return "interval" if isinstance(self.coords[0], Interval) else "exact"

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i: int) -> Scalar:
        return self.coords[i]


def make_simplex(coords: Sequence) -> SimplexPoint:
    """Validate and build a point of the probability simplex.

    Exact coordinates must be nonnegative and sum to exactly 1. Interval
    coordinates must each intersect [0,1] and their sum must contain 1.
    """
    if len(coords) == 0:
        raise NotOnSimplex("empty coordinate vector")
    if any(isinstance(c, Interval) for c in coords):
        if not all(isinstance(c, Interval) for c in coords):
            raise NotOnSimplex("mixed exact and interval coordinates")
        for c in coords:
            if ge(c, 0) is Verdict.FALSE or le(c, 1) is Verdict.FALSE:
                raise NotOnSimplex("coordinate interval outside [0,1]")
        total = coords[0]
        for c in coords[1:]:
            total = total + c
        if not total.contains(1):
            raise NotOnSimplex("coordinate sum interval excludes 1")
        return SimplexPoint(tuple(coords))
    qs = tuple(rat(c) if not isinstance(c, mpq) else c for c in coords)
    if any(q < 0 for q in qs):
        raise NotOnSimplex("negative coordinate")
    if sum(qs) != 1:
        raise NotOnSimplex("coordinates sum to %s, not 1" % sum(qs))
    return SimplexPoint(qs)


def uniform(n: int) -> SimplexPoint:
    return SimplexPoint(tuple(mpq(1, n) for _ in range(n)))


def corner(n: int, i: int) -> SimplexPoint:
    """Point mass on coordinate i (0-based)."""
    return SimplexPoint(tuple(mpq(1) if j == i else mpq(0) for j in range(n)))


def inf_dist(a: SimplexPoint, b: SimplexPoint) -> Scalar:
    """Sup-norm distance, taken over all coordinates of the ambient vector."""
    if a.n != b.n:
        raise DimensionMismatch(f"{a.n} vs {b.n}")
    diffs = [abs(ai - bi) for ai, bi in zip(a.coords, b.coords)]
    best = diffs[0]
    for d in diffs[1:]:
        best = _sup_max(best, d)
    return best


def _sup_max(u: Scalar, v: Scalar) -> Scalar:
    if isinstance(u, Interval) or isinstance(v, Interval):
        prec = u.prec if isinstance(u, Interval) else v.prec
        ui = u if isinstance(u, Interval) else Interval.from_rational(u, prec)
        vi = v if isinstance(v, Interval) else Interval.from_rational(v, prec)
        u_lo, u_hi = ui.as_bounds()
        v_lo, v_hi = vi.as_bounds()
        # max is monotone in both endpoints
        lo = ui.lo if u_lo >= v_lo else vi.lo
        hi = ui.hi if u_hi >= v_hi else vi.hi
        return Interval(lo, hi, max(ui.prec, vi.prec))
    return max(u, v)


def clear_denominators(p: SimplexPoint) -> Tuple[Tuple[mpz, ...], mpz]:
    """Exact point rewritten as integer numerators over one shared denominator."""
    if p.backend != "exact":
        raise NotOnSimplex("expected an exact point")
    den = mpz(math.lcm(*(int(c.denominator) for c in p.coords)))
    nums = tuple(mpz(c.numerator * (den // c.denominator)) for c in p.coords)
    return nums, den


def point_to_interval(p: SimplexPoint, prec: int) -> SimplexPoint:
    """Lift an exact point to the interval backend at the given precision."""
    if p.backend != "exact":
        raise NotOnSimplex("expected an exact point")
    return SimplexPoint(tuple(Interval.from_rational(c, prec) for c in p.coords))


def point_to_json(p: SimplexPoint) -> dict:
    if p.backend == "exact":
        return {"coords": [rat_to_json(c) for c in p.coords]}
    return {"coords": [interval_to_json(c) for c in p.coords]}


def point_from_json(obj: dict) -> SimplexPoint:
    coords = obj["coords"]
    if coords and "num" in coords[0]:
        return SimplexPoint(tuple(rat_from_json(c) for c in coords))
    return SimplexPoint(tuple(interval_from_json(c) for c in coords))
