"""Volterra quadratic operator of a tournament and its exact iteration.

The update is x_i' = x_i (1 - sum of beater coordinates + sum of beaten
coordinates). With exact input the output sum is exactly 1 because every
cross term appears twice with opposite signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Tuple

from gmpy2 import mpq, mpz

from .arith.simplex import SimplexPoint, clear_denominators, uniform
from .errors import BadPartition, DimensionMismatch, ExactBlowup
from .tournament import Tournament, TripartitePartition

EXACT_STEP_CAP = 24


@dataclass(frozen=True)
class VolterraOperator:
    n: int
    beaters: Tuple[Tuple[int, ...], ...]  # 0-based: beaters[i] are the j that beat i+1
    beaten: Tuple[Tuple[int, ...], ...]   # 0-based: beaten[i] are the j that i+1 beats


def operator_of(t: Tournament) -> VolterraOperator:
    beaters = []
    beaten = []
    for i in range(t.n):
        row = t.rows[i]
        beaten.append(tuple(j for j in range(t.n) if (row >> j) & 1))
        beaters.append(tuple(j for j in range(t.n) if (t.rows[j] >> i) & 1))
    return VolterraOperator(t.n, tuple(beaters), tuple(beaten))


def apply(op: VolterraOperator, x: SimplexPoint) -> SimplexPoint:
    """One operator step; works on either scalar backend."""
    if x.n != op.n:
        raise DimensionMismatch(f"point dim {x.n}, operator dim {op.n}")
    c = x.coords
    out = []
    for i in range(op.n):
        f = 1
        for j in op.beaters[i]:
            f = f - c[j]
        for j in op.beaten[i]:
            f = f + c[j]
        out.append(c[i] * f)
    return SimplexPoint(tuple(out))


def raw_step(op: VolterraOperator, nums: Tuple[mpz, ...], den: mpz) -> Tuple[Tuple[mpz, ...], mpz]:
    """One gcd-free step on a cleared-denominator state.

    Writing x_i = p_i / q with a shared q, one step is
    p_i' = p_i (q + sum beaten p_j - sum beaters p_j), q' = q^2.
    Keeping the raw integers around lets callers compare orbits without
    ever normalizing the huge intermediate fractions.
    """
    factors = []
    for i in range(op.n):
        f = den
        for j in op.beaten[i]:
            f = f + nums[j]
        for j in op.beaters[i]:
            f = f - nums[j]
        factors.append(f)
    return tuple(nums[i] * factors[i] for i in range(op.n)), den * den


def _iterate_exact(op: VolterraOperator, x0: SimplexPoint, t: int) -> SimplexPoint:
    """Common-denominator integer recursion: no gcd work until the very end."""
    nums, den = clear_denominators(x0)
    for _ in range(t):
        nums, den = raw_step(op, nums, den)
    return SimplexPoint(tuple(mpq(nums[i], den) for i in range(op.n)))


def iterate(op: VolterraOperator, x0: SimplexPoint, t: int, exact_cap: int = EXACT_STEP_CAP) -> SimplexPoint:
    """t-fold application; denominators square per step under the exact backend."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    if x0.backend == "exact":
        if t > exact_cap:
            raise ExactBlowup(f"{t} exact steps above cap {exact_cap}")
        return _iterate_exact(op, x0, t)
    x = x0
    for _ in range(t):
        x = apply(op, x)
    return x


def orbit(op: VolterraOperator, x0: SimplexPoint, steps: int) -> Iterator[SimplexPoint]:
    """Yields x0, V(x0), ..., V^steps(x0) one application at a time."""
    x = x0
    yield x
    for _ in range(steps):
        x = apply(op, x)
        yield x


def root_distribution(t: Tournament, d: int, exact_cap: int = EXACT_STEP_CAP) -> SimplexPoint:
    """Label distribution at the root of a height-d tree with uniform leaves.

    Each tree level applies the operator once, so the root of a height-d
    tree carries V^d(uniform).
    """
    return iterate(operator_of(t), uniform(t.n), d, exact_cap=exact_cap)


def aggregate(x: SimplexPoint, p: TripartitePartition) -> SimplexPoint:
    """Per-part coordinate sums: a 3-dimensional image of an n-dimensional point."""
    flat = [v for part in p.parts for v in part]
    if sorted(flat) != list(range(1, x.n + 1)):
        raise BadPartition(f"parts do not partition 1..{x.n}")
    sums = []
    for part in p.parts:
        s = x.coords[part[0] - 1]
        for v in part[1:]:
            s = s + x.coords[v - 1]
        sums.append(s)
    return SimplexPoint(tuple(sums))
