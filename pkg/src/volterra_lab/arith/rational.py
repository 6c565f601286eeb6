"""Exact rational scalars.

gmpy2.mpq is used as the canonical rational type: it normalizes on
construction (positive denominator, reduced), and its arithmetic avoids
the per-operation overhead that makes fractions.Fraction unusable once
numerators reach millions of bits.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from gmpy2 import mpq, mpz

Rational = mpq
RationalLike = Union[int, str, Fraction, mpq]


def rat(num: RationalLike, den: Union[int, None] = None) -> mpq:
    """Build an exact rational from ints, strings like '0.15' or '3/10', or Fractions."""
    if den is not None:
        return mpq(num, den)
    if isinstance(num, str):
        f = Fraction(num)
        return mpq(f.numerator, f.denominator)
    if isinstance(num, Fraction):
        return mpq(num.numerator, num.denominator)
    return mpq(num)


def is_rational(x: object) -> bool:
    return isinstance(x, (mpq, int)) or isinstance(x, type(mpz(0)))


def floor_q(q: mpq) -> int:
    return int(q.numerator // q.denominator)


def ceil_q(q: mpq) -> int:
    return int(-((-q.numerator) // q.denominator))


def rat_to_json(q: mpq) -> dict:
    q = mpq(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def rat_from_json(obj: dict) -> mpq:
    return mpq(int(obj["num"]), int(obj["den"]))


def bit_size(q: mpq) -> int:
    """Total bits of numerator plus denominator; a cheap growth gauge."""
    q = mpq(q)
    return int(abs(q.numerator)).bit_length() + int(q.denominator).bit_length()


def decimal_str(q: mpq, digits: int) -> str:
    """Fixed-point decimal rendering, ties rounded half-up; deterministic."""
    q = mpq(q)
    neg = q < 0
    if neg:
        q = -q
    scaled = q * (10 ** digits) + mpq(1, 2)
    i = floor_q(scaled)
    s = str(i).rjust(digits + 1, "0")
    head, tail = (s, "") if digits == 0 else (s[:-digits], "." + s[-digits:])
    return ("-" if neg else "") + head + tail
