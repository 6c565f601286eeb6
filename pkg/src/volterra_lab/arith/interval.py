"""Outward-rounded interval scalars on arbitrary-exponent big-floats.

Endpoints are mpmath raw mpf tuples (sign, mantissa, exponent, bitcount).
Exponents are plain Python integers, so magnitudes like 2**(-10**6) cost
nothing; mantissa precision is explicit per operation. Every operation
rounds the lower endpoint toward -inf and the upper endpoint toward +inf,
so the true real result is always enclosed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from gmpy2 import mpq
from mpmath.libmp import (
    fone,
    from_int,
    from_man_exp,
    fzero,
    mpf_abs,
    mpf_add,
    mpf_div,
    mpf_ge,
    mpf_le,
    mpf_lt,
    mpf_mul,
    mpf_neg,
    mpf_sub,
    to_str,
)

from .verdict import Verdict
from .rational import rat

DOWN = "f"  # toward -inf
UP = "c"    # toward +inf

_RawMpf = tuple

IntervalLike = Union["Interval", mpq, int]


def _is_finite_raw(t: _RawMpf) -> bool:
    # libmp marks inf/nan with mantissa 0 and a negative bitcount
    return t[1] != 0 or t == fzero


def raw_to_mpq(t: _RawMpf) -> mpq:
    """Exact rational value of a finite raw mpf (they are dyadic)."""
    sign, man, exp, _ = t
    m = int(man)
    if sign:
        m = -m
    if exp >= 0:
        return mpq(m * (1 << exp))
    return mpq(m, 1 << (-exp))


def pow2_raw(k: int) -> _RawMpf:
    """The exact raw mpf 2**k."""
    return from_man_exp(1, k)


@dataclass(frozen=True, slots=True)
class Interval:
    lo: _RawMpf
    hi: _RawMpf
    prec: int

    def __post_init__(self) -> None:
        if not (_is_finite_raw(self.lo) and _is_finite_raw(self.hi)):
            raise ValueError("interval endpoints must be finite")
        if mpf_lt(self.hi, self.lo):
            raise ValueError("interval with hi < lo")

    # -- constructors ------------------------------------------------

    @staticmethod
    def from_rational(q: Union[mpq, int, str], prec: int) -> "Interval":
        q = rat(q) if not isinstance(q, mpq) else q
        num = from_int(int(q.numerator))
        den = from_int(int(q.denominator))
        return Interval(mpf_div(num, den, prec, DOWN), mpf_div(num, den, prec, UP), prec)

    @staticmethod
    def from_int_exact(k: int, prec: int) -> "Interval":
        t = from_int(k)
        return Interval(t, t, prec)

    @staticmethod
    def point(raw: _RawMpf, prec: int) -> "Interval":
        return Interval(raw, raw, prec)

    # -- queries -----------------------------------------------------

    def contains(self, q: Union[mpq, int]) -> bool:
        q = mpq(q)
        return raw_to_mpq(self.lo) <= q <= raw_to_mpq(self.hi)

    def encloses(self, other: "Interval") -> bool:
        return raw_to_mpq(self.lo) <= raw_to_mpq(other.lo) and raw_to_mpq(other.hi) <= raw_to_mpq(self.hi)

    def width(self) -> mpq:
        return raw_to_mpq(self.hi) - raw_to_mpq(self.lo)

    def as_bounds(self) -> tuple:
        return raw_to_mpq(self.lo), raw_to_mpq(self.hi)

    def __repr__(self) -> str:
        return f"Interval[{to_str(self.lo, 8)}, {to_str(self.hi, 8)}]@{self.prec}"

    # -- arithmetic --------------------------------------------------

    def _lift(self, other: IntervalLike) -> "Interval":
        if isinstance(other, Interval):
            return other
        if isinstance(other, (int, mpq)):
            return Interval.from_rational(mpq(other), self.prec)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: IntervalLike) -> "Interval":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        p = max(self.prec, o.prec)
        return Interval(mpf_add(self.lo, o.lo, p, DOWN), mpf_add(self.hi, o.hi, p, UP), p)

    __radd__ = __add__

    def __sub__(self, other: IntervalLike) -> "Interval":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        p = max(self.prec, o.prec)
        return Interval(mpf_sub(self.lo, o.hi, p, DOWN), mpf_sub(self.hi, o.lo, p, UP), p)

    def __rsub__(self, other: IntervalLike) -> "Interval":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o.__sub__(self)

    def __neg__(self) -> "Interval":
        return Interval(mpf_neg(self.hi), mpf_neg(self.lo), self.prec)

    def __abs__(self) -> "Interval":
        lo_q, hi_q = raw_to_mpq(self.lo), raw_to_mpq(self.hi)
        if lo_q >= 0:
            return self
        if hi_q <= 0:
            return -self
        m = mpf_abs(self.lo) if -lo_q >= hi_q else self.hi
        return Interval(fzero, m, self.prec)

    def __mul__(self, other: IntervalLike) -> "Interval":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        p = max(self.prec, o.prec)
        pairs = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        lo = None
        hi = None
        for a, b in pairs:
            dn = mpf_mul(a, b, p, DOWN)
            up = mpf_mul(a, b, p, UP)
            if lo is None or mpf_lt(dn, lo):
                lo = dn
            if hi is None or mpf_lt(hi, up):
                hi = up
        return Interval(lo, hi, p)

    __rmul__ = __mul__

    def __truediv__(self, other: IntervalLike) -> "Interval":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if raw_to_mpq(o.lo) <= 0 <= raw_to_mpq(o.hi):
            raise ZeroDivisionError("interval denominator spans zero")
        p = max(self.prec, o.prec)
        pairs = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        lo = None
        hi = None
        for a, b in pairs:
            dn = mpf_div(a, b, p, DOWN)
            up = mpf_div(a, b, p, UP)
            if lo is None or mpf_lt(dn, lo):
                lo = dn
            if hi is None or mpf_lt(hi, up):
                hi = up
        return Interval(lo, hi, p)

    def __rtruediv__(self, other: IntervalLike) -> "Interval":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o.__truediv__(self)

    def __pow__(self, n: int) -> "Interval":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return Interval.from_int_exact(1, self.prec).__truediv__(self.__pow__(-n))
        result = Interval.from_int_exact(1, self.prec)
        base = self
        k = n
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


# -- three-valued comparisons (mixed exact/interval operands) --------


def diverged(iv: Interval) -> bool:
    """Width at least 1: wider than the whole simplex, so no simplex
    predicate can decide and further iteration only squares the blowup.

    Works on the raw endpoints; converting runaway endpoints to rationals
    would materialize integers with doubly-exponential bit counts.
    """
    return bool(mpf_ge(mpf_sub(iv.hi, iv.lo, iv.prec, UP), fone))


def _bounds(v: IntervalLike) -> tuple:
    if isinstance(v, Interval):
        return v.as_bounds()
    q = mpq(v)
    return q, q


def le(a: IntervalLike, b: IntervalLike) -> Verdict:
    a_lo, a_hi = _bounds(a)
    b_lo, b_hi = _bounds(b)
    if a_hi <= b_lo:
        return Verdict.TRUE
    if a_lo > b_hi:
        return Verdict.FALSE
    return Verdict.UNDECIDED


def lt(a: IntervalLike, b: IntervalLike) -> Verdict:
    a_lo, a_hi = _bounds(a)
    b_lo, b_hi = _bounds(b)
    if a_hi < b_lo:
        return Verdict.TRUE
    if a_lo >= b_hi:
        return Verdict.FALSE
    return Verdict.UNDECIDED


def ge(a: IntervalLike, b: IntervalLike) -> Verdict:
    return le(b, a)


def gt(a: IntervalLike, b: IntervalLike) -> Verdict:
    return lt(b, a)


# -- serialization ---------------------------------------------------


def _raw_to_hex(t: _RawMpf) -> str:
    sign, man, exp, _ = t
    if man == 0:
        return "0x0p0"
    body = f"0x{int(man):x}p{exp}"
    return "-" + body if sign else body


def _raw_from_hex(s: str) -> _RawMpf:
    neg = s.startswith("-")
    if neg:
        s = s[1:]
    mant_s, exp_s = s.split("p")
    man = int(mant_s, 16)
    exp = int(exp_s)
    return from_man_exp(-man if neg else man, exp)


def interval_to_json(iv: Interval) -> dict:
    return {"lo": _raw_to_hex(iv.lo), "hi": _raw_to_hex(iv.hi), "prec": iv.prec}


def interval_from_json(obj: dict) -> Interval:
    return Interval(_raw_from_hex(obj["lo"]), _raw_from_hex(obj["hi"]), int(obj["prec"]))
