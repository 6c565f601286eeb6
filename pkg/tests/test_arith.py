"""Scalar backends: exact rationals, outward intervals, three-valued verdicts."""

from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from volterra_lab.arith import (
    DecideOutcome,
    EscalationPolicy,
    Interval,
    SimplexPoint,
    Verdict,
    clear_denominators,
    corner,
    decide,
    diverged,
    ge,
    inf_dist,
    interval_from_json,
    interval_to_json,
    le,
    lt,
    make_simplex,
    point_from_json,
    point_to_interval,
    point_to_json,
    rat,
    rat_from_json,
    rat_to_json,
    uniform,
    v_all,
    v_any,
    v_not,
)
from volterra_lab.arith.rational import bit_size, ceil_q, decimal_str, floor_q
from volterra_lab.errors import NotOnSimplex

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=10 ** 6)


def as_q(f: Fraction) -> mpq:
    return mpq(f.numerator, f.denominator)


def test_rat_parsing():
    assert rat("3/10") == mpq(3, 10)
    assert rat("0.15") == mpq(3, 20)
    assert rat(7) == 7
    assert rat(1, 3) == mpq(1, 3)
    assert rat(Fraction(2, 6)) == mpq(1, 3)


def test_floor_ceil():
    assert floor_q(mpq(7, 3)) == 2
    assert ceil_q(mpq(7, 3)) == 3
    assert floor_q(mpq(-7, 3)) == -3
    assert ceil_q(mpq(-7, 3)) == -2
    assert floor_q(mpq(4)) == ceil_q(mpq(4)) == 4


def test_decimal_str():
    assert decimal_str(mpq(1, 3), 6) == "0.333333"
    assert decimal_str(mpq(2, 3), 6) == "0.666667"
    assert decimal_str(mpq(-1, 8), 3) == "-0.125"
    assert decimal_str(mpq(5), 0) == "5"


def test_rat_json_roundtrip():
    q = mpq(-355, 113)
    assert rat_from_json(rat_to_json(q)) == q


def test_bit_size_grows():
    assert bit_size(mpq(3, 4)) < bit_size(mpq(3 ** 50, 4 ** 50))


@given(rationals, rationals)
@settings(max_examples=300, deadline=None)
def test_interval_add_contains(fa, fb):
    a, b = as_q(fa), as_q(fb)
    iv = Interval.from_rational(a, 24) + Interval.from_rational(b, 24)
    assert iv.contains(a + b)


@given(rationals, rationals)
@settings(max_examples=300, deadline=None)
def test_interval_mul_contains(fa, fb):
    a, b = as_q(fa), as_q(fb)
    iv = Interval.from_rational(a, 16) * Interval.from_rational(b, 16)
    assert iv.contains(a * b)


@given(rationals)
@settings(max_examples=200, deadline=None)
def test_refinement_narrows(fa):
    a = as_q(fa)
    coarse = (Interval.from_rational(a, 8) * Interval.from_rational(a, 8)).width()
    fine = (Interval.from_rational(a, 64) * Interval.from_rational(a, 64)).width()
    assert fine <= coarse


@given(rationals)
@settings(max_examples=200, deadline=None)
def test_division_roundtrip_contains(fa):
    a = as_q(fa)
    if a == 0:
        return
    iv = Interval.from_rational(1, 32) / Interval.from_rational(a, 32)
    assert iv.contains(1 / a)


def test_division_through_zero_rejected():
    from mpmath.libmp import from_int

    straddle = Interval(from_int(-1), from_int(1), 16)
    with pytest.raises(ZeroDivisionError):
        Interval.from_rational(1, 16) / straddle


def test_pow_contains():
    iv = Interval.from_rational(mpq(-3, 7), 20) ** 3
    assert iv.contains(mpq(-27, 343))


def test_comparisons_three_valued():
    a = Interval.from_rational(mpq(1, 3), 64)
    assert le(a, mpq(1, 2)) is Verdict.TRUE
    assert ge(a, mpq(1, 2)) is Verdict.FALSE
    # 1/3 is not a binary fraction, so the enclosure straddles it
    assert le(a, mpq(1, 3)) is Verdict.UNDECIDED
    assert lt(mpq(1, 4), mpq(1, 3)) is Verdict.TRUE


def test_interval_json_roundtrip():
    iv = Interval.from_rational(mpq(22, 7), 48)
    back = interval_from_json(interval_to_json(iv))
    assert back.as_bounds() == iv.as_bounds()
    assert back.prec == iv.prec


def test_diverged_flags_wide_intervals():
    from mpmath.libmp import from_int

    assert not diverged(Interval.from_rational(mpq(1, 3), 32))
    assert diverged(Interval(from_int(0), from_int(1), 16))
    assert diverged(Interval(from_int(-3), from_int(5), 16))
    assert not diverged(Interval(from_int(2), from_int(2), 16))


def test_verdict_combinators():
    T, F, U = Verdict.TRUE, Verdict.FALSE, Verdict.UNDECIDED
    assert v_all([T, T]) is T
    assert v_all([T, U]) is U
    assert v_all([U, F]) is F
    assert v_any([F, U]) is U
    assert v_any([U, T]) is T
    assert v_not(U) is U
    assert not U.decided
    with pytest.raises(TypeError):
        bool(T)  # three-valued; implicit truthiness is a bug factory


def test_escalation_ladder_hits_cap():
    rungs = list(EscalationPolicy(start_bits=16, growth=2, cap_bits=100).ladder())
    assert rungs == [16, 32, 64, 100]
    out = decide(lambda p: Verdict.TRUE if p >= 64 else Verdict.UNDECIDED,
                 EscalationPolicy(start_bits=16, growth=2, cap_bits=100))
    assert out == DecideOutcome(Verdict.TRUE, 64, 3)


def test_simplex_validation():
    with pytest.raises(NotOnSimplex):
        make_simplex([mpq(1, 2), mpq(1, 3)])
    with pytest.raises(NotOnSimplex):
        make_simplex([mpq(3, 2), mpq(-1, 2)])
    p = make_simplex(["0.25", "0.25", "0.5"])
    assert p.backend == "exact" and p.n == 3


def test_uniform_and_corner():
    u = uniform(4)
    assert sum(u.coords) == 1
    c = corner(3, 1)
    assert c.coords == (mpq(0), mpq(1), mpq(0))
    assert inf_dist(u, u) == 0
    assert inf_dist(corner(3, 0), corner(3, 1)) == 1


def test_point_interval_lift_and_json():
    p = make_simplex([mpq(1, 6), mpq(1, 3), mpq(1, 2)])
    q = point_to_interval(p, 80)
    assert q.backend == "interval"
    assert all(iv.contains(c) for iv, c in zip(q.coords, p.coords))
    assert point_from_json(point_to_json(p)).coords == p.coords
    r = point_from_json(point_to_json(q))
    assert [iv.as_bounds() for iv in r.coords] == [iv.as_bounds() for iv in q.coords]


def test_clear_denominators():
    p = make_simplex([mpq(1, 6), mpq(1, 3), mpq(1, 2)])
    nums, den = clear_denominators(p)
    assert den == 6 and nums == (1, 2, 3)
    assert sum(nums) == den
    with pytest.raises(NotOnSimplex):
        clear_denominators(point_to_interval(p, 32))


def test_interval_sum_tracks_simplex():
    p = point_to_interval(uniform(3), 40)
    total = p.coords[0] + p.coords[1] + p.coords[2]
    assert total.contains(1)
