"""Scalar and simplex arithmetic: exact rationals and outward-rounded intervals."""

from .rational import Rational, rat, rat_from_json, rat_to_json, floor_q, ceil_q, bit_size
from .interval import Interval, diverged, interval_from_json, interval_to_json, le, lt, ge, gt, pow2_raw, raw_to_mpq
from .verdict import (
    DecideOutcome,
    EscalationPolicy,
    Verdict,
    decide,
    from_bool,
    v_all,
    v_any,
    v_not,
)
from .simplex import (
    SimplexPoint,
    clear_denominators,
    corner,
    inf_dist,
    make_simplex,
    point_from_json,
    point_to_interval,
    point_to_json,
    uniform,
)

__all__ = [
    "Rational", "rat", "rat_from_json", "rat_to_json", "floor_q", "ceil_q", "bit_size",
    "Interval", "diverged", "interval_from_json", "interval_to_json", "le", "lt", "ge", "gt",
    "pow2_raw", "raw_to_mpq",
    "DecideOutcome", "EscalationPolicy", "Verdict", "decide", "from_bool",
    "v_all", "v_any", "v_not",
    "SimplexPoint", "clear_denominators", "corner", "inf_dist", "make_simplex", "point_from_json",
    "point_to_interval", "point_to_json", "uniform",
]
