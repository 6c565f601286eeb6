"""Three-valued predicate results and precision-escalation policy."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Iterator


class Verdict(Enum):
    TRUE = "true"
    FALSE = "false"
    UNDECIDED = "undecided"

    @property
    def decided(self) -> bool:
        return self is not Verdict.UNDECIDED

    def __bool__(self) -> bool:
        raise TypeError("Verdict is three-valued; test against Verdict members explicitly")


def from_bool(b: bool) -> Verdict:
    return Verdict.TRUE if b else Verdict.FALSE


def v_all(verdicts: Iterable[Verdict]) -> Verdict:
    """Three-valued conjunction: FALSE dominates, then UNDECIDED."""
    saw_undecided = False
    for v in verdicts:
        if v is Verdict.FALSE:
            return Verdict.FALSE
        if v is Verdict.UNDECIDED:
            saw_undecided = True
    return Verdict.UNDECIDED if saw_undecided else Verdict.TRUE


def v_any(verdicts: Iterable[Verdict]) -> Verdict:
    """Three-valued disjunction: TRUE dominates, then UNDECIDED."""
    saw_undecided = False
    for v in verdicts:
        if v is Verdict.TRUE:
            return Verdict.TRUE
        if v is Verdict.UNDECIDED:
            saw_undecided = True
    return Verdict.UNDECIDED if saw_undecided else Verdict.FALSE


def v_not(v: Verdict) -> Verdict:
    if v is Verdict.TRUE:
        return Verdict.FALSE
    if v is Verdict.FALSE:
        return Verdict.TRUE
    return Verdict.UNDECIDED


@dataclass(frozen=True)
class EscalationPolicy:
    """Mantissa-precision ladder for interval re-evaluation.

    Precision starts at start_bits and is multiplied by growth until cap_bits.
    The cap itself is always the last rung, so a predicate that needs exactly
    cap_bits still gets one attempt there.
    """

    start_bits: int = 128
    growth: int = 2
    cap_bits: int = 1 << 20

    def __post_init__(self) -> None:
        if self.start_bits < 4 or self.growth < 2 or self.cap_bits < self.start_bits:
            raise ValueError("bad escalation policy")

    def ladder(self) -> Iterator[int]:
        p = self.start_bits
        while p < self.cap_bits:
            yield p
            p *= self.growth
        yield self.cap_bits


@dataclass(frozen=True)
class DecideOutcome:
    verdict: Verdict
    prec_bits: int
    rounds: int


def decide(evaluate: Callable[[int], Verdict], policy: EscalationPolicy) -> DecideOutcome:
    """Run evaluate(prec) up the precision ladder until it decides.

    Returns the first decided verdict, or UNDECIDED evaluated at the cap.
    """
    rounds = 0
    prec = policy.start_bits
    for prec in policy.ladder():
        rounds += 1
        v = evaluate(prec)
        if v.decided:
            return DecideOutcome(v, prec, rounds)
    return DecideOutcome(Verdict.UNDECIDED, prec, rounds)
