"""Complete binary voting trees: evaluation, random sampling, guarantees.

Trees are never materialized beyond their label vector; evaluation streams
the leaves left to right keeping at most one pending winner per level, so
height-d trees cost O(d) memory even when labels come lazily from a seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from gmpy2 import mpq

from .arith.simplex import SimplexPoint
from .errors import BudgetExceeded, TooLarge, UniverseMismatch
from .rng import label_at, labels_for_leaf
from .tournament import ENUMERATION_CAP, Tournament, enumerate_all, outdeg

MC_BUDGET = 10**9


@dataclass(frozen=True)
class VotingTree:
    d: int
    n: int
    labels: Optional[Tuple[int, ...]] = None
    seed: Optional[int] = None
    sample: int = 0

    def __post_init__(self) -> None:
        if self.labels is not None:
            if len(self.labels) != 1 << self.d:
                raise ValueError(f"need {1 << self.d} labels, got {len(self.labels)}")
            if any(not 1 <= v <= self.n for v in self.labels):
                raise ValueError("leaf label outside 1..n")
        elif self.seed is None:
            raise ValueError("either labels or seed must be given")

    def label(self, leaf: int) -> int:
        if self.labels is not None:
            return self.labels[leaf]
        return label_at(self.seed, self.sample, leaf, self.n)


@dataclass(frozen=True)
class GuaranteeReport:
    value: int
    witness: Tournament
    winner: int


def _match(t: Tournament, a: int, b: int) -> int:
    if a == b:
        return a
    return a if t.beats(a, b) else b


def evaluate(tree: VotingTree, t: Tournament) -> int:
    """Winner at the root after pairwise elections up the tree."""
    if tree.n != t.n:
        raise UniverseMismatch(f"tree on [{tree.n}], tournament on [{t.n}]")
    stack: List[Tuple[int, int]] = []  # (level, pending winner)
    for leaf in range(1 << tree.d):
        level, cur = 0, tree.label(leaf)
        while stack and stack[-1][0] == level:
            _, left = stack.pop()
            cur = _match(t, left, cur)
            level += 1
        stack.append((level, cur))
    assert len(stack) == 1 and stack[0][0] == tree.d
    return stack[0][1]


def sample_rpt(d: int, n: int, seed: int) -> VotingTree:
    """Random perfect tree of height d: leaf labels i.i.d. uniform on 1..n, lazy from the seed."""
    if d < 0 or n < 1:
        raise ValueError("need d >= 0 and n >= 1")
    return VotingTree(d=d, n=n, seed=seed)


def guarantee(tree: VotingTree, cap: int = ENUMERATION_CAP) -> GuaranteeReport:
    """Exact minimum winner out-degree over every tournament on [n]."""
    if tree.n > cap:
        raise TooLarge(f"n={tree.n} above enumeration cap {cap}")
    best: Optional[GuaranteeReport] = None
    for t in enumerate_all(tree.n, cap=cap):
        w = evaluate(tree, t)
        deg = outdeg(t, w)
        if best is None or deg < best.value:
            best = GuaranteeReport(deg, t, w)
            if deg == 0:
                break
    assert best is not None
    return best


def guarantee_samples(d: int, n: int, tree_count: int, seed: int, cap: int = ENUMERATION_CAP) -> List[GuaranteeReport]:
    """Guarantees of tree_count independently sampled d-RPTs (exploratory)."""
    reports = []
    for k in range(tree_count):
        tree = VotingTree(d=d, n=n, seed=seed, sample=k)
        reports.append(guarantee(tree, cap=cap))
    return reports


def mc_winner_distribution(
    d: int,
    n: int,
    t: Tournament,
    samples: int,
    seed: int,
    budget: int = MC_BUDGET,
) -> SimplexPoint:
    """Empirical winner distribution of the d-RPT on t over independent samples.

    Vectorized across samples; bit-identical to evaluating sample_rpt trees
    one by one with matching (seed, sample) keys.
    """
    if t.n != n:
        raise UniverseMismatch(f"n={n} vs tournament on [{t.n}]")
    if (1 << d) * samples > budget:
        raise BudgetExceeded(f"2^{d} leaves x {samples} samples exceeds budget {budget}")
    beats = t.beats_matrix()
    idx = np.arange(samples, dtype=np.uint64)
    stack: List[Tuple[int, np.ndarray]] = []
    for leaf in range(1 << d):
        level = 0
        cur = labels_for_leaf(seed, idx, leaf, n)  # 0-based labels
        while stack and stack[-1][0] == level:
            _, left = stack.pop()
            cur = np.where(left == cur, cur, np.where(beats[left, cur], left, cur))
            level += 1
        stack.append((level, cur))
    assert len(stack) == 1
    winners = stack[0][1]
    counts = np.bincount(winners, minlength=n)
    return SimplexPoint(tuple(mpq(int(c), samples) for c in counts))


def tree_to_json(tree: VotingTree) -> dict:
    if tree.labels is not None:
        return {"d": tree.d, "n": tree.n, "labels": list(tree.labels)}
    obj = {"d": tree.d, "n": tree.n, "seed": str(tree.seed)}
    if tree.sample:
        obj["sample"] = tree.sample
    return obj


def tree_from_json(obj: dict) -> VotingTree:
    if "labels" in obj:
        return VotingTree(d=int(obj["d"]), n=int(obj["n"]), labels=tuple(int(v) for v in obj["labels"]))
    return VotingTree(d=int(obj["d"]), n=int(obj["n"]), seed=int(obj["seed"]), sample=int(obj.get("sample", 0)))
