"""Tournaments on [n]: construction, out-degrees, tripartite structure, enumeration.

Candidates are 1-based in every public interface; rows are stored as
bitmasks so orientation queries during tree evaluation are O(1).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    BadPartition,
    DuplicatePair,
    EmptyPart,
    IncompleteIntra,
    IndexOutOfRange,
    MissingPair,
    SelfLoop,
    TooLarge,
)

ENUMERATION_CAP = 7


@dataclass(frozen=True)
class Tournament:
    n: int
    rows: Tuple[int, ...]  # rows[i] bit j set <=> candidate i+1 beats candidate j+1

    def beats(self, i: int, j: int) -> bool:
        self._check(i)
        self._check(j)
        return bool((self.rows[i - 1] >> (j - 1)) & 1)

    def _check(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise IndexOutOfRange(f"candidate {i} not in 1..{self.n}")

    def beats_matrix(self) -> np.ndarray:
        """Dense boolean matrix, 0-based: m[i, j] iff candidate i+1 beats j+1."""
        m = np.zeros((self.n, self.n), dtype=bool)
        for i in range(self.n):
            row = self.rows[i]
            for j in range(self.n):
                if (row >> j) & 1:
                    m[i, j] = True
        return m


@dataclass(frozen=True)
class TripartitePartition:
    parts: Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]

    @property
    def sizes(self) -> Tuple[int, int, int]:
        return tuple(len(p) for p in self.parts)  # type: ignore[return-value]


def build(n: int, orientations: Iterable[Tuple[int, int]]) -> Tournament:
    """Build a tournament from (winner, loser) pairs, exactly one per unordered pair."""
    if n < 1:
        raise TooLarge("n must be at least 1")
    rows = [0] * n
    seen = set()
    for w, l in orientations:
        if w == l:
            raise SelfLoop(f"edge {w}->{l}")
        if not (1 <= w <= n and 1 <= l <= n):
            raise IndexOutOfRange(f"edge {w}->{l} outside 1..{n}")
        key = (min(w, l), max(w, l))
        if key in seen:
            raise DuplicatePair(f"pair {key} oriented more than once")
        seen.add(key)
        rows[w - 1] |= 1 << (l - 1)
    expected = n * (n - 1) // 2
    if len(seen) != expected:
        raise MissingPair(f"got {len(seen)} pairs, expected {expected}")
    return Tournament(n, tuple(rows))


def outdeg(t: Tournament, i: int) -> int:
    t._check(i)
    return t.rows[i - 1].bit_count()


def three_cycle() -> Tournament:
    """The 3-cycle where 1 beats 2, 2 beats 3, and 3 beats 1."""
    return build(3, [(1, 2), (2, 3), (3, 1)])


def partition_from_sizes(sizes: Sequence[int]) -> TripartitePartition:
    a, b, c = sizes
    if min(a, b, c) < 1:
        raise EmptyPart(f"part sizes {tuple(sizes)}")
    parts = (
        tuple(range(1, a + 1)),
        tuple(range(a + 1, a + b + 1)),
        tuple(range(a + b + 1, a + b + c + 1)),
    )
    return TripartitePartition(parts)


def build_tripartite(
    sizes: Sequence[int],
    intra: Optional[Iterable[Tuple[int, int]]] = None,
) -> Tuple[Tournament, TripartitePartition]:
    """Tripartite tournament: part A beats part B, B beats C, C beats A.

    intra lists (winner, loser) orientations inside the parts; None means
    transitive by index (lower label beats higher) within each part.
    """
    p = partition_from_sizes(sizes)
    n = sum(sizes)
    part_of = {}
    for k, part in enumerate(p.parts):
        for v in part:
            part_of[v] = k
    edges = []
    for k in range(3):
        for w in p.parts[k]:
            for l in p.parts[(k + 1) % 3]:
                edges.append((w, l))
    if intra is None:
        for part in p.parts:
            for w, l in combinations(part, 2):
                edges.append((w, l))
    else:
        given = list(intra)
        for w, l in given:
            if w not in part_of or l not in part_of:
                raise IndexOutOfRange(f"edge {w}->{l} outside 1..{n}")
            if part_of[w] != part_of[l]:
                raise DuplicatePair(f"edge {w}->{l} crosses parts; cross edges are forced")
        edges.extend(given)
        need = sum(s * (s - 1) // 2 for s in sizes)
        if len({(min(w, l), max(w, l)) for w, l in given}) != need or len(given) != need:
            raise IncompleteIntra(f"need {need} intra-part orientations")
    return build(n, edges), p


def _validate_partition(t: Tournament, p: TripartitePartition) -> None:
    flat = [v for part in p.parts for v in part]
    if len(flat) != t.n or set(flat) != set(range(1, t.n + 1)):
        raise BadPartition(f"parts do not partition 1..{t.n}")
    if any(len(part) == 0 for part in p.parts):
        raise BadPartition("empty part")


def verify_tripartite(t: Tournament, p: TripartitePartition) -> bool:
    """Check the cyclic whole-part dominance A beats B beats C beats A."""
    _validate_partition(t, p)
    for k in range(3):
        for w in p.parts[k]:
            for l in p.parts[(k + 1) % 3]:
                if not t.beats(w, l):
                    return False
    return True


def pair_order(n: int) -> list:
    """Unordered pairs of 1..n in lexicographic order; fixes enumeration indexing."""
    return list(combinations(range(1, n + 1), 2))


def enumerate_all(n: int, cap: int = ENUMERATION_CAP) -> Iterator[Tournament]:
    """All 2^(n(n-1)/2) tournaments; orientation bit k set means the k-th
    lex pair (i, j) is oriented i beats j."""
    if n > cap:
        raise TooLarge(f"n={n} above enumeration cap {cap}")
    pairs = pair_order(n)
    m = len(pairs)
    for code in range(1 << m):
        rows = [0] * n
        for k, (i, j) in enumerate(pairs):
            if (code >> k) & 1:
                rows[i - 1] |= 1 << (j - 1)
            else:
                rows[j - 1] |= 1 << (i - 1)
        yield Tournament(n, tuple(rows))


def tournament_to_json(t: Tournament) -> dict:
    edges = []
    for i, j in pair_order(t.n):
        edges.append([i, j] if t.beats(i, j) else [j, i])
    return {"n": t.n, "edges": edges}


def tournament_from_json(obj: dict) -> Tournament:
    return build(int(obj["n"]), [(int(w), int(l)) for w, l in obj["edges"]])


def partition_to_json(p: TripartitePartition) -> dict:
    return {"A": list(p.parts[0]), "B": list(p.parts[1]), "C": list(p.parts[2])}


def partition_from_json(obj: dict) -> TripartitePartition:
    return TripartitePartition((tuple(obj["A"]), tuple(obj["B"]), tuple(obj["C"])))
