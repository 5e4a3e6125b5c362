"""Payoff equivalence of unitary strategies over a finite opponent set.

Equivalence is decided on coefficient vectors, not on one game's payoffs:
equal coefficients against every opponent force equal payoffs for *both*
players in *every* game, which is the notion the invariance criterion needs.
A game-specific comparison would accept spurious equivalences on degenerate
games.

The opponent set is a parameter.  The quotient criterion uses the game's own
finite strategy set; callers wanting the stricter notion can pass
random_su2_opponents(...) instead.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .payoff import CoefficientVector, coefficients
from .su2 import StrategyParams, canonicalize

FLOAT_TOL = 1e-10


def random_su2_opponents(count: int, seed: int = 0) -> List[StrategyParams]:
    """Haar-ish random sampled opponents for a stricter equivalence check."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        out.append(canonicalize(
            math.acos(rng.uniform(-1.0, 1.0)),
            rng.uniform(0.0, 2.0 * math.pi),
            rng.uniform(0.0, 2.0 * math.pi),
        ))
    return out


def coefficient_row(p: StrategyParams, opponents: Sequence[StrategyParams],
                    side: str = "row", mode: str = "auto") -> Tuple[CoefficientVector, ...]:
    """Coefficient vectors of p against each opponent.

    side 'row' treats p as a player-1 strategy (vectors c(p, o)); side 'col'
    treats it as a player-2 strategy (vectors c(o, p)).
    """
    if side == "row":
        return tuple(coefficients(p, o, mode=mode) for o in opponents)
    if side == "col":
        return tuple(coefficients(o, p, mode=mode) for o in opponents)
    raise ValueError(f"side must be 'row' or 'col', got {side!r}")


def _rows_close(r1, r2, tol: float) -> bool:
    for v1, v2 in zip(r1, r2):
        for x, y in zip(v1, v2):
            if abs(float(x) - float(y)) > tol:
                return False
    return True


def are_equivalent(p: StrategyParams, q: StrategyParams,
                   opponents: Sequence[StrategyParams], side: str = "row",
                   mode: str = "auto", tol: float = FLOAT_TOL) -> bool:
    """True iff p and q yield identical coefficient vectors against every opponent.

    Opponents may be any finite sample; callers wanting a stricter check can
    pass randomly drawn SU(2) elements instead of the game's own strategy set.
    """
    if not opponents:
        raise ValueError("opponents must be nonempty")
    r1 = coefficient_row(p, opponents, side=side, mode=mode)
    r2 = coefficient_row(q, opponents, side=side, mode=mode)
    if all(all(not isinstance(x, float) for x in v) for v in r1 + r2):
        return r1 == r2
    return _rows_close(r1, r2, tol)


@dataclass(frozen=True)
class EquivClassPartition:
    """Disjoint classes of indices into a strategy list; pairwise equivalent
    within a class, inequivalent across classes."""

    classes: Tuple[Tuple[int, ...], ...]

    def class_of(self, index: int) -> int:
        for k, cls in enumerate(self.classes):
            if index in cls:
                return k
        raise IndexError(index)

    def __len__(self):
        return len(self.classes)


def partition(strategies: Sequence[StrategyParams], side: str = "row",
              mode: str = "auto", tol: float = FLOAT_TOL) -> EquivClassPartition:
    """Partition a finite strategy set into payoff-equivalence classes,
    with the set itself as the opponent universe."""
    if not strategies:
        raise ValueError("strategies must be nonempty")
    rows = [coefficient_row(p, strategies, side=side, mode=mode) for p in strategies]
    exact = all(
        all(not isinstance(x, float) for x in v) for row in rows for v in row
    )
    n = len(strategies)
    if exact:
        groups: dict = {}
        for i, row in enumerate(rows):
            groups.setdefault(row, []).append(i)
        classes = sorted(tuple(g) for g in groups.values())
        return EquivClassPartition(tuple(classes))

    # Float mode: union-find over the pairwise relation, so near-threshold
    # pairs cannot produce an intransitive 'partition'.
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if _rows_close(rows[i], rows[j], tol):
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    classes = sorted(tuple(g) for g in groups.values())
    return EquivClassPartition(tuple(classes))


def classify_against(p: StrategyParams, strategies: Sequence[StrategyParams],
                     part: EquivClassPartition, side: str = "row",
                     mode: str = "auto", tol: float = FLOAT_TOL) -> int:
    """Index of the class of `part` that p is equivalent to, or -1 if none.

    Classes are disjoint, so membership is tested against one representative.
    """
    for k, cls in enumerate(part.classes):
        rep = strategies[cls[0]]
        if are_equivalent(p, rep, strategies, side=side, mode=mode, tol=tol):
            return k
    return -1
