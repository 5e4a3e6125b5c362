"""Isomorphic variants of a 2x2 game, strong isomorphism of finite games,
and the executable form of the invariance criterion for a strategy set.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import permutations
from typing import List, Optional, Sequence, Tuple

from .equivalence import FLOAT_TOL, _rows_close, coefficient_row
from .errors import DimensionMismatchError
from .payoff import Bimatrix2, PayoffPair, format_scalar, payoff_closed_form
from .su2 import StrategyParams, phi


class IsoVariant(Enum):
    """The four isomorphic variants of a 2x2 bimatrix (a Klein four-group)."""

    GAMMA0 = 0  # identity
    GAMMA1 = 1  # rows swapped
    GAMMA2 = 2  # columns swapped
    GAMMA3 = 3  # rows and columns swapped

    def compose(self, other: "IsoVariant") -> "IsoVariant":
        return IsoVariant(self.value ^ other.value)


def iso_variant(game: Bimatrix2, v: IsoVariant) -> Bimatrix2:
    d = game.delta
    if v is IsoVariant.GAMMA0:
        return game
    if v is IsoVariant.GAMMA1:
        return Bimatrix2((d[1], d[0]))
    if v is IsoVariant.GAMMA2:
        return Bimatrix2(((d[0][1], d[0][0]), (d[1][1], d[1][0])))
    return Bimatrix2(((d[1][1], d[1][0]), (d[0][1], d[0][0])))


@dataclass(frozen=True)
class ExtendedGame:
    """An n x n bimatrix with strategy labels shared by both players."""

    labels: Tuple[str, ...]
    payoffs: Tuple[Tuple[PayoffPair, ...], ...]

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise ValueError("strategy labels must be distinct")
        if len(self.payoffs) != n or any(len(r) != n for r in self.payoffs):
            raise DimensionMismatchError("payoff grid must be square and match labels")
        if any(not isinstance(p, PayoffPair) for row in self.payoffs for p in row):
            coerced = tuple(
                tuple(PayoffPair(*p) for p in row) for row in self.payoffs
            )
            object.__setattr__(self, "payoffs", coerced)

    @property
    def n(self) -> int:
        return len(self.labels)

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "payoffs": [
                [[format_scalar(p.u1), format_scalar(p.u2)] for p in row]
                for row in self.payoffs
            ],
        }

    @staticmethod
    def from_json(obj) -> "ExtendedGame":
        from .payoff import parse_scalar

        grid = tuple(
            tuple(PayoffPair(parse_scalar(a), parse_scalar(b)) for a, b in row)
            for row in obj["payoffs"]
        )
        return ExtendedGame(tuple(obj["labels"]), grid)

    def pretty(self) -> str:
        cells = [[f"({format_scalar(p.u1)}, {format_scalar(p.u2)})" for p in row]
                 for row in self.payoffs]
        width = max(len(c) for row in cells for c in row)
        lwidth = max(len(l) for l in self.labels)
        head = " " * (lwidth + 2) + "  ".join(l.rjust(width) for l in self.labels)
        lines = [head]
        for label, row in zip(self.labels, cells):
            lines.append(label.ljust(lwidth + 2) + "  ".join(c.rjust(width) for c in row))
        return "\n".join(lines)


def build_extended_game(game: Bimatrix2, strategies: Sequence[StrategyParams],
                        labels: Optional[Sequence[str]] = None,
                        mode: str = "auto") -> ExtendedGame:
    """Payoff bimatrix of the quantized game over a finite strategy set."""
    if not strategies:
        raise ValueError("strategies must be nonempty")
    if labels is None:
        labels = default_labels(len(strategies))
    grid = tuple(
        tuple(payoff_closed_form(game, p, q, mode=mode) for q in strategies)
        for p in strategies
    )
    return ExtendedGame(tuple(labels), grid)


def default_labels(n: int) -> Tuple[str, ...]:
    if n == 4:
        return ("I", "iX", "U1", "U2")
    if n == 2:
        return ("I", "iX")
    return tuple(f"s{i}" for i in range(n))


# -- strong isomorphism -------------------------------------------------------


def _pair_key(p: PayoffPair):
    return (float(p.u1), float(p.u2))


def strongly_isomorphic(g1: ExtendedGame, g2: ExtendedGame,
                        tol: float = 0.0) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Search for per-player bijections making all payoffs agree.

    Returns (row_perm, col_perm) with
    g2.payoffs[row_perm[i]][col_perm[j]] == g1.payoffs[i][j] for all cells,
    or None.  Player exchange is not searched: the row/column/double swap
    variants never exchange players.  Exhaustive over n! x n! permutation
    pairs with multiset pruning; exactness matters more than speed at n <= 6.
    """
    n = g1.n
    if g2.n != n:
        raise DimensionMismatchError(f"cannot compare {n}x{n} with {g2.n}x{g2.n}")

    if tol > 0.0:
        def eq(p, q):
            return (abs(float(p.u1) - float(q.u1)) <= tol
                    and abs(float(p.u2) - float(q.u2)) <= tol)
    else:
        def eq(p, q):
            return p.u1 == q.u1 and p.u2 == q.u2

    # Rows can only map to rows with the same payoff multiset (and likewise
    # for columns); with tol == 0 this prunes most of the n! candidates.
    def row_sig(g, i):
        return tuple(sorted(_pair_key(p) for p in g.payoffs[i]))

    def col_sig(g, j):
        return tuple(sorted(_pair_key(g.payoffs[i][j]) for i in range(g.n)))

    if tol == 0.0:
        sig1r = [row_sig(g1, i) for i in range(n)]
        sig2r = [row_sig(g2, i) for i in range(n)]
        sig1c = [col_sig(g1, j) for j in range(n)]
        sig2c = [col_sig(g2, j) for j in range(n)]
        if sorted(sig1r) != sorted(sig2r) or sorted(sig1c) != sorted(sig2c):
            return None
        row_candidates = [
            [k for k in range(n) if sig2r[k] == sig1r[i]] for i in range(n)
        ]
        col_candidates = [
            [k for k in range(n) if sig2c[k] == sig1c[j]] for j in range(n)
        ]
    else:
        row_candidates = [list(range(n))] * n
        col_candidates = [list(range(n))] * n

    for rp in permutations(range(n)):
        if any(rp[i] not in row_candidates[i] for i in range(n)):
            continue
        for cp in permutations(range(n)):
            if any(cp[j] not in col_candidates[j] for j in range(n)):
                continue
            if all(
                eq(g2.payoffs[rp[i]][cp[j]], g1.payoffs[i][j])
                for i in range(n)
                for j in range(n)
            ):
                return rp, cp
    return None


# -- the invariance criterion -------------------------------------------------


@dataclass(frozen=True)
class CriterionReport:
    holds: bool
    classes: Tuple[Tuple[int, ...], ...]
    image_class: Tuple[int, ...]  # class index hit by phi of each strategy, -1 if none

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "classes": [list(c) for c in self.classes],
            "phi_image_class": list(self.image_class),
        }


def criterion_holds(strategies: Sequence[StrategyParams], mode: str = "auto",
                    tol: float = FLOAT_TOL) -> CriterionReport:
    """Executable form of the quotient criterion: the family of equivalence
    classes of S must coincide with the family of classes of phi(S).

    Every phi image must be equivalent (opponents = S) to some member of S,
    and together the images must cover every class of S; classes are
    disjoint, so the induced matching between class families is then a
    bijection.  Each coefficient row is computed exactly once.
    """
    rows = [coefficient_row(s, strategies, mode=mode) for s in strategies]
    phi_rows = [coefficient_row(phi(s), strategies, mode=mode) for s in strategies]
    exact = all(
        all(not isinstance(x, float) for v in row for x in v)
        for row in rows + phi_rows
    )
    n = len(strategies)
    if exact:
        groups: dict = {}
        for i, row in enumerate(rows):
            groups.setdefault(row, []).append(i)
        classes = sorted(tuple(g) for g in groups.values())
        row_to_class = {rows[cls[0]]: k for k, cls in enumerate(classes)}
        image = tuple(row_to_class.get(row, -1) for row in phi_rows)
    else:
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
        image = tuple(
            next(
                (k for k, cls in enumerate(classes)
                 if _rows_close(phi_row, rows[cls[0]], tol)),
                -1,
            )
            for phi_row in phi_rows
        )
    covered = {k for k in image if k >= 0}
    holds = all(k >= 0 for k in image) and covered == set(range(len(classes)))
    return CriterionReport(holds, tuple(classes), image)


@dataclass(frozen=True)
class VariantWitness:
    variant: str
    isomorphic: bool
    row_perm: Optional[Tuple[int, ...]]
    col_perm: Optional[Tuple[int, ...]]

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "isomorphic": self.isomorphic,
            "row_perm": None if self.row_perm is None else list(self.row_perm),
            "col_perm": None if self.col_perm is None else list(self.col_perm),
        }


@dataclass(frozen=True)
class InvarianceReport:
    all_isomorphic: bool
    witnesses: Tuple[VariantWitness, ...]

    def to_json(self) -> list:
        return [w.to_json() for w in self.witnesses]


def verify_invariance_end_to_end(game: Bimatrix2,
                                 strategies: Sequence[StrategyParams],
                                 mode: str = "auto",
                                 tol: float = 0.0) -> InvarianceReport:
    """Build the extension of the game and of each swapped variant over the
    same strategy set, and search for strong-isomorphism witnesses."""
    base = build_extended_game(game, strategies, mode=mode)
    witnesses = []
    ok = True
    for v in (IsoVariant.GAMMA1, IsoVariant.GAMMA2, IsoVariant.GAMMA3):
        other = build_extended_game(iso_variant(game, v), strategies, mode=mode)
        found = strongly_isomorphic(base, other, tol=tol)
        if found is None:
            ok = False
            witnesses.append(VariantWitness(v.name, False, None, None))
        else:
            witnesses.append(VariantWitness(v.name, True, found[0], found[1]))
    return InvarianceReport(ok, tuple(witnesses))


# -- block-combination invariance ----------------------------------------------

# Witness relabeling per transformation: swap the two classical strategies
# and the two added strategies, on the side(s) the transformation touches.
_SWAP = (1, 0, 3, 2)
_IDENT = (0, 1, 2, 3)
_VARIANT_WITNESS = {
    IsoVariant.GAMMA1: (_SWAP, _IDENT),
    IsoVariant.GAMMA2: (_IDENT, _SWAP),
    IsoVariant.GAMMA3: (_SWAP, _SWAP),
}


def _block_matrix(game: Bimatrix2, blocks) -> List[List[PayoffPair]]:
    """4x4 grid whose 2x2 blocks are linear combinations of the variants.

    blocks = (e, f, g, h): coefficient 4-vectors for the top-left, top-right,
    bottom-left and bottom-right blocks, weighting Gamma^0..Gamma^3.
    """
    variants = [iso_variant(game, v) for v in IsoVariant]
    grid = [[None] * 4 for _ in range(4)]
    for b, coeffs in enumerate(blocks):
        r0, c0 = 2 * (b // 2), 2 * (b % 2)
        for i in range(2):
            for j in range(2):
                u1 = sum(k * variants[m].delta[i][j].u1 for m, k in enumerate(coeffs))
                u2 = sum(k * variants[m].delta[i][j].u2 for m, k in enumerate(coeffs))
                grid[r0 + i][c0 + j] = PayoffPair(u1, u2)
    return grid


GENERIC_GAME = Bimatrix2.from_rows(
    [[(1, 2), (3, 4)], [(5, 6), (7, 8)]]  # eight distinct values, no coincidences
)


def block_combination_invariant(blocks, game: Bimatrix2 = GENERIC_GAME) -> bool:
    """Check that a block-combination matrix is invariant under all three
    game transformations via the fixed witness relabelings above.

    For each transformation the matrix is rebuilt from the transformed game
    and compared, after applying the witness permutation, with the original.
    Holds for every coefficient layout; the check guards the construction
    used by all extension classes.
    """
    blocks = tuple(
        tuple(c if isinstance(c, float) else Fraction(c) for c in vec)
        for vec in blocks
    )
    base = _block_matrix(game, blocks)
    for v in (IsoVariant.GAMMA1, IsoVariant.GAMMA2, IsoVariant.GAMMA3):
        transformed = _block_matrix(iso_variant(game, v), blocks)
        rp, cp = _VARIANT_WITNESS[v]
        for i in range(4):
            for j in range(4):
                if transformed[rp[i]][cp[j]] != base[i][j]:
                    return False
    return True
