"""Pure and mixed Nash equilibria of finite bimatrix games.

Support enumeration: for every pair of candidate supports, solve the
indifference equations exactly (rational or Q(sqrt(2)) entries) or in
floating point, then keep solutions that are feasible and undominated off
support.  Enumeration finds *all* equilibria of nondegenerate games, which
matters more here than speed: the games of interest are 4x4.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .errors import DimensionMismatchError, ExactnessError
from .exactnum import Q2
from .invariance import ExtendedGame
from .payoff import PayoffPair, format_scalar, scalar_is_exact

DEVIATION_TOL = 1e-9


# -- linear systems over an exact field or floats ------------------------------


def solve_linear(a_rows: List[List], rhs: List, exact: bool):
    """Gauss-Jordan solve of A x = b.

    Returns (status, x): status 'unique', 'many' (x is the particular
    solution with free variables zero) or 'none' (x is None).
    """
    m, n = len(a_rows), len(a_rows[0])
    rows = [list(r) + [v] for r, v in zip(a_rows, rhs)]
    if exact:
        def is_zero(x):
            return x == 0
    else:
        def is_zero(x):
            return abs(x) <= 1e-12

    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = None
        if exact:
            for i in range(r, m):
                if not is_zero(rows[i][c]):
                    piv = i
                    break
        else:
            best = 0.0
            for i in range(r, m):
                if abs(rows[i][c]) > best:
                    best, piv = abs(rows[i][c]), i
            if best <= 1e-12:
                piv = None
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        scale = rows[r][c]
        rows[r] = [x / scale for x in rows[r]]
        for i in range(m):
            if i != r and not is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, m):
        if not is_zero(rows[i][n]):
            return "none", None
    zero = Fraction(0) if exact else 0.0
    x = [zero] * n
    for k, c in enumerate(pivots):
        x[c] = rows[k][n]
    return ("unique" if len(pivots) == n else "many"), x


# -- report types ----------------------------------------------------------------


@dataclass(frozen=True)
class MixedProfile:
    p1: Tuple
    p2: Tuple

    def support(self, side: int) -> Tuple[int, ...]:
        probs = self.p1 if side == 0 else self.p2
        return tuple(i for i, v in enumerate(probs) if not _is_zero_prob(v))


def _is_zero_prob(v) -> bool:
    if isinstance(v, float):
        return abs(v) <= 1e-12
    return v == 0


@dataclass(frozen=True)
class Equilibrium:
    profile: MixedProfile
    payoff: PayoffPair
    kind: str  # 'pure' or 'mixed'
    supports: Tuple[Tuple[int, ...], Tuple[int, ...]]

    def to_json(self, labels: Optional[Sequence[str]] = None) -> dict:
        out = {
            "p1": [format_scalar(v) for v in self.profile.p1],
            "p2": [format_scalar(v) for v in self.profile.p2],
            "payoff": [format_scalar(self.payoff.u1), format_scalar(self.payoff.u2)],
            "kind": self.kind,
            "supports": [list(self.supports[0]), list(self.supports[1])],
        }
        if labels is not None:
            out["support_labels"] = [
                [labels[i] for i in self.supports[0]],
                [labels[j] for j in self.supports[1]],
            ]
        return out


@dataclass(frozen=True)
class EquilibriumReport:
    equilibria: Tuple[Equilibrium, ...]
    degenerate: bool = False
    degenerate_supports: Tuple = ()

    def to_json(self, labels: Optional[Sequence[str]] = None) -> list:
        return [e.to_json(labels) for e in self.equilibria]


# -- equilibrium computations ------------------------------------------------------


def _payoff_grids(g: ExtendedGame):
    # plain ints are promoted so that exact elimination never hits int/int
    def norm(v):
        return Fraction(v) if isinstance(v, int) else v

    u1 = [[norm(cell.u1) for cell in row] for row in g.payoffs]
    u2 = [[norm(cell.u2) for cell in row] for row in g.payoffs]
    return u1, u2


def _grid_exact(u1, u2) -> bool:
    return all(scalar_is_exact(v) for row in u1 + u2 for v in row)


def pure_equilibria(g: ExtendedGame, tol: float = 0.0) -> List[Tuple[int, int]]:
    """All cells that are simultaneously a best response for both players.

    Ties are included.  With tol = 0 comparisons are exact.
    """
    u1, u2 = _payoff_grids(g)
    n = g.n
    out = []
    for i in range(n):
        for j in range(n):
            col_max = max(u1[k][j] for k in range(n))
            row_max = max(u2[i][k] for k in range(n))
            if tol > 0.0:
                ok = (float(u1[i][j]) >= float(col_max) - tol
                      and float(u2[i][j]) >= float(row_max) - tol)
            else:
                ok = u1[i][j] == col_max and u2[i][j] == row_max
            if ok:
                out.append((i, j))
    return out


def best_response_values(g: ExtendedGame, opponent_mix: Sequence, side: str = "row"):
    """Expected payoff of each own pure strategy against the opponent's mix."""
    u1, u2 = _payoff_grids(g)
    n = g.n
    if len(opponent_mix) != n:
        raise DimensionMismatchError(
            f"opponent mix has {len(opponent_mix)} entries for a {n}x{n} game"
        )
    if side == "row":
        return [sum(u1[i][j] * opponent_mix[j] for j in range(n)) for i in range(n)]
    if side == "col":
        return [sum(u2[i][j] * opponent_mix[i] for i in range(n)) for j in range(n)]
    raise ValueError(f"side must be 'row' or 'col', got {side!r}")


def _indifference_solution(values, support, other_support, exact, tol):
    """Opponent mix over `support` making every strategy in `other_support`
    indifferent, plus that common value; None when infeasible.

    `values[r][c]` is the optimizing player's payoff, rows = their own
    strategies, columns = the mixing opponent's strategies.
    """
    k = len(support)
    zero = Fraction(0) if exact else 0.0
    one = Fraction(1) if exact else 1.0
    a_rows = []
    rhs = []
    for r in other_support:
        a_rows.append([values[r][c] for c in support] + [-one])
        rhs.append(zero)
    a_rows.append([one] * k + [zero])
    rhs.append(one)
    status, x = solve_linear(a_rows, rhs, exact)
    if status == "none":
        return None, False
    probs, v = x[:k], x[k]
    degenerate = status == "many"
    if exact:
        if any(p < 0 for p in probs):
            return None, degenerate
    else:
        if any(p < -tol for p in probs):
            return None, degenerate
        probs = [max(p, 0.0) for p in probs]
        total = sum(probs)
        if abs(total - 1.0) > 1e-9:
            return None, degenerate
        probs = [p / total for p in probs]
    return (probs, v), degenerate


def mixed_equilibria(g: ExtendedGame, mode: str = "auto",
                     tol: float = DEVIATION_TOL) -> EquilibriumReport:
    """All Nash equilibria found by support enumeration.

    Pure equilibria appear as singleton supports.  Support pairs whose
    indifference system is singular but solvable are flagged degenerate;
    one member of the family is sampled, the family is not enumerated.
    """
    u1, u2 = _payoff_grids(g)
    n = g.n
    if n > 6:
        raise DimensionMismatchError(
            f"support enumeration is limited to 6 strategies per side, got {n}"
        )
    exact = mode != "float" and _grid_exact(u1, u2)
    if mode == "exact" and not exact:
        raise ExactnessError("exact mode requires exact game entries")
    zero = Fraction(0) if exact else 0.0

    found = {}
    degenerate_supports = []
    u2_t = [[u2[i][j] for i in range(n)] for j in range(n)]
    all_supports = [
        s for size in range(1, n + 1) for s in combinations(range(n), size)
    ]
    for rows_supp in all_supports:
        for cols_supp in all_supports:
            # player 2's mix over cols_supp makes rows_supp indifferent
            q_sol, q_deg = _indifference_solution(u1, cols_supp, rows_supp, exact, tol)
            if q_sol is None:
                continue
            # player 1's mix over rows_supp makes cols_supp indifferent
            p_sol, p_deg = _indifference_solution(u2_t, rows_supp, cols_supp, exact, tol)
            if p_sol is None:
                continue
            q_probs, v1 = q_sol
            p_probs, v2 = p_sol
            q_full = [zero] * n
            for c, pr in zip(cols_supp, q_probs):
                q_full[c] = pr
            p_full = [zero] * n
            for r, pr in zip(rows_supp, p_probs):
                p_full[r] = pr
            if not _best_response_ok(u1, u2, p_full, q_full, v1, v2,
                                     rows_supp, cols_supp, exact, tol):
                continue
            # An underdetermined system that nevertheless produced an
            # equilibrium with full support on the candidate sets evidences
            # a solution family: record the sample, do not enumerate.
            if (q_deg or p_deg) and all(
                not _is_zero_prob(q_full[c]) for c in cols_supp
            ) and all(not _is_zero_prob(p_full[r]) for r in rows_supp):
                degenerate_supports.append((rows_supp, cols_supp))
            key = _profile_key(p_full, q_full, exact)
            if key not in found:
                supports = (
                    tuple(i for i in range(n) if not _is_zero_prob(p_full[i])),
                    tuple(j for j in range(n) if not _is_zero_prob(q_full[j])),
                )
                kind = "pure" if len(supports[0]) == 1 and len(supports[1]) == 1 else "mixed"
                found[key] = Equilibrium(
                    MixedProfile(tuple(p_full), tuple(q_full)),
                    PayoffPair(_normalize_scalar(v1), _normalize_scalar(v2)),
                    kind,
                    supports,
                )
    ordered = sorted(
        found.values(),
        key=lambda e: (e.supports, tuple(float(v) for v in e.profile.p1),
                       tuple(float(v) for v in e.profile.p2)),
    )
    degenerate = bool(degenerate_supports) or any(
        _excess_best_responses(u1, u2, e, exact, tol) for e in ordered
    )
    return EquilibriumReport(tuple(ordered), degenerate, tuple(degenerate_supports))


def _normalize_scalar(v):
    if isinstance(v, Q2) and v.is_rational:
        return v.as_fraction()
    return v


def _excess_best_responses(u1, u2, eq: "Equilibrium", exact, tol) -> bool:
    """Degeneracy test: a mix with more pure best responses than its
    opponent's support size signals an equilibrium family."""
    n = len(eq.profile.p1)
    vals1 = [sum(u1[i][j] * eq.profile.p2[j] for j in range(n)) for i in range(n)]
    vals2 = [sum(u2[i][j] * eq.profile.p1[i] for i in range(n)) for j in range(n)]
    if exact:
        br1 = sum(1 for v in vals1 if v == max(vals1))
        br2 = sum(1 for v in vals2 if v == max(vals2))
    else:
        m1, m2 = max(map(float, vals1)), max(map(float, vals2))
        br1 = sum(1 for v in vals1 if float(v) >= m1 - tol)
        br2 = sum(1 for v in vals2 if float(v) >= m2 - tol)
    return br1 > len(eq.supports[1]) or br2 > len(eq.supports[0])


def _profile_key(p_full, q_full, exact):
    if exact:
        return tuple(p_full), tuple(q_full)
    return tuple(round(float(v), 9) for v in p_full + q_full)


def _best_response_ok(u1, u2, p_full, q_full, v1, v2, rows_supp, cols_supp,
                      exact, tol):
    n = len(p_full)
    for r in range(n):
        if r in rows_supp:
            continue
        val = sum(u1[r][j] * q_full[j] for j in range(n))
        if exact:
            if val > v1:
                return False
        elif float(val) > float(v1) + tol:
            return False
    for c in range(n):
        if c in cols_supp:
            continue
        val = sum(u2[i][c] * p_full[i] for i in range(n))
        if exact:
            if val > v2:
                return False
        elif float(val) > float(v2) + tol:
            return False
    return True


def verify_equilibrium(g: ExtendedGame, eq: Equilibrium,
                       tol: float = DEVIATION_TOL) -> bool:
    """Independent no-profitable-deviation check against all pure strategies."""
    vals1 = best_response_values(g, eq.profile.p2, side="row")
    vals2 = best_response_values(g, eq.profile.p1, side="col")
    u1 = sum(v * p for v, p in zip(vals1, eq.profile.p1))
    u2 = sum(v * p for v, p in zip(vals2, eq.profile.p2))
    return (
        all(float(u1) >= float(v) - tol for v in vals1)
        and all(float(u2) >= float(v) - tol for v in vals2)
    )
