"""Payoffs of the quantized 2x2 game, computed two independent ways.

The closed form expands the final-state amplitudes into four squared
coefficients weighting the classical payoff entries; the oracle builds the
two-qubit statevector J^dag (U1 x U2) J |00> directly and measures.  Both
paths are kept and cross-checked, because the closed form is long and easy
to mistranscribe while the statevector route is short.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Tuple, Union

import numpy as np

from .errors import DimensionMismatchError, ExactnessError
from .exactnum import Q2, exact_cos, exact_sin
from .su2 import StrategyParams, build_unitary

Scalar = Union[Fraction, Q2, float, int]

_HALF = Fraction(1, 2)
_QUARTER = Fraction(1, 4)


class PayoffPair(NamedTuple):
    u1: Scalar
    u2: Scalar


class CoefficientVector(NamedTuple):
    """Weights on Delta_00, Delta_01, Delta_10, Delta_11; nonnegative, sum 1."""

    c00: Scalar
    c01: Scalar
    c10: Scalar
    c11: Scalar


# -- classical game ---------------------------------------------------------


def parse_scalar(x) -> Scalar:
    """Parse a payoff entry: exact if written as an int or 'p/q' string."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return x
    s = str(x).strip()
    try:
        return Fraction(s)
    except ValueError:
        pass
    if "sqrt(2)" in s:
        head, _, tail = s.replace(" ", "").partition("*sqrt(2)")
        if head.endswith(("+", "-")):
            raise ExactnessError(f"cannot parse scalar {x!r}")
        for i in range(len(head) - 1, 0, -1):
            if head[i] in "+-":
                return Q2(Fraction(head[:i]), Fraction(head[i:]))
        return Q2(0, Fraction(head))
    return float(s)


def format_scalar(x: Scalar) -> Union[str, float]:
    """JSON form of a payoff entry: exact string or float."""
    if isinstance(x, Q2):
        if x.is_rational:
            x = x.as_fraction()
        else:
            return f"{x.a}+{x.b}*sqrt(2)" if x.b > 0 else f"{x.a}{x.b}*sqrt(2)"
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    return float(x)


def scalar_is_exact(x: Scalar) -> bool:
    return isinstance(x, (int, Fraction, Q2))


@dataclass(frozen=True)
class Bimatrix2:
    """A 2x2 strategic-form game: four payoff pairs, exact or float entries."""

    delta: Tuple[Tuple[PayoffPair, PayoffPair], Tuple[PayoffPair, PayoffPair]]

    @staticmethod
    def from_rows(rows) -> "Bimatrix2":
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise DimensionMismatchError("a Bimatrix2 needs a 2x2 grid of pairs")
        grid = tuple(
            tuple(PayoffPair(parse_scalar(a), parse_scalar(b)) for a, b in row)
            for row in rows
        )
        return Bimatrix2(grid)

    @staticmethod
    def from_json(obj) -> "Bimatrix2":
        return Bimatrix2.from_rows(obj["payoffs"])

    def to_json(self) -> dict:
        return {
            "payoffs": [
                [[format_scalar(p.u1), format_scalar(p.u2)] for p in row]
                for row in self.delta
            ]
        }

    @property
    def is_exact(self) -> bool:
        return all(
            scalar_is_exact(p.u1) and scalar_is_exact(p.u2)
            for row in self.delta
            for p in row
        )

    def entry(self, i: int, j: int) -> PayoffPair:
        return self.delta[i][j]

    def values_u1(self):
        return [[p.u1 for p in row] for row in self.delta]

    def values_u2(self):
        return [[p.u2 for p in row] for row in self.delta]


PRISONERS_DILEMMA = Bimatrix2.from_rows([[(3, 3), (0, 5)], [(5, 0), (1, 1)]])


# -- coefficient vector, exact path -----------------------------------------
#
# Writing x = a1+a2, y = b1+b2, u = a1-b2, v = a2-b1 the four squared
# amplitudes expand into products of full-angle cosines/sines only:
#
#   c00 = cos^2 x * CC + 2 cos x sin y * W + sin^2 y * SS
#   c11 = sin^2 x * CC - 2 sin x cos y * W + cos^2 y * SS
#   c01 = cos^2 u * CS + 2 cos u sin v * W + sin^2 v * SC
#   c10 = sin^2 u * CS + 2 sin u cos v * W + cos^2 v * SC
#
# with CC = cos^2(t1/2)cos^2(t2/2), SS, CS, SC analogous and
# W = sin t1 sin t2 / 4 (theta/2 in [0, pi/2], so the products carry no sign).


@lru_cache(maxsize=1 << 18)
def _coefficients_exact(t1: Fraction, a1: Fraction, b1: Fraction,
                        t2: Fraction, a2: Fraction, b2: Fraction) -> CoefficientVector:
    c1, c2 = exact_cos(t1), exact_cos(t2)
    s1s2 = (exact_cos(t1 - t2) - exact_cos(t1 + t2)) * _HALF
    cc = (1 + c1) * (1 + c2) * _QUARTER
    ss = (1 - c1) * (1 - c2) * _QUARTER
    cs = (1 + c1) * (1 - c2) * _QUARTER
    sc = (1 - c1) * (1 + c2) * _QUARTER
    w = s1s2 * _QUARTER

    def sq_cos(k):  # cos^2(k*pi)
        return (1 + exact_cos(2 * k)) * _HALF

    def sq_sin(k):
        return (1 - exact_cos(2 * k)) * _HALF

    def cos_sin(k, m):  # cos(k*pi) sin(m*pi)
        return (exact_sin(k + m) - exact_sin(k - m)) * _HALF

    x, y = a1 + a2, b1 + b2
    u, v = a1 - b2, a2 - b1
    c00 = sq_cos(x) * cc + 2 * cos_sin(x, y) * w + sq_sin(y) * ss
    c11 = sq_sin(x) * cc - 2 * cos_sin(y, x) * w + sq_cos(y) * ss
    c01 = sq_cos(u) * cs + 2 * cos_sin(u, v) * w + sq_sin(v) * sc
    c10 = sq_sin(u) * cs + 2 * cos_sin(v, u) * w + sq_cos(v) * sc
    return CoefficientVector(c00, c01, c10, c11)


def _coefficients_float(p1: StrategyParams, p2: StrategyParams) -> CoefficientVector:
    t1, a1, b1 = (p1.theta.to_radians(), p1.alpha.to_radians(), p1.beta.to_radians())
    t2, a2, b2 = (p2.theta.to_radians(), p2.alpha.to_radians(), p2.beta.to_radians())
    c1, s1 = math.cos(t1 / 2), math.sin(t1 / 2)
    c2, s2 = math.cos(t2 / 2), math.sin(t2 / 2)
    a00 = math.cos(a1 + a2) * c1 * c2 + math.sin(b1 + b2) * s1 * s2
    a01 = math.cos(a1 - b2) * c1 * s2 + math.sin(a2 - b1) * s1 * c2
    a10 = math.sin(a1 - b2) * c1 * s2 + math.cos(a2 - b1) * s1 * c2
    a11 = math.sin(a1 + a2) * c1 * c2 - math.cos(b1 + b2) * s1 * s2
    return CoefficientVector(a00 * a00, a01 * a01, a10 * a10, a11 * a11)


def coefficients(p1: StrategyParams, p2: StrategyParams,
                 mode: str = "auto") -> CoefficientVector:
    """The four squared final-state amplitudes, in Delta_00..Delta_11 order.

    mode 'exact' demands angles whose trigonometry closes in Q(sqrt(2)) and
    raises ExactnessError otherwise; 'float' always uses doubles; 'auto'
    uses exact arithmetic when the inputs allow it.
    """
    if mode not in ("auto", "exact", "float"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode != "float" and p1.is_exact and p2.is_exact:
        try:
            return _coefficients_exact(
                p1.theta.frac, p1.alpha.frac, p1.beta.frac,
                p2.theta.frac, p2.alpha.frac, p2.beta.frac,
            )
        except ExactnessError:
            if mode == "exact":
                raise
    elif mode == "exact":
        raise ExactnessError("exact mode needs exact rational-of-pi angles")
    return _coefficients_float(p1, p2)


# -- payoffs -----------------------------------------------------------------


def _combine(game: Bimatrix2, c: CoefficientVector) -> PayoffPair:
    cells = (game.delta[0][0], game.delta[0][1], game.delta[1][0], game.delta[1][1])
    exact = game.is_exact and all(scalar_is_exact(k) for k in c)
    if exact:
        u1 = sum((Q2.coerce(k) * p.u1 for k, p in zip(c, cells)), Q2(0))
        u2 = sum((Q2.coerce(k) * p.u2 for k, p in zip(c, cells)), Q2(0))
        if u1.is_rational:
            u1 = u1.as_fraction()
        if u2.is_rational:
            u2 = u2.as_fraction()
        return PayoffPair(u1, u2)
    u1 = sum(float(k) * float(p.u1) for k, p in zip(c, cells))
    u2 = sum(float(k) * float(p.u2) for k, p in zip(c, cells))
    return PayoffPair(u1, u2)


def payoff_closed_form(game: Bimatrix2, p1: StrategyParams, p2: StrategyParams,
                       mode: str = "auto") -> PayoffPair:
    """Both players' payoffs as the coefficient-weighted sum of game entries."""
    return _combine(game, coefficients(p1, p2, mode=mode))


# -- statevector oracle -------------------------------------------------------

_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_J = (np.eye(4, dtype=complex) + 1j * np.kron(_SX, _SX)) / math.sqrt(2.0)
_J_DAG = _J.conj().T


def final_state(p1: StrategyParams, p2: StrategyParams) -> np.ndarray:
    """|Psi> = J^dag (U1 x U2) J |00> as a 4-vector over |00>,|01>,|10>,|11>."""
    u = np.kron(build_unitary(p1), build_unitary(p2))
    return _J_DAG @ u @ _J[:, 0]


def payoff_oracle(game: Bimatrix2, p1: StrategyParams, p2: StrategyParams) -> PayoffPair:
    """Independent payoff computation via the two-qubit statevector.

    The measurement operators are diagonal in the computational basis with
    the classical payoffs as weights, so expectation values reduce to
    probability-weighted sums.
    """
    probs = np.abs(final_state(p1, p2)) ** 2
    cells = (game.delta[0][0], game.delta[0][1], game.delta[1][0], game.delta[1][1])
    u1 = float(sum(w * float(p.u1) for w, p in zip(probs, cells)))
    u2 = float(sum(w * float(p.u2) for w, p in zip(probs, cells)))
    return PayoffPair(u1, u2)
