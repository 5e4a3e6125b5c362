"""Quantum extensions of 2x2 games with finite unitary strategy sets:
construction, isomorphism-invariance verification, exact extension
bimatrices for the permissible families, and Nash equilibrium solving.
"""

from .equivalence import (
    EquivClassPartition,
    are_equivalent,
    partition,
    random_su2_opponents,
)
from .errors import (
    DimensionMismatchError,
    DomainError,
    EwlError,
    ExactnessError,
    InvalidClassParams,
    NotDiscreteError,
)
from .exactnum import Angle, Q2, exact_cos, exact_sin
from .extensions import (
    ClassId,
    ClassParams,
    enumerate_discrete_solutions,
    extension_matrix,
    limit_check,
    strategy_set,
)
from .invariance import (
    ExtendedGame,
    IsoVariant,
    build_extended_game,
    criterion_holds,
    iso_variant,
    block_combination_invariant,
    strongly_isomorphic,
    verify_invariance_end_to_end,
)
from .nash import (
    Equilibrium,
    EquilibriumReport,
    MixedProfile,
    best_response_values,
    mixed_equilibria,
    pure_equilibria,
    verify_equilibrium,
)
from .payoff import (
    Bimatrix2,
    CoefficientVector,
    PayoffPair,
    PRISONERS_DILEMMA,
    coefficients,
    payoff_closed_form,
    payoff_oracle,
)
from .solver import LatticeSpec, SearchResult, check_relations, search_solutions
from .su2 import IDENTITY, IX, StrategyParams, build_unitary, canonicalize, phi

__version__ = "0.1.0"

__all__ = [
    "Angle",
    "Bimatrix2",
    "ClassId",
    "ClassParams",
    "CoefficientVector",
    "DimensionMismatchError",
    "DomainError",
    "EquivClassPartition",
    "Equilibrium",
    "EquilibriumReport",
    "EwlError",
    "ExactnessError",
    "ExtendedGame",
    "IDENTITY",
    "IX",
    "InvalidClassParams",
    "IsoVariant",
    "LatticeSpec",
    "MixedProfile",
    "NotDiscreteError",
    "PRISONERS_DILEMMA",
    "PayoffPair",
    "Q2",
    "SearchResult",
    "StrategyParams",
    "are_equivalent",
    "best_response_values",
    "build_extended_game",
    "build_unitary",
    "canonicalize",
    "check_relations",
    "coefficients",
    "criterion_holds",
    "enumerate_discrete_solutions",
    "exact_cos",
    "exact_sin",
    "extension_matrix",
    "iso_variant",
    "block_combination_invariant",
    "limit_check",
    "mixed_equilibria",
    "partition",
    "payoff_closed_form",
    "payoff_oracle",
    "phi",
    "pure_equilibria",
    "random_su2_opponents",
    "search_solutions",
    "strategy_set",
    "strongly_isomorphic",
    "verify_equilibrium",
    "verify_invariance_end_to_end",
]
