"""Exact arithmetic: polynomials, Groebner bases, real algebraic numbers, linear algebra."""

from .algebraic import AlgebraicNumber, FieldElement, NumberField
from .groebner import BudgetExhausted, GroebnerBudget, GroebnerEngine, groebner_reduced, ideal_is_trivial
from .linalg import bareiss_det, bareiss_rank, charpoly, rank
from .poly import Poly

__all__ = [
    "AlgebraicNumber",
    "BudgetExhausted",
    "FieldElement",
    "GroebnerBudget",
    "GroebnerEngine",
    "NumberField",
    "Poly",
    "bareiss_det",
    "bareiss_rank",
    "charpoly",
    "groebner_reduced",
    "ideal_is_trivial",
    "rank",
]
