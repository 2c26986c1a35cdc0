"""Certified exact arithmetic over real algebraic numbers."""

from .enclosure import RationalTermsEvaluator, Sign, certify_sign, eval_enclosure
from .field import FieldElement, ScalarField, is_exact_scalar
from .linalg import dot, gram_det, gram_matrix, row_reduction_rank, solve
from .polynomial import NEG_INF, IntPolynomial, determinant, poly_norms, poly_product
from .scalar import (AlgebraicScalar, as_fraction, height, parse_scalar_literal,
                     scalar_to_literal, sturm_count)
from .separation import SeparationContext, separation_bound

__all__ = [
    "AlgebraicScalar", "FieldElement", "IntPolynomial", "NEG_INF", "RationalTermsEvaluator",
    "ScalarField", "SeparationContext", "Sign", "as_fraction", "certify_sign", "determinant",
    "dot", "eval_enclosure", "gram_det", "gram_matrix", "height", "is_exact_scalar",
    "parse_scalar_literal", "poly_norms", "poly_product", "row_reduction_rank",
    "scalar_to_literal", "separation_bound", "solve", "sturm_count",
]
