"""Exact field and polynomial kernel."""

from .algorithms import (
    SquarefreeDecomposition,
    binary_discriminant,
    binary_resultant,
    determinant,
    field_det,
    field_inverse,
    field_nullspace,
    field_rank,
    field_rref,
    field_solve,
    is_squarefree,
    linear_substitution,
    mat_mul,
    minor_gcd_locus,
    minors,
    poly_gcd,
    poly_gcd_many,
    resultant,
    squarefree_decomposition,
)
from .field import QQ, Field, FieldElement, as_fraction, format_element
from .parser import PolySyntaxError, poly_parse
from .poly import MultiPoly
from .printer import format_poly

__all__ = [
    "Field",
    "FieldElement",
    "MultiPoly",
    "PolySyntaxError",
    "QQ",
    "SquarefreeDecomposition",
    "as_fraction",
    "binary_discriminant",
    "binary_resultant",
    "determinant",
    "field_det",
    "field_inverse",
    "field_nullspace",
    "field_rank",
    "field_rref",
    "field_solve",
    "format_element",
    "format_poly",
    "is_squarefree",
    "linear_substitution",
    "mat_mul",
    "minor_gcd_locus",
    "minors",
    "poly_gcd",
    "poly_gcd_many",
    "poly_parse",
    "resultant",
    "squarefree_decomposition",
]
