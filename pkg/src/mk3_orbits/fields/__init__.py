"""Prime fields and exact characteristic-0 towers behind one contract."""

from .base import Field, FieldOps, field_arith
from .parse import parse_element, parse_field
from .polys import minimal_polynomial, poly_resultant
from .primefield import PrimeFieldCtx, fp_make, fp_sqrt
from .tower import QQ, QuotientExtension, RationalFunctions, Rationals

__all__ = [
    "QQ",
    "Field",
    "FieldOps",
    "PrimeFieldCtx",
    "QuotientExtension",
    "RationalFunctions",
    "Rationals",
    "field_arith",
    "fp_make",
    "fp_sqrt",
    "minimal_polynomial",
    "parse_element",
    "parse_field",
    "poly_resultant",
]
