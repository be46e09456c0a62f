from .gf2n import FieldContext, ExtensionContext, make_field, quadratic_extension
from .polyops import Poly, Degree10Coeffs, DerivedPair

__all__ = [
    "FieldContext",
    "ExtensionContext",
    "make_field",
    "quadratic_extension",
    "Poly",
    "Degree10Coeffs",
    "DerivedPair",
]
