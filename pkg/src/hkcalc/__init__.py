"""Exact operator calculus on the flat hypercomplex Kahler model.

The package implements, over exact complex rationals, the pointwise exterior
algebra of the flat quaternionic model, the twisted Dolbeault operators and
their commutation tables, bundle curvature with its Bochner-Kodaira-Nakano
comparisons, and the fiberwise positivity certificates those comparisons
drive.  Everything is verified with zero tolerance; reports record any row
whose printed constant differs from the derived one.
"""

__version__ = "0.1.0"

from .scalars import (
    Scalar,
    Jet,
    FourierPoly,
    jet_invert,
    jet_compose,
    NotInvertible,
    InvalidWeight,
    NotDifferentiable,
    VariantMismatch,
)

__all__ = [
    "Scalar",
    "Jet",
    "FourierPoly",
    "jet_invert",
    "jet_compose",
    "NotInvertible",
    "InvalidWeight",
    "NotDifferentiable",
    "VariantMismatch",
    "__version__",
]
