"""Cauchy radii of scalar and matrix polynomials, refined by polynomial multipliers.

The Cauchy radius bounds every zero (or eigenvalue) of a polynomial.  Multiplying
by a short factor that cancels the leading coefficients pushes zeros below the
leading term, which lowers the radius of the product without losing any root
of the original.  Repeating this gives a nonincreasing ladder of bounds.
"""

from __future__ import annotations

from .errors import (
    CauchyRadiusError,
    ConvergenceError,
    InvalidEquationError,
    InvalidPolynomialError,
    NoGapError,
    PreconditionError,
    SingularMatrixError,
    UnsupportedMultiplierError,
)
from .matrix import (
    MatrixPoly,
    MultiplierChoice,
    NormKind,
    PreconditionReport,
    Side,
    apply_multiplier,
    check_preconditions,
    mat_inverse,
    mat_norm,
    matrix_cauchy_radius,
    matrix_multiplier,
    monicize,
    refine_matrix,
    select_matrix_multiplier,
)
from .oracle import BACKEND, companion_linearize, eigenvalues, polynomial_eigenvalues, spectral_max_modulus
from .radius import RadiusEquation, positive_root, radius_from_magnitudes
from .scalar import (
    ScalarPoly,
    apply_scalar_multiplier,
    refine_scalar,
    scalar_cauchy_radius,
    scalar_multiplier,
    select_multiplier,
)
from .structure import GapProfile, MultiplierKind, Relation, Strategy, guaranteed_leading_zeros
from .trace import BoundTrace, TraceLevel

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BoundTrace",
    "CauchyRadiusError",
    "ConvergenceError",
    "GapProfile",
    "InvalidEquationError",
    "InvalidPolynomialError",
    "MatrixPoly",
    "MultiplierChoice",
    "MultiplierKind",
    "NoGapError",
    "NormKind",
    "PreconditionError",
    "PreconditionReport",
    "RadiusEquation",
    "Relation",
    "ScalarPoly",
    "Side",
    "SingularMatrixError",
    "Strategy",
    "TraceLevel",
    "UnsupportedMultiplierError",
    "apply_multiplier",
    "apply_scalar_multiplier",
    "check_preconditions",
    "companion_linearize",
    "eigenvalues",
    "guaranteed_leading_zeros",
    "mat_inverse",
    "mat_norm",
    "matrix_cauchy_radius",
    "matrix_multiplier",
    "monicize",
    "polynomial_eigenvalues",
    "positive_root",
    "radius_from_magnitudes",
    "refine_matrix",
    "refine_scalar",
    "scalar_cauchy_radius",
    "scalar_multiplier",
    "select_matrix_multiplier",
    "select_multiplier",
    "spectral_max_modulus",
]
