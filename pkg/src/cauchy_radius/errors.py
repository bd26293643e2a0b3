"""Exception hierarchy shared by the bound, multiplier and oracle code."""

from __future__ import annotations


class CauchyRadiusError(Exception):
    """Base class for all errors raised by this package."""


class InvalidEquationError(CauchyRadiusError, ValueError):
    """A radius equation has negative or non-finite magnitudes."""


class InvalidPolynomialError(CauchyRadiusError, ValueError):
    """Coefficient data does not describe a valid polynomial."""


class NoGapError(CauchyRadiusError, ValueError):
    """The polynomial is a monomial, so the gap index k is undefined."""


class UnsupportedMultiplierError(CauchyRadiusError, ValueError):
    """A multiplier kind was requested whose structural hypotheses fail."""


class SingularMatrixError(CauchyRadiusError, ArithmeticError):
    """LU factorization met a pivot below the singularity floor."""


class PreconditionError(CauchyRadiusError):
    """Commutation / norm-identity hypotheses fail for a refinement step.

    ``diagnostics`` lists every failed condition.
    """

    def __init__(self, message: str, diagnostics: list[str] | None = None):
        super().__init__(message)
        self.diagnostics = list(diagnostics or [])


class ConvergenceError(CauchyRadiusError, RuntimeError):
    """The QR iteration exhausted its sweep budget."""
