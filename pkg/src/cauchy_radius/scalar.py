"""Scalar polynomials: gaps, multipliers and Cauchy radii."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import InvalidPolynomialError
from .radius import DEFAULT_REL_TOL, RadiusEquation, positive_root
from .structure import (
    GapProfile,
    MultiplierKind,
    Strategy,
    check_kind_admissible,
    factor_degree,
    gap_from_mask,
    guaranteed_leading_zeros,
    leading_zero_count_from_mask,
    select_kind,
)
from .trace import BoundTrace, TraceLevel

DEFAULT_LEVELS = 5


@dataclass(frozen=True, eq=False)
class ScalarPoly:
    """Polynomial ``a_0 + a_1 z + ... + a_n z^n`` with ``a_n != 0``.

    Parameters
    ----------
    coeffs : sequence of complex
        Ascending coefficients.  Trailing exact zeros are stripped.
    snap : float, optional
        Coefficients with ``|a_j| <= snap * max|a|`` are set to exactly zero
        before stripping.  Off (0) by default: gap indices are structural.
    """

    coeffs: np.ndarray

    def __init__(self, coeffs: Union[Sequence[complex], np.ndarray], snap: float = 0.0):
        a = np.array(coeffs, dtype=np.complex128).ravel()
        if a.size == 0:
            raise InvalidPolynomialError("polynomial needs at least one coefficient")
        if not np.all(np.isfinite(a)):
            raise InvalidPolynomialError("coefficients must be finite")
        if snap > 0.0:
            a[np.abs(a) <= snap * np.max(np.abs(a))] = 0.0
        nz = np.flatnonzero(a)
        if nz.size == 0:
            raise InvalidPolynomialError("the zero polynomial has no Cauchy radius")
        a = a[: nz[-1] + 1].copy()
        a.setflags(write=False)
        object.__setattr__(self, "coeffs", a)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def leading(self) -> complex:
        return complex(self.coeffs[-1])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ScalarPoly):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    def __repr__(self) -> str:
        return f"ScalarPoly({self.coeffs.tolist()!r})"

    def __call__(self, z):
        return np.polyval(self.coeffs[::-1], z)

    def scaled(self, c: complex) -> "ScalarPoly":
        return ScalarPoly(self.coeffs * c)


def gap_profile(p: ScalarPoly) -> GapProfile:
    return gap_from_mask(p.coeffs != 0)


def leading_zero_count(p: ScalarPoly) -> int:
    return leading_zero_count_from_mask(p.coeffs != 0)


def select_multiplier(p: ScalarPoly) -> MultiplierKind:
    """Multiplier kind with the most guaranteed leading zeros."""
    return select_kind(gap_profile(p))


def scalar_multiplier(p: ScalarPoly, kind: MultiplierKind) -> ScalarPoly:
    """The factor polynomial (not the product) for ``kind``."""
    gap = gap_profile(p)
    check_kind_admissible(gap, kind)
    a = p.coeffs
    n, k, ell = p.degree, gap.k, gap.ell
    an, ank = a[n], a[n - k]
    f = np.zeros(factor_degree(gap, kind) + 1, dtype=np.complex128)
    if kind is MultiplierKind.RS:
        f[k] = an
        f[0] = -ank
    elif kind is MultiplierKind.Q1:
        f[k + ell] = an
        f[ell] = -ank
        f[0] = -a[n - k - ell]
    else:
        f[2 * k] = an
        f[k] = -ank
        f[0] = ank * ank / an
        if kind is MultiplierKind.Q3:
            f[0] = -a[n - 2 * k] + f[0]
    return ScalarPoly(f)


def poly_mul(a: ScalarPoly, b: ScalarPoly) -> ScalarPoly:
    """Coefficient convolution."""
    return ScalarPoly(np.convolve(a.coeffs, b.coeffs))


def apply_scalar_multiplier(p: ScalarPoly, kind: MultiplierKind) -> ScalarPoly:
    """Return ``factor * p`` with the structurally vanishing coefficients zeroed.

    The coefficients right below the product's lead cancel algebraically;
    in floating point they come out as rounding residue, which would
    otherwise corrupt the gap structure seen by the next level.
    """
    gap = gap_profile(p)
    prod = np.convolve(scalar_multiplier(p, kind).coeffs, p.coeffs)
    top = prod.size - 1
    zeros = guaranteed_leading_zeros(gap, kind)
    prod[top - zeros: top] = 0.0
    return ScalarPoly(prod)


def scalar_cauchy_radius(p: ScalarPoly, rel_tol: float = DEFAULT_REL_TOL) -> float:
    if p.degree == 0:
        raise InvalidPolynomialError("constant polynomial has no zeros to bound")
    mags = np.abs(p.coeffs)
    return positive_root(RadiusEquation(mags[-1], mags[:-1]), rel_tol)


def _pow2_rescale(coeffs: np.ndarray) -> np.ndarray:
    # power-of-two factor keeps the scaling exact, so the radius is unchanged bit for bit
    _, e = math.frexp(float(np.max(np.abs(coeffs))))
    return coeffs * math.ldexp(1.0, -e)


def refine_scalar(
    p: ScalarPoly,
    levels: int = DEFAULT_LEVELS,
    strategy: Strategy = Strategy.SELECTED,
    rel_tol: float = DEFAULT_REL_TOL,
    rescale: bool = True,
) -> BoundTrace:
    """Cauchy radius of ``p`` followed by ``levels`` multiplier applications."""
    if levels < 0:
        raise ValueError("levels must be >= 0")
    gap_profile(p)  # monomial guard
    trace = BoundTrace()
    t0 = time.perf_counter()
    r = scalar_cauchy_radius(p, rel_tol)
    trace.levels.append(
        TraceLevel(0, r, None, p.degree, leading_zero_count(p), time.perf_counter() - t0)
    )
    q = p
    for level in range(1, levels + 1):
        t0 = time.perf_counter()
        kind = select_multiplier(q) if strategy is Strategy.SELECTED else MultiplierKind.RS
        q = apply_scalar_multiplier(q, kind)
        if rescale:
            q = ScalarPoly(_pow2_rescale(q.coeffs))
        r = scalar_cauchy_radius(q, rel_tol)
        trace.levels.append(
            TraceLevel(level, r, kind, q.degree, leading_zero_count(q), time.perf_counter() - t0)
        )
    return trace
