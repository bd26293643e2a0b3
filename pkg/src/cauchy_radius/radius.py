"""Unique positive root of Cauchy-type equations.

Every bound in the package reduces to the same real problem: find the
positive zero of

    f(x) = c_N x^N - (c_{N-1} x^{N-1} + ... + c_1 x + c_0)

with ``c_N > 0`` and ``c_j >= 0``.  By Descartes' rule there is exactly one
sign change on ``(0, inf)`` when some ``c_j`` is positive.  The scaled form
``g(x) = f(x) / x^N = c_N - sum c_j x^(j-N)`` is strictly increasing and
concave on ``(0, inf)``, so Newton's method started left of the root climbs
monotonically onto it; that is what the polish step relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidEquationError

DEFAULT_REL_TOL = 1e-12

_BISECTION_REL_TOL = 1e-3
_MAX_NEWTON = 100
_MAX_BISECTION = 2000


@dataclass(frozen=True)
class RadiusEquation:
    """``leading * x**N - sum(lower[j] * x**j) = 0`` with ``N = len(lower)``."""

    leading: float
    lower: tuple[float, ...]

    def __init__(self, leading: float, lower: Sequence[float]):
        lower = tuple(float(c) for c in lower)
        leading = float(leading)
        if not lower:
            raise InvalidEquationError("radius equation needs degree >= 1")
        if not math.isfinite(leading) or leading <= 0.0:
            raise InvalidEquationError(f"leading magnitude must be finite and > 0, got {leading!r}")
        for j, c in enumerate(lower):
            if not math.isfinite(c) or c < 0.0:
                raise InvalidEquationError(f"lower[{j}] must be finite and >= 0, got {c!r}")
        object.__setattr__(self, "leading", leading)
        object.__setattr__(self, "lower", lower)

    @property
    def degree(self) -> int:
        return len(self.lower)

    @classmethod
    def from_magnitudes(cls, magnitudes: Sequence[float]) -> "RadiusEquation":
        """Build from ascending magnitudes ``c_0, ..., c_N`` (last is leading)."""
        magnitudes = list(magnitudes)
        return cls(magnitudes[-1], magnitudes[:-1])


def _scaled(eq: RadiusEquation, x: float) -> tuple[float, float]:
    """Return ``g(x) = f(x)/x^N`` and ``g'(x)`` for ``x > 0``."""
    n = eq.degree
    inv = 1.0 / x
    g = eq.leading
    dg = 0.0
    # Horner on powers of 1/x: sum_j c_j x^(j-N) = sum_{i=1..N} c_{N-i} inv^i
    p = 1.0
    for i in range(1, n + 1):
        p *= inv
        c = eq.lower[n - i]
        if c:
            t = c * p
            g -= t
            dg += i * t
    return g, dg * inv


def residual(eq: RadiusEquation, x: float) -> float:
    """Evaluate ``f(x)``.

    For ``x > 1`` the sum is formed as ``x^N * g(x)`` so intermediate terms
    stay bounded; the final product may still overflow to ``inf`` for huge
    ``x^N``, which is the honest value.
    """
    x = float(x)
    if not math.isfinite(x) or x < 0.0:
        raise InvalidEquationError(f"residual needs a finite x >= 0, got {x!r}")
    if x > 1.0:
        g, _ = _scaled(eq, x)
        if g == 0.0:
            return 0.0
        try:
            return g * x ** eq.degree
        except OverflowError:
            return math.copysign(math.inf, g)
    # Horner in ascending direction is safe for x <= 1
    acc = eq.leading
    for c in reversed(eq.lower):
        acc = acc * x - c
    return acc


def _sign(eq: RadiusEquation, x: float) -> float:
    if x > 1.0:
        return _scaled(eq, x)[0]
    return residual(eq, x)


def _normalized(eq: RadiusEquation) -> tuple[RadiusEquation, int]:
    """Rescale ``x = 2^e y`` so the root in ``y`` lies in ``[1, 2]``.

    Works on binary exponents directly, so neither the coefficient ratios
    nor their powers can under- or overflow on the way.  Returns the
    equation in ``y`` (leading coefficient 1) and ``e``.
    """
    n = eq.degree
    ml, el = math.frexp(eq.leading)
    log2_lead = math.log2(ml) + el
    # log2 of (c_j / c_N)^(1/(N-j)); the largest one fixes the scale
    e = max(
        math.floor((math.log2(m) + ex - log2_lead) / (n - j))
        for j, (m, ex) in ((j, math.frexp(c)) for j, c in enumerate(eq.lower) if c > 0.0)
    )
    lower = []
    for j, c in enumerate(eq.lower):
        if c == 0.0:
            lower.append(0.0)
            continue
        m, ex = math.frexp(c)
        lower.append(math.ldexp(m / ml, ex - el - e * (n - j)))
    return RadiusEquation(1.0, lower), e


def positive_root(eq: RadiusEquation, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """Return the unique positive root of ``eq`` (0 if all lower terms vanish).

    The equation is first rescaled by a power of two (exact) so that its
    largest single-term bound ``M = max_j (c_j/c_N)^(1/(N-j))`` lies in
    ``[1, 2)``.  The root is then bracketed by ``[M, min(2M, max(1, S))]`` with
    ``S = sum_j c_j / c_N``; the left end is forced by any single term, the
    right ends are the classical Fujiwara and Cauchy-type bounds.  A short
    bisection shrinks the bracket, then Newton on the scaled residual
    polishes from the left.
    """
    if not rel_tol > 0.0:
        raise ValueError("rel_tol must be positive")
    if not any(c > 0.0 for c in eq.lower):
        return 0.0
    norm, e = _normalized(eq)
    return math.ldexp(_solve_normalized(norm, rel_tol), e)


def _solve_normalized(eq: RadiusEquation, rel_tol: float) -> float:
    lead = eq.leading
    n = eq.degree
    active = [(j, c) for j, c in enumerate(eq.lower) if c > 0.0]
    lo = max((c / lead) ** (1.0 / (n - j)) for j, c in active)
    hi = min(2.0 * lo, max(1.0, sum(c for _, c in active) / lead))
    if not hi > lo:
        hi = 2.0 * lo
    # the closed-form bracket can be off by rounding; widen until signs agree
    while _sign(eq, lo) > 0.0:
        lo *= 0.5
    while _sign(eq, hi) < 0.0:
        hi *= 2.0

    for _ in range(_MAX_BISECTION):
        if hi - lo <= _BISECTION_REL_TOL * hi:
            break
        mid = 0.5 * (lo + hi)
        if _sign(eq, mid) < 0.0:
            lo = mid
        else:
            hi = mid

    x = lo
    for _ in range(_MAX_NEWTON):
        g, dg = _scaled(eq, x)
        if not (math.isfinite(g) and math.isfinite(dg)):
            return _bisect(eq, lo, hi, rel_tol)
        if g >= 0.0 or dg <= 0.0:
            return x
        x_new = min(x - g / dg, hi)
        if x_new - x <= 0.1 * rel_tol * x:
            return x_new
        x = x_new
    return _bisect(eq, lo, hi, rel_tol)


def _bisect(eq: RadiusEquation, lo: float, hi: float, rel_tol: float) -> float:
    for _ in range(_MAX_BISECTION):
        if hi - lo <= rel_tol * hi * 0.5:
            break
        mid = 0.5 * (lo + hi)
        if _sign(eq, mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def radius_from_magnitudes(magnitudes: np.ndarray, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """Positive root for ascending magnitudes ``c_0..c_N`` given as an array."""
    return positive_root(RadiusEquation.from_magnitudes(np.asarray(magnitudes, dtype=float)), rel_tol)
