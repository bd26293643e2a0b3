"""Matrix polynomials ``P(z) = sum_j A_j z^j`` with square complex coefficients.

Norms are restricted to the induced 1- and inf-norms.  Both satisfy
``||I|| = 1`` and are submultiplicative, so after monicization the norm
identity ``||A_n^-2||^-1 == ||A_n|| ||A_n^-1||^-1`` required by the
multiplier bounds holds trivially.
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .errors import (
    InvalidPolynomialError,
    PreconditionError,
    SingularMatrixError,
    UnsupportedMultiplierError,
)
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

_EPS = np.finfo(np.float64).eps
PRECONDITION_TOL = 1e-10
DEFAULT_LEVELS = 5
DEFAULT_RESCALE_AFTER = 3


class NormKind(enum.Enum):
    INDUCED_1 = "1"
    INDUCED_INF = "inf"


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


def mat_norm(a: np.ndarray, kind: NormKind = NormKind.INDUCED_1) -> float:
    """Induced 1-norm (max column sum) or inf-norm (max row sum) of moduli."""
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    axis = 0 if kind is NormKind.INDUCED_1 else 1
    return float(np.max(np.sum(np.abs(a), axis=axis)))


def lu_factor(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """LU with partial pivoting, ``a[piv] = L @ U`` packed into one array.

    Raises :class:`SingularMatrixError` when a pivot satisfies
    ``|pivot| <= m * eps * ||a||_1``.
    """
    lu = np.array(a, dtype=np.complex128, copy=True)
    if lu.ndim != 2 or lu.shape[0] != lu.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {lu.shape}")
    m = lu.shape[0]
    floor = m * _EPS * mat_norm(lu, NormKind.INDUCED_1)
    piv = np.arange(m)
    for j in range(m):
        p = j + int(np.argmax(np.abs(lu[j:, j])))
        if abs(lu[p, j]) <= floor:
            raise SingularMatrixError(f"matrix is singular to working precision (column {j})")
        if p != j:
            lu[[j, p]] = lu[[p, j]]
            piv[[j, p]] = piv[[p, j]]
        lu[j + 1:, j] /= lu[j, j]
        lu[j + 1:, j + 1:] -= np.outer(lu[j + 1:, j], lu[j, j + 1:])
    return lu, piv


def lu_solve(lu: np.ndarray, piv: np.ndarray, b: np.ndarray) -> np.ndarray:
    x = np.array(b, dtype=np.complex128)[piv]
    m = lu.shape[0]
    for j in range(m):
        x[j + 1:] -= np.outer(lu[j + 1:, j], x[j])
    for j in range(m - 1, -1, -1):
        x[j] /= lu[j, j]
        x[:j] -= np.outer(lu[:j, j], x[j])
    return x


def mat_inverse(a: np.ndarray) -> np.ndarray:
    lu, piv = lu_factor(a)
    return lu_solve(lu, piv, np.eye(lu.shape[0], dtype=np.complex128))


def _identity_multiple(a: np.ndarray) -> Optional[complex]:
    """``c`` if ``a`` is exactly ``c * I``, else None."""
    c = a[0, 0]
    if c == 0:
        return None
    m = a.shape[0]
    if np.all(np.diagonal(a) == c) and np.count_nonzero(a) == m:
        return complex(c)
    return None


@dataclass(frozen=True, eq=False)
class MatrixPoly:
    """Coefficients ``A_0..A_n`` stacked as an ``(n+1, m, m)`` complex array.

    Trailing null coefficients are stripped; the remaining leading
    coefficient must pass LU with partial pivoting.
    """

    coeffs: np.ndarray

    def __init__(self, coeffs: Union[Sequence[np.ndarray], np.ndarray], snap: float = 0.0,
                 check: bool = True):
        a = np.array(coeffs, dtype=np.complex128)
        if a.ndim != 3 or a.shape[1] != a.shape[2] or a.shape[0] == 0 or a.shape[1] == 0:
            raise InvalidPolynomialError(
                f"coefficients must be a nonempty stack of square matrices, got shape {a.shape}"
            )
        if not np.all(np.isfinite(a)):
            raise InvalidPolynomialError("coefficients must be finite")
        if snap > 0.0:
            norms = np.abs(a).sum(axis=1).max(axis=1)
            a[norms <= snap * norms.max()] = 0.0
        nonnull = np.flatnonzero(np.any(a != 0, axis=(1, 2)))
        if nonnull.size == 0:
            raise InvalidPolynomialError("the zero matrix polynomial is not regular")
        a = a[: nonnull[-1] + 1].copy()
        if check and _identity_multiple(a[-1]) is None:
            lu_factor(a[-1])
        a.setflags(write=False)
        object.__setattr__(self, "coeffs", a)

    @classmethod
    def from_scalar(cls, coeffs: Sequence[complex]) -> "MatrixPoly":
        return cls(np.asarray(coeffs, dtype=np.complex128).reshape(-1, 1, 1))

    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def dim(self) -> int:
        return self.coeffs.shape[1]

    @property
    def leading(self) -> np.ndarray:
        return self.coeffs[-1]

    def nonnull_mask(self) -> np.ndarray:
        return np.any(self.coeffs != 0, axis=(1, 2))

    def is_monic(self) -> bool:
        m = self.dim
        return bool(np.array_equal(self.leading, np.eye(m)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixPoly):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    def __repr__(self) -> str:
        return f"MatrixPoly(degree={self.degree}, dim={self.dim})"

    def __call__(self, z: complex) -> np.ndarray:
        """Evaluate ``P(z)`` by Horner."""
        acc = np.array(self.coeffs[-1])
        for a in self.coeffs[-2::-1]:
            acc = acc * z + a
        return acc

    def scaled(self, c: complex) -> "MatrixPoly":
        return MatrixPoly(self.coeffs * c)


def gap_profile(p: MatrixPoly) -> GapProfile:
    return gap_from_mask(p.nonnull_mask())


def leading_zero_count(p: MatrixPoly) -> int:
    return leading_zero_count_from_mask(p.nonnull_mask())


def select_matrix_multiplier(p: MatrixPoly) -> MultiplierKind:
    return select_kind(gap_profile(p))


def monicize(p: MatrixPoly) -> MatrixPoly:
    """Premultiply by ``A_n^-1``; the new lead is set to ``I`` exactly."""
    if p.is_monic():
        return p
    inv = mat_inverse(p.leading)
    out = np.matmul(inv, p.coeffs)
    out[-1] = np.eye(p.dim)
    return MatrixPoly(out, check=False)


@dataclass
class PreconditionReport:
    ok: bool
    failures: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _commutator_ok(a: np.ndarray, b: np.ndarray, norm: NormKind, tol: float) -> tuple[bool, float]:
    c = mat_norm(a @ b - b @ a, norm)
    return c <= tol * mat_norm(a, norm) * mat_norm(b, norm), c


def check_preconditions(
    p: MatrixPoly,
    kind: MultiplierKind,
    norm: NormKind = NormKind.INDUCED_1,
    tol: float = PRECONDITION_TOL,
) -> PreconditionReport:
    """Check the norm identity and the commutation hypotheses for ``kind``."""
    gap = gap_profile(p)
    an = p.leading
    n, k = p.degree, gap.k
    failures = []
    try:
        check_kind_admissible(gap, kind)
    except UnsupportedMultiplierError as exc:  # reported, not raised
        failures.append(str(exc))
        return PreconditionReport(False, failures)
    if _identity_multiple(an) is not None:
        return PreconditionReport(True)

    inv = mat_inverse(an)
    lhs = 1.0 / mat_norm(inv @ inv, norm)
    rhs = mat_norm(an, norm) / mat_norm(inv, norm)
    if abs(lhs - rhs) > tol * max(abs(lhs), abs(rhs)):
        failures.append(
            f"norm identity fails: ||A_n^-2||^-1 = {lhs:.6g} != ||A_n|| ||A_n^-1||^-1 = {rhs:.6g}"
        )
    others = [(n - k, p.coeffs[n - k])]
    if kind is not MultiplierKind.RS and gap.ell is not None:
        others.append((n - k - gap.ell, p.coeffs[n - k - gap.ell]))
    for j, a in others:
        ok, c = _commutator_ok(an, a, norm, tol)
        if not ok:
            failures.append(f"A_n does not commute with A_{j} (commutator norm {c:.3g})")
    return PreconditionReport(not failures, failures)


@dataclass(frozen=True)
class MultiplierChoice:
    """Factor polynomial together with the side it is applied on.

    ``gap`` is the gap profile of the polynomial the factor was built for;
    it lets :func:`apply_multiplier` clear the coefficients that vanish
    identically in the product.
    """

    side: Side
    kind: Optional[MultiplierKind]
    factor: MatrixPoly
    gap: Optional[GapProfile] = None


def matrix_multiplier(p: MatrixPoly, kind: MultiplierKind, side: Side = Side.LEFT) -> MultiplierChoice:
    gap = gap_profile(p)
    check_kind_admissible(gap, kind)
    a = p.coeffs
    n, k, ell, m = p.degree, gap.k, gap.ell, p.dim
    an, ank = a[n], a[n - k]
    f = np.zeros((factor_degree(gap, kind) + 1, m, m), dtype=np.complex128)
    if kind is MultiplierKind.RS:
        f[k] = an
        f[0] = -ank
    elif kind is MultiplierKind.Q1:
        f[k + ell] = an
        f[ell] = -ank
        f[0] = -a[n - k - ell]
    else:
        c = _identity_multiple(an)
        sq = ank @ ank
        sq = sq / c if c is not None else sq @ mat_inverse(an)
        f[2 * k] = an
        f[k] = -ank
        f[0] = sq
        if kind is MultiplierKind.Q3:
            f[0] = -a[n - 2 * k] + sq
    return MultiplierChoice(side, kind, MatrixPoly(f, check=False), gap)


def _commutes_exactly(p: MatrixPoly, gap: GapProfile, kind: MultiplierKind) -> bool:
    an = p.leading
    n, k = p.degree, gap.k
    idx = [n - k]
    if kind is not MultiplierKind.RS and gap.ell is not None:
        idx.append(n - k - gap.ell)
    return all(np.array_equal(an @ p.coeffs[j], p.coeffs[j] @ an) for j in idx)


def apply_multiplier(p: MatrixPoly, choice: MultiplierChoice) -> MatrixPoly:
    """Block convolution ``factor * P`` (LEFT) or ``P * factor`` (RIGHT).

    When the factor was built for ``p`` and ``A_n`` commutes exactly with
    the coefficients it is combined with, the coefficients right below the
    product's lead cancel identically; their rounding residue is zeroed so
    the gap structure of the product is exact.
    """
    f = choice.factor
    if f.dim != p.dim:
        raise ValueError(f"dimension mismatch: factor {f.dim} vs polynomial {p.dim}")
    n, d, m = p.degree, f.degree, p.dim
    out = np.zeros((n + d + 1, m, m), dtype=np.complex128)
    for i in np.flatnonzero(f.nonnull_mask()):
        if choice.side is Side.LEFT:
            out[i: i + n + 1] += np.matmul(f.coeffs[i], p.coeffs)
        else:
            out[i: i + n + 1] += np.matmul(p.coeffs, f.coeffs[i])
    if choice.gap is not None and choice.kind is not None:
        gap = gap_profile(p)
        if gap == choice.gap and _commutes_exactly(p, gap, choice.kind):
            top = n + d
            out[top - guaranteed_leading_zeros(gap, choice.kind): top] = 0.0
    return MatrixPoly(out, check=False)


def matrix_cauchy_radius(
    p: MatrixPoly, norm: NormKind = NormKind.INDUCED_1, rel_tol: float = DEFAULT_REL_TOL
) -> float:
    """Root of ``||A_n^-1||^-1 x^n - sum_j ||A_j|| x^j``."""
    if p.degree == 0:
        raise InvalidPolynomialError("constant matrix polynomial has no eigenvalues")
    c = _identity_multiple(p.leading)
    lead = abs(c) if c is not None else 1.0 / mat_norm(mat_inverse(p.leading), norm)
    lower = [mat_norm(a, norm) for a in p.coeffs[:-1]]
    return positive_root(RadiusEquation(lead, lower), rel_tol)


def _pow2_rescale(p: MatrixPoly, norm: NormKind) -> MatrixPoly:
    top = max(mat_norm(a, norm) for a in p.coeffs)
    _, e = math.frexp(top)
    return MatrixPoly(p.coeffs * math.ldexp(1.0, -e), check=False)


def refine_matrix(
    p: MatrixPoly,
    levels: int = DEFAULT_LEVELS,
    norm: NormKind = NormKind.INDUCED_1,
    side: Side = Side.LEFT,
    strategy: Strategy = Strategy.SELECTED,
    rel_tol: float = DEFAULT_REL_TOL,
    auto_monicize: bool = True,
    rescale_after: Optional[int] = DEFAULT_RESCALE_AFTER,
) -> BoundTrace:
    """Cauchy radius followed by ``levels`` multiplier applications.

    Parameters
    ----------
    auto_monicize : bool
        Premultiply by ``A_n^-1`` first, which makes every precondition hold.
        Without it the preconditions are checked at each level and a
        :class:`PreconditionError` aborts the ladder.
    rescale_after : int or None
        From this level on each product is scaled by a power of two so its
        largest coefficient norm lies in ``[1/2, 1)``.  Power-of-two scaling
        is exact, so radii are unaffected.  ``None`` disables it.
    """
    if levels < 0:
        raise ValueError("levels must be >= 0")
    t0 = time.perf_counter()
    if auto_monicize:
        p = monicize(p)
    gap_profile(p)  # monomial guard
    trace = BoundTrace()
    r = matrix_cauchy_radius(p, norm, rel_tol)
    trace.levels.append(
        TraceLevel(0, r, None, p.degree, leading_zero_count(p), time.perf_counter() - t0)
    )
    q = p
    for level in range(1, levels + 1):
        t0 = time.perf_counter()
        kind = select_matrix_multiplier(q) if strategy is Strategy.SELECTED else MultiplierKind.RS
        report = check_preconditions(q, kind, norm)
        if not report:
            raise PreconditionError(
                f"level {level}: preconditions fail for {kind.value}", report.failures
            )
        lead_c = _identity_multiple(q.leading)
        q = apply_multiplier(q, matrix_multiplier(q, kind, side))
        if lead_c is not None:
            coeffs = np.array(q.coeffs)
            coeffs[-1] = lead_c * lead_c * np.eye(q.dim)
            q = MatrixPoly(coeffs, check=False)
        if rescale_after is not None and level > rescale_after:
            q = _pow2_rescale(q, norm)
        r = matrix_cauchy_radius(q, norm, rel_tol)
        trace.levels.append(
            TraceLevel(level, r, kind, q.degree, leading_zero_count(q), time.perf_counter() - t0)
        )
    return trace
