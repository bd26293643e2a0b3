"""Reference eigenvalues of matrix polynomials.

The polynomial is monicized and linearized into its first companion form,
whose ordinary eigenvalues are computed by balancing, Householder
reduction to Hessenberg form and single-shift complex QR with deflation.
The two hot loops live in the compiled ``_kernels`` extension; the
pure-Python ``_eig_py`` module is picked at import when the extension is
missing or ``CAUCHY_RADIUS_PURE=1`` is set.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import ConvergenceError, InvalidPolynomialError
from .matrix import MatrixPoly, monicize

if os.environ.get("CAUCHY_RADIUS_PURE", "") not in ("", "0"):
    from . import _eig_py as _impl
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
        BACKEND = "compiled"
    except ImportError:  # pragma: no cover - depends on the build
        from . import _eig_py as _impl
        BACKEND = "python"

from . import _eig_py

_EPS = np.finfo(np.float64).eps
_SAFMIN = np.finfo(np.float64).tiny
SWEEPS_PER_DIM = 40
_BACKENDS = {"python": _eig_py}
if BACKEND == "compiled":
    _BACKENDS["compiled"] = _impl


def companion_linearize(p: MatrixPoly) -> np.ndarray:
    """First companion matrix of the monicized polynomial.

    The top block row holds ``-A_{n-1}, ..., -A_0`` and identity blocks sit
    on the block subdiagonal.
    """
    if p.degree < 1:
        raise InvalidPolynomialError("degree-0 polynomial has no eigenvalues")
    q = monicize(p)
    n, m = q.degree, q.dim
    c = np.zeros((n * m, n * m), dtype=np.complex128)
    c[:m, :] = -np.concatenate(list(q.coeffs[-2::-1]), axis=1)
    if n > 1:
        c[m:, :-m] = np.eye((n - 1) * m)
    return c


def balance(a: np.ndarray) -> np.ndarray:
    """Diagonal similarity by powers of two equalizing row and column norms.

    Returns a balanced copy; the spectrum is preserved exactly.
    """
    a = np.array(a, dtype=np.complex128, copy=True)
    n = a.shape[0]
    radix, sqrdx = 2.0, 4.0
    absa = np.abs(a)
    done = False
    while not done:
        done = True
        for i in range(n):
            c = absa[:, i].sum() - absa[i, i]
            r = absa[i, :].sum() - absa[i, i]
            if c == 0.0 or r == 0.0:
                continue
            s = c + r
            f = 1.0
            g = r / radix
            while c < g:
                f *= radix
                c *= sqrdx
            g = r * radix
            while c > g:
                f /= radix
                c /= sqrdx
            if (c + r) / f < 0.95 * s:
                done = False
                a[i, :] /= f
                a[:, i] *= f
                absa[i, :] /= f
                absa[:, i] *= f
    return a


def eigenvalues(
    m: np.ndarray,
    tol: float | None = None,
    *,
    backend: str | None = None,
    balance_first: bool = True,
) -> np.ndarray:
    """All eigenvalues of a square complex matrix.

    Parameters
    ----------
    m : array_like, shape (d, d)
    tol : float, optional
        Deflation threshold: a subdiagonal entry is dropped once it is at
        most ``tol * (|h_ii| + |h_{i+1,i+1}|)`` (moduli in the 1-norm of the
        real and imaginary parts).  Defaults to machine epsilon.
    backend : {"compiled", "python"}, optional
        Override the kernel picked at import.

    Raises
    ------
    ConvergenceError
        When ``40 * d`` QR sweeps do not deflate the whole matrix.
    """
    a = np.array(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    d = a.shape[0]
    if d == 0:
        return np.zeros(0, dtype=np.complex128)
    impl = _impl if backend is None else _BACKENDS[backend]
    if balance_first:
        a = balance(a)
    a = np.ascontiguousarray(a)
    impl.hessenberg_inplace(a)
    w = np.zeros(d, dtype=np.complex128)
    tol = _EPS if tol is None else float(tol)
    smlnum = _SAFMIN * (d / _EPS)
    if impl.hqr_eigenvalues(a, w, tol, smlnum, SWEEPS_PER_DIM * d) < 0:
        raise ConvergenceError(f"QR iteration did not converge in {SWEEPS_PER_DIM * d} sweeps")
    return w


def polynomial_eigenvalues(p: MatrixPoly, **kwargs) -> np.ndarray:
    """The ``n*m`` eigenvalues of ``p`` counted with multiplicity."""
    return eigenvalues(companion_linearize(p), **kwargs)


def spectral_max_modulus(p: MatrixPoly, **kwargs) -> float:
    """Largest eigenvalue modulus of ``p``."""
    return float(np.max(np.abs(polynomial_eigenvalues(p, **kwargs))))
