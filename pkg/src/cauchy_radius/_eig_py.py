"""Pure-Python eigenvalue kernels; same algorithms and signatures as ``_kernels``.

Used when the compiled extension is unavailable.  Inner loops are numpy
slice operations, so it is fine for the small dimensions of the property
tests but slow for the n*m = 500 companion matrices of the benchmark study.
"""

from __future__ import annotations

import cmath
import math

import numpy as np


def hessenberg_inplace(a: np.ndarray) -> None:
    """Reduce ``a`` to upper Hessenberg form by Householder similarities."""
    n = a.shape[0]
    for k in range(n - 2):
        x = a[k + 1:, k]
        tail = float(np.sqrt(np.sum(x.real[1:] ** 2 + x.imag[1:] ** 2)))
        if tail == 0.0:
            continue
        x0 = complex(x[0])
        ax0 = abs(x0)
        xnorm = math.hypot(ax0, tail)
        phase = x0 / ax0 if ax0 != 0.0 else 1.0
        v = x.copy()
        v[0] += phase * xnorm
        tau = 1.0 / (xnorm * (xnorm + ax0))
        w = v.conj() @ a[k + 1:, k + 1:]
        a[k + 1:, k + 1:] -= tau * np.outer(v, w)
        w = a[:, k + 1:] @ v
        a[:, k + 1:] -= tau * np.outer(w, v.conj())
        a[k + 1, k] = -phase * xnorm
        a[k + 2:, k] = 0.0


def _cabs1(z: complex) -> float:
    return abs(z.real) + abs(z.imag)


def _givens(f: complex, g: complex) -> tuple[float, complex, complex]:
    if g == 0:
        return 1.0, 0j, f
    if f == 0:
        ag = abs(g)
        return 0.0, g.conjugate() / ag, complex(ag)
    af, ag = abs(f), abs(g)
    nrm = math.hypot(af, ag)
    alpha = f / af
    return af / nrm, alpha * g.conjugate() / nrm, alpha * nrm


def _wilkinson_shift(h: np.ndarray, i: int) -> complex:
    t = complex(h[i, i])
    u = cmath.sqrt(h[i - 1, i]) * cmath.sqrt(h[i, i - 1])
    s = _cabs1(u)
    if s != 0.0:
        x = 0.5 * (complex(h[i - 1, i - 1]) - t)
        sx = _cabs1(x)
        s = max(s, sx)
        y = s * cmath.sqrt((x / s) ** 2 + (u / s) ** 2)
        if sx > 0.0 and (x / sx).real * y.real + (x / sx).imag * y.imag < 0.0:
            y = -y
        t -= u * (u / (x + y))
    return t


def hqr_eigenvalues(h: np.ndarray, w: np.ndarray, tol: float, smlnum: float, maxit: int) -> int:
    """Shifted single-shift QR on upper Hessenberg ``h``; eigenvalues into ``w``.

    Returns the number of sweeps used, or -1 if ``maxit`` sweeps did not
    suffice.  ``h`` is overwritten.
    """
    n = h.shape[0]
    sweeps = 0
    i = n - 1
    while i >= 0:
        l = 0
        its = 0
        while True:
            k = i
            while k > l:
                hk = abs(h[k, k - 1])
                if hk <= smlnum:
                    break
                tst = _cabs1(h[k - 1, k - 1]) + _cabs1(h[k, k])
                if tst == 0.0:
                    if k - 2 >= l:
                        tst += abs(h[k - 1, k - 2].real)
                    if k + 1 <= i:
                        tst += abs(h[k + 1, k].real)
                if hk <= tol * tst:
                    break
                k -= 1
            l = k
            if l > 0:
                h[l, l - 1] = 0.0
            if l >= i:
                break
            if sweeps >= maxit:
                return -1
            its += 1
            sweeps += 1

            if its % 10 == 0:
                # exceptional shift breaks shift cycling
                if (its // 10) % 2 == 1:
                    t = 0.75 * abs(h[l + 1, l].real) + complex(h[l, l])
                else:
                    t = 0.75 * abs(h[i, i - 1].real) + complex(h[i, i])
            else:
                t = _wilkinson_shift(h, i)

            for k in range(l, i):
                if k == l:
                    f = complex(h[l, l]) - t
                    g = complex(h[l + 1, l])
                else:
                    f = complex(h[k, k - 1])
                    g = complex(h[k + 1, k - 1])
                c, s, r = _givens(f, g)
                if k > l:
                    h[k, k - 1] = r
                    h[k + 1, k - 1] = 0.0
                x = h[k, k:i + 1].copy()
                y = h[k + 1, k:i + 1]
                h[k, k:i + 1] = c * x + s * y
                h[k + 1, k:i + 1] = -s.conjugate() * x + c * y
                top = min(k + 2, i) + 1
                x = h[l:top, k].copy()
                y = h[l:top, k + 1]
                h[l:top, k] = c * x + s.conjugate() * y
                h[l:top, k + 1] = -s * x + c * y
        w[i] = h[i, i]
        i = l - 1
    return sweeps
