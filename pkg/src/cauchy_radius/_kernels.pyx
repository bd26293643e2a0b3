# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled eigenvalue kernels: Householder Hessenberg reduction and
single-shift complex QR.  Mirrors ``_eig_py`` loop for loop."""

from libc.math cimport fabs, sqrt, hypot

cdef extern from "complex.h" nogil:
    double complex csqrt(double complex)
    double complex conj(double complex)
    double creal(double complex)
    double cimag(double complex)
    double cabs(double complex)


cdef inline double cabs1(double complex z) noexcept nogil:
    return fabs(creal(z)) + fabs(cimag(z))


def hessenberg_inplace(double complex[:, ::1] a):
    """Reduce ``a`` to upper Hessenberg form by Householder similarities."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t k, i, j, len_v
    cdef double tail, ax0, xnorm, tau
    cdef double complex x0, phase, s
    cdef double complex[::1] v
    cdef double complex[::1] w
    import numpy as np
    v = np.empty(n, dtype=np.complex128)
    w = np.empty(n, dtype=np.complex128)
    with nogil:
        for k in range(n - 2):
            len_v = n - k - 1
            tail = 0.0
            for i in range(k + 2, n):
                tail += creal(a[i, k]) * creal(a[i, k]) + cimag(a[i, k]) * cimag(a[i, k])
            tail = sqrt(tail)
            if tail == 0.0:
                continue
            x0 = a[k + 1, k]
            ax0 = cabs(x0)
            xnorm = hypot(ax0, tail)
            if ax0 != 0.0:
                phase = x0 / ax0
            else:
                phase = 1.0
            for i in range(len_v):
                v[i] = a[k + 1 + i, k]
            v[0] = v[0] + phase * xnorm
            tau = 1.0 / (xnorm * (xnorm + ax0))

            # left: rows k+1.., columns k+1..;  w = v^H A
            for j in range(k + 1, n):
                w[j] = 0.0
            for i in range(len_v):
                s = conj(v[i])
                if s == 0.0:
                    continue
                for j in range(k + 1, n):
                    w[j] = w[j] + s * a[k + 1 + i, j]
            for i in range(len_v):
                s = tau * v[i]
                if s == 0.0:
                    continue
                for j in range(k + 1, n):
                    a[k + 1 + i, j] = a[k + 1 + i, j] - s * w[j]

            # right: all rows, columns k+1..
            for i in range(n):
                s = 0.0
                for j in range(len_v):
                    s = s + a[i, k + 1 + j] * v[j]
                s = s * tau
                if s == 0.0:
                    continue
                for j in range(len_v):
                    a[i, k + 1 + j] = a[i, k + 1 + j] - s * conj(v[j])

            a[k + 1, k] = -phase * xnorm
            for i in range(k + 2, n):
                a[i, k] = 0.0


cdef inline void givens(double complex f, double complex g, double *c,
                        double complex *s, double complex *r) noexcept nogil:
    cdef double af, ag, nrm
    cdef double complex alpha
    if g == 0.0:
        c[0] = 1.0
        s[0] = 0.0
        r[0] = f
    elif f == 0.0:
        ag = cabs(g)
        c[0] = 0.0
        s[0] = conj(g) / ag
        r[0] = ag
    else:
        af = cabs(f)
        ag = cabs(g)
        nrm = hypot(af, ag)
        alpha = f / af
        c[0] = af / nrm
        s[0] = alpha * conj(g) / nrm
        r[0] = alpha * nrm


cdef inline double complex wilkinson_shift(double complex[:, ::1] h, Py_ssize_t i) noexcept nogil:
    cdef double complex t, u, x, y
    cdef double s, sx
    t = h[i, i]
    u = csqrt(h[i - 1, i]) * csqrt(h[i, i - 1])
    s = cabs1(u)
    if s != 0.0:
        x = 0.5 * (h[i - 1, i - 1] - t)
        sx = cabs1(x)
        if sx > s:
            s = sx
        y = s * csqrt((x / s) * (x / s) + (u / s) * (u / s))
        if sx > 0.0 and creal(x / sx) * creal(y) + cimag(x / sx) * cimag(y) < 0.0:
            y = -y
        t = t - u * (u / (x + y))
    return t


def hqr_eigenvalues(double complex[:, ::1] h, double complex[::1] w,
                    double tol, double smlnum, long maxit):
    """Shifted single-shift QR on upper Hessenberg ``h``; eigenvalues into ``w``.

    Returns the number of sweeps used, or -1 if ``maxit`` sweeps did not
    suffice.  ``h`` is overwritten.
    """
    cdef Py_ssize_t n = h.shape[0]
    cdef Py_ssize_t i, l, k, j, top
    cdef long sweeps = 0, its
    cdef double hk, tst, c
    cdef double complex t, f, g, s, r, x, y
    cdef bint failed = False
    with nogil:
        i = n - 1
        while i >= 0:
            l = 0
            its = 0
            while True:
                k = i
                while k > l:
                    hk = cabs(h[k, k - 1])
                    if hk <= smlnum:
                        break
                    tst = cabs1(h[k - 1, k - 1]) + cabs1(h[k, k])
                    if tst == 0.0:
                        if k - 2 >= l:
                            tst += fabs(creal(h[k - 1, k - 2]))
                        if k + 1 <= i:
                            tst += fabs(creal(h[k + 1, k]))
                    if hk <= tol * tst:
                        break
                    k -= 1
                l = k
                if l > 0:
                    h[l, l - 1] = 0.0
                if l >= i:
                    break
                if sweeps >= maxit:
                    failed = True
                    break
                its += 1
                sweeps += 1

                if its % 10 == 0:
                    if (its // 10) % 2 == 1:
                        t = 0.75 * fabs(creal(h[l + 1, l])) + h[l, l]
                    else:
                        t = 0.75 * fabs(creal(h[i, i - 1])) + h[i, i]
                else:
                    t = wilkinson_shift(h, i)

                for k in range(l, i):
                    if k == l:
                        f = h[l, l] - t
                        g = h[l + 1, l]
                    else:
                        f = h[k, k - 1]
                        g = h[k + 1, k - 1]
                    givens(f, g, &c, &s, &r)
                    if k > l:
                        h[k, k - 1] = r
                        h[k + 1, k - 1] = 0.0
                    for j in range(k, i + 1):
                        x = h[k, j]
                        y = h[k + 1, j]
                        h[k, j] = c * x + s * y
                        h[k + 1, j] = -conj(s) * x + c * y
                    top = k + 2
                    if top > i:
                        top = i
                    for j in range(l, top + 1):
                        x = h[j, k]
                        y = h[j, k + 1]
                        h[j, k] = c * x + conj(s) * y
                        h[j, k + 1] = -s * x + c * y
            if failed:
                break
            w[i] = h[i, i]
            i = l - 1
    return -1 if failed else sweeps
