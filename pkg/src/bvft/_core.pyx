# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Si/Ci evaluation and Wynn epsilon extrapolation.

Mirrors ``bvft._core_py`` function for function.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sin, cos, log, fabs, sqrt, isfinite

cnp.import_array()

cdef double EULER_GAMMA_C = 0.57721566490153286061
cdef double HALF_PI_C = 1.5707963267948966

EULER_GAMMA = EULER_GAMMA_C
HALF_PI = HALF_PI_C
CROSSOVER = 6.0


cdef inline void _series(double u, double* si, double* ci) noexcept nogil:
    cdef double u2 = u * u
    cdef double term = u, s = u
    cdef double cterm = 1.0, csum = 0.0, ds, dc
    cdef int k
    for k in range(1, 200):
        cterm = -cterm * u2 / ((2 * k - 1) * (2 * k))
        dc = cterm / (2 * k)
        csum += dc
        term = -term * u2 / ((2 * k) * (2 * k + 1))
        ds = term / (2 * k + 1)
        s += ds
        if fabs(ds) <= 1e-17 * fabs(s) and fabs(dc) <= 1e-17 * (fabs(csum) if fabs(csum) > 1.0 else 1.0):
            break
    si[0] = s
    ci[0] = EULER_GAMMA_C + log(u) + csum


cdef inline void _cf(double u, double* f, double* g) noexcept nogil:
    # Lentz evaluation of the continued fraction for E1(iu); h = g - i f
    cdef double br = 1.0, bi = u
    cdef double cr = 1e300, ci_ = 0.0
    cdef double den = br * br + bi * bi
    cdef double dr = br / den, di = -bi / den
    cdef double hr = dr, hi = di
    cdef double a, tr, ti, delr, deli, tmp
    cdef int i
    for i in range(2, 100000):
        a = -<double>((i - 1) * (i - 1))
        br += 2.0
        # d = 1 / (a d + b)
        tr = a * dr + br
        ti = a * di + bi
        den = tr * tr + ti * ti
        dr = tr / den
        di = -ti / den
        # c = b + a / c
        den = cr * cr + ci_ * ci_
        tr = br + a * cr / den
        ti = bi - a * ci_ / den
        cr = tr
        ci_ = ti
        delr = cr * dr - ci_ * di
        deli = cr * di + ci_ * dr
        tmp = hr * delr - hi * deli
        hi = hr * deli + hi * delr
        hr = tmp
        if fabs(delr - 1.0) + fabs(deli) <= 1e-16:
            break
    f[0] = -hi
    g[0] = hr


def sici_series(u):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] uu = np.ascontiguousarray(np.atleast_1d(u), dtype=np.float64).ravel()
    cdef Py_ssize_t n = uu.shape[0], i
    cdef cnp.ndarray[cnp.float64_t, ndim=1] si = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ci = np.empty(n)
    cdef double a, b
    for i in range(n):
        _series(uu[i], &a, &b)
        si[i] = a
        ci[i] = b
    return si, ci


def aux_fg(u):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] uu = np.ascontiguousarray(np.atleast_1d(u), dtype=np.float64).ravel()
    cdef Py_ssize_t n = uu.shape[0], i
    cdef cnp.ndarray[cnp.float64_t, ndim=1] fo = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] go = np.empty(n)
    cdef double a, b
    for i in range(n):
        _cf(uu[i], &a, &b)
        fo[i] = a
        go[i] = b
    return fo, go


def sici_aux(u):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] uu = np.ascontiguousarray(np.atleast_1d(u), dtype=np.float64).ravel()
    cdef Py_ssize_t n = uu.shape[0], i
    cdef cnp.ndarray[cnp.float64_t, ndim=1] si = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ci = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tail = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] faux = np.empty(n)
    cdef double x, a, b, sn, cs
    with nogil:
        for i in range(n):
            x = uu[i]
            sn = sin(x)
            cs = cos(x)
            if x <= 6.0:
                _series(x, &a, &b)
                si[i] = a
                ci[i] = b
                tail[i] = HALF_PI_C - a
                faux[i] = b * sn + tail[i] * cs
            else:
                _cf(x, &a, &b)
                tail[i] = a * cs + b * sn
                si[i] = HALF_PI_C - tail[i]
                ci[i] = a * sn - b * cs
                faux[i] = a
    return si, ci, tail, faux


def wynn_epsilon(sums):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] s = np.ascontiguousarray(sums, dtype=np.float64).ravel()
    cdef Py_ssize_t n = s.shape[0], m, j
    if n == 0:
        return 0.0, np.inf
    if n == 1:
        return float(s[0]), np.inf
    cdef double best = s[n - 1]
    cdef double best_err = fabs(s[n - 1] - s[n - 2])
    cdef cnp.ndarray[cnp.float64_t, ndim=1] prev = np.zeros(n + 1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cur = s.copy()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] nxt = np.empty(n)
    cdef int col = 0
    cdef double err, d
    cdef bint ok
    m = n
    while m > 2:
        ok = True
        for j in range(m - 1):
            d = cur[j + 1] - cur[j]
            if d == 0.0:
                ok = False
                break
            nxt[j] = prev[j + 1] + 1.0 / d
            if not isfinite(nxt[j]):
                ok = False
                break
        if not ok:
            break
        for j in range(m):
            prev[j] = cur[j]
        for j in range(m - 1):
            cur[j] = nxt[j]
        m -= 1
        col += 1
        if col % 2 == 0 and m >= 2:
            err = fabs(cur[m - 1] - cur[m - 2])
            if err < best_err:
                best = cur[m - 1]
                best_err = err
    return best, best_err
