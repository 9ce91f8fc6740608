"""Pure NumPy implementations of the hot kernels.

Used when the compiled ``bvft._core`` extension is unavailable or when
``BVFT_PURE_PYTHON=1`` is set.  Signatures match the Cython module exactly.
"""

import numpy as np

EULER_GAMMA = 0.57721566490153286061
HALF_PI = 1.5707963267948966
CROSSOVER = 6.0

_EPS = 1e-17
_MAX_TERMS = 200


def sici_series(u):
    """Power series for Si and Ci; intended for 0 < u <= CROSSOVER."""
    u = np.asarray(u, dtype=float)
    u2 = u * u
    term = u.copy()  # (-1)^k u^(2k+1) / (2k+1)!
    si = u.copy()
    cterm = np.ones_like(u)  # (-1)^k u^(2k) / (2k)!
    csum = np.zeros_like(u)
    for k in range(1, _MAX_TERMS):
        cterm = -cterm * u2 / ((2 * k - 1) * (2 * k))
        dc = cterm / (2 * k)
        csum += dc
        term = -term * u2 / ((2 * k) * (2 * k + 1))
        ds = term / (2 * k + 1)
        si += ds
        if np.all(np.abs(ds) <= _EPS * np.abs(si)) and np.all(
            np.abs(dc) <= _EPS * np.maximum(np.abs(csum), 1.0)
        ):
            break
    with np.errstate(divide="ignore"):
        ci = EULER_GAMMA + np.log(u) + csum
    return si, ci


def aux_fg(u):
    """Auxiliary functions f(u), g(u) from the continued fraction of E1(iu).

    Converges for u >= 2; used above the crossover.
    """
    u = np.asarray(u, dtype=float)
    tiny = 1e-300
    b = 1.0 + 1j * u
    c = np.full(u.shape, 1.0 / tiny, dtype=complex)
    d = 1.0 / b
    h = d.copy()
    active = np.ones(u.shape, dtype=bool)
    for i in range(2, 100000):
        a = -float((i - 1) * (i - 1))
        b = b + 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h = np.where(active, h * delta, h)
        active &= np.abs(delta - 1.0) > 1e-16
        if not active.any():
            break
    # h = g(u) - i f(u)
    return -h.imag, h.real


def sici_aux(u):
    """Return (si, ci, si_tail, f_aux) for u > 0.

    si_tail(u) = pi/2 - Si(u) and f_aux is the auxiliary function f(u).
    """
    u = np.atleast_1d(np.asarray(u, dtype=float))
    si = np.empty_like(u)
    ci = np.empty_like(u)
    tail = np.empty_like(u)
    faux = np.empty_like(u)
    lo = u <= CROSSOVER
    if lo.any():
        ul = u[lo]
        s, c = sici_series(ul)
        si[lo] = s
        ci[lo] = c
        tail[lo] = HALF_PI - s
        faux[lo] = c * np.sin(ul) + tail[lo] * np.cos(ul)
    hi = ~lo
    if hi.any():
        uh = u[hi]
        f, g = aux_fg(uh)
        sn, cs = np.sin(uh), np.cos(uh)
        tail[hi] = f * cs + g * sn
        si[hi] = HALF_PI - tail[hi]
        ci[hi] = f * sn - g * cs
        faux[hi] = f
    return si, ci, tail, faux


def wynn_epsilon(sums):
    """Wynn epsilon extrapolation of a sequence of partial sums.

    Every even column of the table gives a limit estimate; the column whose
    last two entries agree best is returned, with that disagreement as the
    error estimate.
    """
    s = np.asarray(sums, dtype=float)
    n = s.shape[0]
    if n == 0:
        return 0.0, np.inf
    if n == 1:
        return float(s[0]), np.inf
    best = float(s[-1])
    best_err = abs(float(s[-1] - s[-2]))
    prev = np.zeros(n + 1)
    cur = s.copy()
    col = 0
    with np.errstate(divide="ignore", invalid="ignore"):
        while cur.shape[0] > 2:
            diff = cur[1:] - cur[:-1]
            nxt = prev[1 : cur.shape[0]] + 1.0 / diff
            prev, cur = cur, nxt
            col += 1
            if not np.all(np.isfinite(cur)):
                break
            if col % 2 == 0 and cur.shape[0] >= 2:
                err = abs(float(cur[-1] - cur[-2]))
                if err < best_err:
                    best, best_err = float(cur[-1]), err
    return best, best_err
