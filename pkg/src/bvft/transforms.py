"""Integral transforms on the half-line.

Normalisation: ``f_c(x) = int_0^inf f(t) cos(xt) dt`` and
``f_s(x) = int_0^inf f(t) sin(xt) dt`` with no 2/pi prefactor.

    T g(t)     = int_0^{t/2} (g(t+s) - g(t-s)) / s ds
    H g(x)     = (1/pi) PV int_R g(t) / (t - x) dt
    H0 g(x)    = (2/pi) PV int_0^inf t g(t) / (t^2 - x^2) dt   (odd g)
    script_T g = g_s(x) / x
    I(x)       = int_{pi/(2x)}^inf f(t) sin(xt) dt

Every function accepts a :class:`~bvft.testfns.TestFunction` (meaning f),
an :class:`~bvft.testfns.Evaluator`, or a plain vectorised callable.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from bvft import specfun
from bvft.quadrature import (
    DEFAULT_OPTIONS,
    PvSpec,
    QuadOptions,
    QuadratureResult,
    Status,
    combine,
    integrate_finite,
    integrate_halfline,
    integrate_oscillatory,
    ladder_limit,
    vectorize,
)
from bvft.testfns import Evaluator, TestFunction

DEFAULT_TOL = 1e-11


def as_evaluator(obj) -> Evaluator:
    if isinstance(obj, Evaluator):
        return obj
    if isinstance(obj, TestFunction):
        return obj.f
    if callable(obj):
        return Evaluator(obj)
    raise TypeError(f"cannot use {type(obj).__name__} as an integrand")


def _opts(opts):
    return opts or DEFAULT_OPTIONS


# --------------------------------------------------------------------------
# Fourier transforms


def _fourier(f, x: float, kind: str, tol: float, rtol: float, opts) -> QuadratureResult:
    g = as_evaluator(f)
    if x < 0:
        raise ValueError("x must be non-negative")
    if x == 0.0:
        if kind == "sine":
            return QuadratureResult(0.0, 0.0, Status.CONVERGED, 1)
        if g.support is not None:
            return integrate_finite(g.fn, 0.0, g.support, tol, g.breakpoints, rtol=rtol)
        return integrate_halfline(g.fn, tol, breakpoints=g.breakpoints, scale=g.scale, rtol=rtol,
                                  opts=_opts(opts))
    return integrate_oscillatory(g.fn, x, kind, tol, breakpoints=g.breakpoints, support=g.support,
                                 rtol=rtol, opts=_opts(opts))


def fourier_cosine(f, x: float, tol: float = DEFAULT_TOL, *, rtol: float = 0.0,
                   opts: QuadOptions | None = None) -> QuadratureResult:
    """``int_0^inf f(t) cos(xt) dt``; at x = 0 this is ``int f``."""
    return _fourier(f, float(x), "cosine", tol, rtol, opts)


def fourier_sine(f, x: float, tol: float = DEFAULT_TOL, *, rtol: float = 0.0,
                 opts: QuadOptions | None = None) -> QuadratureResult:
    """``int_0^inf f(t) sin(xt) dt``."""
    return _fourier(f, float(x), "sine", tol, rtol, opts)


def script_t(g, x: float, tol: float = DEFAULT_TOL, *, rtol: float = 0.0,
             opts: QuadOptions | None = None) -> QuadratureResult:
    """Quotient transform ``g_s(x)/x``; at x = 0 the limit ``int t g(t) dt``."""
    ev = as_evaluator(g)
    x = float(x)
    if x < 0:
        raise ValueError("x must be non-negative")
    if x == 0.0:
        fn = ev.fn
        moment = lambda t: t * fn(t)
        if ev.support is not None:
            return integrate_finite(moment, 0.0, ev.support, tol, ev.breakpoints, rtol=rtol)
        return integrate_halfline(moment, tol, breakpoints=ev.breakpoints, scale=ev.scale, rtol=rtol,
                                  opts=_opts(opts))
    r = integrate_oscillatory(ev.fn, x, "sine", tol * x, breakpoints=ev.breakpoints, support=ev.support,
                              rtol=rtol, opts=_opts(opts))
    return r.scaled(1.0 / x)


def tail_integral(f, x: float, tol: float = DEFAULT_TOL, *, rtol: float = 0.0,
                  opts: QuadOptions | None = None) -> QuadratureResult:
    """``I(x) = int_{pi/(2x)}^inf f(t) sin(xt) dt``."""
    g = as_evaluator(f)
    x = float(x)
    if not x > 0:
        raise ValueError("x must be positive")
    return integrate_oscillatory(g.fn, x, "sine", tol, a=0.5 * math.pi / x, breakpoints=g.breakpoints,
                                 support=g.support, rtol=rtol, opts=_opts(opts))


# --------------------------------------------------------------------------
# T-transform


def _t_breakpoints(g: Evaluator, t: float) -> list[float]:
    """Values of s in (0, t/2) where t +- s crosses a kink of g."""
    return sorted({abs(b - t) for b in g.breakpoints if 0.0 < abs(b - t) < 0.5 * t})


def t_transform(g, t: float, tol: float = DEFAULT_TOL, *, rtol: float = 0.0,
                opts: QuadOptions | None = None) -> QuadratureResult:
    """``T g(t) = int_0^{t/2} (g(t+s) - g(t-s))/s ds`` (improper at s = 0).

    With a derivative available and no kink of g within ``1e-4 t`` of t, the
    first stretch ``[0, s0]`` is replaced by its analytic value ``2 g'(t) s0``
    (the difference quotient tends to ``2 g'(t)``; the neglected term is
    ``O(g''' s0^3)``).  Otherwise the one-sided excision ladder at s = 0 is
    extrapolated to zero radius.
    """
    ev = as_evaluator(g)
    t = float(t)
    if not t > 0:
        raise ValueError("t must be positive")
    fn = ev.fn
    half = 0.5 * t

    def q(s):
        s = np.asarray(s, dtype=float)
        return (fn(t + s) - fn(t - s)) / s

    bps = _t_breakpoints(ev, t)
    s0 = 1e-4 * t
    near_kink = any(abs(b - t) <= s0 for b in ev.breakpoints)
    if ev.derivative is not None and not near_kink:
        head = 2.0 * float(ev.derivative(np.array([t]))[0]) * s0
        body = integrate_finite(q, s0, half, tol, bps, rtol=rtol)
        return QuadratureResult(head + body.value, body.abs_error_estimate, body.status,
                                body.evaluations + 1)
    o = _opts(opts)
    first = min([half / 8.0] + [0.5 * b for b in bps])
    ladder = [first * 2.0 ** -k for k in range(o.pv_ladder_depth + 1)]
    return ladder_limit(q, half, ladder, tol, bps, rtol, o)


# --------------------------------------------------------------------------
# Hilbert transforms


def _pv_window(center: float, radius: float, kinks: Sequence[float]) -> float:
    for b in kinks:
        d = abs(b - center)
        if 0.0 < d < radius:
            radius = d
    return radius


def hilbert_odd(g, x: float, tol: float = DEFAULT_TOL, *, rtol: float = 0.0,
                opts: QuadOptions | None = None) -> QuadratureResult:
    """``(2/pi) PV int_0^inf t g(t)/(t^2 - x^2) dt`` for g given on (0, inf).

    Window ``[x - r, x + r]`` with ``r = x/2`` (shrunk to the nearest kink of
    g) is handled by the folded excision ladder; the rest by ordinary
    quadrature.  At x = 0 the transform is ``(2/pi) int g(t)/t dt``.
    """
    ev = as_evaluator(g)
    x = float(x)
    fn = ev.fn
    o = _opts(opts)
    scale = 2.0 / math.pi
    if x < 0:
        raise ValueError("x must be non-negative")
    if x == 0.0:
        h0 = lambda t: fn(t) / t
        if ev.support is not None:
            r = integrate_finite(h0, 0.0, ev.support, tol / scale, ev.breakpoints, rtol=rtol)
        else:
            r = integrate_halfline(h0, tol / scale, breakpoints=ev.breakpoints, scale=ev.scale, rtol=rtol,
                                   opts=o)
        return r.scaled(scale)

    def h(t):
        t = np.asarray(t, dtype=float)
        return t * fn(t) / ((t - x) * (t + x))

    r = _pv_window(x, 0.5 * x, ev.breakpoints)
    ladder = [r * 2.0 ** -k for k in range(o.pv_ladder_depth + 1)]
    spec = PvSpec(x, tuple(ladder[1:]))
    inner_bps = sorted(abs(b - x) for b in ev.breakpoints if 0.0 < abs(b - x) < r)

    def folded(u):
        u = np.asarray(u, dtype=float)
        return h(x + u) + h(x - u)

    sub = tol / (2.0 * scale)
    parts = [ladder_limit(folded, r, spec.excision_ladder, sub, inner_bps, rtol, o)]
    left_bps = [b for b in ev.breakpoints if 0.0 < b < x - r]
    parts.append(integrate_finite(h, 0.0, x - r, sub / 2.0, left_bps, rtol=rtol))
    right_bps = [b for b in ev.breakpoints if b > x + r]
    if ev.support is not None:
        if ev.support > x + r:
            parts.append(integrate_finite(h, x + r, ev.support, sub / 2.0, right_bps, rtol=rtol))
    else:
        parts.append(integrate_halfline(h, sub / 2.0, a=x + r, breakpoints=right_bps,
                                        scale=max(ev.scale, x + r), rtol=rtol, opts=o))
    res = combine(parts).scaled(scale)
    return _settle(res, tol, rtol)


def _settle(res: QuadratureResult, tol: float, rtol: float) -> QuadratureResult:
    if res.status is Status.DIVERGENT:
        return res
    ok = res.abs_error_estimate <= max(tol, rtol * abs(res.value))
    return QuadratureResult(res.value, res.abs_error_estimate, Status.CONVERGED if ok else Status.MAX_DEPTH,
                            res.evaluations)


def hilbert_full(g: Callable, x: float, tol: float = DEFAULT_TOL, *, breakpoints: Sequence[float] = (),
                 scale: float = 1.0, rtol: float = 0.0, opts: QuadOptions | None = None) -> QuadratureResult:
    """``(1/pi) PV int_R g(t)/(t - x) dt`` for g given on the whole line.

    The symmetric window about x has radius ``|x|/2`` (or ``scale`` at x = 0),
    shrunk to the nearest kink; outside it two half-line integrals.
    """
    if isinstance(g, Evaluator):
        breakpoints = tuple(breakpoints) or g.breakpoints
        g = g.fn
    x = float(x)
    o = _opts(opts)
    kinks = sorted(set(float(b) for b in breakpoints))
    r = _pv_window(x, 0.5 * abs(x) if x != 0.0 else scale, kinks)
    ladder = tuple(r * 2.0 ** -k for k in range(1, o.pv_ladder_depth + 2))
    inner_bps = sorted(abs(b - x) for b in kinks if 0.0 < abs(b - x) < r)

    def h(t):
        t = np.asarray(t, dtype=float)
        return g(t) / (t - x)

    def folded(u):
        u = np.asarray(u, dtype=float)
        return h(x + u) + h(x - u)

    sub = tol * math.pi / 2.0
    parts = [ladder_limit(folded, r, ladder, sub, inner_bps, rtol, o)]
    right = [b - (x + r) for b in kinks if b > x + r]
    left = [(x - r) - b for b in kinks if b < x - r]
    parts.append(integrate_halfline(lambda u: h(x + r + u), sub / 2.0, breakpoints=right,
                                    scale=max(scale, r), rtol=rtol, opts=o))
    parts.append(integrate_halfline(lambda u: h(x - r - u), sub / 2.0, breakpoints=left,
                                    scale=max(scale, r), rtol=rtol, opts=o))
    return _settle(combine(parts).scaled(1.0 / math.pi), tol, rtol)


def hilbert_full_odd(g, x: float, tol: float = DEFAULT_TOL, **kw) -> QuadratureResult:
    """:func:`hilbert_full` applied to the odd extension of a half-line evaluator."""
    ev = as_evaluator(g)
    kinks = sorted({0.0, *ev.breakpoints, *(-b for b in ev.breakpoints)})
    return hilbert_full(ev.odd_extension(), x, tol, breakpoints=kinks, scale=ev.scale, **kw)


# --------------------------------------------------------------------------
# Sine/cosine-integral representation


def bateman(a: float, y: float) -> float:
    """``PV int_0^inf sin(yx)/(a^2 - x^2) dx = (sin(ay) Ci(ay) - cos(ay) Si(ay)) / a``."""
    if not (a > 0 and y > 0):
        raise ValueError("bateman needs a > 0 and y > 0")
    u = a * y
    return (math.sin(u) * specfun.ci(u) - math.cos(u) * specfun.si(u)) / a


def _aux_f(u: np.ndarray) -> np.ndarray:
    """``sin(u) Ci(u) + cos(u) (pi/2 - Si(u))``, smooth and decaying like 1/u."""
    u = np.asarray(u, dtype=float)
    out = np.full(u.shape, 0.5 * math.pi)
    pos = u > 0
    if pos.any():
        out[pos] = specfun.sici_aux(u[pos])[3]
    return out


def cisi_kernel(u) -> np.ndarray:
    """``K(u) = cos(u) Si(u) - sin(u) Ci(u)``, with ``K(0) = 0``."""
    u = np.asarray(u, dtype=float)
    out = np.zeros(u.shape)
    pos = u > 0
    if pos.any():
        si, ci, _, _ = specfun.sici_aux(u[pos])
        out[pos] = np.cos(u[pos]) * si - np.sin(u[pos]) * ci
    return out


def h0_script_t_cisi(fprime, x: float, tol: float = DEFAULT_TOL, *, rtol: float = 0.0,
                     opts: QuadOptions | None = None) -> QuadratureResult:
    """``H0 script_T f'(x)`` through the sine and cosine integrals.

    The representation is ``(2/(pi x)) int_0^inf f'(t) K(xt) dt`` with
    ``K(u) = cos(u) Si(u) - sin(u) Ci(u)``, the inner integrals being
    ``Si(xt)`` and ``-Ci(xt)``.  For ``u = xt <= 1`` the kernel is used as
    is (after ``t = t0 v^2`` to smooth its ``u ln u`` start); beyond, it is
    split as ``(pi/2) cos(u) - aux_f(u)`` so that the oscillating part goes
    to the half-period integrator and the rest decays like 1/u.
    """
    ev = as_evaluator(fprime)
    x = float(x)
    if not x > 0:
        raise ValueError("x must be positive")
    o = _opts(opts)
    fn = ev.fn
    end = ev.support if ev.support is not None else math.inf
    t1 = min(1.0 / x, end)
    sub = tol * math.pi * x / 10.0
    zero = QuadratureResult(0.0, 0.0, Status.CONVERGED, 0)

    def near(t):
        t = np.asarray(t, dtype=float)
        return fn(t) * cisi_kernel(x * t)

    def far(t):
        t = np.asarray(t, dtype=float)
        return fn(t) * _aux_f(x * t)

    t0 = min(ev.scale, t1, *(b for b in ev.breakpoints if b > 0))
    head = integrate_finite(lambda v: 2.0 * t0 * v * near(t0 * v * v), 0.0, 1.0, sub, rtol=rtol)
    mid = zero
    if t1 > t0:
        mid = integrate_finite(near, t0, t1, sub, [b for b in ev.breakpoints if t0 < b < t1], rtol=rtol)
    osc = rest = zero
    if end > t1:
        far_bps = [b for b in ev.breakpoints if b > t1]
        osc = integrate_oscillatory(fn, x, "cosine", 2.0 * sub / math.pi, a=t1, breakpoints=far_bps,
                                    support=ev.support, rtol=rtol, opts=o)
        if math.isfinite(end):
            rest = integrate_finite(far, t1, end, sub, far_bps, rtol=rtol)
        else:
            rest = integrate_halfline(far, sub, a=t1, breakpoints=far_bps, scale=max(ev.scale, t1),
                                      rtol=rtol, opts=o)
    w = 2.0 / (math.pi * x)
    res = combine([head, mid, osc, rest], [w, w, 0.5 * math.pi * w, -w])
    return _settle(res, tol, rtol)


def h0_script_t_nested(fprime, x: float, tol: float = 1e-8, *, inner_tol: float | None = None,
                       opts: QuadOptions | None = None) -> QuadratureResult:
    """The same quantity by composition: :func:`hilbert_odd` of :func:`script_t`.

    Every outer node costs one oscillatory quadrature, so this is the slow,
    independent route used to cross-check :func:`h0_script_t_cisi`.
    """
    ev = as_evaluator(fprime)
    itol = inner_tol if inner_tol is not None else tol / 100.0
    quotient = script_t_evaluator(ev, itol, opts=opts)
    return hilbert_odd(quotient, x, tol, opts=opts)


def script_t_evaluator(g, tol: float = 1e-10, *, opts: QuadOptions | None = None) -> Evaluator:
    """``x -> script_T g(x)`` as a vectorised evaluator (one quadrature per node)."""
    ev = as_evaluator(g)
    fn = vectorize(lambda x: script_t(ev, x, tol, opts=opts).value)
    return Evaluator(fn, name=f"script_T[{ev.name}]", scale=1.0 / ev.scale)


def gamma_residual(g, x: float, tol: float = DEFAULT_TOL, *, rtol: float = 0.0,
                   opts: QuadOptions | None = None) -> QuadratureResult:
    """``Gamma(x) = H0 g(x) - T g(x)``."""
    a = hilbert_odd(g, x, tol / 2.0, rtol=rtol, opts=opts)
    b = t_transform(g, x, tol / 2.0, rtol=rtol, opts=opts)
    return combine([a, b], [1.0, -1.0])


# --------------------------------------------------------------------------
# grids


def default_points(xmin: float = 1e-2, xmax: float = 1e2, points_per_decade: int = 25) -> np.ndarray:
    """Geometric grid with exact decade endpoints."""
    if not (0 < xmin < xmax):
        raise ValueError("need 0 < xmin < xmax")
    if points_per_decade < 1:
        raise ValueError("points_per_decade must be positive")
    lo, hi = math.log10(xmin), math.log10(xmax)
    n = int(round((hi - lo) * points_per_decade))
    k = np.arange(n + 1)
    return 10.0 ** (lo + (hi - lo) * k / n)


@dataclass
class TransformGrid:
    points: np.ndarray
    values: list[QuadratureResult] = field(default_factory=list)

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        if self.points.ndim != 1 or not np.all(self.points > 0) or np.any(np.diff(self.points) <= 0):
            raise ValueError("grid points must be positive and strictly increasing")
        if self.values and len(self.values) != self.points.size:
            raise ValueError("values must align with points")

    @property
    def array(self) -> np.ndarray:
        return np.array([v.value for v in self.values])

    @property
    def statuses(self) -> list[Status]:
        return [v.status for v in self.values]

    @classmethod
    def sweep(cls, fn: Callable[[float], QuadratureResult], points: Sequence[float]) -> "TransformGrid":
        """Evaluate ``fn`` at each point, in ascending order."""
        pts = np.asarray(points, dtype=float)
        return cls(pts, [fn(float(x)) for x in pts])

    @classmethod
    def from_values(cls, points, values: Sequence[float], status: Status = Status.CONVERGED):
        return cls(points, [QuadratureResult(float(v), 0.0, status, 0) for v in values])

    def to_csv(self, target=None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "value", "abs_error_estimate", "status", "evaluations"])
        for x, r in zip(self.points, self.values):
            w.writerow([repr(float(x)), repr(float(r.value)), repr(float(r.abs_error_estimate)),
                        r.status.value, r.evaluations])
        text = buf.getvalue()
        if target is not None:
            with open(target, "w", newline="") as fh:
                fh.write(text)
        return text

    @classmethod
    def read_csv(cls, path) -> "TransformGrid":
        with open(path, newline="") as fh:
            rows = list(csv.DictReader(fh))
        pts = [float(r["x"]) for r in rows]
        vals = [QuadratureResult(float(r["value"]), float(r["abs_error_estimate"]), Status(r["status"]),
                                 int(r["evaluations"])) for r in rows]
        return cls(pts, vals)


__all__ = [
    "DEFAULT_TOL", "TransformGrid", "as_evaluator", "bateman", "default_points", "fourier_cosine",
    "fourier_sine", "gamma_residual", "h0_script_t_cisi", "h0_script_t_nested", "hilbert_full",
    "hilbert_full_odd", "hilbert_odd", "script_t", "script_t_evaluator", "t_transform", "tail_integral",
]
