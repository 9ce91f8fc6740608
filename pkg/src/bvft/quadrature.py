"""Quadrature kernels.

All integrands are vectorised: they take a 1-D float array of nodes and
return an array of the same shape.  Use :func:`vectorize` to lift a scalar
function (for example a nested integral) to that convention.

Four entry points:

* :func:`integrate_finite` -- globally adaptive 21-point Gauss-Kronrod on a
  finite interval, panels refined in batches.
* :func:`integrate_halfline` -- dyadic blocks ``[2^k, 2^(k+1)]`` (and
  ``[2^-(k+1), 2^-k]`` towards zero) with a geometric tail estimate and a
  block-based divergence detector.
* :func:`integrate_oscillatory` -- ``int g(t) sin(xt) dt`` or ``cos`` by
  partition at the zeros of the oscillator and Wynn-epsilon acceleration of
  the half-period sums.
* :func:`integrate_pv` -- Cauchy principal value through a ladder of
  symmetric excisions extrapolated to zero radius.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from bvft._backend import core

Integrand = Callable[[np.ndarray], np.ndarray]

_EPS = np.finfo(float).eps


class Status(str, enum.Enum):
    CONVERGED = "converged"
    MAX_DEPTH = "max_depth_reached"
    DIVERGENT = "divergence_suspected"


_RANK = {Status.CONVERGED: 0, Status.MAX_DEPTH: 1, Status.DIVERGENT: 2}


def worst(*statuses: Status) -> Status:
    return max(statuses, key=_RANK.__getitem__, default=Status.CONVERGED)


class EvaluationError(ArithmeticError):
    """Integrand returned a non-finite value at an interior node."""

    def __init__(self, location: float, value: float):
        super().__init__(f"non-finite integrand value {value!r} at t={location!r}")
        self.location = location
        self.value = value


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    status: Status
    evaluations: int

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED

    def __float__(self) -> float:
        return float(self.value)

    def scaled(self, factor: float) -> "QuadratureResult":
        return QuadratureResult(
            self.value * factor, self.abs_error_estimate * abs(factor), self.status, self.evaluations
        )

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "abs_error_estimate": self.abs_error_estimate,
            "status": self.status.value,
            "evaluations": self.evaluations,
        }


def combine(results: Sequence[QuadratureResult], weights: Sequence[float] | None = None) -> QuadratureResult:
    """Weighted sum of results; errors add, the worst status wins."""
    if weights is None:
        weights = [1.0] * len(results)
    value = math.fsum(w * r.value for w, r in zip(weights, results))
    err = math.fsum(abs(w) * r.abs_error_estimate for w, r in zip(weights, results))
    status = worst(*(r.status for r in results))
    return QuadratureResult(value, err, status, sum(r.evaluations for r in results))


@dataclass(frozen=True)
class QuadOptions:
    """Tunables shared by the kernels (config keys of the same names)."""

    tol: float = 1e-10
    pv_ladder_depth: int = 12
    dyadic_block_limit: int = 48
    tail_threshold: float = 1e-12
    max_panels: int = 4000
    osc_block_limit: int = 6000

    @classmethod
    def from_mapping(cls, data: dict) -> "QuadOptions":
        known = {k: data[k] for k in cls.__dataclass_fields__ if k in data}
        return cls(**known)


DEFAULT_OPTIONS = QuadOptions()


@dataclass(frozen=True)
class PvSpec:
    singularity: float
    excision_ladder: tuple[float, ...]

    def __post_init__(self):
        ladder = tuple(float(d) for d in self.excision_ladder)
        if len(ladder) < 3:
            raise ValueError("excision ladder needs at least three radii")
        if any(d <= 0 for d in ladder):
            raise ValueError("excision radii must be positive")
        if any(b >= a for a, b in zip(ladder, ladder[1:])):
            raise ValueError("excision radii must be strictly decreasing")
        object.__setattr__(self, "excision_ladder", ladder)

    @classmethod
    def default(cls, singularity: float, a: float, b: float, depth: int = 12) -> "PvSpec":
        """Geometric ladder ``delta_k = 2^-k (b-a)/8``, k = 0..depth.

        For unbounded intervals the first radius is a quarter of the
        distance to the nearest finite endpoint (or 1/4 if there is none).
        """
        if math.isfinite(a) and math.isfinite(b):
            d0 = (b - a) / 8.0
            d0 = min(d0, 0.5 * min(singularity - a, b - singularity))
        else:
            finite = [abs(singularity - e) for e in (a, b) if math.isfinite(e)]
            d0 = 0.25 * (min(finite) if finite else 1.0)
        return cls(singularity, tuple(d0 * 2.0**-k for k in range(depth + 1)))

    def halved(self) -> "PvSpec":
        return PvSpec(self.singularity, tuple(0.5 * d for d in self.excision_ladder))


def vectorize(fn: Callable[[float], float]) -> Integrand:
    """Lift a scalar function to the array-in/array-out integrand convention."""

    def wrapped(t):
        t = np.asarray(t, dtype=float)
        out = np.empty(t.shape)
        flat = out.reshape(-1)
        for i, v in enumerate(t.reshape(-1)):
            flat[i] = fn(float(v))
        return out

    return wrapped


# --------------------------------------------------------------------------
# Gauss-Kronrod 10/21 rule

_XGK = np.array([
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
])
_WGK = np.array([
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077715143727680, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
])
_WGK0 = 0.149445554002916905664936468389821
_WG = np.array([
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])

NODES = np.concatenate([-_XGK, [0.0], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK, [_WGK0], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(21)
GAUSS_WEIGHTS[1:10:2] = _WG
GAUSS_WEIGHTS[11:20:2] = _WG[::-1]


def _evaluate(h: Integrand, t: np.ndarray) -> np.ndarray:
    y = np.asarray(h(t), dtype=float)
    if y.shape != t.shape:
        y = np.broadcast_to(y, t.shape).copy()
    bad = ~np.isfinite(y)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise EvaluationError(float(t.reshape(-1)[i]), float(y.reshape(-1)[i]))
    return y


def gk21(h: Integrand, a: np.ndarray, b: np.ndarray):
    """Apply the 21-point Kronrod rule to every panel ``[a_i, b_i]`` at once.

    Returns (kronrod, |kronrod - gauss|, integral of |h|).
    """
    c = 0.5 * (a + b)
    r = 0.5 * (b - a)
    t = c[:, None] + r[:, None] * NODES[None, :]
    y = _evaluate(h, t.reshape(-1)).reshape(t.shape)
    k = r * (y @ KRONROD_WEIGHTS)
    g = r * (y @ GAUSS_WEIGHTS)
    resabs = np.abs(r) * (np.abs(y) @ KRONROD_WEIGHTS)
    return k, np.abs(k - g), resabs


def _dyadic_points(p: float, q: float) -> list[float]:
    """Powers of two strictly inside (p, q) once the interval spans many scales.

    Keeps the first Kronrod pass from stepping over mass concentrated near
    the small end of an interval like [0, 1e10].
    """
    if p >= 0.0:
        lo = max(p, 2.0**-4)
        if q <= 64.0 * lo:
            return []
        k0 = math.floor(math.log2(lo)) + 1
        k1 = math.ceil(math.log2(q)) - 1
        return [2.0**k for k in range(k0, k1 + 1) if p < 2.0**k < q]
    if q <= 0.0:
        return [-v for v in reversed(_dyadic_points(-q, -p))]
    return _dyadic_points(p, 0.0) + [0.0] + _dyadic_points(0.0, q)


@dataclass
class _Adaptive:
    value: float
    error: float
    resabs: float
    evaluations: int
    status: Status


def _adaptive(h: Integrand, a: float, b: float, tol: float, breakpoints=(), rtol: float = 0.0,
              max_panels: int = DEFAULT_OPTIONS.max_panels) -> _Adaptive:
    pts = {a, b}
    pts.update(float(p) for p in breakpoints if a < p < b)
    edges = sorted(pts)
    for p, q in zip(list(edges[:-1]), list(edges[1:])):
        pts.update(_dyadic_points(p, q))
    edges = np.array(sorted(pts))
    lo, hi = edges[:-1], edges[1:]
    k, e, ra = gk21(h, lo, hi)
    evals = 21 * lo.size
    status = Status.CONVERGED
    while True:
        total = math.fsum(k)
        err = math.fsum(e)
        target = max(tol, rtol * abs(total))
        if err <= target:
            break
        width = hi - lo
        splittable = width > 64 * _EPS * np.maximum(np.abs(lo), np.abs(hi))
        cand = e * splittable
        if not cand.any() or lo.size >= max_panels:
            status = Status.MAX_DEPTH
            break
        worst_err = cand.max()
        pick = cand >= worst_err / 8.0
        # also refine panels that alone exceed their fair share of the budget
        pick |= cand > target / max(lo.size, 1)
        pick &= cand > 0
        idx = np.flatnonzero(pick)
        if lo.size + idx.size > max_panels:
            idx = idx[np.argsort(cand[idx])[::-1][: max(1, max_panels - lo.size)]]
        mid = 0.5 * (lo[idx] + hi[idx])
        nlo = np.concatenate([lo[idx], mid])
        nhi = np.concatenate([mid, hi[idx]])
        nk, ne, nra = gk21(h, nlo, nhi)
        evals += 21 * nlo.size
        keep = np.ones(lo.size, dtype=bool)
        keep[idx] = False
        lo = np.concatenate([lo[keep], nlo])
        hi = np.concatenate([hi[keep], nhi])
        k = np.concatenate([k[keep], nk])
        e = np.concatenate([e[keep], ne])
        ra = np.concatenate([ra[keep], nra])
        order = np.argsort(lo, kind="stable")
        lo, hi, k, e, ra = lo[order], hi[order], k[order], e[order], ra[order]
    return _Adaptive(math.fsum(k), math.fsum(e), math.fsum(ra), evals, status)


def integrate_finite(h: Integrand, a: float, b: float, tol: float, breakpoints: Sequence[float] = (),
                     *, rtol: float = 0.0, max_panels: int | None = None) -> QuadratureResult:
    """Adaptive estimate of ``int_a^b h`` with forced subdivision at breakpoints."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("integrate_finite needs finite limits")
    if a > b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    if a == b:
        return QuadratureResult(0.0, 0.0, Status.CONVERGED, 0)
    r = _adaptive(h, a, b, tol, breakpoints, rtol, max_panels or DEFAULT_OPTIONS.max_panels)
    return QuadratureResult(r.value, r.error, r.status, r.evaluations)


# --------------------------------------------------------------------------
# absolute-value integrands


def sign_changes(h: Integrand, a: float, b: float, samples: int = 16) -> list[float]:
    """Zeros of ``h`` in (a, b) located from a sample scan and refined by Brent."""
    t = a + (b - a) * (np.arange(samples) + 0.5) / samples
    y = _evaluate(h, t)
    roots = []
    for i in np.flatnonzero(np.sign(y[:-1]) * np.sign(y[1:]) < 0):
        f = lambda s: float(_evaluate(h, np.array([s]))[0])
        xt = 4 * _EPS * max(abs(t[i]), abs(t[i + 1]))
        roots.append(brentq(f, t[i], t[i + 1], xtol=max(xt, 1e-300), rtol=8 * _EPS))
    return roots


def _block(h: Integrand, a: float, b: float, tol: float, breakpoints, rtol: float, absolute: bool,
           max_panels: int) -> _Adaptive:
    bps = [p for p in breakpoints if a < p < b]
    if absolute:
        bps = sorted(set(bps) | set(sign_changes(h, a, b)))
        target = lambda t: np.abs(h(t))
        r = _adaptive(target, a, b, tol, bps, rtol, max_panels)
        r.evaluations += 32
        return r
    return _adaptive(h, a, b, tol, bps, rtol, max_panels)


# --------------------------------------------------------------------------
# half line


@dataclass
class _Sweep:
    value: float = 0.0
    error: float = 0.0
    evaluations: int = 0
    status: Status = Status.CONVERGED
    blocks: int = 0


def _block_exponent(prev: float, cur: float, n: int) -> float:
    """Local p for block sums behaving like ``n**-p``; p <= 1 means a divergent sum."""
    if cur <= 0.0:
        return math.inf
    if prev <= 0.0:
        return -math.inf
    return math.log(prev / cur) / math.log(n / (n - 1.0))


# slack above the harmonic borderline: a tail this slow cannot be closed in budget anyway
_DIVERGENT_EXPONENT = 1.1


_PREFETCH = 4
_SCAN = 16


def _prefetch(h, lims, breakpoints, absolute: bool):
    """One vectorised Kronrod pass over upcoming blocks.

    Blocks holding a breakpoint, or (for ``|h|``) a sign change of ``h``,
    are left as ``None`` for the adaptive path.  Returns (results, evaluations).
    """
    lo = np.array([a for a, _ in lims])
    hi = np.array([b for _, b in lims])
    ok = np.ones(lo.size, dtype=bool)
    for p in breakpoints:
        ok &= ~((lo < p) & (p < hi))
    spent = 0
    if absolute:
        frac = (np.arange(_SCAN) + 0.5) / _SCAN
        t = lo[:, None] + (hi - lo)[:, None] * frac[None, :]
        y = _evaluate(h, t.reshape(-1)).reshape(t.shape)
        spent += y.size
        ok &= ~np.any(np.sign(y[:, :-1]) * np.sign(y[:, 1:]) < 0, axis=1)
        target = lambda u: np.abs(h(u))
    else:
        target = h
    out: list = [None] * lo.size
    idx = np.flatnonzero(ok)
    if idx.size:
        k, e, ra = gk21(target, lo[idx], hi[idx])
        spent += 21 * idx.size
        for j, i in enumerate(idx):
            out[i] = _Adaptive(float(k[j]), float(e[j]), float(ra[j]), 0, Status.CONVERGED)
    return out, spent


def _sweep(h, start: float, direction: int, tol: float, breakpoints, absolute: bool, rtol: float,
           opts: QuadOptions, extrapolate: bool = False) -> _Sweep:
    """Dyadic blocks from ``start`` upwards (direction=+1) or towards 0 (-1).

    With ``extrapolate`` the partial sums of a decaying block sequence are
    passed through Wynn's epsilon table; the sweep stops once successive
    extrapolants agree to the tail threshold.
    """
    out = _Sweep()
    sizes: list[float] = []
    partial: list[float] = []
    extrap: list[float] = []
    slow_run = 0
    zero_run = 0
    edge = start
    queue: list = []
    for k in range(opts.dyadic_block_limit):
        if direction > 0:
            a, b = edge, 2.0 * edge
        else:
            a, b = 0.5 * edge, edge
        edge = b if direction > 0 else a
        blk_tol = tol / (4.0 * (k + 1) ** 2)
        if not queue:
            lims = [(a * 2.0**(direction * i), b * 2.0**(direction * i)) for i in range(_PREFETCH)]
            queue, spent = _prefetch(h, lims, breakpoints, absolute)
            out.evaluations += spent
        r = queue.pop(0)
        if r is None or r.error > max(blk_tol, max(rtol, 4 * _EPS) * abs(r.value)):
            r = _block(h, a, b, blk_tol, breakpoints, max(rtol, 4 * _EPS), absolute, opts.max_panels)
            out.evaluations += r.evaluations
        out.value += r.value
        out.error += r.error
        out.blocks += 1
        size = r.resabs
        sizes.append(size)
        partial.append(out.value)
        thr = max(min(opts.tail_threshold, tol / 8.0), rtol * abs(out.value) / 2.0)
        if extrapolate and len(partial) >= 4:
            est, _ = core.wynn_epsilon(np.array(partial[-12:]))
            extrap.append(est)
            decaying = all(b < 0.95 * a for a, b in zip(sizes[-4:-1], sizes[-3:]))
            if len(extrap) >= 3 and decaying:
                gap = 2.0 * max(abs(extrap[-1] - extrap[-2]), abs(extrap[-2] - extrap[-3]))
                if gap <= thr:
                    out.error += gap
                    out.value = est
                    return out
        if size == 0.0:
            zero_run += 1
            if zero_run >= 3:
                return out
            continue
        zero_run = 0
        n = len(sizes)
        if n >= 2:
            if _block_exponent(sizes[-2], size, n) <= _DIVERGENT_EXPONENT:
                slow_run += 1
            else:
                slow_run = 0
            if slow_run >= 8:
                out.status = Status.DIVERGENT
                return out
        if n >= 4:
            prev = sizes[-4:-1]
            ratios = [c / p if p > 0 else 0.0 for p, c in zip(prev, sizes[-3:])]
            rmax = max(ratios)
            if rmax < 0.9:
                tail = size * rmax / (1.0 - rmax)
                if direction < 0 and n >= 6 and rmax <= 0.75:
                    # settled decay towards zero: finish [0, edge] in one adaptive pass
                    rest = _block(h, 0.0, edge, tol / 4.0, breakpoints, max(rtol, 4 * _EPS), absolute,
                                  opts.max_panels)
                    out.value += rest.value
                    out.error += rest.error
                    out.evaluations += rest.evaluations
                    if rest.status is not Status.CONVERGED and rest.error > tol / 4.0:
                        out.status = worst(out.status, rest.status)
                    return out
                if tail <= thr and size <= thr:
                    out.error += tail
                    return out
    out.status = Status.MAX_DEPTH
    out.error += sizes[-1] if sizes else 0.0
    return out


def integrate_halfline(h: Integrand, tol: float, *, a: float = 0.0, breakpoints: Sequence[float] = (),
                       absolute: bool = False, scale: float = 1.0, rtol: float = 0.0,
                       opts: QuadOptions | None = None, extrapolate: bool = False) -> QuadratureResult:
    """``int_a^inf h`` (or of ``|h|`` with ``absolute=True``) by dyadic blocks.

    Blocks are summed in a fixed order (towards zero first, then upwards).
    A block sequence that decays no faster than about ``1/k`` over eight
    consecutive blocks is reported as
    ``divergence_suspected``; the result still carries the partial sum.
    ``extrapolate`` closes power-law tails with an extrapolated remainder
    instead of summing until the blocks themselves are negligible.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    opts = opts or DEFAULT_OPTIONS
    bps = sorted(float(p) for p in breakpoints)
    parts: list[QuadratureResult] = []
    if a < 0.0:
        r = _block(h, a, 0.0, tol / 4.0, bps, max(rtol, 4 * _EPS), absolute, opts.max_panels)
        parts.append(QuadratureResult(r.value, r.error, r.status if r.error > tol / 4 else Status.CONVERGED,
                                      r.evaluations))
        a = 0.0
    sweeps = []
    if a == 0.0:
        sweeps.append(_sweep(h, scale, -1, tol / 2.0, bps, absolute, rtol, opts, extrapolate))
        sweeps.append(_sweep(h, scale, +1, tol / 2.0, bps, absolute, rtol, opts, extrapolate))
    else:
        start = a
        if a < scale / 8.0:
            r = _block(h, a, scale, tol / 4.0, bps, max(rtol, 4 * _EPS), absolute, opts.max_panels)
            parts.append(QuadratureResult(r.value, r.error,
                                          r.status if r.error > tol / 4 else Status.CONVERGED, r.evaluations))
            start = scale
        sweeps.append(_sweep(h, start, +1, tol / 2.0, bps, absolute, rtol, opts, extrapolate))
    value = math.fsum([p.value for p in parts] + [s.value for s in sweeps])
    err = math.fsum([p.abs_error_estimate for p in parts] + [s.error for s in sweeps])
    evals = sum(p.evaluations for p in parts) + sum(s.evaluations for s in sweeps)
    status = worst(*(s.status for s in sweeps), *(p.status for p in parts))
    if status is Status.CONVERGED and err > max(tol, rtol * abs(value)):
        status = Status.MAX_DEPTH
    elif status is Status.MAX_DEPTH and err <= max(tol, rtol * abs(value)) and all(
            s.status is Status.CONVERGED for s in sweeps):
        status = Status.CONVERGED
    return QuadratureResult(value, err, status, evals)


# --------------------------------------------------------------------------
# oscillatory integrals


def _block_sums(h: Integrand, edges: np.ndarray, tol: float, rtol: float, max_panels: int):
    """Integrals of ``h`` over consecutive intervals of ``edges``.

    One vectorised Kronrod pass; intervals whose estimate is not good enough
    are redone adaptively.
    """
    lo, hi = edges[:-1], edges[1:]
    k, e, ra = gk21(h, lo, hi)
    evals = 21 * lo.size
    blk_tol = tol / max(lo.size, 1)
    bad = e > np.maximum(blk_tol, max(8 * _EPS, rtol) * ra)
    for i in np.flatnonzero(bad):
        r = _adaptive(h, float(lo[i]), float(hi[i]), blk_tol, (), max(rtol, 4 * _EPS), max_panels)
        k[i], e[i], ra[i] = r.value, r.error, r.resabs
        evals += r.evaluations
    return k, e, ra, evals


def _zeros_between(x: float, phase: float, lo: float, hi: float):
    """Index range of oscillator zeros ``(j pi + phase)/x`` strictly inside (lo, hi)."""
    j0 = math.floor((x * lo - phase) / math.pi) + 1
    j1 = math.ceil((x * hi - phase) / math.pi) - 1
    return j0, j1


def _zero(x: float, phase: float, j: int) -> float:
    return (j * math.pi + phase) / x


def _accelerated(sums_fn, tol: float, max_blocks: int, batch: int = 24, detect_divergence: bool = True,
                 rtol: float = 0.0):
    """Grow a block sequence until the Wynn extrapolant of its partial sums settles.

    ``sums_fn(n0, n1)`` returns (block values, block errors, block |.| sizes,
    evaluations) for blocks n0..n1-1.  Returns
    (estimate, error, evaluations, status, blocks used).
    """
    vals = np.empty(0)
    errs = np.empty(0)
    sizes = np.empty(0)
    evals = 0
    prev_est = None
    n = 0
    while n < max_blocks:
        m = min(batch, max_blocks - n)
        v, e, s, ev = sums_fn(n, n + m)
        vals = np.concatenate([vals, v])
        errs = np.concatenate([errs, e])
        sizes = np.concatenate([sizes, s])
        evals += ev
        n += m
        partial = np.cumsum(vals)
        qerr = float(errs.sum())
        # blocks already negligible: plain summation has converged
        if n >= 2 * batch and sizes[-batch:].max() <= 1e-3 * tol and sizes[-1] <= sizes[-batch]:
            return float(partial[-1]), qerr + float(sizes[-batch:].sum()), evals, Status.CONVERGED, n
        window = partial[-min(n, 48):]
        est, werr = core.wynn_epsilon(window)
        if prev_est is not None:
            werr = max(werr, abs(est - prev_est))
        goal = max(tol, rtol * abs(est))
        if prev_est is not None and werr <= goal / 2 and qerr <= goal / 2:
            return est, werr + qerr, evals, Status.CONVERGED, n
        if detect_divergence and n >= 192 and sizes[-24:].mean() > 4.0 * sizes[24:48].mean():
            return est, werr + qerr, evals, Status.DIVERGENT, n
        prev_est = est
        batch = min(2 * batch, 192)
    return est, werr + qerr, evals, Status.MAX_DEPTH, n


def integrate_oscillatory(g: Integrand, x: float, kind: str, tol: float, *, a: float = 0.0,
                          breakpoints: Sequence[float] = (), support: float | None = None,
                          rtol: float = 0.0, opts: QuadOptions | None = None) -> QuadratureResult:
    """``int_a^inf g(t) w(xt) dt`` with ``w = sin`` or ``cos``.

    The range is cut at the zeros ``t_j`` of ``w(xt)``; the half-period
    integrals alternate in sign and their partial sums are accelerated with
    Wynn's epsilon algorithm.  Smooth stretches containing very many
    half-periods (finite intervals at large ``x``) are summed from both ends
    with the same extrapolation, which is exact for alternating sums whose
    magnitudes vary smoothly.  ``g`` is taken to vanish beyond ``support``.
    """
    if kind not in ("sine", "cosine"):
        raise ValueError(f"kind must be 'sine' or 'cosine', got {kind!r}")
    if not tol > 0:
        raise ValueError("tol must be positive")
    if x < 0:
        raise ValueError("x must be non-negative")
    opts = opts or DEFAULT_OPTIONS
    end = math.inf if support is None else float(support)
    if end <= a:
        return QuadratureResult(0.0, 0.0, Status.CONVERGED, 1)
    bps = sorted(float(p) for p in breakpoints if a < p < end)
    if x == 0.0:
        if kind == "sine":
            return QuadratureResult(0.0, 0.0, Status.CONVERGED, 1)
        if math.isfinite(end):
            return integrate_finite(g, a, end, tol, bps, rtol=rtol)
        return integrate_halfline(g, tol, a=a, breakpoints=bps, rtol=rtol, opts=opts)

    w = np.sin if kind == "sine" else np.cos
    phase = 0.0 if kind == "sine" else 0.5 * math.pi

    def h(t):
        return g(t) * w(x * t)

    pts = [a] + bps + ([end] if math.isfinite(end) else [])
    nseg = len(pts) - 1 + (0 if math.isfinite(end) else 1)
    seg_tol = tol / nseg
    parts = []
    for lo, hi in zip(pts[:-1], pts[1:]):
        parts.append(_osc_finite(h, x, phase, lo, hi, seg_tol, rtol, opts))
    if not math.isfinite(end):
        parts.append(_osc_tail(h, x, phase, pts[-1], seg_tol, rtol, opts))
    res = combine(parts)
    if res.status is not Status.DIVERGENT:
        ok = res.abs_error_estimate <= max(tol, rtol * abs(res.value))
        res = QuadratureResult(res.value, res.abs_error_estimate,
                               Status.CONVERGED if ok else Status.MAX_DEPTH, res.evaluations)
    return res


_DIRECT_HALF_PERIODS = 600


def _osc_finite(h, x, phase, lo, hi, tol, rtol, opts) -> QuadratureResult:
    j0, j1 = _zeros_between(x, phase, lo, hi)
    nblocks = j1 - j0  # full half-periods between first and last interior zero
    if nblocks <= _DIRECT_HALF_PERIODS:
        zeros = [_zero(x, phase, j) for j in range(j0, j1 + 1)] if j1 >= j0 else []
        r = _adaptive(h, lo, hi, tol, zeros, rtol, max(opts.max_panels, 4 * len(zeros) + 64))
        return QuadratureResult(r.value, r.error, r.status, r.evaluations)
    z_first, z_last = _zero(x, phase, j0), _zero(x, phase, j1)
    left = _adaptive(h, lo, z_first, tol / 8, (), rtol, opts.max_panels)
    right = _adaptive(h, z_last, hi, tol / 8, (), rtol, opts.max_panels)
    half = nblocks // 2 - 1

    def from_left(n0, n1):
        edges = np.array([_zero(x, phase, j0 + j) for j in range(n0, n1 + 1)])
        return _block_sums(h, edges, tol / 8, rtol, opts.max_panels)

    def from_right(n0, n1):
        edges = np.array([_zero(x, phase, j1 - j) for j in range(n1, n0 - 1, -1)])
        k, e, s, ev = _block_sums(h, edges, tol / 8, rtol, opts.max_panels)
        return k[::-1], e[::-1], s[::-1], ev

    el, errl, evl, stl, _ = _accelerated(from_left, tol / 4, half, detect_divergence=False, rtol=rtol)
    er, errr, evr, str_, _ = _accelerated(from_right, tol / 4, half, detect_divergence=False, rtol=rtol)
    value = left.value + right.value + el + er
    err = left.error + right.error + errl + errr
    status = worst(stl, str_)
    return QuadratureResult(value, err, status, left.evaluations + right.evaluations + evl + evr)


def _osc_tail(h, x, phase, lo, tol, rtol, opts) -> QuadratureResult:
    j0 = math.floor((x * lo - phase) / math.pi) + 1
    z0 = _zero(x, phase, j0)
    head = _adaptive(h, lo, z0, tol / 4, (), rtol, opts.max_panels)

    def blocks(n0, n1):
        edges = np.array([_zero(x, phase, j0 + j) for j in range(n0, n1 + 1)])
        return _block_sums(h, edges, tol / 8, rtol, opts.max_panels)

    est, err, ev, status, _ = _accelerated(blocks, tol / 2, opts.osc_block_limit, rtol=rtol)
    return QuadratureResult(head.value + est, head.error + err, status, head.evaluations + ev)


# --------------------------------------------------------------------------
# principal values


def _neville_zero(d: Sequence[float], v: Sequence[float]) -> float:
    """Value at 0 of the quadratic through (d_i, v_i), i = 0..2."""
    (d0, d1, d2), (v0, v1, v2) = d, v
    l0 = d1 * d2 / ((d0 - d1) * (d0 - d2))
    l1 = d0 * d2 / ((d1 - d0) * (d1 - d2))
    l2 = d0 * d1 / ((d2 - d0) * (d2 - d1))
    return l0 * v0 + l1 * v1 + l2 * v2


def ladder_limit(q: Integrand, upper: float, ladder: Sequence[float], tol: float,
                 breakpoints: Sequence[float] = (), rtol: float = 0.0,
                 opts: QuadOptions | None = None) -> QuadratureResult:
    """Limit as delta -> 0 of ``int_delta^upper q`` along an excision ladder.

    ``I(delta_k)`` is built incrementally (each step adds one short piece)
    and extrapolated to zero radius with a quadratic through the last three
    rungs.  The error estimate is the change between the last two
    extrapolants plus the propagated quadrature error.
    """
    opts = opts or DEFAULT_OPTIONS
    ladder = list(ladder)
    if ladder[0] > upper:
        raise ValueError("first excision radius exceeds the integration window")
    step_tol = tol / (8.0 * len(ladder))
    lo = np.array(ladder)
    hi = np.array([upper] + ladder[:-1])
    tols = np.array([tol / 8.0] + [step_tol] * (len(ladder) - 1))
    plain = np.ones(lo.size, dtype=bool)
    for p in breakpoints:
        plain &= ~((lo < p) & (p < hi))
    k, e, _ = gk21(q, lo, hi)
    evals = 21 * lo.size
    pieces = []
    for i in range(lo.size):
        eff = max(rtol, 4 * _EPS)
        if plain[i] and e[i] <= max(tols[i], eff * abs(k[i])):
            pieces.append((float(k[i]), float(e[i])))
            continue
        r = _adaptive(q, float(lo[i]), float(hi[i]), float(tols[i]), breakpoints, rtol, opts.max_panels)
        pieces.append((r.value, r.error))
        evals += r.evaluations
    values = [float(v) for v in np.cumsum([v for v, _ in pieces])]
    qerr = math.fsum(err for _, err in pieces)
    extrap = [_neville_zero(ladder[i:i + 3], values[i:i + 3]) for i in range(len(ladder) - 2)]
    est = float(extrap[-1])
    xerr = abs(extrap[-1] - extrap[-2]) if len(extrap) > 1 else abs(values[-1] - est)
    err = xerr + 5.0 * qerr
    status = Status.CONVERGED if err <= max(tol, rtol * abs(est)) else Status.MAX_DEPTH
    return QuadratureResult(est, err, status, evals)


def integrate_pv(h: Integrand, interval: tuple[float, float], spec: PvSpec, tol: float,
                 *, breakpoints: Sequence[float] = (), rtol: float = 0.0,
                 opts: QuadOptions | None = None) -> QuadratureResult:
    """Principal value ``lim_{delta->0} int_{interval, |t-s|>delta} h``.

    The excised integral at radius ``delta`` is computed in folded form,
    ``int_delta^r [h(s+u) + h(s-u)] du`` plus the regular remainder outside
    the symmetric window of radius ``r`` -- the same quantity, without the
    cancellation of two large one-sided pieces.
    """
    opts = opts or DEFAULT_OPTIONS
    a, b = interval
    s = spec.singularity
    if not a < s < b:
        raise ValueError("singularity must lie inside the interval")
    dist = [d for d in (s - a, b - s) if math.isfinite(d)]
    r = min(dist) if dist else max(1.0, 4.0 * spec.excision_ladder[0])
    r = max(r, spec.excision_ladder[0])
    inner_bps = sorted(abs(p - s) for p in breakpoints if 0.0 < abs(p - s) < r)

    def folded(u):
        return h(s + u) + h(s - u)

    window = ladder_limit(folded, r, spec.excision_ladder, tol / 2.0, inner_bps, rtol, opts)
    parts = [window]
    outer_bps = [p for p in breakpoints if abs(p - s) > r]
    for lo, hi in ((a, s - r), (s + r, b)):
        if hi <= lo:
            continue
        if math.isfinite(lo) and math.isfinite(hi):
            parts.append(integrate_finite(h, lo, hi, tol / 4.0, outer_bps, rtol=rtol))
        elif math.isfinite(lo):
            parts.append(integrate_halfline(h, tol / 4.0, a=lo, breakpoints=outer_bps, rtol=rtol, opts=opts))
        else:
            refl = lambda t: h(-t)
            parts.append(integrate_halfline(refl, tol / 4.0, a=-hi, breakpoints=[-p for p in outer_bps],
                                            rtol=rtol, opts=opts))
    res = combine(parts)
    if res.status is Status.DIVERGENT:
        return res
    ok = res.abs_error_estimate <= max(tol, rtol * abs(res.value))
    return QuadratureResult(res.value, res.abs_error_estimate,
                            Status.CONVERGED if ok else Status.MAX_DEPTH, res.evaluations)
