"""Norms, ratios, identity residuals and membership verdicts.

Every L1 norm over the half-line is an absolute-value half-line quadrature
whose integrand is itself a transform evaluated pointwise, so each norm is
a nested integral.  Power-law tails in x are closed with an extrapolated
geometric remainder (see :func:`bvft.quadrature.integrate_halfline`).

Hardy-ratio normalisation: for odd g on the line, ``g_hat(x) = -2i g_s(x)``
under ``int g(t) e^{-ixt} dt``; the ratio uses ``2 int_0^inf |g_s|/x`` as its
numerator (half of ``int_R |g_hat|/|x|``) and
``||g||_L1(R) + ||H g||_L1(R) = 2 (||g||_1 + ||H0 g||_1)`` as its denominator.
The constant absorbed is a factor 2 in the numerator.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from bvft import transforms as tr
from bvft.quadrature import (
    DEFAULT_OPTIONS,
    QuadOptions,
    QuadratureResult,
    Status,
    _block,
    combine,
    integrate_finite,
    integrate_halfline,
    vectorize,
    worst,
)
from bvft.testfns import Evaluator, TestFunction
from bvft.transforms import TransformGrid


class DegenerateInputError(ValueError):
    """A ratio's denominator vanishes (the function is identically zero)."""


class Tri(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNDECIDED = "undecided"


def verdict_of(r: QuadratureResult) -> Tri:
    return {Status.CONVERGED: Tri.YES, Status.DIVERGENT: Tri.NO}.get(r.status, Tri.UNDECIDED)


@dataclass(frozen=True)
class Precision:
    """Tolerances for pointwise transforms (inner) and x-space norms (outer)."""

    inner_tol: float = 1e-11
    inner_rtol: float = 1e-10
    outer_tol: float = 1e-10
    outer_rtol: float = 1e-6
    opts: QuadOptions = DEFAULT_OPTIONS
    ratio_ceiling: float = 10.0

    @classmethod
    def from_mapping(cls, data: dict) -> "Precision":
        tol = float(data.get("tol", cls.outer_tol))
        return cls(inner_tol=tol / 10.0, outer_tol=tol, outer_rtol=float(data.get("rtol", cls.outer_rtol)),
                   opts=QuadOptions.from_mapping(data), ratio_ceiling=float(data.get("ratio_ceiling", 10.0)))


DEFAULT_PRECISION = Precision()

# membership only needs finite-or-not; tails are closed at a looser relative level
MEMBERSHIP_RTOL = 1e-3


def membership_precision(prec: Precision = DEFAULT_PRECISION) -> Precision:
    return replace(prec, outer_rtol=max(prec.outer_rtol, MEMBERSHIP_RTOL))


def _pointwise(fn: Callable[[float], QuadratureResult]) -> Callable:
    return vectorize(lambda x: fn(x).value)


def l1_halfline(fn: Callable, prec: Precision = DEFAULT_PRECISION, *, scale: float = 1.0,
                breakpoints: Sequence[float] = (), support: float | None = None) -> QuadratureResult:
    """``int_0^inf |fn|`` split at sign changes, with extrapolated tails."""
    if support is not None:
        r = _block(fn, 0.0, support, prec.outer_tol, list(breakpoints), prec.outer_rtol, True,
                   prec.opts.max_panels)
        ok = r.error <= max(prec.outer_tol, prec.outer_rtol * r.value)
        return QuadratureResult(r.value, r.error, Status.CONVERGED if ok else r.status, r.evaluations)
    return integrate_halfline(fn, prec.outer_tol, breakpoints=breakpoints, absolute=True, scale=scale,
                              rtol=prec.outer_rtol, opts=prec.opts, extrapolate=True)


def _odd(g) -> Evaluator:
    if isinstance(g, TestFunction):
        return g.fprime
    return tr.as_evaluator(g)


def _t_kinks(g: Evaluator) -> list[float]:
    # T g has kinks where t, t/2 or 3t/2 meets a kink of g
    return sorted({k for b in g.breakpoints for k in (2.0 * b / 3.0, b, 2.0 * b)})


# --------------------------------------------------------------------------
# individual norms


def norm_fprime(g: Evaluator, prec=DEFAULT_PRECISION) -> QuadratureResult:
    return l1_halfline(g.fn, prec, scale=g.scale, breakpoints=g.breakpoints, support=g.support)


def norm_t(g: Evaluator, prec=DEFAULT_PRECISION) -> QuadratureResult:
    fn = _pointwise(lambda t: tr.t_transform(g, t, prec.inner_tol, rtol=prec.inner_rtol, opts=prec.opts))
    # T g vanishes beyond 2 * support
    sup = None if g.support is None else 2.0 * g.support
    return l1_halfline(fn, prec, scale=g.scale, breakpoints=_t_kinks(g), support=sup)


def norm_cosine(f: TestFunction, prec=DEFAULT_PRECISION) -> QuadratureResult:
    fn = _pointwise(lambda x: tr.fourier_cosine(f, x, prec.inner_tol, rtol=prec.inner_rtol, opts=prec.opts))
    return l1_halfline(fn, prec, scale=1.0 / f.scale)


def norm_quotient(g: Evaluator, prec=DEFAULT_PRECISION) -> QuadratureResult:
    """``int_0^inf |g_s(x)|/x dx``."""
    fn = _pointwise(lambda x: tr.script_t(g, x, prec.inner_tol, rtol=prec.inner_rtol, opts=prec.opts))
    return l1_halfline(fn, prec, scale=1.0 / g.scale)


def norm_hilbert(g: Evaluator, prec=DEFAULT_PRECISION) -> QuadratureResult:
    fn = _pointwise(lambda x: tr.hilbert_odd(g, x, prec.inner_tol, rtol=prec.inner_rtol, opts=prec.opts))
    return l1_halfline(fn, prec, scale=g.scale, breakpoints=g.breakpoints)


def norm_h0_quotient(g: Evaluator, prec=DEFAULT_PRECISION) -> QuadratureResult:
    fn = _pointwise(lambda x: tr.h0_script_t_cisi(g, x, prec.inner_tol, rtol=prec.inner_rtol, opts=prec.opts))
    return l1_halfline(fn, prec, scale=1.0 / g.scale)


def h1_full(g: Evaluator, prec=DEFAULT_PRECISION, l1_g: QuadratureResult | None = None) -> QuadratureResult:
    """``||g||_L1(R) + ||H g||_L1(R)`` for the odd extension of g."""
    l1_g = l1_g or norm_fprime(g, prec)
    return combine([l1_g, norm_hilbert(g, prec)], [2.0, 2.0])


def cancellation(g: Evaluator, prec=DEFAULT_PRECISION) -> QuadratureResult:
    """``int_R`` of the odd extension, as two separate half-line integrals."""
    ext = g.odd_extension()
    kw = dict(breakpoints=g.breakpoints, scale=g.scale, opts=prec.opts)
    right = integrate_halfline(ext, prec.outer_tol, **kw)
    left = integrate_halfline(lambda t: ext(-np.asarray(t)), prec.outer_tol, **kw)
    return combine([right, left])


# --------------------------------------------------------------------------
# reports


@dataclass
class NormReport:
    function_id: str
    l1_fprime: QuadratureResult | None = None
    l1_T_fprime: QuadratureResult | None = None
    l1_ft_cosine: QuadratureResult | None = None
    q0_integral: QuadratureResult | None = None
    h1_full: QuadratureResult | None = None
    hq_integral: QuadratureResult | None = None
    cancellation: QuadratureResult | None = None

    FIELDS = ("l1_fprime", "l1_T_fprime", "l1_ft_cosine", "q0_integral", "h1_full", "hq_integral",
              "cancellation")

    @property
    def complete(self) -> bool:
        return all(getattr(self, k) is not None for k in self.FIELDS)

    def to_dict(self) -> dict:
        return {k: (None if getattr(self, k) is None else getattr(self, k).to_dict()) for k in self.FIELDS}


def norm_report(f, prec: Precision = DEFAULT_PRECISION, fields: Sequence[str] | None = None) -> NormReport:
    """All norms for a test function f (with g = f') or for a bare odd g.

    ``l1_ft_cosine`` needs f itself and stays empty for a bare odd g.
    """
    g = _odd(f)
    name = f.label if isinstance(f, TestFunction) else g.name
    want = set(fields or NormReport.FIELDS)
    rep = NormReport(name)
    if "l1_fprime" in want or "h1_full" in want:
        rep.l1_fprime = norm_fprime(g, prec)
    if "l1_T_fprime" in want:
        rep.l1_T_fprime = norm_t(g, prec)
    if "l1_ft_cosine" in want and isinstance(f, TestFunction):
        rep.l1_ft_cosine = norm_cosine(f, prec)
    if "q0_integral" in want:
        rep.q0_integral = norm_quotient(g, prec)
    if "h1_full" in want:
        rep.h1_full = h1_full(g, prec, rep.l1_fprime)
    if "hq_integral" in want:
        rep.hq_integral = norm_h0_quotient(g, prec)
    if "cancellation" in want:
        rep.cancellation = cancellation(g, prec)
    return rep


@dataclass
class Ratio:
    """A recorded ratio together with the quantities it is built from."""

    value: float
    numerator: QuadratureResult
    denominator: QuadratureResult
    verdict: Tri
    ceiling: float = 10.0

    @property
    def below_ceiling(self) -> bool:
        return math.isfinite(self.value) and self.value < self.ceiling

    def to_dict(self) -> dict:
        return {"value": self.value, "numerator": self.numerator.to_dict(),
                "denominator": self.denominator.to_dict(), "verdict": self.verdict.value,
                "below_ceiling": self.below_ceiling}


def _ratio(num: QuadratureResult, den: QuadratureResult, ceiling: float, what: str) -> Ratio:
    if den.converged and den.value <= den.abs_error_estimate:
        raise DegenerateInputError(f"{what}: denominator vanishes (zero function)")
    if num.status is Status.DIVERGENT:
        verdict = Tri.NO
    elif num.converged and den.converged:
        verdict = Tri.YES
    else:
        verdict = Tri.UNDECIDED
    value = num.value / den.value if den.value != 0 else math.inf
    return Ratio(value, num, den, verdict, ceiling)


@dataclass
class Thm1Result:
    r_c: Ratio
    r_s: Ratio
    report: NormReport
    l1_F: QuadratureResult

    def to_dict(self):
        return {"r_c": self.r_c.to_dict(), "r_s": self.r_s.to_dict(), "l1_F": self.l1_F.to_dict(),
                "norms": self.report.to_dict()}


def leading_term(f: TestFunction, x):
    """``(1/x) f(pi/(2x))``."""
    x = np.asarray(x, dtype=float)
    return f.eval_f(0.5 * math.pi / x) / x


def _f_residual(f: TestFunction, prec: Precision) -> Callable:
    def F(x):
        fs = tr.fourier_sine(f, x, prec.inner_tol, rtol=prec.inner_rtol, opts=prec.opts).value
        return fs - float(leading_term(f, x))

    return vectorize(F)


def _leading_kinks(f: TestFunction) -> list[float]:
    return sorted(0.5 * math.pi / b for b in f.breakpoints if b > 0)


def _g_residual(f: TestFunction, prec: Precision) -> Callable:
    g = f.fprime

    def G(x):
        fs = tr.fourier_sine(f, x, prec.inner_tol, rtol=prec.inner_rtol, opts=prec.opts).value
        h0t = tr.h0_script_t_cisi(g, x, prec.inner_tol, rtol=prec.inner_rtol, opts=prec.opts).value
        return fs - (float(leading_term(f, x)) + h0t)

    return vectorize(G)


def check_thm1(f: TestFunction, prec: Precision = DEFAULT_PRECISION,
               report: NormReport | None = None) -> Thm1Result:
    """``r_c = ||f_c|| / (||f'|| + ||T f'||)`` and ``r_s = ||F|| / (same)``."""
    rep = report or norm_report(f, prec, ("l1_fprime", "l1_T_fprime", "l1_ft_cosine"))
    den = combine([rep.l1_fprime, rep.l1_T_fprime])
    if rep.l1_fprime.converged and rep.l1_fprime.value <= rep.l1_fprime.abs_error_estimate:
        raise DegenerateInputError("f' vanishes identically")
    l1_F = l1_halfline(_f_residual(f, prec), prec, scale=1.0 / f.scale, breakpoints=_leading_kinks(f))
    return Thm1Result(_ratio(rep.l1_ft_cosine, den, prec.ratio_ceiling, "r_c"),
                      _ratio(l1_F, den, prec.ratio_ceiling, "r_s"), rep, l1_F)


@dataclass
class Thm2Result:
    residual: TransformGrid
    max_scaled_residual: float
    l1_ft_cosine: QuadratureResult
    q0_fprime: QuadratureResult
    verdict_cosine: Tri
    verdict_q0: Tri

    @property
    def agree(self) -> bool:
        return self.verdict_cosine is self.verdict_q0

    def to_dict(self):
        return {"max_scaled_residual": self.max_scaled_residual, "l1_ft_cosine": self.l1_ft_cosine.to_dict(),
                "q0_fprime": self.q0_fprime.to_dict(), "verdict_cosine": self.verdict_cosine.value,
                "verdict_q0": self.verdict_q0.value, "agree": self.agree}


def parts_residual(f: TestFunction, x: float, prec: Precision = DEFAULT_PRECISION):
    """(residual, f_c(x)) with residual ``f_c(x) + script_T f'(x)``."""
    c = tr.fourier_cosine(f, x, prec.inner_tol, rtol=prec.inner_rtol, opts=prec.opts)
    q = tr.script_t(f.fprime, x, prec.inner_tol, rtol=prec.inner_rtol, opts=prec.opts)
    return combine([c, q]), c


def check_thm2(f: TestFunction, points=None, prec: Precision = DEFAULT_PRECISION,
               norms: bool = True) -> Thm2Result:
    """Pointwise parts identity on a grid plus the two integrability verdicts."""
    pts = tr.default_points() if points is None else np.asarray(points, dtype=float)
    res, scaled = [], []
    for x in pts:
        r, c = parts_residual(f, float(x), prec)
        res.append(r)
        scaled.append(abs(r.value) / (1.0 + abs(c.value)))
    grid = TransformGrid(pts, res)
    if norms:
        l1c = norm_cosine(f, prec)
        q0 = norm_quotient(f.fprime, prec)
    else:
        l1c = q0 = QuadratureResult(math.nan, math.inf, Status.MAX_DEPTH, 0)
    return Thm2Result(grid, max(scaled), l1c, q0, verdict_of(l1c), verdict_of(q0))


@dataclass
class DecompositionReport:
    grid: TransformGrid
    leading_term: TransformGrid
    h0t_term: TransformGrid
    g_residual: TransformGrid
    l1_G: QuadratureResult
    ratio_G: float
    f_residual: TransformGrid
    l1_F: QuadratureResult
    l1_fprime: QuadratureResult
    exact: bool
    ceiling: float = 10.0
    g_residual_lo: list = field(default_factory=list)

    def to_dict(self):
        return {"l1_G": self.l1_G.to_dict(), "ratio_G": self.ratio_G, "l1_F": self.l1_F.to_dict(),
                "l1_fprime": self.l1_fprime.to_dict(), "reconstruction_exact": self.exact,
                "below_ceiling": math.isfinite(self.ratio_G) and self.ratio_G < self.ceiling}


def split_exact(total: float, a: float, b: float) -> tuple[float, ...]:
    """Remainder ``total - a - b`` as a nonoverlapping float expansion.

    The leading component is the rounded remainder. The rest carry what
    rounding dropped, so ``math.fsum([a, b, *parts]) == total`` holds bitwise.
    """
    rest = Fraction(total) - Fraction(a) - Fraction(b)
    parts = [float(rest)]
    rest -= Fraction(parts[0])
    while rest:
        parts.append(float(rest))
        rest -= Fraction(parts[-1])
    return tuple(parts)


def reconstructs(total: float, a: float, b: float, parts: Sequence[float]) -> bool:
    return math.fsum([a, b, *parts]) == total


def check_thm3(f: TestFunction, points=None, prec: Precision = DEFAULT_PRECISION,
               l1_fprime: QuadratureResult | None = None, with_norms: bool = True) -> DecompositionReport:
    """Three-term split of the sine transform on a grid and the L1 size of G."""
    pts = tr.default_points() if points is None else np.asarray(points, dtype=float)
    fs = [tr.fourier_sine(f, float(x), prec.inner_tol, opts=prec.opts) for x in pts]
    h0t = [tr.h0_script_t_cisi(f.fprime, float(x), prec.inner_tol, opts=prec.opts) for x in pts]
    lead = [float(leading_term(f, x)) for x in pts]
    G, F, G_lo = [], [], []
    exact = True
    for s, l, h in zip(fs, lead, h0t):
        pair = split_exact(s.value, l, h.value)
        exact &= reconstructs(s.value, l, h.value, pair)
        G_lo.append(pair[1:])
        G.append(QuadratureResult(pair[0], s.abs_error_estimate + h.abs_error_estimate, worst(s.status, h.status),
                                  s.evaluations + h.evaluations))
        F.append(QuadratureResult(s.value - l, s.abs_error_estimate, s.status, s.evaluations))
    l1f = l1_fprime or norm_fprime(f.fprime, prec)
    if with_norms:
        kinks = _leading_kinks(f)
        l1G = l1_halfline(_g_residual(f, prec), prec, scale=1.0 / f.scale, breakpoints=kinks)
        l1F = l1_halfline(_f_residual(f, prec), prec, scale=1.0 / f.scale, breakpoints=kinks)
    else:
        l1G = l1F = QuadratureResult(math.nan, math.inf, Status.MAX_DEPTH, 0)
    if l1f.value == 0.0:
        ratio = 0.0 if l1G.value == 0.0 else math.inf
    else:
        ratio = l1G.value / l1f.value
    return DecompositionReport(
        grid=TransformGrid(pts, fs),
        leading_term=TransformGrid.from_values(pts, lead),
        h0t_term=TransformGrid(pts, h0t),
        g_residual=TransformGrid(pts, G),
        g_residual_lo=G_lo,
        l1_G=l1G,
        ratio_G=ratio,
        f_residual=TransformGrid(pts, F),
        l1_F=l1F,
        l1_fprime=l1f,
        exact=bool(exact),
        ceiling=prec.ratio_ceiling,
    )


def check_prop1(g, prec: Precision = DEFAULT_PRECISION) -> Ratio:
    """``||H0 script_T g||_1 / (||g||_1 + ||T g||_1)``."""
    g = _odd(g)
    num = norm_h0_quotient(g, prec)
    den = combine([norm_fprime(g, prec), norm_t(g, prec)])
    return _ratio(num, den, prec.ratio_ceiling, "prop1")


def check_hardy(g, prec: Precision = DEFAULT_PRECISION) -> Ratio:
    """``2 int_0^inf |g_s(x)|/x dx / (||g||_L1(R) + ||H g||_L1(R))``."""
    g = _odd(g)
    num = norm_quotient(g, prec).scaled(2.0)
    den = h1_full(g, prec)
    r = _ratio(num, den, prec.ratio_ceiling, "hardy")
    if den.status is Status.DIVERGENT:
        r.verdict = Tri.UNDECIDED
    return r


@dataclass
class MembershipVerdict:
    function_id: str
    in_L10: Tri
    in_Q0: Tri
    in_H1Q: Tri
    in_H10: Tri
    evidence: dict = field(default_factory=dict)

    CHAIN = ("in_H10", "in_H1Q", "in_Q0", "in_L10")

    @property
    def monotone(self) -> bool:
        """No smaller space says yes while a larger one says no."""
        v = [getattr(self, k) for k in self.CHAIN]
        for i, small in enumerate(v):
            if small is Tri.YES and any(big is Tri.NO for big in v[i + 1:]):
                return False
        return True

    def to_dict(self):
        return {"function": self.function_id, **{k: getattr(self, k).value for k in self.CHAIN},
                "monotone": self.monotone,
                "evidence": {k: r.to_dict() for k, r in self.evidence.items()}}


def synthetic_spectrum(x):
    """``1/ln(e + 1/x)``: bounded, yet ``int |.|/x`` diverges at both ends."""
    x = np.asarray(x, dtype=float)
    return 1.0 / np.log(math.e + 1.0 / x)


def damped_spectrum(x):
    """``e^-x / ln(e + 1/x)``: only the ``ln ln(1/x)`` divergence at 0 is left."""
    x = np.asarray(x, dtype=float)
    return np.exp(-x) / np.log(math.e + 1.0 / x)


def classify_membership(g=None, spectrum: Callable | None = None, prec: Precision | None = None,
                        name: str | None = None) -> MembershipVerdict:
    """Tri-state membership of an odd g in ``L1_0, Q0, H1_Q, H1_0``.

    With ``spectrum`` (a callable ``x -> g_s(x)``) the time side is bypassed:
    only Q0 is tested directly and ``in_L10`` stays undecided.  A "no" for a
    space propagates to the spaces defined as its subsets.
    """
    if (g is None) == (spectrum is None):
        raise ValueError("give exactly one of g or spectrum")
    prec = prec or membership_precision()
    ev: dict[str, QuadratureResult] = {}
    if spectrum is not None:
        q = lambda x: spectrum(x) / np.asarray(x, dtype=float)
        ev["Q0"] = l1_halfline(q, prec)
        vq = verdict_of(ev["Q0"])
        v_l1 = Tri.UNDECIDED
        v_hq = Tri.NO if vq is Tri.NO else Tri.UNDECIDED
        v_h1 = Tri.NO if vq is Tri.NO else Tri.UNDECIDED
        return MembershipVerdict(name or "synthetic_spectrum", v_l1, vq, v_hq, v_h1, ev)
    g = _odd(g)
    ev["L10"] = norm_fprime(g, prec)
    ev["Q0"] = norm_quotient(g, prec)
    ev["H1Q"] = norm_h0_quotient(g, prec)
    ev["H10"] = norm_hilbert(g, prec)
    v_l1 = verdict_of(ev["L10"])
    vq = verdict_of(ev["Q0"])
    v_hq = verdict_of(ev["H1Q"])
    v_h1 = verdict_of(ev["H10"])
    # definitional: H1Q is a subset of Q0 by construction, H10 of L10
    if vq is Tri.NO:
        v_hq = Tri.NO
    elif vq is Tri.UNDECIDED and v_hq is Tri.YES:
        v_hq = Tri.UNDECIDED
    if v_l1 is Tri.NO:
        v_h1 = Tri.NO
    elif v_l1 is Tri.UNDECIDED and v_h1 is Tri.YES:
        v_h1 = Tri.UNDECIDED
    return MembershipVerdict(name or g.name, v_l1, vq, v_hq, v_h1, ev)


@dataclass
class FubiniResult:
    lhs: QuadratureResult
    rhs: QuadratureResult
    residual: float

    def to_dict(self):
        return {"lhs": self.lhs.to_dict(), "rhs": self.rhs.to_dict(), "relative_residual": self.residual}


def check_fubini(f: TestFunction, prec: Precision = DEFAULT_PRECISION) -> FubiniResult:
    """``int_0^inf int_0^{pi/(2x)} t |f'(t)| dt dx`` against ``(pi/2) ||f'||_1``."""
    g = f.fprime
    rhs = norm_fprime(g, prec).scaled(0.5 * math.pi)
    if rhs.converged and rhs.value <= rhs.abs_error_estimate:
        raise DegenerateInputError("f' vanishes identically")
    weighted = lambda t: np.asarray(t) * np.abs(g.fn(t))

    def inner(x):
        upper = 0.5 * math.pi / x
        if g.support is not None:
            upper = min(upper, g.support)
        bps = [b for b in g.breakpoints if b < upper]
        return integrate_finite(weighted, 0.0, upper, prec.inner_tol, bps, rtol=1e-13).value

    kinks = _leading_kinks(f)
    lhs = integrate_halfline(vectorize(inner), prec.outer_tol, breakpoints=kinks, scale=1.0 / f.scale,
                             rtol=prec.outer_rtol, opts=prec.opts, extrapolate=True)
    return FubiniResult(lhs, rhs, abs(lhs.value - rhs.value) / rhs.value)


@dataclass
class Lemma1Result:
    points: np.ndarray
    cisi: TransformGrid
    nested: TransformGrid
    max_abs_difference: float

    def to_dict(self):
        return {"max_abs_difference": self.max_abs_difference, "points": len(self.points)}


def check_lemma1(f: TestFunction, points=None, prec: Precision = DEFAULT_PRECISION,
                 nested_tol: float = 1e-8) -> Lemma1Result:
    """Sine/cosine-integral route against H0 applied to the quotient transform."""
    pts = np.geomspace(0.1, 10.0, 20) if points is None else np.asarray(points, dtype=float)
    g = f.fprime
    cisi = lambda x: tr.h0_script_t_cisi(g, x, prec.inner_tol, rtol=prec.inner_rtol, opts=prec.opts)
    a = TransformGrid.sweep(cisi, pts)
    b = TransformGrid.sweep(lambda x: tr.h0_script_t_nested(g, x, nested_tol, opts=prec.opts), pts)
    return Lemma1Result(pts, a, b, float(np.max(np.abs(a.array - b.array))))


__all__ = [
    "DEFAULT_PRECISION", "DecompositionReport", "DegenerateInputError", "FubiniResult", "Lemma1Result",
    "MEMBERSHIP_RTOL", "MembershipVerdict", "NormReport", "Precision", "Ratio", "Thm1Result", "Thm2Result",
    "Tri", "check_fubini", "check_hardy", "check_lemma1", "check_prop1", "check_thm1", "check_thm2",
    "check_thm3", "classify_membership", "damped_spectrum", "l1_halfline", "leading_term",
    "membership_precision", "norm_report", "parts_residual", "reconstructs", "split_exact",
    "synthetic_spectrum", "verdict_of",
]
