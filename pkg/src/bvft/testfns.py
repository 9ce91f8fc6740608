"""Admissible functions on the half-line and the registry of test families.

A test function is carried as a pair of evaluators (f, f') plus metadata
used by the quadrature layer: kinks (``breakpoints``), a point beyond which
f vanishes (``support_hint``) and a characteristic length (``scale``) that
pivots the dyadic block sweeps.  Every family accepts a dilation
``lambda`` giving ``f_lambda(t) = f(lambda t)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping

import numpy as np
from scipy import special

Fn = Callable[[np.ndarray], np.ndarray]

CLOSED_FORM_KEYS = ("cosine_ft", "sine_ft", "hilbert_odd_of_fprime", "script_t_of_fprime")


class RegistryError(KeyError):
    pass


class ParameterError(ValueError):
    pass


class DecayClass(str, enum.Enum):
    COMPACT = "compact"
    EXPONENTIAL = "exponential"
    GAUSSIAN = "gaussian"
    POLYNOMIAL = "polynomial"


def _arr(t):
    return np.asarray(t, dtype=float)


def _out(t, y):
    return float(y) if np.ndim(t) == 0 else y


@dataclass(frozen=True)
class Evaluator:
    """A vectorised real function on (0, inf) with quadrature hints.

    ``derivative`` (when known) lets the T-transform use the analytic limit
    of its difference quotient; ``closed_forms`` may hold exact transforms of
    this function under the keys ``sine_ft``, ``script_t`` and
    ``hilbert_odd``.
    """

    fn: Fn
    name: str = ""
    breakpoints: tuple[float, ...] = ()
    support: float | None = None
    scale: float = 1.0
    derivative: "Evaluator | None" = None
    closed_forms: Mapping[str, Fn] = field(default_factory=dict)

    def __call__(self, t):
        return self.fn(t)

    def scaled_copy(self, lam: float, weight: float) -> "Evaluator":
        """``t -> weight * fn(lam t)`` with hints moved accordingly."""
        fn, w = self.fn, weight
        der = None
        if self.derivative is not None:
            der = self.derivative.scaled_copy(lam, weight * lam)
        return Evaluator(
            lambda t: w * fn(lam * _arr(t)),
            name=self.name,
            breakpoints=tuple(b / lam for b in self.breakpoints),
            support=None if self.support is None else self.support / lam,
            scale=self.scale / lam,
            derivative=der,
            closed_forms={},
        )

    def odd_extension(self) -> Fn:
        """The odd extension to the whole line, ``g(-t) = -g(t)``."""
        fn = self.fn

        def ext(t):
            t = _arr(t)
            a = np.abs(t)
            out = np.zeros_like(a)
            pos = a > 0
            out[pos] = np.sign(t[pos]) * fn(a[pos])
            return out

        return ext


@dataclass(frozen=True)
class TestFunction:
    """A locally absolutely continuous function of bounded variation on (0, inf)."""

    __test__ = False  # not a pytest class

    id: str
    params: Mapping[str, float]
    eval_f: Fn
    eval_fprime: Fn
    support_hint: float | None
    decay_class: DecayClass
    closed_forms: Mapping[str, Fn] = field(default_factory=dict)
    eval_fsecond: Fn | None = None
    breakpoints: tuple[float, ...] = ()
    scale: float = 1.0

    @property
    def lam(self) -> float:
        return float(self.params.get("lambda", 1.0))

    @property
    def label(self) -> str:
        return f"{self.id}[lambda={self.lam:g}]"

    @property
    def f(self) -> Evaluator:
        cf = {k: self.closed_forms[k] for k in ("sine_ft",) if k in self.closed_forms}
        return Evaluator(self.eval_f, self.label, self.breakpoints, self.support_hint, self.scale,
                         derivative=Evaluator(self.eval_fprime, self.label + "'", self.breakpoints,
                                              self.support_hint, self.scale),
                         closed_forms=cf)

    @property
    def fprime(self) -> Evaluator:
        der = None
        if self.eval_fsecond is not None:
            der = Evaluator(self.eval_fsecond, self.label + "''", self.breakpoints, self.support_hint,
                            self.scale)
        cf = {}
        if "script_t_of_fprime" in self.closed_forms:
            cf["script_t"] = self.closed_forms["script_t_of_fprime"]
        if "hilbert_odd_of_fprime" in self.closed_forms:
            cf["hilbert_odd"] = self.closed_forms["hilbert_odd_of_fprime"]
        return Evaluator(self.eval_fprime, self.label + "'", self.breakpoints, self.support_hint,
                         self.scale, derivative=der, closed_forms=cf)


# --------------------------------------------------------------------------
# families at lambda = 1


def _exp_f(t):
    return np.exp(-_arr(t))


def _exp_fp(t):
    return -np.exp(-_arr(t))


def _exp_hilbert_fp(x):
    # (2/pi) PV int_0^inf t (-e^-t) / (t^2 - x^2) dt
    x = _arr(x)
    return -(np.exp(x) * special.exp1(x) - np.exp(-x) * special.expi(x)) / math.pi


def _tri_f(t):
    return np.maximum(1.0 - _arr(t), 0.0)


def _tri_fp(t):
    t = _arr(t)
    return np.where(t < 1.0, -1.0, 0.0)


def _tri_cos(x):
    x = _arr(x)
    s = np.sin(0.5 * x)
    return 2.0 * s * s / (x * x)


def _x_minus_sin(x):
    # x - sin x without cancellation for small x
    x = _arr(x)
    small = np.abs(x) < 0.1
    xs = x * small
    x2 = xs * xs
    series = xs * x2 / 6.0 * (1 - x2 / 20.0 * (1 - x2 / 42.0 * (1 - x2 / 72.0 * (1 - x2 / 110.0))))
    return np.where(small, series, x - np.sin(x))


def _tri_sin(x):
    x = _arr(x)
    return _x_minus_sin(x) / (x * x)


def _tri_hilbert_fp(x):
    x = _arr(x)
    return -np.log(np.abs(1.0 / (x * x) - 1.0)) / math.pi


def _gauss_f(t):
    t = _arr(t)
    return np.exp(-t * t)


def _gauss_fp(t):
    t = _arr(t)
    return -2.0 * t * np.exp(-t * t)


def _gauss_fpp(t):
    t = _arr(t)
    return (4.0 * t * t - 2.0) * np.exp(-t * t)


def _gauss_cos(x):
    x = _arr(x)
    return 0.5 * math.sqrt(math.pi) * np.exp(-0.25 * x * x)


def _gauss_sin(x):
    return special.dawsn(0.5 * _arr(x))


def _gauss_hilbert_fp(x):
    x = _arr(x)
    return -(2.0 / math.sqrt(math.pi)) * (1.0 - 2.0 * x * special.dawsn(x))


def _rat_f(t):
    t = _arr(t)
    return 1.0 / (1.0 + t * t)


def _rat_fp(t):
    t = _arr(t)
    return -2.0 * t / (1.0 + t * t) ** 2


def _rat_fpp(t):
    t = _arr(t)
    return (6.0 * t * t - 2.0) / (1.0 + t * t) ** 3


def _rat_cos(x):
    return 0.5 * math.pi * np.exp(-_arr(x))


def _rat_sin(x):
    x = _arr(x)
    return 0.5 * (np.exp(-x) * special.expi(x) + np.exp(x) * special.exp1(x))


def _rat_hilbert_fp(x):
    x = _arr(x)
    return -(1.0 - x * x) / (1.0 + x * x) ** 2


def _log_f(t):
    return 1.0 / np.log(math.e + _arr(t))


def _log_fp(t):
    u = math.e + _arr(t)
    L = np.log(u)
    return -1.0 / (u * L * L)


def _log_fpp(t):
    u = math.e + _arr(t)
    L = np.log(u)
    return (L + 2.0) / (u * u * L ** 3)


def _neg(fn):
    return lambda x: -fn(x)


@dataclass(frozen=True)
class _Family:
    f: Fn
    fp: Fn
    fpp: Fn | None
    decay: DecayClass
    support: float | None = None
    breakpoints: tuple[float, ...] = ()
    forms: Mapping[str, Fn] = field(default_factory=dict)
    description: str = ""


_FAMILIES: dict[str, _Family] = {
    "exp": _Family(_exp_f, _exp_fp, _exp_f, DecayClass.EXPONENTIAL, forms={
        "cosine_ft": lambda x: 1.0 / (1.0 + _arr(x) ** 2),
        "sine_ft": lambda x: _arr(x) / (1.0 + _arr(x) ** 2),
        "hilbert_odd_of_fprime": _exp_hilbert_fp,
        "script_t_of_fprime": lambda x: -1.0 / (1.0 + _arr(x) ** 2),
    }, description="e^-t"),
    "triangle": _Family(_tri_f, _tri_fp, None, DecayClass.COMPACT, support=1.0, breakpoints=(1.0,), forms={
        "cosine_ft": _tri_cos,
        "sine_ft": _tri_sin,
        "hilbert_odd_of_fprime": _tri_hilbert_fp,
        "script_t_of_fprime": _neg(_tri_cos),
    }, description="(1-t)_+"),
    "gaussian": _Family(_gauss_f, _gauss_fp, _gauss_fpp, DecayClass.GAUSSIAN, forms={
        "cosine_ft": _gauss_cos,
        "sine_ft": _gauss_sin,
        "hilbert_odd_of_fprime": _gauss_hilbert_fp,
        "script_t_of_fprime": _neg(_gauss_cos),
    }, description="e^-t^2"),
    "rational": _Family(_rat_f, _rat_fp, _rat_fpp, DecayClass.POLYNOMIAL, forms={
        "cosine_ft": _rat_cos,
        "sine_ft": _rat_sin,
        "hilbert_odd_of_fprime": _rat_hilbert_fp,
        "script_t_of_fprime": _neg(_rat_cos),
    }, description="1/(1+t^2)"),
    # exploratory: slowest decay of the lot, no closed forms
    "log_decay": _Family(_log_f, _log_fp, _log_fpp, DecayClass.POLYNOMIAL, description="1/ln(e+t)"),
}


def list_families() -> list[str]:
    return list(_FAMILIES)


def describe(family_id: str) -> str:
    return _FAMILIES[family_id].description


def _check_lambda(lam) -> float:
    try:
        lam = float(lam)
    except (TypeError, ValueError):
        raise ParameterError(f"lambda must be a real number, got {lam!r}") from None
    if not (math.isfinite(lam) and lam > 0):
        raise ParameterError(f"lambda must be positive and finite, got {lam!r}")
    return lam


def _dilate_form(key: str, fn: Fn, lam: float) -> Fn:
    if key == "hilbert_odd_of_fprime":
        return lambda x: lam * fn(lam * _arr(x))
    # cosine, sine and the quotient transform of f' all scale as (1/lam) F(x/lam)
    return lambda x: fn(_arr(x) / lam) / lam


def registry_get(family_id: str, params: Mapping | None = None) -> TestFunction:
    """Instantiate a shipped family; ``params`` may carry ``lambda``."""
    if family_id not in _FAMILIES:
        raise RegistryError(f"unknown family {family_id!r}; known: {', '.join(_FAMILIES)}")
    params = dict(params or {})
    unknown = set(params) - {"lambda"}
    if unknown:
        raise ParameterError(f"unknown parameters for {family_id}: {sorted(unknown)}")
    lam = _check_lambda(params.get("lambda", 1.0))
    fam = _FAMILIES[family_id]
    base = TestFunction(
        id=family_id,
        params={"lambda": 1.0},
        eval_f=fam.f,
        eval_fprime=fam.fp,
        support_hint=fam.support,
        decay_class=fam.decay,
        closed_forms=dict(fam.forms),
        eval_fsecond=fam.fpp,
        breakpoints=fam.breakpoints,
        scale=1.0,
    )
    return base if lam == 1.0 else dilate(base, lam)


def from_json(obj: Mapping) -> TestFunction:
    """Build from ``{"family": id, "params": {...}, "lambda": value}``."""
    if "family" not in obj:
        raise ParameterError("missing key 'family'")
    params = dict(obj.get("params") or {})
    if "lambda" in obj:
        if "lambda" in params and float(params["lambda"]) != float(obj["lambda"]):
            raise ParameterError("conflicting 'lambda' values")
        params["lambda"] = obj["lambda"]
    return registry_get(obj["family"], params)


def to_json(f: TestFunction) -> dict:
    return {"family": f.id, "params": {k: v for k, v in f.params.items() if k != "lambda"}, "lambda": f.lam}


def dilate(f: TestFunction, lam: float) -> TestFunction:
    """``f_lam(t) = f(lam t)``, ``f_lam'(t) = lam f'(lam t)``."""
    lam = _check_lambda(lam)
    if lam == 1.0:
        return f
    ef, efp, efpp = f.eval_f, f.eval_fprime, f.eval_fsecond
    params = dict(f.params)
    params["lambda"] = f.lam * lam
    return replace(
        f,
        params=params,
        eval_f=lambda t: ef(lam * _arr(t)),
        eval_fprime=lambda t: lam * efp(lam * _arr(t)),
        eval_fsecond=None if efpp is None else (lambda t: lam * lam * efpp(lam * _arr(t))),
        support_hint=None if f.support_hint is None else f.support_hint / lam,
        breakpoints=tuple(b / lam for b in f.breakpoints),
        closed_forms={k: _dilate_form(k, fn, lam) for k, fn in f.closed_forms.items()},
        scale=f.scale / lam,
    )


@dataclass(frozen=True)
class FamilySpec:
    family_id: str
    parameter_grid: tuple[Mapping, ...] = ({"lambda": 1.0},)

    def members(self) -> list[TestFunction]:
        return [registry_get(self.family_id, p) for p in self.parameter_grid]

    @classmethod
    def from_mapping(cls, data: Mapping) -> "FamilySpec":
        if "family" not in data:
            raise ParameterError("family entry needs a 'family' key")
        grid = data.get("parameter_grid")
        if grid is None:
            lams = data.get("lambda", [1.0])
            lams = lams if isinstance(lams, (list, tuple)) else [lams]
            grid = [{"lambda": lam} for lam in lams]
        spec = cls(str(data["family"]), tuple(dict(p) for p in grid))
        spec.members()  # validate eagerly
        return spec


# --------------------------------------------------------------------------
# odd functions used directly (not as derivatives of a family)


def _kernel(t):
    t = _arr(t)
    return t / (1.0 + t * t) ** 2


def _kernel_d(t):
    t = _arr(t)
    return (1.0 - 3.0 * t * t) / (1.0 + t * t) ** 3


def odd_kernel(lam: float = 1.0) -> Evaluator:
    """``g(t) = t/(1+t^2)^2`` dilated as ``lam g(lam t)`` (L1-norm preserving).

    Closed forms: ``g_s(x) = (pi x/4) e^-x``, quotient transform
    ``(pi/4) e^-x`` and odd Hilbert transform ``(1-x^2)/(2(1+x^2)^2)``.
    """
    lam = _check_lambda(lam)
    base = Evaluator(
        _kernel, name="t/(1+t^2)^2", scale=1.0,
        derivative=Evaluator(_kernel_d, name="(t/(1+t^2)^2)'"),
        closed_forms={
            "sine_ft": lambda x: 0.25 * math.pi * _arr(x) * np.exp(-_arr(x)),
            "script_t": lambda x: 0.25 * math.pi * np.exp(-_arr(x)),
            "hilbert_odd": lambda x: (1.0 - _arr(x) ** 2) / (2.0 * (1.0 + _arr(x) ** 2) ** 2),
        },
    )
    if lam == 1.0:
        return base
    g = base.scaled_copy(lam, lam)
    cf = base.closed_forms
    forms = {
        "sine_ft": lambda x: cf["sine_ft"](_arr(x) / lam),
        "script_t": lambda x: cf["script_t"](_arr(x) / lam) / lam,
        "hilbert_odd": lambda x: lam * cf["hilbert_odd"](lam * _arr(x)),
    }
    return replace(g, name=f"t/(1+t^2)^2[lambda={lam:g}]", closed_forms=forms)


def zero_function() -> Evaluator:
    return Evaluator(lambda t: np.zeros_like(_arr(t)), name="zero", support=1.0)


def odd_functions(lams=(1.0,)) -> dict[str, Evaluator]:
    """The shipped odd functions: derivatives of every family and the kernel."""
    out = {}
    for lam in lams:
        for fid in _FAMILIES:
            f = registry_get(fid, {"lambda": lam})
            out[f.label + "'"] = f.fprime
        k = odd_kernel(lam)
        out[k.name if lam != 1.0 else "t/(1+t^2)^2"] = k
    return out


__all__ = [
    "CLOSED_FORM_KEYS", "DecayClass", "Evaluator", "FamilySpec", "ParameterError", "RegistryError",
    "TestFunction", "describe", "dilate", "from_json", "list_families", "odd_functions", "odd_kernel",
    "registry_get", "to_json", "zero_function",
]
