"""Sine and cosine integrals.

    Si(u) = int_0^u sin(t)/t dt = pi/2 - int_u^inf sin(t)/t dt
    Ci(u) = -int_u^inf cos(t)/t dt

Below the crossover (u <= 6) both come from their power series; above it
from the auxiliary functions f, g,

    pi/2 - Si(u) = f(u) cos u + g(u) sin u,   Ci(u) = f(u) sin u - g(u) cos u,

which are evaluated through the continued fraction of E1(iu).  Absolute
accuracy is about 1e-15 on both sides of the crossover.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from bvft._backend import core

EULER_GAMMA = 0.57721566490153286061
CROSSOVER = 6.0


class Method(str, enum.Enum):
    POWER_SERIES = "power_series"
    ASYMPTOTIC = "asymptotic"


@dataclass(frozen=True)
class SpecFunValue:
    value: float
    method: Method


class DomainError(ValueError):
    pass


def _method(u: float) -> Method:
    return Method.POWER_SERIES if u <= CROSSOVER else Method.ASYMPTOTIC


def _as_array(u, *, allow_zero: bool, name: str):
    arr = np.asarray(u, dtype=float)
    if np.any(np.isnan(arr)):
        raise DomainError(f"{name}: NaN argument")
    bad = arr < 0 if allow_zero else arr <= 0
    if np.any(bad):
        raise DomainError(f"{name} is defined here for u {'>=' if allow_zero else '>'} 0")
    return arr


def sici_aux(u):
    """Vectorised (Si, Ci, pi/2 - Si, f) for u > 0."""
    arr = _as_array(u, allow_zero=False, name="sici_aux")
    shape = arr.shape
    out = core.sici_aux(arr.reshape(-1))
    return tuple(np.asarray(v).reshape(shape) for v in out)


def si(u):
    """Si(u) for u >= 0; scalars in, float out, arrays in, arrays out."""
    arr = _as_array(u, allow_zero=True, name="si")
    flat = arr.reshape(-1)
    res = np.zeros_like(flat)
    pos = flat > 0
    if pos.any():
        res[pos] = core.sici_aux(flat[pos])[0]
    res = res.reshape(arr.shape)
    return float(res) if res.ndim == 0 else res


def ci(u):
    """Ci(u) for u > 0."""
    arr = _as_array(u, allow_zero=False, name="ci")
    res = core.sici_aux(arr.reshape(-1))[1].reshape(arr.shape)
    return float(res) if res.ndim == 0 else res


def si_tail(u):
    """int_u^inf sin(t)/t dt = pi/2 - Si(u), without cancellation for large u."""
    arr = _as_array(u, allow_zero=True, name="si_tail")
    flat = arr.reshape(-1)
    res = np.full_like(flat, 0.5 * math.pi)
    pos = flat > 0
    if pos.any():
        res[pos] = core.sici_aux(flat[pos])[2]
    res = res.reshape(arr.shape)
    return float(res) if res.ndim == 0 else res


def si_value(u: float) -> SpecFunValue:
    return SpecFunValue(si(float(u)), _method(float(u)))


def ci_value(u: float) -> SpecFunValue:
    return SpecFunValue(ci(float(u)), _method(float(u)))


def si_series(u):
    """Power-series branch on its own (used to check crossover continuity)."""
    s, _ = core.sici_series(np.atleast_1d(np.asarray(u, dtype=float)))
    return s


def ci_series(u):
    _, c = core.sici_series(np.atleast_1d(np.asarray(u, dtype=float)))
    return c


def si_ci_asymptotic(u):
    """Auxiliary-function branch on its own: (Si, Ci)."""
    u = np.atleast_1d(np.asarray(u, dtype=float))
    f, g = core.aux_fg(u)
    return 0.5 * math.pi - (f * np.cos(u) + g * np.sin(u)), f * np.sin(u) - g * np.cos(u)
