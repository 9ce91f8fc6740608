import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, special

from bvft import testfns
from bvft import transforms as tr
from bvft.quadrature import PvSpec, Status, integrate_pv
from bvft.testfns import Evaluator, dilate, registry_get

import _oracles

KERNEL = testfns.odd_kernel()
ZERO = testfns.zero_function()


def close(r, expected, tol):
    return abs(r.value - expected) <= tol


# --------------------------------------------------------------------------
# Fourier transforms


def test_fourier_cosine_examples():
    assert close(tr.fourier_cosine(registry_get("exp"), 1.0), 0.5, 1e-12)
    assert close(tr.fourier_cosine(registry_get("exp"), 0.0), 1.0, 1e-12)
    assert close(tr.fourier_cosine(registry_get("triangle"), math.pi), 2.0 / math.pi**2, 1e-12)


def test_fourier_sine_examples():
    assert close(tr.fourier_sine(registry_get("exp"), 1.0), 0.5, 1e-12)
    assert close(tr.fourier_sine(registry_get("triangle"), math.pi), 1.0 / math.pi, 1e-12)


# rational and log_decay have no first moment, so the bound is void for them
@pytest.mark.parametrize("fid", ["exp", "triangle", "gaussian"])
def test_fourier_sine_small_x(fid):
    f = registry_get(fid)
    end = f.support_hint or np.inf
    moment, _ = integrate.quad(lambda t: t * abs(f.eval_f(t)), 0.0, end, limit=400)
    x = 1e-6
    assert abs(tr.fourier_sine(f, x).value) <= 2 * x * moment


def test_fourier_negative_x():
    with pytest.raises(ValueError):
        tr.fourier_cosine(registry_get("exp"), -1.0)


@pytest.mark.parametrize("fid", ["exp", "triangle", "gaussian", "rational", "log_decay"])
def test_parts_identity(fid):
    # f_c(x) = -(1/x) int f'(t) sin(xt) dt
    f = registry_get(fid)
    for x in tr.default_points()[::10]:
        c = tr.fourier_cosine(f, x, 1e-11, rtol=1e-10).value
        s = tr.fourier_sine(f.fprime, x, 1e-11, rtol=1e-10).value
        assert abs(c + s / x) <= 1e-6 * (1 + abs(c))


@pytest.mark.parametrize("fid", ["exp", "triangle", "gaussian", "rational"])
@pytest.mark.parametrize("lam", [0.25, 4.0])
def test_dilation_covariance(fid, lam):
    f = registry_get(fid)
    g = dilate(f, lam)
    for x in (0.05, 0.7, 3.0, 20.0):
        lhs = tr.fourier_cosine(g, x).value
        rhs = tr.fourier_cosine(f, x / lam).value / lam
        assert abs(lhs - rhs) <= 1e-8


# --------------------------------------------------------------------------
# T-transform


def test_t_transform_locally_constant():
    g = Evaluator(lambda u: np.where(np.abs(np.asarray(u) - 2.0) < 1.5, 3.0, np.asarray(u)))
    assert abs(tr.t_transform(g, 2.0).value) < 1e-12


def test_t_transform_linear():
    g = Evaluator(lambda u: np.asarray(u, dtype=float))
    for t in (0.5, 2.0, 7.0):
        assert close(tr.t_transform(g, t), t, 1e-11)


def test_t_transform_exp_against_shi():
    expected = -2.0 * math.exp(-2.0) * _oracles.shi(1.0)
    g = Evaluator(lambda u: np.exp(-np.asarray(u)))
    assert close(tr.t_transform(g, 2.0), expected, 1e-11)
    # same value when the derivative shortcut is available
    assert close(tr.t_transform(registry_get("exp").f, 2.0), expected, 1e-11)


def _t_oracle(fn, t, points=None):
    val, _ = integrate.quad(lambda s: (fn(t + s) - fn(t - s)) / s, 0.0, t / 2, points=points,
                            epsabs=1e-13, limit=400)
    return val


@pytest.mark.parametrize("t", [0.3, 0.9, 1.2, 1.9, 2.5])
def test_t_transform_triangle_kink(t):
    fp = registry_get("triangle").fprime
    pts = [abs(1.0 - t)] if 0 < abs(1.0 - t) < t / 2 else None
    assert close(tr.t_transform(fp, t), _t_oracle(fp.fn, t, pts), 1e-9)


@settings(max_examples=20, deadline=None)
@given(st.floats(0.01, 100.0))
def test_t_transform_kernel_matches_oracle(t):
    assert close(tr.t_transform(KERNEL, t), _t_oracle(KERNEL.fn, t), 1e-10)


# --------------------------------------------------------------------------
# Hilbert transforms


def test_hilbert_odd_examples():
    assert tr.hilbert_odd(ZERO, 1.0).value == 0.0
    assert close(tr.hilbert_odd(KERNEL, 1.0), 0.0, 1e-11)
    assert close(tr.hilbert_odd(KERNEL, 0.0), 0.5, 1e-11)
    assert close(tr.hilbert_odd(KERNEL, 1e-6), 0.5, 1e-10)


@pytest.mark.parametrize("x", [1e-3, 0.1, 0.5, 1.0, 3.0, 40.0])
def test_hilbert_odd_kernel_closed_form(x):
    r = tr.hilbert_odd(KERNEL, x)
    assert r.converged
    assert close(r, KERNEL.closed_forms["hilbert_odd"](x), 1e-10)


@pytest.mark.parametrize("fid", ["exp", "triangle", "gaussian", "rational"])
@pytest.mark.parametrize("x", [0.1, 0.7, 3.0])
def test_hilbert_odd_family_closed_forms(fid, x):
    f = registry_get(fid)
    r = tr.hilbert_odd(f.fprime, x)
    assert close(r, f.closed_forms["hilbert_odd_of_fprime"](x), 1e-9)


def test_hilbert_full_examples():
    even = lambda t: np.exp(-np.asarray(t) ** 2)
    assert close(tr.hilbert_full(even, 0.0), 0.0, 1e-12)
    assert close(tr.hilbert_full_odd(KERNEL, 1.0), 0.0, 1e-10)
    box = lambda t: (np.abs(np.asarray(t)) < 1.0).astype(float)
    assert close(tr.hilbert_full(box, 0.0, breakpoints=(-1.0, 1.0)), 0.0, 1e-12)


@pytest.mark.parametrize("g", [KERNEL, registry_get("gaussian").fprime, registry_get("exp").fprime,
                               registry_get("triangle").fprime], ids=["kernel", "gauss", "exp", "tri"])
def test_hilbert_full_matches_odd(g):
    for x in (0.05, 0.5, 2.0, 9.0):
        a = tr.hilbert_full_odd(g, x, 1e-11)
        b = tr.hilbert_odd(g, x, 1e-11)
        assert abs(a.value - b.value) <= 1e-8


# --------------------------------------------------------------------------
# quotient transform


def test_script_t_examples():
    assert close(tr.script_t(KERNEL, 1.0), 0.25 * math.pi * math.exp(-1.0), 1e-11)
    assert close(tr.script_t(KERNEL, 0.0), 0.25 * math.pi, 1e-11)
    assert tr.script_t(ZERO, 1.0).value == 0.0


def test_script_t_divergent_moment():
    # int t g(t) dt diverges for g = (1/ln(e+t))'
    r = tr.script_t(registry_get("log_decay").fprime, 0.0, 1e-10)
    assert r.status is Status.DIVERGENT


@pytest.mark.parametrize("x", [1e-4, 1e-2, 1.0, 50.0])
def test_script_t_matches_oracle(x):
    g = registry_get("rational").fprime
    assert close(tr.script_t(g, x), _oracles.fourier(g.fn, x, "sine") / x, 1e-9)


# --------------------------------------------------------------------------
# sine/cosine-integral route


def test_cisi_kernel_values():
    u = np.geomspace(1e-3, 1e3, 30)
    s, c = special.sici(u)
    assert np.allclose(tr.cisi_kernel(u), np.cos(u) * s - np.sin(u) * c, atol=1e-14)
    assert tr.cisi_kernel(0.0) == 0.0


BATEMAN_PAIRS = [(0.5, 0.5), (1.0, 1.0), (1.0, 3.0), (2.0, 0.3), (0.3, 7.0), (5.0, 2.0)]


@pytest.mark.parametrize("a, y", BATEMAN_PAIRS)
def test_bateman_against_quadpack(a, y):
    assert abs(tr.bateman(a, y) - _oracles.pv_sine_over_difference(a, y)) < 1e-9


@pytest.mark.parametrize("a, y", BATEMAN_PAIRS[:3])
def test_bateman_against_package_pv(a, y):
    h = lambda x: np.sin(y * x) / (a * a - x * x)
    r = integrate_pv(h, (0.0, math.inf), PvSpec.default(a, 0.0, math.inf), 1e-10)
    assert abs(tr.bateman(a, y) - r.value) < 1e-8


def test_bateman_domain():
    with pytest.raises(ValueError):
        tr.bateman(0.0, 1.0)


def test_h0_cisi_zero():
    assert tr.h0_script_t_cisi(ZERO, 1.0).value == 0.0


@pytest.mark.parametrize("fid, x", [("exp", 1.0), ("triangle", 2.0), ("gaussian", 0.5)])
def test_h0_cisi_dual_path(fid, x):
    fp = registry_get(fid).fprime
    a = tr.h0_script_t_cisi(fp, x, 1e-10)
    # the nested route costs one oscillatory quadrature per node; 1e-6 still leaves a 10x margin
    b = tr.h0_script_t_nested(fp, x, 1e-6)
    assert abs(a.value - b.value) <= 1e-5


def test_h0_cisi_rational_closed_form():
    # script_T of (1/(1+t^2))' is -(pi/2) e^-x, so the target is H0 of that
    fp = registry_get("rational").fprime
    for x in (0.3, 1.0, 4.0):
        oracle = _oracles.hilbert_odd(lambda t: -0.5 * math.pi * math.exp(-t), x)
        assert abs(tr.h0_script_t_cisi(fp, x, 1e-10).value - oracle) < 1e-8


# --------------------------------------------------------------------------
# Gamma residual and tail integral


def test_gamma_residual():
    assert tr.gamma_residual(ZERO, 1.0).value == 0.0
    r = tr.gamma_residual(KERNEL, 1.0)
    assert abs(r.value + _t_oracle(KERNEL.fn, 1.0)) < 1e-10


def test_tail_integral_triangle_vanishes():
    # lower limit pi/(2x) reaches the end of the support once x <= pi/2
    f = registry_get("triangle")
    for x in (0.01, 1.0, math.pi / 2):
        assert tr.tail_integral(f, x).value == 0.0
    assert tr.tail_integral(f, 3.0).value > 0.0


def test_tail_integral_exp_complement():
    head, _ = integrate.quad(lambda t: math.exp(-t) * math.sin(t), 0.0, math.pi / 2, epsabs=1e-15)
    assert close(tr.tail_integral(registry_get("exp"), 1.0), 0.5 - head, 1e-11)


@pytest.mark.parametrize("fid", ["gaussian", "rational", "triangle"])
@pytest.mark.parametrize("x", [0.05, 1.3, 25.0])
def test_tail_plus_head(fid, x):
    f = registry_get(fid)
    end = math.pi / (2 * x)
    if f.support_hint is not None:
        end = min(end, f.support_hint)
    head, _ = integrate.quad(lambda t: f.eval_f(t) * math.sin(x * t), 0.0, end, epsabs=1e-14, limit=400)
    tail = tr.tail_integral(f, x, 1e-12)
    whole = tr.fourier_sine(f, x, 1e-12)
    assert abs(head + tail.value - whole.value) <= tail.abs_error_estimate + whole.abs_error_estimate + 1e-12


# --------------------------------------------------------------------------
# grids


def test_default_points():
    p = tr.default_points()
    assert p.size == 101 and p[0] == 0.01 and p[-1] == 100.0
    assert np.all(np.diff(p) > 0)


def test_grid_validation():
    with pytest.raises(ValueError):
        tr.TransformGrid([1.0, 0.5])
    with pytest.raises(ValueError):
        tr.TransformGrid([0.0, 1.0])
    with pytest.raises(ValueError):
        tr.TransformGrid.from_values([1.0, 2.0], [1.0])


def test_grid_csv_round_trip(tmp_path):
    f = registry_get("exp")
    g = tr.TransformGrid.sweep(lambda x: tr.fourier_sine(f, x), [0.1, 1.0, 10.0])
    path = tmp_path / "g.csv"
    text = g.to_csv(path)
    assert text.splitlines()[0] == "x,value,abs_error_estimate,status,evaluations"
    back = tr.TransformGrid.read_csv(path)
    assert np.array_equal(back.points, g.points) and np.array_equal(back.array, g.array)
    assert back.statuses == g.statuses


def test_shi_oracle_sanity():
    assert abs(_oracles.shi(1.0) - float(mp.quad(lambda s: mp.sinh(s) / s, [0, 1]))) < 1e-15
