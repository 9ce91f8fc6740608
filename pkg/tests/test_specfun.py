import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special

from bvft import specfun
from bvft.quadrature import integrate_oscillatory
from bvft.specfun import CROSSOVER, DomainError, Method

from _oracles import ci_series, si_series


def test_si_zero():
    assert specfun.si(0.0) == 0.0


def test_si_pi_against_series():
    assert abs(specfun.si(math.pi) - si_series(math.pi)) < 1e-14


def test_ci_one_against_series():
    assert abs(specfun.ci(1.0) - ci_series(1.0)) < 1e-14


def test_si_large_argument():
    u = 1e6
    assert abs(specfun.si(u) - math.pi / 2) <= 2.0 / u


def test_ci_small_argument():
    u = 1e-6
    assert abs(specfun.ci(u) - math.log(u) - specfun.EULER_GAMMA) <= u * u


def test_ci_bound_at_100():
    assert abs(specfun.ci(100.0)) <= 0.02


def test_domain_errors():
    with pytest.raises(DomainError):
        specfun.si(-1.0)
    with pytest.raises(DomainError):
        specfun.ci(0.0)
    with pytest.raises(DomainError):
        specfun.ci(-2.0)
    with pytest.raises(DomainError):
        specfun.si(float("nan"))


@pytest.mark.parametrize("u", [0.3, 2.0, CROSSOVER, 6.0001, 40.0])
def test_method_tag(u):
    expected = Method.POWER_SERIES if u <= CROSSOVER else Method.ASYMPTOTIC
    assert specfun.si_value(u).method is expected
    assert specfun.ci_value(u).method is expected


def test_crossover_continuity():
    s_ser, c_ser = specfun.si_series(CROSSOVER)[0], specfun.ci_series(CROSSOVER)[0]
    s_asy, c_asy = (v[0] for v in specfun.si_ci_asymptotic(CROSSOVER))
    assert abs(s_ser - s_asy) <= 1e-10
    assert abs(c_ser - c_asy) <= 1e-10


@pytest.mark.parametrize("u", [0.5, 2.0, 10.0])
def test_derivative_consistency(u):
    h = 1e-4
    d = (specfun.si(u + h) - specfun.si(u - h)) / (2 * h)
    assert abs(d - math.sin(u) / u) < 1e-8


def test_vectorised_matches_scipy():
    u = np.geomspace(1e-4, 1e4, 200)
    s_ref, c_ref = special.sici(u)
    assert np.max(np.abs(specfun.si(u) - s_ref)) < 5e-15
    assert np.max(np.abs(specfun.ci(u) - c_ref)) < 5e-15


def test_si_tail_no_cancellation():
    # pi/2 - Si(u) ~ cos(u)/u; the complement keeps full relative accuracy
    for u in (1e3, 1e5, 1e8):
        tail = specfun.si_tail(u)
        with mp.workdps(30):
            ref = float(mp.pi / 2 - mp.si(u))
        assert abs(tail - ref) <= 1e-12 * abs(ref)


@settings(max_examples=20, deadline=None)
@given(st.floats(min_value=0.1, max_value=50.0))
def test_quadrature_agreement(u):
    # Si(u) = pi/2 - int_u^inf sin t / t, Ci(u) = -int_u^inf cos t / t
    tail_s = integrate_oscillatory(lambda t: 1.0 / t, 1.0, "sine", 1e-12, a=u)
    tail_c = integrate_oscillatory(lambda t: 1.0 / t, 1.0, "cosine", 1e-12, a=u)
    assert abs(specfun.si(u) - (math.pi / 2 - tail_s.value)) < 1e-9
    assert abs(specfun.ci(u) + tail_c.value) < 1e-9


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=1e-8, max_value=1e6))
def test_si_odd_extension_bounds(u):
    # Si peaks at pi with Si(pi) ~ 1.852 and never goes negative on u > 0
    s = specfun.si(u)
    assert 0.0 <= s <= specfun.si(math.pi) + 1e-15
