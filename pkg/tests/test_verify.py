import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bvft import testfns
from bvft import verify as V
from bvft.specfun import EULER_GAMMA
from bvft.testfns import DecayClass, TestFunction, registry_get
from bvft.verify import DegenerateInputError, Tri

KERNEL = testfns.odd_kernel()
ZERO = testfns.zero_function()
_zero = lambda t: np.zeros_like(np.asarray(t, dtype=float))
ZERO_F = TestFunction("zero", {"lambda": 1.0}, _zero, _zero, 1.0, DecayClass.COMPACT)

# int_0^inf F dx with F = f_s - (1/x) f(pi/(2x)); substituting u = xt gives
# f(0) (int_0^{pi/2} (1 - cos u)/u du - int_{pi/2}^inf cos u / u du) = f(0) (gamma + ln(pi/2))
F_INTEGRAL = EULER_GAMMA + math.log(math.pi / 2)


def test_f_integral_constant_against_mpmath():
    with mp.workdps(30):
        head = mp.quad(lambda u: (1 - mp.cos(u)) / u, [0, mp.pi / 2])
        tail = -mp.ci(mp.pi / 2)
        assert abs(float(head - tail) - F_INTEGRAL) < 1e-15


# --------------------------------------------------------------------------
# norms


def test_norm_examples_exp():
    rep = V.norm_report(registry_get("exp"), fields=("l1_fprime", "l1_T_fprime", "l1_ft_cosine"))
    assert abs(rep.l1_fprime.value - 1.0) < 1e-10
    assert abs(rep.l1_ft_cosine.value - math.pi / 2) < 1e-6
    # T f'(t) = -2 e^-t Shi(t/2) for f = e^-t, integrated independently
    with mp.workdps(20):
        ref = float(mp.quad(lambda t: 2 * mp.exp(-t) * mp.shi(t / 2), [0, 1, mp.inf]))
    assert abs(rep.l1_T_fprime.value - ref) < 1e-6 * ref
    assert not rep.complete


def test_norm_cosine_triangle():
    r = V.norm_cosine(registry_get("triangle"))
    assert r.converged
    assert abs(r.value - math.pi / 2) < 1e-6


def test_kernel_quotient_norm():
    # script_T of the kernel is (pi/4) e^-x
    r = V.norm_quotient(KERNEL)
    assert abs(r.value - math.pi / 4) < 1e-6


@pytest.mark.parametrize("fid", testfns.list_families())
def test_cancellation_of_odd_extension(fid):
    f = registry_get(fid)
    assert abs(V.cancellation(f.fprime).value) < 1e-8


@pytest.mark.parametrize("fid", ["exp", "triangle", "gaussian", "rational"])
def test_half_line_integral_of_fprime(fid):
    from bvft.quadrature import integrate_halfline
    f = registry_get(fid)
    r = integrate_halfline(f.eval_fprime, 1e-11, breakpoints=f.breakpoints)
    assert abs(r.value + f.eval_f(0.0)) < 1e-9


def test_norm_report_to_dict():
    rep = V.norm_report(registry_get("exp"), fields=("l1_fprime", "cancellation"))
    d = rep.to_dict()
    assert set(d) == set(V.NormReport.FIELDS)
    assert d["l1_fprime"]["status"] == "converged" and d["q0_integral"] is None


# --------------------------------------------------------------------------
# ratios


def test_degenerate_inputs():
    with pytest.raises(DegenerateInputError):
        V.check_thm1(ZERO_F)
    with pytest.raises(DegenerateInputError):
        V.check_prop1(ZERO)
    with pytest.raises(DegenerateInputError):
        V.check_hardy(ZERO)
    with pytest.raises(DegenerateInputError):
        V.check_fubini(ZERO_F)


@pytest.mark.parametrize("fid", ["exp", "gaussian"])
def test_thm1(fid):
    r = V.check_thm1(registry_get(fid))
    assert r.r_c.verdict is Tri.YES and r.r_c.below_ceiling
    assert r.r_s.verdict is Tri.YES and r.r_s.below_ceiling
    # F is non-negative for these families, so its L1 norm is its integral
    assert abs(r.l1_F.value - F_INTEGRAL) < 1e-5


def test_thm1_dilation():
    # lambda = 3 is not a power of two, so the rescaled nodes do not coincide bitwise
    a = V.check_thm1(registry_get("exp")).r_c.value
    b = V.check_thm1(registry_get("exp", {"lambda": 3.0})).r_c.value
    assert abs(a - b) < 1e-3
    g = [V.check_thm3(registry_get("gaussian", {"lambda": lam}), [1.0]).ratio_G for lam in (1.0, 3.0)]
    assert abs(g[0] - g[1]) < 1e-3


def test_thm2_exp():
    r = V.check_thm2(registry_get("exp"), points=[0.01, 1.0, 100.0])
    assert r.max_scaled_residual <= 1e-6
    assert abs(r.residual.values[1].value) <= 1e-6
    assert r.agree and r.verdict_cosine is Tri.YES
    # pointwise identity: both L1 norms equal pi/2 up to their error bars
    tol = r.l1_ft_cosine.abs_error_estimate + r.q0_fprime.abs_error_estimate
    assert abs(r.l1_ft_cosine.value - r.q0_fprime.value) <= tol


def test_thm2_log_decay_verdicts_agree():
    r = V.check_thm2(registry_get("log_decay"), points=[0.1, 1.0, 10.0])
    assert r.max_scaled_residual <= 1e-6
    assert r.agree


def test_thm3_zero():
    rep = V.check_thm3(ZERO_F, points=[0.1, 1.0, 10.0])
    for grid in (rep.grid, rep.h0t_term, rep.g_residual, rep.f_residual, rep.leading_term):
        assert np.all(grid.array == 0.0)
    assert rep.ratio_G == 0.0 and rep.exact


def test_thm3_exp():
    rep = V.check_thm3(registry_get("exp"), points=np.geomspace(1e-2, 1e2, 9))
    assert rep.exact
    assert rep.l1_G.converged and rep.ratio_G < 10
    assert abs(rep.l1_F.value - F_INTEGRAL) < 1e-5
    d = rep.to_dict()
    assert d["reconstruction_exact"] and d["below_ceiling"]


@settings(max_examples=200, deadline=None)
@given(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3), st.floats(-1e-60, 1e-60) | st.floats(-1e3, 1e3))
def test_split_exact(total, a, b):
    parts = V.split_exact(total, a, b)
    assert V.reconstructs(total, a, b, parts)
    assert all(abs(parts[i + 1]) <= abs(parts[i]) for i in range(len(parts) - 1))


def test_prop1_and_hardy_kernel():
    p = V.check_prop1(KERNEL)
    assert p.verdict is Tri.YES and p.below_ceiling
    h = V.check_hardy(KERNEL)
    assert h.verdict is Tri.YES and h.below_ceiling
    # numerator is 2 int (pi/4) e^-x dx = pi/2
    assert abs(h.numerator.value - math.pi / 2) < 1e-6


def test_fubini():
    for fid in ("exp", "gaussian"):
        r = V.check_fubini(registry_get(fid))
        assert abs(r.rhs.value - math.pi / 2) < 1e-9
        assert r.residual <= 1e-6


# --------------------------------------------------------------------------
# membership


def test_membership_kernel():
    v = V.classify_membership(KERNEL)
    assert v.in_Q0 is Tri.YES and v.monotone


def test_membership_zero():
    v = V.classify_membership(ZERO)
    assert all(getattr(v, k) is Tri.YES for k in v.CHAIN)


@pytest.mark.parametrize("spec", [V.synthetic_spectrum, V.damped_spectrum])
def test_membership_synthetic_spectrum(spec):
    v = V.classify_membership(spectrum=spec)
    assert v.in_Q0 is Tri.NO
    assert v.in_H1Q is Tri.NO and v.in_H10 is Tri.NO
    assert v.in_L10 is Tri.UNDECIDED and v.monotone


def test_membership_needs_one_input():
    with pytest.raises(ValueError):
        V.classify_membership()
    with pytest.raises(ValueError):
        V.classify_membership(KERNEL, spectrum=V.synthetic_spectrum)


def test_monotone_flag():
    v = V.MembershipVerdict("x", Tri.NO, Tri.YES, Tri.UNDECIDED, Tri.UNDECIDED)
    assert not v.monotone
    v = V.MembershipVerdict("x", Tri.YES, Tri.NO, Tri.NO, Tri.UNDECIDED)
    assert v.monotone


def test_lemma1_exp():
    r = V.check_lemma1(registry_get("exp"), points=[0.3, 1.0, 3.0])
    assert r.max_abs_difference <= 1e-5


def test_precision_from_mapping():
    p = V.Precision.from_mapping({"tol": 1e-8, "ratio_ceiling": 5, "pv_ladder_depth": 8})
    assert p.outer_tol == 1e-8 and p.inner_tol == 1e-9
    assert p.ratio_ceiling == 5.0 and p.opts.pv_ladder_depth == 8
    assert V.membership_precision(p).outer_rtol == V.MEMBERSHIP_RTOL
