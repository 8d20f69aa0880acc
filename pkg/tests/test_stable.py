import math

import numpy as np
import pytest
from conftest import SQRT_PI, gauss_m
from hypothesis import given
from hypothesis import strategies as st
from scipy import special

from constq_waves import stable, wright
from constq_waves.errors import DomainError
from constq_waves.green import Medium
from constq_waves.stable import GaussParams, LevyParams, StableMethod, StableParams, WrightKind

LEVY_AT_ONE = math.exp(-0.25) / (2 * SQRT_PI)


# closed forms


def test_gauss_examples():
    g = GaussParams(1.0)
    assert stable.gauss_pdf(0.0, g) == pytest.approx(1 / math.sqrt(2 * math.pi), rel=1e-15)
    assert stable.gauss_cdf(0.0, g) == 0.5
    assert stable.gauss_pdf(0.0, GaussParams.from_diffusion(1.0, 1.0)) == pytest.approx(1 / (2 * SQRT_PI), rel=1e-15)


def test_gauss_moments():
    g = GaussParams(1.3)
    assert stable.gauss_moment(2, g) == pytest.approx(1.69, rel=1e-14)
    assert stable.gauss_moment(4, g) == pytest.approx(3 * 1.3**4, rel=1e-14)
    assert stable.gauss_moment(3, g) == 0.0


@given(st.floats(0.05, 10.0))
def test_levy_cdf_at_scale(mu):
    assert stable.levy_cdf(mu, LevyParams(mu)) == pytest.approx(special.erfc(1 / math.sqrt(2)), rel=1e-14)


def test_levy_median_and_tail():
    assert stable.levy_median(LevyParams(1.0)) == pytest.approx(2.19811, abs=1e-5)
    lp = LevyParams(0.7)
    t = 1e8
    assert stable.levy_pdf(t, lp) * t**1.5 == pytest.approx(math.sqrt(0.7 / (2 * math.pi)), rel=1e-7)


def test_levy_from_signalling():
    assert LevyParams.from_signalling(2.0, 0.5).mu == 4.0


def test_cauchy_law():
    assert stable.cauchy_pdf(0.0, 2.0) == pytest.approx(1 / (2 * math.pi), rel=1e-15)


# power series and Wright identities


def test_series_examples():
    assert stable.stable_pdf_series(1.0, StableParams(0.5, -0.5)) == pytest.approx(LEVY_AT_ONE, rel=1e-12)
    assert stable.stable_pdf(1.0, StableParams(2.0, 0.0)).value == pytest.approx(LEVY_AT_ONE, rel=1e-12)
    v = stable.stable_pdf(1e-9, StableParams(1.5, -0.5)).value
    assert math.isfinite(v) and v > 0


def test_wright_identity_examples():
    assert stable.stable_from_wright(1.0, 0.5, WrightKind.UNILATERAL) == pytest.approx(LEVY_AT_ONE, rel=1e-13)
    assert stable.stable_from_wright(2.0, 0.5, 1) == pytest.approx(0.5 * 2**-1.5 * gauss_m(2**-0.5), rel=1e-13)
    v = stable.stable_from_wright(1.0, 4 / 3, WrightKind.BILATERAL)
    assert v == pytest.approx(0.75 * wright.m_value(1.0, 0.75), rel=1e-13)
    assert stable.stable_pdf(1.0, StableParams(4 / 3, 4 / 3 - 2)).value == pytest.approx(v, rel=1e-10)


@given(st.floats(0.2, 0.8), st.floats(0.5, 8.0))
def test_unilateral_series_matches_wright(alpha, y):
    # the negative-power series on its own, without the Wright shortcut
    s = stable._series_sum(y, StableParams(alpha, -alpha), max_terms=10000, extended=True)
    assert s.value / (math.pi * y) == pytest.approx(stable.stable_from_wright(y, alpha, 1), rel=1e-9, abs=1e-300)


@pytest.mark.parametrize("y", [0.15, 0.2])
def test_small_y_asymptotic_matches_convergent_series(y):
    p = StableParams(0.8, 0.2)
    res = stable.stable_pdf(y, p)
    assert res.method_used is StableMethod.ASYMPTOTIC
    ref = stable._series_sum(y, p, max_terms=10000, extended=True).value / (math.pi * y)
    assert res.value == pytest.approx(ref, rel=1e-12)


def test_parameter_domain():
    for a, t in ((1.0, 0.0), (0.0, 0.0), (2.5, 0.0), (0.5, 0.6), (1.5, 0.6)):
        with pytest.raises(DomainError):
            StableParams(a, t)
    assert StableParams(0.7, -0.7).wright_kind() is WrightKind.UNILATERAL
    assert StableParams(1.4, -0.6).wright_kind() is WrightKind.BILATERAL
    assert StableParams(1.4, 0.0).wright_kind() is None


def test_reflection():
    for a, t, y in ((0.7, 0.3, 1.2), (1.5, 0.2, 0.8), (1.8, -0.1, 2.0)):
        assert stable.stable_pdf(-y, StableParams(a, -t)).value == pytest.approx(stable.stable_pdf(y, StableParams(a, t)).value, rel=1e-15)


def test_symmetric_laws_are_even():
    for a in (0.6, 1.5):
        p = StableParams(a, 0.0)
        assert stable.stable_pdf(-1.3, p).value == pytest.approx(stable.stable_pdf(1.3, p).value, rel=1e-15)


def test_unilateral_support():
    assert stable.stable_pdf(-1.0, StableParams(0.6, -0.6)).value == 0.0
    assert stable.stable_pdf(0.0, StableParams(0.6, -0.6)).value == 0.0


def test_method_reporting():
    assert stable.stable_pdf(1.0, StableParams(0.6, 0.1)).method_used is StableMethod.SERIES
    assert stable.stable_pdf(1.0, StableParams(2.0, 0.0)).method_used in (StableMethod.WRIGHT, StableMethod.CLOSED_FORM)


# duality and Green-function interpretations


@pytest.mark.parametrize("y, alpha, theta", [(1.0, 0.75, 2 - 4 / 3), (2.0, 0.6, 2 - 1 / 0.6), (0.5, 0.9, 0.0)])
def test_duality(y, alpha, theta):
    assert abs(stable.stable_duality_residual(y, alpha, theta)) <= 1e-8


def test_dual_skewness_in_range():
    a = 0.75
    theta_star = stable.dual_skewness(a, 2 - 1 / a)
    assert abs(theta_star) <= a


def test_signalling_as_stable():
    lhs, rhs = stable.signalling_as_stable(1.0, 1.0, Medium(1.0, 0.5))
    assert lhs == pytest.approx(LEVY_AT_ONE, rel=1e-13)
    assert rhs == pytest.approx(LEVY_AT_ONE, rel=1e-13)
    lhs, rhs = stable.signalling_as_stable(2.0, 1.0, Medium(1.0, 0.5))
    assert lhs == pytest.approx(rhs, rel=1e-8)


@given(st.floats(0.1, 3.0), st.floats(0.2, 3.0), st.floats(0.3, 0.95))
def test_signalling_as_stable_property(x, t, beta):
    lhs, rhs = stable.signalling_as_stable(x, t, Medium(1.0, beta))
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-300)


def test_cauchy_as_stable():
    lhs, rhs = stable.cauchy_as_stable(1.0, 1.0, Medium(1.0, 0.5))
    assert lhs == pytest.approx(LEVY_AT_ONE, rel=1e-13) and rhs == pytest.approx(LEVY_AT_ONE, rel=1e-13)
    assert stable.cauchy_as_stable(-1.0, 1.0, Medium(1.0, 0.5)) == stable.cauchy_as_stable(1.0, 1.0, Medium(1.0, 0.5))
    lhs, rhs = stable.cauchy_as_stable(1.0, 1.0, Medium(1.0, 0.75))
    assert lhs == pytest.approx(rhs, rel=1e-8)
    with pytest.raises(DomainError):
        stable.cauchy_as_stable(1.0, 1.0, Medium(1.0, 0.4))


@pytest.mark.parametrize("alpha", [0.6, 0.9])
@pytest.mark.parametrize("s", [0.5, 1.0, 2.0])
def test_feller_laplace_pair(alpha, s):
    assert stable.stable_laplace_numeric(alpha, s) == pytest.approx(math.exp(-(s**alpha)), abs=1e-6)


# integrals


@pytest.mark.parametrize("alpha", [0.5, 0.75, 0.9])
def test_unilateral_mass(alpha):
    assert stable.stable_mass(alpha) == pytest.approx(1.0, abs=1e-6)


def test_cdf_and_median_against_levy():
    lp = LevyParams(0.5)
    for y in (0.3, 1.0, 4.0):
        assert stable.stable_cdf(y, 0.5) == pytest.approx(stable.levy_cdf(y, lp), abs=1e-10)
    assert stable.stable_median(0.5) == pytest.approx(stable.levy_median(lp), rel=1e-8)


@pytest.mark.parametrize("alpha", [0.5, 0.75])
def test_inverse_power_tail(alpha):
    p = StableParams(alpha, -alpha)
    a, b = (y ** (alpha + 1) * stable.stable_pdf(y, p).value for y in (20.0, 40.0))
    assert a > 0 and b > 0
    assert a == pytest.approx(b, rel=0.1)


def test_truncated_moments():
    a = 0.75
    finite = [stable.stable_truncated_moment(a, a / 2, ym) for ym in (1e2, 1e3, 1e4)]
    growing = [stable.stable_truncated_moment(a, a, ym) for ym in (1e2, 1e3, 1e4)]
    # geometric shrinking of increments against logarithmic growth
    assert (finite[2] - finite[1]) < 0.6 * (finite[1] - finite[0])
    assert (growing[2] - growing[1]) > 0.9 * (growing[1] - growing[0])


@pytest.mark.parametrize("p", [StableParams(0.5, -0.5), StableParams(0.8, 0.2), StableParams(1.5, -0.5), StableParams(1.7, 0.0)])
def test_unimodal(p):
    ys = np.concatenate([-np.logspace(1, -1, 50), np.logspace(-1, 1, 50)])
    vals = np.array([stable.stable_pdf(float(y), p).value for y in ys])
    d = np.sign(np.diff(vals))
    d = d[d != 0]
    assert np.count_nonzero(np.diff(d)) == 1
