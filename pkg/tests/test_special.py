import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ophh.errors import InputError
from ophh.special import beta, log_gamma

pos = st.floats(min_value=1e-3, max_value=20.0, allow_nan=False)


def gamma_by_quadrature(x):
    """Independent oracle: the defining integral evaluated by mpmath.

    For x < 1 the substitution t = u**(1/x) removes the t**(x-1) endpoint
    singularity; for x >= 1 the integrand is smooth and split around its peak.
    """
    x = mpmath.mpf(x)
    with mpmath.workdps(30):
        if x < 1:
            return mpmath.quad(lambda u: mpmath.exp(-u ** (1 / x)), [0, 1, 10, mpmath.inf]) / x
        return mpmath.quad(lambda t: mpmath.exp(-t) * t ** (x - 1), [0, x / 2, x, 2 * x, 4 * x, mpmath.inf])


def beta_by_quadrature(x, y):
    with mpmath.workdps(30):
        return mpmath.quad(lambda t: t ** (x - 1) * (1 - t) ** (y - 1), [0, 0.5, 1])


def test_log_gamma_examples():
    assert log_gamma(1.0) == 0.0
    assert log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-15)
    assert log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-14)
    assert math.exp(log_gamma(0.5)) == pytest.approx(float(gamma_by_quadrature(0.5)), rel=1e-12)


@pytest.mark.parametrize("x", [0.1, 0.37, 1.5, 2.5, 7.3, 13.0, 24.9, 50.0])
def test_log_gamma_against_integral(x):
    assert math.exp(log_gamma(x)) == pytest.approx(float(gamma_by_quadrature(x)), rel=1e-12)


def test_beta_examples():
    assert abs(beta(1, 1) - 1) <= 1e-12
    assert abs(beta(2, 2) - 1 / 6) <= 1e-12


@pytest.mark.parametrize("x,y", [(0.5, 0.5), (1.3, 1.7), (2.0, 1.5), (1.25, 1.75), (6.0, 3.5)])
def test_beta_against_integral(x, y):
    assert beta(x, y) == pytest.approx(float(beta_by_quadrature(x, y)), rel=1e-12)


@given(pos, pos)
@settings(max_examples=200, deadline=None)
def test_beta_symmetry_and_recurrence(x, y):
    assert beta(x, y) == pytest.approx(beta(y, x), rel=1e-14)
    assert beta(x + 1, y) == pytest.approx(beta(x, y) * x / (x + y), rel=1e-11)


@pytest.mark.parametrize("args", [(0.0, 1.0), (-1.0, 2.0), (1.0, 0.0)])
def test_beta_rejects_nonpositive(args):
    with pytest.raises(InputError):
        beta(*args)


def test_log_gamma_rejects_nonpositive():
    with pytest.raises(InputError):
        log_gamma(0.0)
