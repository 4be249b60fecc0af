import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special

from isotonic_wigner.errors import DomainError, SeriesTruncationError
from isotonic_wigner.specfun import (
    SeriesControl,
    bessel_i_reduced_scaled,
    bessel_i_scaled,
    bessel_i_scaled_derivative,
    hille_hardy_closed,
    hille_hardy_series,
    hyp1f1,
    hyp2f1,
    laguerre,
    laguerre_derivative,
    laguerre_product_expansion,
    ln_gamma,
)


# ---------------------------------------------------------------- ln_gamma

@pytest.mark.parametrize("x, expected", [
    (1.0, 0.0),
    (5.0, math.log(24.0)),
    (0.5, 0.5723649429247001),
])
def test_ln_gamma_values(x, expected):
    assert ln_gamma(x) == pytest.approx(expected, rel=1e-12, abs=1e-15)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
def test_ln_gamma_rejects_nonpositive(x):
    with pytest.raises(DomainError):
        ln_gamma(x)


# ---------------------------------------------------------------- Laguerre

@pytest.mark.parametrize("alpha", [-0.5, 0.0, 0.75, 2.0])
@pytest.mark.parametrize("x", [0.0, 0.3, 4.0])
def test_laguerre_low_orders(alpha, x):
    assert laguerre(0, alpha, x) == 1.0
    assert laguerre(1, alpha, x) == pytest.approx(1 + alpha - x, abs=1e-14)


def test_laguerre_second_order():
    assert laguerre(2, 0.0, 2.0) == pytest.approx(-1.0, abs=1e-14)


def test_laguerre_rejects_negative_order():
    with pytest.raises(DomainError):
        laguerre(-1, 0.5, 1.0)


@settings(max_examples=100, deadline=None)
@given(n=st.integers(1, 40), alpha=st.floats(-0.95, 5.0), x=st.floats(0.0, 30.0))
def test_laguerre_recurrence(n, alpha, x):
    lhs = (n + 1) * laguerre(n + 1, alpha, x)
    a = (2 * n + 1 + alpha - x) * laguerre(n, alpha, x)
    b = (n + alpha) * laguerre(n - 1, alpha, x)
    scale = abs(a) + abs(b) + 1e-300
    assert abs(lhs - (a - b)) <= 1e-10 * scale


@settings(max_examples=60, deadline=None)
@given(n=st.integers(0, 25), alpha=st.floats(-0.9, 4.0), x=st.floats(0.0, 40.0))
def test_laguerre_matches_scipy(n, alpha, x):
    ref = special.eval_genlaguerre(n, alpha, x)
    scale = sum(abs(special.binom(n + alpha, n - j)) * x ** j / math.factorial(j)
                for j in range(n + 1))
    assert abs(laguerre(n, alpha, x) - ref) <= 1e-12 * scale


def test_laguerre_derivative_finite_difference():
    h = 1e-5
    for n in range(5):
        fd = (laguerre(n, 0.7, 1.3 + h) - laguerre(n, 0.7, 1.3 - h)) / (2 * h)
        assert laguerre_derivative(n, 0.7, 1.3) == pytest.approx(fd, abs=1e-8)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(0, 6), alpha=st.floats(-0.9, 3.0),
       x=st.floats(0.01, 10.0), y=st.floats(0.01, 10.0))
def test_laguerre_bilinear_expansion(n, alpha, x, y):
    value, scale = laguerre_product_expansion(n, alpha, x, y)
    direct = laguerre(n, alpha, x) * laguerre(n, alpha, y)
    assert abs(value - direct) <= 1e-10 * max(scale, abs(direct))


# ---------------------------------------------------------------- Bessel

def test_bessel_at_origin():
    assert bessel_i_scaled(0.0, 0.0) == 1.0
    for a in (0.3, 1.0, 2.5):
        assert bessel_i_scaled(a, 0.0) == 0.0


def test_bessel_half_integer_closed_form():
    expected = math.exp(-2.0) * math.sqrt(1.0 / math.pi) * math.sinh(2.0)
    assert bessel_i_scaled(0.5, 2.0) == pytest.approx(expected, rel=1e-12)


def test_bessel_rejects_negative_argument():
    with pytest.raises(DomainError):
        bessel_i_scaled(0.5, -1.0)


def test_bessel_no_overflow_large_argument():
    for z in (700.0, 5000.0, 1e6):
        v = bessel_i_scaled(1.5, z)
        assert math.isfinite(v)
        assert v == pytest.approx(special.ive(1.5, z), rel=1e-10)


@pytest.mark.parametrize("alpha", [-0.5, -0.3, 0.0, 0.5, 1.5, 3.25, 10.0])
def test_bessel_matches_scipy(alpha):
    for z in np.concatenate([np.linspace(1e-3, 40.0, 81), [14.999, 15.0, 15.001, 99.99, 100.0,
                                                             100.01, 300.0]]):
        assert bessel_i_scaled(alpha, z) == pytest.approx(special.ive(alpha, z), rel=1e-10)


def test_bessel_monotone_toward_asymptote():
    z = np.linspace(5.0, 100.0, 400)
    v = np.array([bessel_i_scaled(0.0, t) for t in z])
    assert np.all(np.diff(v) < 0)
    asym = 1.0 / np.sqrt(2 * np.pi * z)
    assert np.all(v > asym)


def test_bessel_reduced_form():
    for a, z in [(0.5, 0.0), (-0.5, 0.0), (1.5, 3.0), (-0.5, 20.0)]:
        expected = (1.0 / math.gamma(a + 1.0) if z == 0
                    else special.ive(a, z) * (z / 2) ** (-a))
        assert bessel_i_reduced_scaled(a, z) == pytest.approx(expected, rel=1e-10)


def test_bessel_scaled_derivative():
    h = 1e-5
    for a, z in [(0.5, 1.0), (1.5, 20.0)]:
        # d/dz of the scaled function is e^{-z} (I' - I)
        fd = (bessel_i_scaled(a, z + h) - bessel_i_scaled(a, z - h)) / (2 * h)
        assert bessel_i_scaled_derivative(a, z) - bessel_i_scaled(a, z) == pytest.approx(fd, rel=1e-7)


# ---------------------------------------------------------------- 1F1

def test_hyp1f1_at_zero():
    assert hyp1f1(0.3, 1.7, 0.0) == 1.0


@pytest.mark.parametrize("z", [-3.0, -0.5, 0.0, 1.0, 4.0])
def test_hyp1f1_exponential(z):
    assert hyp1f1(1.0, 1.0, z) == pytest.approx(math.exp(z), rel=1e-12)


def test_hyp1f1_kummer_transformation():
    a, b, z = 0.7, 2.3, 1.5
    assert hyp1f1(a, b, z) == pytest.approx(math.exp(z) * hyp1f1(b - a, b, -z), rel=1e-12)


@pytest.mark.parametrize("a, b, z", [(0.5, 2.5, -4.0), (2.5, 3.0, -1.2), (0.5, 1.75, 6.0)])
def test_hyp1f1_matches_scipy(a, b, z):
    assert hyp1f1(a, b, z) == pytest.approx(special.hyp1f1(a, b, z), rel=1e-11)


def test_hyp1f1_truncation_reported():
    with pytest.raises(SeriesTruncationError) as info:
        hyp1f1(0.5, 1.5, 30.0, SeriesControl(tol=1e-14, max_terms=3))
    assert info.value.partial_sum is not None


def test_hyp1f1_rejects_nonpositive_integer_b():
    with pytest.raises(DomainError):
        hyp1f1(0.5, -2.0, 1.0)


def test_series_control_validation():
    with pytest.raises(DomainError):
        SeriesControl(tol=0.0)
    with pytest.raises(DomainError):
        SeriesControl(max_terms=0)


# ---------------------------------------------------------------- 2F1

def test_hyp2f1_at_zero():
    assert hyp2f1(0.3, 1.2, 2.0, 0.0) == 1.0


def test_hyp2f1_logarithm():
    assert hyp2f1(1.0, 1.0, 2.0, 0.5) == pytest.approx(1.3862944, rel=1e-7)
    assert hyp2f1(1.0, 1.0, 2.0, 0.5) == pytest.approx(-math.log(0.5) / 0.5, rel=1e-12)


def test_hyp2f1_gauss_summation_limit():
    a, b, c = 0.3, 0.4, 1.5
    gauss = math.gamma(c) * math.gamma(c - a - b) / (math.gamma(c - a) * math.gamma(c - b))
    values = [hyp2f1(a, b, c, 1.0 - d) for d in (1e-4, 1e-8, 1e-12)]
    assert abs(values[-1] - gauss) < 1e-5
    assert abs(values[-1] - gauss) < abs(values[0] - gauss)


@pytest.mark.parametrize("a, b, c", [
    (1.0, 2.0, 3.0),        # c - a - b = 0, logarithmic
    (0.5, 1.5, 2.0),        # the purity parameters at alpha = 1/2
    (2.0, 3.0, 4.0),        # c - a - b = -1
    (0.3, 0.4, 1.5),        # non-integer c - a - b
    (1.0, 1.0, 4.0),        # c - a - b = 2
])
@pytest.mark.parametrize("z", [0.3, 0.9, 0.95, 0.999, 0.999999])
def test_hyp2f1_matches_scipy(a, b, c, z):
    assert hyp2f1(a, b, c, z) == pytest.approx(special.hyp2f1(a, b, c, z), rel=1e-11)


@pytest.mark.parametrize("z", [1.0, 1.5, -0.1])
def test_hyp2f1_domain(z):
    with pytest.raises(DomainError):
        hyp2f1(0.5, 0.5, 1.0, z)


def test_hyp2f1_rejects_nonpositive_integer_c():
    with pytest.raises(DomainError):
        hyp2f1(0.5, 0.5, -1.0, 0.5)


# ---------------------------------------------------------------- Hille-Hardy

@pytest.mark.parametrize("alpha", [-0.5, 0.5, 0.75, 1.5])
@pytest.mark.parametrize("lam", [0.01, 0.3, 0.8])
def test_hille_hardy_sum_matches_bessel_form(alpha, lam):
    for x, y in [(0.5, 1.0), (2.0, 2.0), (5.0, 0.1)]:
        series, scale = hille_hardy_series(alpha, lam, x, y, return_scale=True)
        closed = hille_hardy_closed(alpha, lam, x, y)
        assert abs(series - closed) <= 1e-12 * max(scale, abs(closed))


def test_hille_hardy_truncation_tail_is_geometric():
    alpha, lam, x, y = 0.5, 0.5, 1.0, 1.5
    closed = hille_hardy_closed(alpha, lam, x, y)
    partial = 0.0
    for n in range(40):
        partial += (lam ** n * math.exp(ln_gamma(n + 1.0) - ln_gamma(n + alpha + 1.0))
                    * laguerre(n, alpha, x) * laguerre(n, alpha, y))
        # |L_n(x) L_n(y)| n!/Gamma(n+alpha+1) grows at most polynomially here
        assert abs(partial - closed) <= 10.0 * lam ** (n + 1) / (1 - lam)
