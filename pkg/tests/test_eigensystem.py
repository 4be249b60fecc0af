import math

import numpy as np
import pytest
from scipy import special

from isotonic_wigner.eigensystem import (
    EnergyLevel,
    OscillatorParams,
    eigenfunction,
    eigenfunction_derivative,
    energy,
    potential,
    potential_derivative,
    schrodinger_residual,
)
from isotonic_wigner.errors import DomainError
from isotonic_wigner.quadrature import integrate_semi_infinite

ALPHAS = (-0.5, 0.5, 1.5, 0.75)


def test_params_validation():
    for bad in (-1.0, -2.0, float("nan")):
        with pytest.raises(DomainError):
            OscillatorParams(bad)
    assert OscillatorParams(1.5).g == pytest.approx(2.0)
    assert OscillatorParams(-0.5).g == 0.0
    assert OscillatorParams(-0.5).is_harmonic


@pytest.mark.parametrize("n", range(6))
@pytest.mark.parametrize("alpha", ALPHAS)
def test_energy_independent_of_alpha(n, alpha):
    assert energy(n) == 2 * n + 1
    assert EnergyLevel(n).epsilon == 2 * n + 1


def test_energy_level_validation():
    with pytest.raises(DomainError):
        EnergyLevel(-1)
    with pytest.raises(DomainError):
        EnergyLevel(1.5)


@pytest.mark.parametrize("x", [0.3, 1.0, 2.7])
def test_potential_harmonic(x):
    assert potential(OscillatorParams(-0.5), x) == pytest.approx((x * x + 1) / 2)


def test_potential_values():
    assert potential(OscillatorParams(0.5), 1.0) == pytest.approx(0.0, abs=1e-15)
    assert potential(OscillatorParams(1.5), 1.0) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("x", [0.0, -1.0])
def test_potential_domain(x):
    with pytest.raises(DomainError):
        potential(OscillatorParams(1.5), x)
    with pytest.raises(DomainError):
        potential_derivative(OscillatorParams(1.5), x, 1)


def test_potential_derivative_values():
    assert potential_derivative(OscillatorParams(-0.5), 1.7, 3) == 0.0
    assert potential_derivative(OscillatorParams(1.5), 1.0, 1) == pytest.approx(-1.0)
    assert potential_derivative(OscillatorParams(1.5), 2.0, 5) == pytest.approx(-5.625)
    with pytest.raises(DomainError):
        potential_derivative(OscillatorParams(1.5), 1.0, 0)


def _central_derivative(f, x, m, h):
    # m-th central difference, error O(h^2)
    coeffs = {
        1: [(-1, -0.5), (1, 0.5)],
        2: [(-1, 1.0), (0, -2.0), (1, 1.0)],
        3: [(-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)],
        4: [(-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)],
        5: [(-3, -0.5), (-2, 2.0), (-1, -2.5), (1, 2.5), (2, -2.0), (3, 0.5)],
    }[m]
    return sum(c * f(x + j * h) for j, c in coeffs) / h ** m


@pytest.mark.parametrize("m", range(1, 6))
@pytest.mark.parametrize("alpha", [-0.5, 0.75, 1.5])
def test_potential_derivative_matches_differences(m, alpha):
    p = OscillatorParams(alpha)
    x = 1.6
    f = lambda t: potential(p, t)
    exact = potential_derivative(p, x, m)
    errs = [abs(_central_derivative(f, x, m, h) - exact) for h in (0.02, 0.01)]
    # second order: halving h reduces the error about four-fold
    # plus the rounding of an m-th difference, ~ eps |U| / h^m
    assert errs[1] < 0.3 * errs[0] + 1e-14 / 0.01 ** m


def test_eigenfunction_vanishes_off_support():
    p = OscillatorParams(0.75)
    for n in range(4):
        assert eigenfunction(p, n, -1.0) == 0.0
        assert eigenfunction(p, n, 0.0) == 0.0


@pytest.mark.parametrize("alpha", ALPHAS)
def test_ground_state_closed_form(alpha):
    p = OscillatorParams(alpha)
    x = np.linspace(0.05, 5.0, 30)
    expected = math.sqrt(2 / math.gamma(alpha + 1)) * x ** (alpha + 0.5) * np.exp(-x * x / 2)
    np.testing.assert_allclose(eigenfunction(p, 0, x), expected, rtol=1e-13)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_orthonormality(alpha):
    p = OscillatorParams(alpha)
    for m in range(6):
        for n in range(m, 6):
            val = integrate_semi_infinite(
                lambda x: eigenfunction(p, m, x) * eigenfunction(p, n, x), 0.0, tol=1e-11).value
            assert val == pytest.approx(1.0 if m == n else 0.0, abs=1e-8)


def test_eigenfunction_derivative_matches_differences():
    p = OscillatorParams(0.75)
    h = 1e-5
    for n in range(4):
        for x in (0.4, 1.3, 3.0):
            fd = (eigenfunction(p, n, x + h) - eigenfunction(p, n, x - h)) / (2 * h)
            assert eigenfunction_derivative(p, n, x) == pytest.approx(fd, abs=1e-8)


@pytest.mark.parametrize("alpha", [1.5, -0.5])
def test_schrodinger_residual_bound(alpha):
    p = OscillatorParams(alpha)
    grid = np.arange(0.5, 4.0 + 1e-12, 1e-3)
    assert schrodinger_residual(p, 0, grid) < 1e-4


def test_schrodinger_residual_second_order():
    p = OscillatorParams(1.5)
    r1 = schrodinger_residual(p, 2, np.arange(0.5, 4.0 + 1e-12, 0.02))
    r2 = schrodinger_residual(p, 2, np.arange(0.5, 4.0 + 1e-12, 0.01))
    assert r1 / r2 == pytest.approx(4.0, rel=0.05)


def test_schrodinger_residual_domain():
    with pytest.raises(DomainError):
        schrodinger_residual(OscillatorParams(1.5), 0, np.linspace(0.0, 1.0, 11))


@pytest.mark.parametrize("n", range(5))
def test_harmonic_limit_is_even_oscillator_state(n):
    p = OscillatorParams(-0.5)
    x = np.linspace(0.1, 4.0, 60)
    m = 2 * n
    norm = 1.0 / math.sqrt(2.0 ** m * math.factorial(m) * math.sqrt(math.pi))
    psi = norm * special.eval_hermite(m, x) * np.exp(-x * x / 2)
    phi = eigenfunction(p, n, x)
    sign = np.sign(phi[0] * psi[0])
    np.testing.assert_allclose(phi, sign * math.sqrt(2) * psi, atol=1e-10)
