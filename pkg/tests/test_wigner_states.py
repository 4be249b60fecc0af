import math

import numpy as np
import pytest

from isotonic_wigner.eigensystem import OscillatorParams, eigenfunction
from isotonic_wigner.errors import DomainError, SeriesTruncationError
from isotonic_wigner.quadrature import integrate_semi_infinite
from isotonic_wigner.wigner_states import (
    WIGNER_BOUND,
    EigenState,
    MixtureState,
    PhaseGrid,
    QuasiGaussianParams,
    QuasiGaussianState,
    chi,
    fill_grid,
    marginal_position,
    normalization,
    overlap,
    purity_grid,
    quasi_gaussian_mode_sum,
    quasi_gaussian_profile,
    quasi_gaussian_wavefunction,
    tilde_chi,
    wigner_eigenstate,
    wigner_k_derivative,
    wigner_quasi_gaussian,
    wigner_value,
    wigner_x_derivative,
)


def _brute_force_wigner(psi, x, k, nodes=400):
    # direct Gauss-Legendre transform of psi*(x - y) psi(x + y) on (-x, x)
    t, w = np.polynomial.legendre.leggauss(nodes)
    y, w = x * t, x * w
    val = np.sum(w * np.conj(psi(x - y)) * psi(x + y) * np.exp(2j * k * y)) / math.pi
    return val


# ---------------------------------------------------------------- parameters

def test_chi_at_tau_zero():
    qp = QuasiGaussianParams(0.7, 0.0)
    assert chi(qp) == pytest.approx(1 / math.tanh(0.35), rel=1e-14)
    assert tilde_chi(qp) == 0.0


def test_chi_at_tau_pi():
    assert chi(QuasiGaussianParams(0.7, math.pi)) == pytest.approx(math.tanh(0.35), rel=1e-14)


@pytest.mark.parametrize("tau", [0.3, 1.0, 2.5])
def test_chi_periodic(tau):
    a, b = QuasiGaussianParams(0.9, tau), QuasiGaussianParams(0.9, tau + 2 * math.pi)
    assert chi(a) == pytest.approx(chi(b), rel=1e-13)
    assert tilde_chi(a) == pytest.approx(tilde_chi(b), rel=1e-13)


def test_quasi_gaussian_params_validation():
    for bad in (0.0, -1.0, float("inf")):
        with pytest.raises(DomainError):
            QuasiGaussianParams(bad, 0.0)


def test_eigenstate_validation():
    with pytest.raises(DomainError):
        EigenState(OscillatorParams(0.5), -1)


# ---------------------------------------------------------------- wavefunction

def test_quasi_gaussian_support():
    assert quasi_gaussian_wavefunction(OscillatorParams(0.5), QuasiGaussianParams(1.0, 0.2),
                                       -0.5) == 0


@pytest.mark.parametrize("alpha", [0.5, 1.5])
@pytest.mark.parametrize("gamma", [0.5, 1.0])
@pytest.mark.parametrize("tau", [0.0, math.pi / 2])
def test_quasi_gaussian_normalised(alpha, gamma, tau):
    p, qp = OscillatorParams(alpha), QuasiGaussianParams(gamma, tau)
    val = integrate_semi_infinite(
        lambda x: np.abs(quasi_gaussian_wavefunction(p, qp, x)) ** 2, 0.0, tol=1e-12).value
    assert val == pytest.approx(1.0, abs=1e-10)


def test_quasi_gaussian_modulus_is_profile():
    p, qp = OscillatorParams(0.75), QuasiGaussianParams(0.6, 2.0)
    x = np.linspace(0.1, 4.0, 40)
    np.testing.assert_allclose(np.abs(quasi_gaussian_wavefunction(p, qp, x)) ** 2,
                               quasi_gaussian_profile(p, qp, x), rtol=1e-12)


@pytest.mark.parametrize("tau", [0.0, 1.3])
def test_mode_sum_converges_to_closed_form(tau):
    p, qp = OscillatorParams(1.5), QuasiGaussianParams(0.8, tau)
    x = np.linspace(0.1, 4.0, 50)
    closed = quasi_gaussian_wavefunction(p, qp, x)
    assert np.max(np.abs(quasi_gaussian_mode_sum(p, qp, x, 40) - closed)) < 1e-8
    # fewer modes leave a visibly larger error
    assert np.max(np.abs(quasi_gaussian_mode_sum(p, qp, x, 10) - closed)) > 1e-6


# ---------------------------------------------------------------- eigenstates

@pytest.mark.parametrize("x", [0.0, -1.0])
def test_eigenstate_wigner_off_support(x):
    assert wigner_eigenstate(OscillatorParams(0.5), 1, x, 0.3) == 0.0


def test_eigenstate_dual_quadrature():
    p = OscillatorParams(0.5)
    phi = lambda t: eigenfunction(p, 0, t)
    ref = _brute_force_wigner(phi, 1.0, 0.0, nodes=600)
    assert abs(wigner_eigenstate(p, 0, 1.0, 0.0, tol=1e-13) - ref.real) < 1e-9
    assert abs(ref.imag) < 1e-15


@pytest.mark.parametrize("alpha, n", [(1.5, 2), (0.75, 1), (-0.5, 3)])
def test_eigenstate_matches_direct_transform(alpha, n):
    p = OscillatorParams(alpha)
    phi = lambda t: eigenfunction(p, n, t)
    for x, k in [(0.8, 0.0), (1.7, -1.1), (2.5, 2.0)]:
        ref = _brute_force_wigner(phi, x, k, nodes=800).real
        assert wigner_eigenstate(p, n, x, k, tol=1e-12) == pytest.approx(ref, abs=1e-9)


@pytest.mark.parametrize("alpha", [-0.5, 0.75, 1.5])
def test_eigenstate_normalisation(alpha):
    assert normalization(EigenState(OscillatorParams(alpha), 0)) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_eigenstate_purity(n):
    assert purity_grid(EigenState(OscillatorParams(1.5), n)) == pytest.approx(1.0, abs=1e-6)


def test_eigenstate_overlaps_orthogonal():
    p = OscillatorParams(0.75)
    states = [EigenState(p, n) for n in range(4)]
    for m in range(4):
        for n in range(m, 4):
            assert overlap(states[m], states[n]) == pytest.approx(float(m == n), abs=1e-6)


def test_equal_mixture_purity():
    p = OscillatorParams(0.5)
    mix = MixtureState(((0.5, EigenState(p, 0)), (0.5, EigenState(p, 1))))
    assert purity_grid(mix) == pytest.approx(0.5, abs=1e-6)
    assert normalization(mix) == pytest.approx(1.0, abs=1e-8)


def test_mixture_validation():
    a, b = EigenState(OscillatorParams(0.5), 0), EigenState(OscillatorParams(1.5), 0)
    with pytest.raises(DomainError):
        MixtureState(((0.5, a), (0.5, b)))
    with pytest.raises(DomainError):
        MixtureState(((0.7, a), (0.7, a)))
    with pytest.raises(DomainError):
        MixtureState(())


@pytest.mark.parametrize("x", [0.4, 1.0, 2.2])
def test_eigenstate_marginal(x):
    p = OscillatorParams(1.5)
    assert marginal_position(EigenState(p, 1), x) == pytest.approx(eigenfunction(p, 1, x) ** 2,
                                                                   abs=1e-12)
    assert marginal_position(EigenState(p, 1), -x) == 0.0


def test_wigner_bound_on_samples():
    states = [EigenState(OscillatorParams(a), n) for a in (-0.5, 0.75, 1.5) for n in (0, 1, 3)]
    states.append(QuasiGaussianState(OscillatorParams(1.5), QuasiGaussianParams(0.5, 1.0)))
    for s in states:
        for x in np.linspace(0.1, 4.0, 9):
            for k in np.linspace(-3.0, 3.0, 9):
                assert abs(wigner_value(s, x, k)) <= WIGNER_BOUND + 1e-9


def test_wigner_is_real_float():
    v = wigner_value(EigenState(OscillatorParams(0.5), 2), 1.3, 0.4)
    assert isinstance(v, float)


# ---------------------------------------------------------------- quasi-Gaussian

def test_quasi_gaussian_tilt_follows_documented_ordering():
    p, qp = OscillatorParams(1.5), QuasiGaussianParams(0.8, 1.0)
    G = lambda t: quasi_gaussian_wavefunction(p, qp, t)
    for x, k in [(1.2, 0.7), (0.9, -0.4), (2.0, 1.5)]:
        ref = _brute_force_wigner(G, x, k)
        assert abs(ref.imag) < 1e-14
        assert wigner_value(QuasiGaussianState(p, qp), x, k) == pytest.approx(ref.real, abs=1e-10)


@pytest.mark.parametrize("tau", [0.0, 1.0, math.pi, 5.0])
def test_quasi_gaussian_normalisation_and_purity_in_time(tau):
    s = QuasiGaussianState(OscillatorParams(1.5), QuasiGaussianParams(0.7, tau))
    assert normalization(s) == pytest.approx(1.0, abs=1e-8)
    assert purity_grid(s) == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("x", np.linspace(0.2, 3.0, 8))
def test_quasi_gaussian_marginal_is_profile(x):
    p, qp = OscillatorParams(0.75), QuasiGaussianParams(0.9, 2.2)
    assert marginal_position(QuasiGaussianState(p, qp), x) == pytest.approx(
        quasi_gaussian_profile(p, qp, x), abs=1e-8)


def test_series_matches_quadrature_reference_point():
    p, qp = OscillatorParams(1.5), QuasiGaussianParams(0.8, 1.0)
    quad = wigner_quasi_gaussian(p, qp, 1.2, 0.7, tol=1e-12, method="quadrature")
    series = wigner_quasi_gaussian(p, qp, 1.2, 0.7, tol=1e-12, method="series", fallback=False)
    assert abs(quad - series) < 1e-8


def test_series_matches_quadrature_random_points():
    rng = np.random.default_rng(11)
    p, qp = OscillatorParams(1.5), QuasiGaussianParams(0.8, 1.0)
    xs = rng.uniform(0.2, 2.5, 10)
    ks = rng.uniform(-1.5, 1.5, 10)
    for x in xs:
        for k in ks:
            quad = wigner_quasi_gaussian(p, qp, x, k, method="quadrature")
            series = wigner_quasi_gaussian(p, qp, x, k, method="series", fallback=False)
            assert abs(quad - series) < 1e-7


def test_series_refuses_catastrophic_cancellation():
    p, qp = OscillatorParams(1.5), QuasiGaussianParams(0.8, 1.0)
    with pytest.raises(SeriesTruncationError):
        wigner_quasi_gaussian(p, qp, 3.0, 12.0, tol=1e-10, method="series", fallback=False)
    # the default hands the point to quadrature instead
    v = wigner_quasi_gaussian(p, qp, 3.0, 12.0, tol=1e-10, method="series")
    assert v == pytest.approx(wigner_quasi_gaussian(p, qp, 3.0, 12.0, tol=1e-10), abs=1e-12)


def test_unknown_method_rejected():
    with pytest.raises(DomainError):
        wigner_quasi_gaussian(OscillatorParams(0.5), QuasiGaussianParams(1, 0), 1, 0,
                              method="fourier")


# ---------------------------------------------------------------- derivatives

@pytest.mark.parametrize("state", [
    EigenState(OscillatorParams(1.5), 2),
    EigenState(OscillatorParams(-0.5), 1),
    QuasiGaussianState(OscillatorParams(0.75), QuasiGaussianParams(0.8, 1.0)),
])
def test_derivatives_match_finite_differences(state):
    h = 1e-3
    for x, k in [(0.9, 0.3), (1.8, -1.2)]:
        fx = (-wigner_value(state, x + 2 * h, k) + 8 * wigner_value(state, x + h, k)
              - 8 * wigner_value(state, x - h, k) + wigner_value(state, x - 2 * h, k)) / (12 * h)
        fk = (-wigner_value(state, x, k + 2 * h) + 8 * wigner_value(state, x, k + h)
              - 8 * wigner_value(state, x, k - h) + wigner_value(state, x, k - 2 * h)) / (12 * h)
        assert wigner_x_derivative(state, x, k) == pytest.approx(fx, abs=1e-9)
        assert wigner_k_derivative(state, x, k, 1) == pytest.approx(fk, abs=1e-9)


# ---------------------------------------------------------------- grid

def test_phase_grid_validation():
    vals = np.zeros((3, 4))
    with pytest.raises(DomainError):
        PhaseGrid(0.0, 1.0, 3, -1.0, 1.0, 4, vals)
    with pytest.raises(DomainError):
        PhaseGrid(0.1, 1.0, 3, -1.0, 1.0, 4, np.zeros((4, 3)))
    bad = vals.copy()
    bad[1, 1] = np.nan
    with pytest.raises(DomainError):
        PhaseGrid(0.1, 1.0, 3, -1.0, 1.0, 4, bad)


def test_phase_grid_is_immutable_and_uniform():
    g = fill_grid(lambda x, k: x * k, 0.5, 2.5, 5, -1.0, 1.0, 3, {"state": "test"})
    assert np.allclose(np.diff(g.x), 0.5) and np.allclose(np.diff(g.k), 1.0)
    assert g.cell_area == pytest.approx(0.5)
    assert g.values[4, 2] == pytest.approx(2.5)
    with pytest.raises(ValueError):
        g.values[0, 0] = 1.0
