r"""Wigner currents, continuity diagnostics and classical-contour fluxes.

The phase-space current of a Wigner function obeys
:math:`\partial_\tau W + \partial_x J_x + \partial_k J_k = 0` with

.. math::
    J_x = k W, \qquad
    J_k = -\sum_{\eta \ge 0} \frac{(i/2)^{2\eta}}{(2\eta+1)!}\,
          U^{(2\eta+1)}(x)\, \partial_k^{2\eta} W .

The ``eta = 0`` term is the classical Liouville current; ``eta >= 1`` are the
Moyal corrections. k-derivatives of every order come from the kernel
integral directly (``(2iy)^m`` under the integral), never from differences.

For this potential the series can also be summed in closed form:
``[U(x+y) - U(x-y)] / (2y) = x (1 - g / (x^2 - y^2)^2)``, so

.. math::
    J_k = -\frac{x}{\pi} \int_{-x}^{x} \cos(2ky)
          \Bigl[1 - \frac{g}{(x^2-y^2)^2}\Bigr] f(x, y)\, dy .

``current_k(..., eta_max=None)`` evaluates that resummed form. It is the
reference against which the truncated series is judged: the Taylor radius of
``U`` about ``x`` is ``x`` itself, the same as the half-width of the ``y``
integral, so the truncated series converges only algebraically near the
endpoint ``|y| -> x``.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .eigensystem import OscillatorParams, potential_derivative
from .errors import DomainError, OrbitError
from .quadrature import integrate_finite, wigner_kernel_integral
from .wigner_states import (DEFAULT_TOL, PhaseGrid, marginal_position, wigner_k_derivative,
                            wigner_value, wigner_x_derivative)

DEFAULT_ETA_MAX = 6
WIGNER_FLOOR = 1e-10


def current_x(W_value, k):
    """J_x = k W."""
    return k * W_value


def moyal_coefficient(eta):
    """(i/2)^{2 eta} / (2 eta + 1)! = (-1)^eta 4^{-eta} / (2 eta + 1)!."""
    return (-1) ** eta * 0.25 ** eta / math.factorial(2 * eta + 1)


def _check_eta(eta_max):
    if eta_max is None:
        return None
    if int(eta_max) != eta_max or eta_max < 0:
        raise DomainError(f"eta_max must be a non-negative integer or None, got {eta_max}")
    return int(eta_max)


def moyal_term(state, p, x, k, eta, tol=DEFAULT_TOL, k_order=0):
    """Single term ``c_eta U^{(2eta+1)}(x) d_k^{2eta + k_order} W`` of the series.

    ``J_k`` is minus the sum of these with ``k_order = 0``; ``k_order = 1``
    gives the terms of ``d J_k / dk``.
    """
    du = potential_derivative(p, x, 2 * eta + 1)
    if du == 0.0:
        return 0.0
    return moyal_coefficient(eta) * du * wigner_k_derivative(state, x, k, 2 * eta + k_order, tol)


def _resummed(state, p, x, k, tol, k_order):
    # J_k (k_order 0) or dJ_k/dk (k_order 1) from the closed-form sum
    a = p.alpha
    g = p.g
    pw = state.endpoint_power
    kk = k + state.k_shift(x)
    parity = "even" if k_order == 0 else "odd"
    if g != 0.0 and pw <= 1.0:
        raise DomainError("the resummed current needs alpha > 1/2 when g != 0 "
                          "(the inverse-square difference is not integrable otherwise)")

    def weight(y):
        return (2.0 * y) ** k_order * state.smooth_kernel(x, y)

    val = wigner_kernel_integral(weight, x, kk, tol, parity=parity, endpoint_power=pw)
    if g != 0.0:
        val -= g * wigner_kernel_integral(weight, x, kk, tol, parity=parity,
                                          endpoint_power=pw - 2.0)
    # dJ_k/dk picks up (2iy) -> -(2y) sin for the cosine kernel
    sign = -1.0 if k_order == 0 else 1.0
    return sign * x * val / math.pi


def current_k(state, p, x, k, eta_max=DEFAULT_ETA_MAX, tol=DEFAULT_TOL):
    """Momentum component of the Wigner current.

    Parameters
    ----------
    state : WignerState
    p : OscillatorParams
        Must match ``state.params``.
    x, k : float
        Phase-space point, ``x > 0``.
    eta_max : int or None
        Highest Moyal order kept. ``None`` evaluates the resummed series.
    tol : float
        Quadrature tolerance for each kernel integral.
    """
    eta_max = _check_eta(eta_max)
    if not x > 0:
        raise DomainError("current_k needs x > 0")
    if eta_max is None:
        return _resummed(state, p, x, k, tol, 0)
    return -math.fsum(moyal_term(state, p, x, k, e, tol) for e in range(eta_max + 1))


def current_k_dk(state, p, x, k, eta_max=DEFAULT_ETA_MAX, tol=DEFAULT_TOL):
    """d J_k / d k, term by term with exact odd k-derivatives."""
    eta_max = _check_eta(eta_max)
    if not x > 0:
        raise DomainError("current_k_dk needs x > 0")
    if eta_max is None:
        return _resummed(state, p, x, k, tol, 1)
    return -math.fsum(moyal_term(state, p, x, k, e, tol, k_order=1) for e in range(eta_max + 1))


def delta_current_k(state, p, x, k, eta_max=DEFAULT_ETA_MAX, tol=DEFAULT_TOL):
    """Quantum part of J_k: the Moyal terms with 1 <= eta <= eta_max."""
    eta_max = _check_eta(eta_max)
    if eta_max is None:
        classical = -potential_derivative(p, x, 1) * wigner_value(state, x, k, tol)
        return current_k(state, p, x, k, None, tol) - classical
    return -math.fsum(moyal_term(state, p, x, k, e, tol) for e in range(1, eta_max + 1))


def divergence(state, p, x, k, eta_max=DEFAULT_ETA_MAX, tol=DEFAULT_TOL):
    """d J_x / dx + d J_k / dk at one point (needs ``state.smooth_kernel_dx``)."""
    return k * wigner_x_derivative(state, x, k, tol) + current_k_dk(state, p, x, k, eta_max, tol)


@dataclass(frozen=True)
class Region:
    """Rectangular sample of phase space used for residual checks."""

    x_min: float
    x_max: float
    k_min: float
    k_max: float
    nx: int = 9
    nk: int = 9

    def __post_init__(self):
        if not (0 < self.x_min < self.x_max and self.k_min < self.k_max):
            raise DomainError("region must satisfy 0 < x_min < x_max and k_min < k_max")
        if self.nx < 1 or self.nk < 1:
            raise DomainError("region needs at least one point per axis")

    def points(self):
        for x in np.linspace(self.x_min, self.x_max, self.nx):
            for k in np.linspace(self.k_min, self.k_max, self.nk):
                yield float(x), float(k)


def continuity_residual(state, region, eta_max=DEFAULT_ETA_MAX, tol=DEFAULT_TOL):
    """max |d J_x/dx + d J_k/dk| over ``region`` for a stationary state.

    A stationary state has dW/dtau = 0, so anything left over is Moyal
    truncation error plus leakage from the half-line cut at y = +-x.
    """
    p = state.params
    return max(abs(divergence(state, p, x, k, eta_max, tol)) for x, k in region.points())


def pseudo_velocity_divergence(state, p, x, k, eta_max=DEFAULT_ETA_MAX, tol=DEFAULT_TOL,
                               floor=WIGNER_FLOOR):
    """Divergence of the pseudo-velocity w = J / W.

    Returns ``(W dJ_k/dk - J_k dW/dk) / W^2``; the x-parts cancel because
    ``J_x / W = k``. Where ``|W| <= floor`` the field is singular and ``nan``
    is returned as a mask marker.
    """
    w = wigner_value(state, x, k, tol)
    if abs(w) <= floor:
        return math.nan
    jk = current_k(state, p, x, k, eta_max, tol)
    djk = current_k_dk(state, p, x, k, eta_max, tol)
    dw = wigner_k_derivative(state, x, k, 1, tol)
    return (w * djk - jk * dw) / (w * w)


@dataclass(frozen=True)
class FlowField:
    """Currents sampled on a phase-space grid."""

    grid: PhaseGrid
    Jx: np.ndarray
    Jk: np.ndarray
    eta_max: object = DEFAULT_ETA_MAX
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        shape = (self.grid.nx, self.grid.nk)
        for name in ("Jx", "Jk"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.shape != shape:
                raise DomainError(f"{name} must have shape {shape}")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        _check_eta(self.eta_max)


def fill_flow(state, x_min, x_max, nx, k_min, k_max, nk, eta_max=DEFAULT_ETA_MAX,
              tol=DEFAULT_TOL):
    """Evaluate W, J_x and J_k on a uniform grid."""
    p = state.params
    xs = np.linspace(x_min, x_max, nx)
    ks = np.linspace(k_min, k_max, nk)
    w = np.empty((nx, nk))
    jk = np.empty((nx, nk))
    for i, x in enumerate(xs):
        for j, k in enumerate(ks):
            w[i, j] = wigner_value(state, float(x), float(k), tol)
            jk[i, j] = current_k(state, p, float(x), float(k), eta_max, tol)
    grid = PhaseGrid(x_min, x_max, nx, k_min, k_max, nk, w, {"eta_max": eta_max})
    return FlowField(grid, ks[None, :] * w, jk, eta_max)


@dataclass(frozen=True)
class ClassicalOrbit:
    """Closed orbit of H = (k^2 + x^2 + g/x^2)/2 at energy E.

    ``x(tau)^2 = E + A cos(2 tau)`` with ``A = sqrt(E^2 - g)``; tau = 0 is the
    outer turning point and the orbit closes after ``period = pi``.
    """

    params: OscillatorParams
    E: float

    def __post_init__(self):
        g = self.params.g
        if g < 0:
            raise OrbitError(f"alpha={self.params.alpha} gives g < 0: the classical "
                             "particle falls to the centre and there is no closed orbit")
        if not self.E >= math.sqrt(g):
            raise OrbitError(f"E={self.E} is below the potential minimum sqrt(g)={math.sqrt(g)}")

    @property
    def A(self):
        d = self.E * self.E - self.params.g
        # E = sqrt(g) up to rounding is the degenerate (point) orbit
        if d <= 8.0 * np.finfo(float).eps * self.E * self.E:
            return 0.0
        return math.sqrt(d)

    @property
    def period(self):
        return math.pi

    @property
    def turning_points(self):
        lo = math.sqrt(max(self.E - self.A, 0.0))
        return lo, math.sqrt(self.E + self.A)

    def x(self, tau):
        tau = np.asarray(tau, dtype=float)
        if self.params.g == 0.0:
            out = math.sqrt(2.0 * self.E) * np.abs(np.cos(tau))
        else:
            out = np.sqrt(self.E + self.A * np.cos(2.0 * tau))
        return float(out) if out.ndim == 0 else out

    def k(self, tau):
        """k_C = dx_C/dtau."""
        tau = np.asarray(tau, dtype=float)
        if self.params.g == 0.0:
            # reflection at the wall x = 0 flips the momentum
            out = -math.sqrt(2.0 * self.E) * np.sin(tau) * np.sign(np.cos(tau))
        else:
            out = -self.A * np.sin(2.0 * tau) / np.sqrt(self.E + self.A * np.cos(2.0 * tau))
        return float(out) if out.ndim == 0 else out

    def energy(self, tau):
        x, k = np.asarray(self.x(tau)), np.asarray(self.k(tau))
        return 0.5 * (k * k + x * x + self.params.g / (x * x))

    def momentum_bound(self, x):
        """Upper branch K(x) >= 0 of the contour at position x."""
        val = 2.0 * self.E - x * x - self.params.g / (x * x)
        return math.sqrt(max(val, 0.0))


def classical_orbit(p, E):
    return ClassicalOrbit(p, float(E))


def contour_probability(state, orbit, tol=DEFAULT_TOL):
    """Probability inside the classical contour, int_{x-}^{x+} int_{-K(x)}^{K(x)} W dk dx."""
    lo, hi = orbit.turning_points
    if hi - lo <= 0:
        return 0.0

    def inner(xs):
        return np.array([marginal_position(state, float(x), 0.1 * tol, orbit.momentum_bound(float(x)))
                         if x > 0 else 0.0 for x in np.atleast_1d(xs)])

    return integrate_finite(inner, lo, hi, tol).value


@dataclass(frozen=True)
class PurityFlux:
    """Purity flux through the contour, over one closed orbit and over 2 pi."""

    one_period: float
    two_pi: float
    eta_max: object
    n_tau: int


def _flux_integrand(state, p, orbit, tau, eta_max, tol):
    x = orbit.x(tau)
    k = orbit.k(tau)
    if x <= 0:
        return 0.0
    dj = delta_current_k(state, p, x, k, eta_max, tol)
    if dj == 0.0:
        return 0.0
    return wigner_value(state, x, k, tol) * dj * k


def purity_flux(state, orbit, eta_max=DEFAULT_ETA_MAX, tol=DEFAULT_TOL, n_tau=128,
                tau0=0.0, span=None):
    """-int_0^T W dJ_k (dx_C/dtau) dtau along the classical contour.

    The integrand is periodic with the orbit period, so the trapezoidal rule
    on ``n_tau`` equally spaced points converges spectrally. ``span``
    defaults to one closed orbit (pi); use :func:`purity_flux_report` for the
    pi and 2 pi values together.
    """
    eta_max = _check_eta(eta_max)
    if n_tau < 2:
        raise DomainError("n_tau must be at least 2")
    span = orbit.period if span is None else float(span)
    turns = span / orbit.period
    if not (turns > 0 and abs(turns - round(turns)) < 1e-12):
        raise DomainError("span must be a whole number of orbit periods")
    if eta_max == 0 or state.params.g == 0.0:
        # Delta J_k starts at eta = 1 and vanishes for a quadratic potential
        return 0.0
    p = state.params
    taus = tau0 + orbit.period * np.arange(n_tau) / n_tau
    vals = [_flux_integrand(state, p, orbit, float(t), eta_max, tol) for t in taus]
    one = -orbit.period * math.fsum(vals) / n_tau
    return one * round(turns)


def purity_flux_report(state, orbit, eta_max=DEFAULT_ETA_MAX, tol=DEFAULT_TOL, n_tau=128):
    one = purity_flux(state, orbit, eta_max, tol, n_tau)
    return PurityFlux(one, one * 2.0 * math.pi / orbit.period, eta_max, n_tau)
