"""Singular (isotonic) oscillator: potential, spectrum and eigenfunctions.

Dimensionless units throughout: energies in units of hbar*omega, the
Hamiltonian is

    H = (k^2 + x^2 + g/x^2 - 2 alpha) / 2,   g = (4 alpha^2 - 1) / 4,

on the half-line x > 0. The constant -alpha shift is kept inside the
potential so that the levels are exactly 2n + 1 for every alpha.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import DomainError
from .specfun import laguerre, laguerre_derivative, ln_gamma


@dataclass(frozen=True)
class OscillatorParams:
    """Interaction parameter ``alpha`` (> -1) of the singular oscillator.

    ``alpha = -1/2`` and ``alpha = 1/2`` both switch off the inverse-square
    term. For ``-1 < alpha < 1/2`` (other than -1/2) the coupling is
    attractive; those states are normalisable but classically the particle
    falls to the centre.
    """

    alpha: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha > -1):
            raise DomainError(f"alpha must be > -1, got {self.alpha}")

    @property
    def g(self):
        return (4.0 * self.alpha ** 2 - 1.0) / 4.0

    @property
    def is_harmonic(self):
        return self.alpha == -0.5


@dataclass(frozen=True)
class EnergyLevel:
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"level index must be a non-negative integer, got {self.n}")

    @property
    def epsilon(self):
        return 2 * self.n + 1


def energy(n):
    """Dimensionless eigenvalue 2n + 1 (independent of alpha)."""
    return EnergyLevel(n).epsilon


def _positive(x, what):
    xa = np.asarray(x, dtype=float)
    if np.any(~(xa > 0)):
        raise DomainError(f"{what} is only defined for x > 0")
    return xa


def _out(a):
    return float(a) if np.ndim(a) == 0 else a


def potential(p, x):
    """U(x) = (x^2 + g/x^2 - 2 alpha) / 2 for x > 0."""
    x = _positive(x, "potential")
    return _out(0.5 * (x * x + p.g / (x * x) - 2.0 * p.alpha))


def potential_derivative(p, x, m):
    """Closed-form m-th derivative of the potential, m >= 1."""
    m = int(m)
    if m < 1:
        raise DomainError("derivative order must be >= 1")
    x = _positive(x, "potential_derivative")
    harmonic = x if m == 1 else (np.ones_like(x) if m == 2 else np.zeros_like(x))
    singular = 0.5 * p.g * (-1) ** m * math.factorial(m + 1) * x ** (-(m + 2))
    return _out(harmonic + singular)


def log_norm_sq(p, n):
    """ln (N_n)^2 = ln n! - ln Gamma(n + alpha + 1), kept in log form."""
    return ln_gamma(n + 1.0) - ln_gamma(n + p.alpha + 1.0)


def _prefactor(p, n):
    # sqrt(2) * N_n
    return math.exp(0.5 * (math.log(2.0) + log_norm_sq(p, n)))


def eigenfunction(p, n, x):
    """Normalised eigenfunction phi_n(x); identically zero for x <= 0."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    xp = x[pos]
    out[pos] = (_prefactor(p, n) * xp ** (p.alpha + 0.5) * np.exp(-0.5 * xp * xp)
                * laguerre(n, p.alpha, xp * xp))
    return _out(out)


def eigenfunction_derivative(p, n, x):
    """d phi_n / dx for x > 0 (zero for x <= 0)."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    xp = x[pos]
    a = p.alpha + 0.5
    lag = laguerre(n, p.alpha, xp * xp)
    dlag = laguerre_derivative(n, p.alpha, xp * xp)
    out[pos] = (_prefactor(p, n) * xp ** a * np.exp(-0.5 * xp * xp)
                * ((a / xp - xp) * lag + 2.0 * xp * dlag))
    return _out(out)


def schrodinger_residual(p, n, x_grid):
    """Max |-phi''/2 + U phi - (2n+1) phi| over a uniform interior grid.

    phi'' is a centred second difference with the grid spacing, so the
    residual is O(h^2).
    """
    x = np.asarray(x_grid, dtype=float)
    if x.ndim != 1 or len(x) < 3:
        raise DomainError("x_grid must be a 1-D array with at least 3 points")
    h = x[1] - x[0]
    if x[0] - h <= 0:
        raise DomainError("grid must stay inside x > 0 including the stencil")
    phi = eigenfunction(p, n, x)
    lap = (eigenfunction(p, n, x + h) - 2.0 * phi + eigenfunction(p, n, x - h)) / (h * h)
    res = -0.5 * lap + potential(p, x) * phi - energy(n) * phi
    return float(np.max(np.abs(res)))
