r"""Canonical ensemble of the singular oscillator in phase space.

The thermal Wigner function is available two ways:

* as the Boltzmann-weighted eigenstate sum (:class:`ThermalSeriesState`);
* in closed form through the Hille-Hardy formula (:class:`ThermalState`),
  whose displaced kernel is

  .. math::
      f(x, y) = 2 e^{\alpha\beta} \sqrt{x^2-y^2}\,
                e^{-\coth\beta\,(x^2+y^2)} I_\alpha\!\left(\frac{x^2-y^2}{\sinh\beta}\right).

Bessel factors are never formed unscaled. Writing ``I_a(z) = (z/2)^a e^z R(z)``
with :func:`~isotonic_wigner.specfun.bessel_i_reduced_scaled` ``R``, the
exponentials combine into ``exp(-x^2 tanh(beta/2) - y^2 coth(beta/2))`` before
anything is exponentiated, so nothing overflows for beta in [0.01, 50].
"""

from dataclasses import dataclass
import math

import numpy as np

from .eigensystem import OscillatorParams, log_norm_sq, potential
from .errors import DomainError
from .quadrature import integrate_finite, integrate_semi_infinite
from .specfun import (bessel_i_reduced_scaled, bessel_i_scaled, hyp2f1, laguerre,
                      laguerre_derivative, SeriesControl)
from .wigner_states import DEFAULT_TOL, WignerState, overlap, wigner_value, _scalar_map

BETA_MIN, BETA_MAX = 0.01, 50.0


@dataclass(frozen=True)
class ThermalParams:
    """Dimensionless inverse temperature beta = hbar*omega / (k_B T)."""

    beta: float

    def __post_init__(self):
        if not (math.isfinite(self.beta) and self.beta > 0):
            raise DomainError(f"beta must be positive and finite, got {self.beta}")

    @property
    def lam(self):
        return math.exp(-2.0 * self.beta)

    def check_supported(self):
        if not BETA_MIN <= self.beta <= BETA_MAX:
            raise DomainError(f"beta={self.beta} outside the supported range "
                              f"[{BETA_MIN}, {BETA_MAX}]")
        return self


def partition_function(t):
    """Z = 1 / (2 sinh beta), the same for every alpha."""
    return 0.5 / math.sinh(t.beta)


def partition_function_spectral(t, tol=1e-14):
    """Z summed level by level, sum_n exp(-(2n+1) beta), cut by the geometric tail."""
    lam = t.lam
    n_terms = series_length(t, tol)
    return math.fsum(math.exp(-t.beta) * lam ** n for n in range(n_terms))


def series_length(t, tol):
    """Smallest N with lambda^N / (1 - lambda) < tol / 10."""
    lam = t.lam
    target = 0.1 * tol * (1.0 - lam)
    return max(1, int(math.ceil(math.log(target) / math.log(lam))))


def mean_energy(t):
    """-d ln Z / d beta = coth beta."""
    return 1.0 / math.tanh(t.beta)


@dataclass(frozen=True)
class ThermalState(WignerState):
    """Thermal Wigner function from the closed Bessel form."""

    params: OscillatorParams
    thermal: ThermalParams

    def _consts(self):
        b = self.thermal.beta
        a = self.params.alpha
        amp = 2.0 * (-math.expm1(-2.0 * b)) ** (-a)  # 2 e^{a b} (2 sinh b)^{-a}
        return amp, math.tanh(0.5 * b), 1.0 / math.tanh(0.5 * b), 1.0 / math.sinh(b)

    def smooth_kernel(self, x, y):
        amp, tx, ty, inv_sh = self._consts()
        y = np.asarray(y, dtype=float)
        u = (x - y) * (x + y)
        return (amp * np.exp(-x * x * tx - y * y * ty)
                * bessel_i_reduced_scaled(self.params.alpha, np.maximum(u, 0.0) * inv_sh))

    def smooth_kernel_dx(self, x, y):
        a = self.params.alpha
        amp, tx, ty, inv_sh = self._consts()
        y = np.asarray(y, dtype=float)
        z = np.maximum((x - y) * (x + y), 0.0) * inv_sh
        r = bessel_i_reduced_scaled(a, z)
        # R'(z) = -R(z) + (z/2) R_{alpha+1}(z) for the reduced scaled Bessel R
        dr = -r + 0.5 * z * bessel_i_reduced_scaled(a + 1.0, z)
        env = amp * np.exp(-x * x * tx - y * y * ty)
        return env * (-2.0 * x * tx * r + 2.0 * x * inv_sh * dr)

    def smooth_kernel_yy0(self, x):
        """Second y-derivative of the smooth kernel at y = 0."""
        a = self.params.alpha
        amp, tx, ty, inv_sh = self._consts()
        z = x * x * inv_sh
        r = bessel_i_reduced_scaled(a, z)
        dr = -r + 0.5 * z * bessel_i_reduced_scaled(a + 1.0, z)
        return amp * math.exp(-x * x * tx) * (-2.0 * ty * r - 2.0 * inv_sh * dr)


@dataclass(frozen=True)
class ThermalSeriesState(WignerState):
    """Thermal Wigner function as the Boltzmann-weighted eigenstate sum."""

    params: OscillatorParams
    thermal: ThermalParams
    tol: float = 1e-13

    def smooth_kernel(self, x, y):
        a = self.params.alpha
        lam = self.thermal.lam
        y = np.asarray(y, dtype=float)
        xp, xm = (x + y) ** 2, (x - y) ** 2
        # run the Laguerre recurrence for both arguments alongside the n-sum
        lp_prev, lm_prev = np.ones_like(y), np.ones_like(y)
        lp, lm = 1.0 + a - xp, 1.0 + a - xm
        norm = math.exp(log_norm_sq(self.params, 0))
        total = norm * lp_prev * lm_prev
        weight = 1.0
        for n in range(1, series_length(self.thermal, self.tol)):
            weight *= lam
            norm *= n / (n + a)
            total = total + weight * norm * lp * lm
            lp_prev, lp = lp, ((2 * n + 1 + a - xp) * lp - (n + a) * lp_prev) / (n + 1)
            lm_prev, lm = lm, ((2 * n + 1 + a - xm) * lm - (n + a) * lm_prev) / (n + 1)
        return 2.0 * (1.0 - lam) * np.exp(-(x * x + y * y)) * total

    def smooth_kernel_yy0(self, x):
        a = self.params.alpha
        lam = self.thermal.lam
        X = x * x
        total = 0.0
        for n in range(series_length(self.thermal, self.tol)):
            w = lam ** n * math.exp(log_norm_sq(self.params, n))
            L = laguerre(n, a, X)
            dL = laguerre_derivative(n, a, X)
            ddL = laguerre(n - 2, a + 2, X) if n >= 2 else 0.0
            p0 = L * L
            p2 = 2.0 * L * (2.0 * dL + 4.0 * X * ddL) - 8.0 * X * dL * dL
            total += w * (p2 - 2.0 * p0)
        return 2.0 * (1.0 - lam) * math.exp(-X) * total


def thermal_wigner(p, t, x, k, method="bessel", tol=DEFAULT_TOL):
    """Normalised thermal Wigner function at (x, k)."""
    t.check_supported()
    if method == "bessel":
        state = ThermalState(p, t)
    elif method == "series":
        state = ThermalSeriesState(p, t, tol=min(tol, 1e-12))
    else:
        raise DomainError(f"unknown method {method!r}")
    return wigner_value(state, x, k, tol)


def phase_space_normalization(p, t, tol=DEFAULT_TOL):
    """Unnormalised phase-space volume int int Omega dx dk, which should equal Z."""
    state = ThermalState(p, t.check_supported())
    total = integrate_semi_infinite(_scalar_map(state.density), 0.0, tol).value
    return total * partition_function(t)


def _purity_reduced(p, t, tol):
    a = p.alpha
    b = t.beta
    coth = 1.0 / math.tanh(b)
    inv_sh = 1.0 / math.sinh(b)
    log_pref = 2.0 * a * b

    def inner(s):
        w = 1.0 - s * s
        r = w * inv_sh
        # decay rate 2 (coth(1+s^2) - (1-s^2)/sinh) > 0 since cosh(1+s^2) > 1-s^2
        decay = 2.0 * (coth * (1.0 + s * s) - r)
        x_max = 40.0 / decay  # envelope exp(-decay X) below 1e-16 beyond this

        def integrand(X):
            ie = bessel_i_scaled(a, X * r)
            return X * np.exp(log_pref - decay * X) * ie * ie

        # the Bessel factor turns over at X ~ 1/r, which can be far below
        # the envelope scale 1/decay; seed a geometric ladder between them
        pts = []
        if r > 0:
            xb = 0.25 / r
            while xb < x_max:
                pts.append(xb)
                xb *= 4.0
        return integrate_finite(integrand, 0.0, x_max, 0.01 * tol, points=pts).value

    def outer(svals):
        return np.array([(1.0 - s * s) * inner(float(s)) for s in np.atleast_1d(svals)])

    # the integrand is even in s and, for small beta, peaked at s = 0 with
    # width ~ tanh(beta/2); seed breakpoints on that scale
    width = math.tanh(0.5 * b)
    points = [width * 2.0 ** j for j in range(-2, 40) if width * 2.0 ** j < 1.0]
    return 8.0 * integrate_finite(outer, 0.0, 1.0, tol, points=points).value


def _purity_hypergeometric(p, t, tol):
    a = p.alpha
    if not (a > 0 and (a - 0.5).is_integer()):
        raise DomainError(f"hypergeometric purity needs alpha in {{1/2, 3/2, ...}}, got {a}")
    b = t.beta
    sech = 1.0 / math.cosh(b)
    ctl = SeriesControl(tol=1e-14, max_terms=100000)
    log_pref = (-(2.0 * a - 1.0) * math.log(2.0) - 0.5 * math.log(math.pi)
                + math.lgamma(a + 1.5) - math.lgamma(a + 1.0)
                + 2.0 * a * b + 2.0 * math.log(math.tanh(b)) + 2.0 * a * math.log(sech))

    def integrand(s):
        ratio = (1.0 - s * s) / (1.0 + s * s)
        z = (ratio * sech) ** 2
        return ratio ** (2.0 * a + 1.0) / (1.0 + s * s) * hyp2f1(a + 0.5, a + 1.5, 2.0 * a + 1.0, z, ctl)

    val = integrate_finite(np.vectorize(integrand), 0.0, 1.0, tol).value
    return 2.0 * math.exp(log_pref) * val


def thermal_purity(p, t, method="reduced", tol=DEFAULT_TOL):
    """Quantum purity 2 pi int int W^2 of the thermal state.

    ``reduced`` is the two-dimensional (s, X) integral with the Bessel
    product, ``grid`` integrates the thermal kernel squared over (x, y), and
    ``hypergeometric`` uses the 2F1 form valid for alpha = 1/2, 3/2, ...
    """
    t.check_supported()
    if method == "reduced":
        return _purity_reduced(p, t, tol)
    if method == "grid":
        state = ThermalState(p, t)
        return overlap(state, state, tol)
    if method == "hypergeometric":
        return _purity_hypergeometric(p, t, tol)
    raise DomainError(f"unknown method {method!r}")


def zero_temperature_purity(p, tol=1e-12):
    """beta -> infinity limit of the 2F1 form; equals 1 for every alpha."""
    a = p.alpha
    pref = 4.0 / math.sqrt(math.pi) * math.exp(math.lgamma(a + 1.5) - math.lgamma(a + 1.0))
    val = integrate_finite(lambda s: (1 - s * s) ** (2 * a + 1) / (1 + s * s) ** (2 * a + 2),
                           0.0, 1.0, tol).value
    return pref * val


def _quadratic_coefficients(symbol):
    """Split symbol(x, k) = a0(x) + a1(x) k + a2(x) k^2, rejecting anything else."""
    def coeffs(x):
        s0, sp, sm = symbol(x, 0.0), symbol(x, 1.0), symbol(x, -1.0)
        return s0, 0.5 * (sp - sm), 0.5 * (sp + sm) - s0

    for probe in (0.37, 1.3, 2.9):
        a0, a1, a2 = coeffs(probe)
        for kk in (2.0, -3.0):
            expected = a0 + a1 * kk + a2 * kk * kk
            if not math.isclose(symbol(probe, kk), expected, rel_tol=1e-9, abs_tol=1e-12):
                raise DomainError("phase_space_average supports symbols at most quadratic in k")
    return coeffs


def state_average(state, symbol, tol=DEFAULT_TOL):
    """Phase-space average int int W(x, k) symbol(x, k) dx dk for an untilted state.

    The symbol must be a polynomial of degree <= 2 in k (any x-dependence).
    Momentum moments over the whole line come from the kernel at y = 0:
    ``int W dk = f(x, 0)`` and ``int k^2 W dk = -f_yy(x, 0) / 4``; the odd
    moment vanishes because the kernel is even in y.
    """
    if state.k_shift(1.0) != 0.0:
        raise DomainError("state_average needs an untilted state (k_shift = 0)")
    coeffs = _quadratic_coefficients(symbol)
    pw = state.endpoint_power

    def integrand(x):
        if x <= 0:
            return 0.0
        a0, _, a2 = coeffs(x)
        h0 = float(state.smooth_kernel(x, np.zeros(1))[0])
        m0 = x ** (2.0 * pw) * h0
        out = a0 * m0
        if a2 != 0.0:
            fyy = x ** (2.0 * pw) * (-2.0 * pw * h0 / (x * x) + state.smooth_kernel_yy0(x))
            out += a2 * (-0.25 * fyy)
        return out

    return integrate_semi_infinite(_scalar_map(integrand), 0.0, tol).value


def hamiltonian_symbol(p):
    """Weyl symbol (k^2 + x^2 + g/x^2 - 2 alpha) / 2 as a callable of (x, k)."""
    def symbol(x, k):
        return 0.5 * k * k + potential(p, x)
    return symbol


def phase_space_average(p, t, symbol, tol=DEFAULT_TOL):
    """Thermal average of a phase-space symbol (quadratic in k)."""
    return state_average(ThermalState(p, t.check_supported()), symbol, tol)
