r"""Wigner functions of singular-oscillator states on the half-line.

Every state here is described by its displaced density-matrix kernel

.. math::
    f(x, y) = \rho(x + y, x - y) = (x^2 - y^2)^{p}\, h(x, y), \qquad |y| < x,

with ``p = alpha + 1/2`` and ``h`` smooth and even in ``y``. The Wigner
function is

.. math::
    W(x, k) = \frac{1}{\pi} \int_{-x}^{x} \cos\bigl(2 (k + s(x)) y\bigr) f(x, y)\, dy,

where ``s(x)`` is a momentum tilt (non-zero only for the quasi-Gaussian
superposition). ``W`` vanishes identically for ``x <= 0``.

Phase-space integrals over the full momentum line are done in the conjugate
variable ``y``: the k-integral of ``e^{2iky}`` is a delta function, so
``int W dk = f(x, 0)`` and ``int W_a W_b dk = (1/pi) int f_a f_b dy``. Only the
remaining one or two dimensions are integrated numerically. This avoids the
slow algebraic k-tails that the half-line cut produces.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .eigensystem import (OscillatorParams, eigenfunction, eigenfunction_derivative,
                          log_norm_sq)
from .errors import DomainError, SeriesTruncationError
from .quadrature import integrate_semi_infinite, wigner_kernel_integral
from .specfun import hyp1f1, laguerre, laguerre_derivative, ln_gamma, SeriesControl

DEFAULT_TOL = 1e-10
WIGNER_BOUND = 1.0 / math.pi


def _scalar_map(fun):
    def mapped(xs):
        return np.array([fun(float(v)) for v in np.atleast_1d(xs)])
    return mapped


class WignerState:
    """Base class: a real Wigner function given by a displaced kernel."""

    params: OscillatorParams

    @property
    def endpoint_power(self):
        return self.params.alpha + 0.5

    def smooth_kernel(self, x, y):
        raise NotImplementedError

    def k_shift(self, x):
        return 0.0

    def k_shift_dx(self, x):
        return 0.0

    def smooth_kernel_dx(self, x, y):
        raise DomainError(f"{type(self).__name__} has no analytic x-derivative")

    def kernel(self, x, y):
        """Full kernel f(x, y) for |y| < x."""
        y = np.asarray(y, dtype=float)
        return ((x - y) * (x + y)) ** self.endpoint_power * self.smooth_kernel(x, y)

    def density(self, x):
        """Diagonal rho(x, x) = f(x, 0); zero for x <= 0."""
        if x <= 0:
            return 0.0
        return float(x ** (2.0 * self.endpoint_power) * self.smooth_kernel(x, np.zeros(1))[0])

    def wigner(self, x, k, tol=DEFAULT_TOL):
        return wigner_value(self, x, k, tol)

    def __call__(self, x, k, tol=DEFAULT_TOL):
        return wigner_value(self, x, k, tol)


@dataclass(frozen=True)
class EigenState(WignerState):
    """Energy eigenstate ``n`` of the singular oscillator."""

    params: OscillatorParams
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"n must be a non-negative integer, got {self.n}")

    @property
    def _scale(self):
        return 2.0 * math.exp(log_norm_sq(self.params, self.n))

    def smooth_kernel(self, x, y):
        a = self.params.alpha
        y = np.asarray(y, dtype=float)
        return (self._scale * np.exp(-(x * x + y * y))
                * laguerre(self.n, a, (x + y) ** 2) * laguerre(self.n, a, (x - y) ** 2))

    def smooth_kernel_dx(self, x, y):
        """Partial x-derivative of :meth:`smooth_kernel`."""
        a, n = self.params.alpha, self.n
        y = np.asarray(y, dtype=float)
        lp, lm = laguerre(n, a, (x + y) ** 2), laguerre(n, a, (x - y) ** 2)
        dp, dm = laguerre_derivative(n, a, (x + y) ** 2), laguerre_derivative(n, a, (x - y) ** 2)
        env = self._scale * np.exp(-(x * x + y * y))
        return env * (-2.0 * x * lp * lm + 2.0 * (x + y) * dp * lm + 2.0 * (x - y) * lp * dm)

    def smooth_kernel_yy0(self, x):
        """Second y-derivative of :meth:`smooth_kernel` at y = 0."""
        a, n = self.params.alpha, self.n
        X = x * x
        lag = laguerre(n, a, X)
        dlag = laguerre_derivative(n, a, X)
        ddlag = laguerre(n - 2, a + 2, X) if n >= 2 else 0.0
        prod = lag * lag
        prod_yy = 2.0 * lag * (2.0 * dlag + 4.0 * X * ddlag) - 8.0 * X * dlag * dlag
        return self._scale * math.exp(-X) * (prod_yy - 2.0 * prod)

    def wavefunction(self, x):
        return eigenfunction(self.params, self.n, x)

    def wavefunction_derivative(self, x):
        return eigenfunction_derivative(self.params, self.n, x)


@dataclass(frozen=True)
class QuasiGaussianParams:
    """Weight ``gamma`` (> 0) and dimensionless time ``tau``."""

    gamma: float
    tau: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.gamma) and self.gamma > 0):
            raise DomainError(f"gamma must be positive and finite, got {self.gamma}")
        if not math.isfinite(self.tau):
            raise DomainError(f"tau must be finite, got {self.tau}")

    @property
    def u(self):
        return complex(math.exp(-self.gamma) * math.cos(self.tau),
                       math.exp(-self.gamma) * math.sin(self.tau))


def chi(qp):
    """Width parameter sinh(gamma) / (cosh(gamma) - cos(tau)); always > 0."""
    return math.sinh(qp.gamma) / (math.cosh(qp.gamma) - math.cos(qp.tau))


def tilde_chi(qp):
    """Tilt parameter -sin(tau) / (cosh(gamma) - cos(tau))."""
    return -math.sin(qp.tau) / (math.cosh(qp.gamma) - math.cos(qp.tau))


def quasi_gaussian_norm(p, qp):
    """Normalisation making int_0^inf |G|^2 dx = 1."""
    return math.sqrt(2.0 * (1.0 - math.exp(-2.0 * qp.gamma)) ** (1.0 + p.alpha)
                     / math.gamma(1.0 + p.alpha))


def quasi_gaussian_wavefunction(p, qp, x):
    """Closed-form superposition sum_n u^n L_n^alpha(x^2) of eigenstates (complex)."""
    x = np.asarray(x, dtype=float)
    out = np.zeros(x.shape, dtype=complex)
    pos = x > 0
    xp = x[pos]
    u = qp.u
    a = p.alpha
    out[pos] = (quasi_gaussian_norm(p, qp) * xp ** (a + 0.5) * (1.0 - u) ** (-(1.0 + a))
                * np.exp(-0.5 * (1.0 + u) / (1.0 - u) * xp * xp))
    return complex(out) if out.ndim == 0 else out


def quasi_gaussian_mode_sum(p, qp, x, n_terms):
    """Truncated superposition N_F sum_{n<n_terms} u^n N_n^{-1} phi_n(x).

    The global phase exp(-i tau / 2) of the coefficients is left out so the
    result is directly comparable with :func:`quasi_gaussian_wavefunction`.
    """
    x = np.asarray(x, dtype=float)
    total = np.zeros(x.shape, dtype=complex)
    u = qp.u
    for n in range(n_terms):
        inv_norm = math.exp(-0.5 * log_norm_sq(p, n))
        total = total + u ** n * inv_norm * eigenfunction(p, n, x)
    # phi_n carries sqrt(2) N_n; the superposition is defined without the sqrt(2)
    return quasi_gaussian_norm(p, qp) * total / math.sqrt(2.0)


def quasi_gaussian_profile(p, qp, x):
    """|G(x)|^2 = 2 chi^{1+alpha} / Gamma(1+alpha) x^{1+2alpha} exp(-chi x^2)."""
    x = np.asarray(x, dtype=float)
    c = chi(qp)
    a = p.alpha
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = 2.0 * c ** (1.0 + a) / math.gamma(1.0 + a) * x[pos] ** (1.0 + 2.0 * a) * np.exp(-c * x[pos] ** 2)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class QuasiGaussianState(WignerState):
    """Geometric superposition of eigenstates with weights u^n, u = e^{-gamma + i tau}.

    The momentum tilt is ``+tilde_chi * x``, which corresponds to the ordering
    ``psi*(x - y) psi(x + y)`` inside the transform; with the opposite
    ordering the same function is obtained at ``-tau``.
    """

    params: OscillatorParams
    qp: QuasiGaussianParams

    def smooth_kernel(self, x, y):
        a = self.params.alpha
        c = chi(self.qp)
        y = np.asarray(y, dtype=float)
        return 2.0 * c ** (1.0 + a) / math.gamma(1.0 + a) * np.exp(-c * (x * x + y * y))

    def smooth_kernel_dx(self, x, y):
        return -2.0 * chi(self.qp) * x * self.smooth_kernel(x, y)

    def k_shift(self, x):
        return tilde_chi(self.qp) * x

    def k_shift_dx(self, x):
        return tilde_chi(self.qp)


@dataclass(frozen=True)
class MixtureState(WignerState):
    """Convex combination of states sharing the same alpha and no tilt."""

    components: tuple = field(default_factory=tuple)  # ((weight, state), ...)

    def __post_init__(self):
        if not self.components:
            raise DomainError("a mixture needs at least one component")
        alphas = {s.params.alpha for _, s in self.components}
        if len(alphas) != 1:
            raise DomainError("mixture components must share alpha")
        if any(w < 0 for w, _ in self.components):
            raise DomainError("mixture weights must be non-negative")
        if not math.isclose(sum(w for w, _ in self.components), 1.0, rel_tol=1e-12):
            raise DomainError("mixture weights must sum to one")

    @property
    def params(self):
        return self.components[0][1].params

    def smooth_kernel(self, x, y):
        return sum(w * s.smooth_kernel(x, y) for w, s in self.components)

    def smooth_kernel_yy0(self, x):
        return sum(w * s.smooth_kernel_yy0(x) for w, s in self.components)

    def smooth_kernel_dx(self, x, y):
        return sum(w * s.smooth_kernel_dx(x, y) for w, s in self.components)


def wigner_value(state, x, k, tol=DEFAULT_TOL):
    """Evaluate W(x, k) by oscillatory quadrature of the state's kernel."""
    if x <= 0:
        return 0.0
    kk = k + state.k_shift(x)
    val = wigner_kernel_integral(lambda y: state.smooth_kernel(x, y), x, kk, tol,
                                 endpoint_power=state.endpoint_power)
    return val / math.pi


def wigner_k_derivative(state, x, k, order, tol=DEFAULT_TOL):
    r"""Exact ``order``-th k-derivative of W, from (2iy)^order under the integral."""
    order = int(order)
    if order < 0:
        raise DomainError("derivative order must be non-negative")
    if x <= 0:
        return 0.0
    if order == 0:
        return wigner_value(state, x, k, tol)
    kk = k + state.k_shift(x)
    sign = (-1) ** (order // 2) if order % 2 == 0 else (-1) ** ((order + 1) // 2)
    parity = "even" if order % 2 == 0 else "odd"
    val = wigner_kernel_integral(lambda y: (2.0 * y) ** order * state.smooth_kernel(x, y),
                                 x, kk, tol, parity=parity, endpoint_power=state.endpoint_power)
    return sign * val / math.pi


def wigner_x_derivative(state, x, k, tol=DEFAULT_TOL):
    """Exact x-derivative of W for states with a ``smooth_kernel_dx`` (alpha >= -1/2).

    Differentiates under the integral, including the moving-limit terms
    that survive when the kernel does not vanish at y = +-x. A momentum tilt
    s(x) adds ``s'(x) dW/dk`` by the chain rule.
    """
    p = state.endpoint_power
    if p < 0:
        raise DomainError("x-derivative needs alpha >= -1/2")
    if x <= 0:
        return 0.0
    kk = k + state.k_shift(x)

    def body(y):
        h = state.smooth_kernel(x, y)
        dh = state.smooth_kernel_dx(x, y)
        return 2.0 * p * x * h + (x - y) * (x + y) * dh

    if p == 0:
        val = wigner_kernel_integral(lambda y: state.smooth_kernel_dx(x, y), x, kk, tol)
        edge = 2.0 * math.cos(2.0 * kk * x) * float(state.smooth_kernel(x, np.array([x]))[0])
        out = (val + edge) / math.pi
    else:
        out = wigner_kernel_integral(body, x, kk, tol, endpoint_power=p - 1.0) / math.pi
    slope = state.k_shift_dx(x)
    if slope != 0.0:
        out += slope * wigner_k_derivative(state, x, k, 1, tol)
    return out


def marginal_position(state, x, tol=DEFAULT_TOL, k_cut=None):
    """Position marginal int W(x, k) dk.

    With ``k_cut=None`` the momentum integral runs over the whole line and
    collapses to the kernel diagonal. A finite ``k_cut`` integrates over
    ``[-k_cut, k_cut]`` instead (Dirichlet kernel sin(2 K y)/y), which is what
    a truncated phase-space box sees.
    """
    if x <= 0:
        return 0.0
    if k_cut is None:
        return state.density(x)
    if not k_cut >= 0:
        raise DomainError(f"k_cut must be non-negative, got {k_cut}")
    s = state.k_shift(x)
    p = state.endpoint_power
    hi, lo = k_cut + s, k_cut - s

    def g(y):
        # int_{-K}^{K} cos(2 (k + s) y) dk, written with sinc so y = 0 is harmless
        dirichlet = hi * np.sinc(2.0 * hi * y / math.pi) + lo * np.sinc(2.0 * lo * y / math.pi)
        return state.smooth_kernel(x, y) * dirichlet

    val = wigner_kernel_integral(g, x, 0.0, tol, endpoint_power=p,
                                 split_frequency=k_cut + abs(s))
    return val / math.pi


def normalization(state, tol=DEFAULT_TOL):
    """Phase-space integral of W over x > 0 and the whole momentum line."""
    return integrate_semi_infinite(_scalar_map(state.density), 0.0, tol).value


def overlap(state_a, state_b, tol=DEFAULT_TOL):
    """2 pi int int W_a W_b dx dk over the half-plane.

    Momentum integration is done exactly (Parseval in y), leaving
    ``2 int_0^inf dx int_{-x}^{x} f_a f_b dy``. Tilted states are fine as long
    as both carry the same tilt.
    """
    if state_a.params.alpha != state_b.params.alpha:
        raise DomainError("overlap is defined here for a common alpha")
    probe = 1.2345
    if state_a.k_shift(probe) != state_b.k_shift(probe):
        raise DomainError("overlap needs equal momentum tilts")
    p = state_a.endpoint_power

    def inner(x):
        if x <= 0:
            return 0.0
        return wigner_kernel_integral(
            lambda y: state_a.smooth_kernel(x, y) * state_b.smooth_kernel(x, y),
            x, 0.0, 0.1 * tol, endpoint_power=2.0 * p)

    return 2.0 * integrate_semi_infinite(_scalar_map(inner), 0.0, tol).value


def purity_grid(state, tol=DEFAULT_TOL):
    """Quantum purity 2 pi int int W^2 dx dk."""
    return overlap(state, state, tol)


def wigner_eigenstate(p, n, x, k, tol=DEFAULT_TOL):
    """Wigner function of the stationary state ``phi_n`` at ``(x, k)``.

    Returns 0 for ``x <= 0``, where the half-line kernel is empty.
    """
    return wigner_value(EigenState(p, n), x, k, tol)


def wigner_quasi_gaussian(p, qp, x, k, tol=DEFAULT_TOL, method="quadrature",
                          ctl=None, fallback=True):
    """Wigner function of the quasi-Gaussian superposition.

    ``method="quadrature"`` integrates the kernel directly. ``method="series"``
    sums the alternating expansion in powers of ``(k x + tilde_chi x^2)^2``
    with confluent hypergeometric coefficients. The alternating sum loses
    about ``max_term * eps`` to cancellation; when that exceeds ``tol`` the
    series path hands over to quadrature (or raises if ``fallback`` is False).
    """
    state = QuasiGaussianState(p, qp)
    if method == "quadrature":
        return wigner_value(state, x, k, tol)
    if method != "series":
        raise DomainError(f"unknown method {method!r}")
    if x <= 0:
        return 0.0
    try:
        return _quasi_gaussian_series(p, qp, x, k, tol, ctl or SeriesControl())
    except SeriesTruncationError:
        if not fallback:
            raise
        return wigner_value(state, x, k, tol)


def _quasi_gaussian_series(p, qp, x, k, tol, ctl):
    a = p.alpha
    c = chi(qp)
    cx2 = c * x * x
    q = k * x + tilde_chi(qp) * x * x
    log_pref = (math.log(2.0 / math.sqrt(math.pi)) + ln_gamma(1.5 + a) - ln_gamma(1.0 + a)
                + (1.0 + a) * math.log(cx2) - cx2)
    terms = []
    max_mag = 0.0
    small_run = 0
    log_q2 = 2.0 * math.log(abs(q)) if q != 0 else -math.inf
    for j in range(500):
        f11 = hyp1f1(0.5 + j, 2.0 + a + j, -cx2, ctl)
        if q == 0 and j > 0:
            break
        log_mag = (j * log_q2 if j else 0.0) - ln_gamma(j + 1.0) - ln_gamma(2.0 + j + a) + log_pref
        t = (-1) ** j * math.exp(log_mag) * f11
        terms.append(t)
        max_mag = max(max_mag, abs(t))
        # only test for convergence once the terms are past their peak
        if j > q * q and abs(t) < tol * 1e-3 * max(max_mag, 1e-300):
            small_run += 1
            if small_run >= 3:
                break
        else:
            small_run = 0
    else:
        raise SeriesTruncationError("quasi-Gaussian series did not converge in 500 terms",
                                    partial_sum=math.fsum(terms))
    if 64 * np.finfo(float).eps * max_mag > tol:
        raise SeriesTruncationError(
            f"cancellation in the alternating series (max term {max_mag:.3e}) exceeds tol",
            partial_sum=math.fsum(terms))
    return math.fsum(terms)


@dataclass(frozen=True)
class PhaseGrid:
    """Uniform (x, k) sampling of a real phase-space function on x > 0."""

    x_min: float
    x_max: float
    nx: int
    k_min: float
    k_max: float
    nk: int
    values: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.x_min > 0:
            raise DomainError("PhaseGrid needs x_min > 0 (half-line domain)")
        if not (self.x_max > self.x_min and self.k_max > self.k_min):
            raise DomainError("PhaseGrid bounds must be increasing")
        if self.nx < 2 or self.nk < 2:
            raise DomainError("PhaseGrid needs at least 2 points per axis")
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.nx, self.nk):
            raise DomainError(f"values must have shape {(self.nx, self.nk)}, got {vals.shape}")
        if not np.all(np.isfinite(vals)):
            raise DomainError("PhaseGrid values must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def x(self):
        return np.linspace(self.x_min, self.x_max, self.nx)

    @property
    def k(self):
        return np.linspace(self.k_min, self.k_max, self.nk)

    @property
    def cell_area(self):
        return (self.x_max - self.x_min) / (self.nx - 1) * (self.k_max - self.k_min) / (self.nk - 1)


def fill_grid(fn, x_min, x_max, nx, k_min, k_max, nk, metadata=None):
    """Sample ``fn(x, k)`` on a uniform grid and wrap it in a :class:`PhaseGrid`."""
    xs = np.linspace(x_min, x_max, nx)
    ks = np.linspace(k_min, k_max, nk)
    vals = np.array([[fn(float(x), float(k)) for k in ks] for x in xs])
    return PhaseGrid(x_min, x_max, nx, k_min, k_max, nk, vals, dict(metadata or {}))
