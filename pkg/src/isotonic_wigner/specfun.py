r"""Real special functions: log-gamma, associated Laguerre polynomials,
exponentially scaled modified Bessel functions and the hypergeometric
series :math:`{}_1F_1` and :math:`{}_2F_1`.

Everything here is pure and works elementwise on numpy arrays where that
makes sense. Series evaluators take a :class:`SeriesControl` and raise
:class:`~isotonic_wigner.errors.SeriesTruncationError` instead of silently
returning an unconverged partial sum.
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy.special import gammaln, psi, rgamma

from .errors import DomainError, SeriesTruncationError

# Power series below this argument, large-z asymptotic expansion above.
BESSEL_SWITCH = 15.0


@dataclass(frozen=True)
class SeriesControl:
    """Stopping rule for the hypergeometric series."""

    tol: float = 1e-12
    max_terms: int = 10000

    def __post_init__(self):
        if not self.tol > 0:
            raise DomainError(f"tol must be positive, got {self.tol}")
        if int(self.max_terms) < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms}")


DEFAULT_SERIES = SeriesControl()


def ln_gamma(x):
    """Natural log of the gamma function for positive arguments."""
    xa = np.asarray(x, dtype=float)
    if np.any(~(xa > 0)):
        raise DomainError("ln_gamma requires x > 0")
    out = gammaln(xa)
    return float(out) if out.ndim == 0 else out


def laguerre(n, alpha, x):
    r"""Associated Laguerre polynomial :math:`L_n^{\alpha}(x)`.

    Evaluated by the upward three-term recurrence in ``n``

    .. math::
        (m+1) L_{m+1} = (2m + 1 + \alpha - x) L_m - (m + \alpha) L_{m-1},

    which is stable for the non-negative arguments used in this package.
    """
    n = int(n)
    if n < 0:
        raise DomainError("laguerre order must be non-negative")
    if not alpha > -1:
        raise DomainError("laguerre requires alpha > -1")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + alpha - x
    for m in range(1, n):
        prev, cur = cur, ((2 * m + 1 + alpha - x) * cur - (m + alpha) * prev) / (m + 1)
    return cur if cur.ndim else float(cur)


def laguerre_derivative(n, alpha, x):
    """d/dx L_n^alpha(x) = -L_{n-1}^{alpha+1}(x)."""
    if n == 0:
        x = np.asarray(x, dtype=float)
        z = np.zeros_like(x)
        return z if z.ndim else 0.0
    return -laguerre(n - 1, alpha + 1, x)


def _bessel_series_scaled(alpha, z):
    # e^{-z} sum_m (z/2)^{2m+alpha} / (m! Gamma(m+alpha+1)), z > 0
    q = 0.25 * z * z
    log_first = alpha * np.log(0.5 * z) - gammaln(alpha + 1.0) - z
    term = np.ones_like(z)
    total = np.ones_like(z)
    m = 0
    while True:
        term = term * q / ((m + 1) * (m + 1 + alpha))
        total = total + term
        m += 1
        if np.all(term <= 1e-17 * total) and m > 2:
            break
        if m > 2000:  # converges by m ~ z
            break
    return np.exp(log_first) * total


def _bessel_asymptotic_scaled(alpha, z):
    # e^{-z} I_alpha(z) ~ (2 pi z)^{-1/2} sum_k (-1)^k a_k(alpha) / z^k
    mu = 4.0 * alpha * alpha
    total = np.ones_like(z)
    term = np.ones_like(z)
    prev_mag = np.full_like(z, np.inf)
    active = np.ones(z.shape, dtype=bool)
    for k in range(1, 200):
        factor = -(mu - (2 * k - 1) ** 2) / (k * 8.0 * z)
        new = term * factor
        mag = np.abs(new)
        # stop at the smallest term: past it the expansion diverges
        active &= mag < prev_mag
        active &= mag > 1e-17 * np.abs(total)
        if not active.any():
            break
        total = np.where(active, total + new, total)
        term = np.where(active, new, term)
        prev_mag = np.where(active, mag, prev_mag)
    return total / np.sqrt(2.0 * np.pi * z)


def _bessel_switch(alpha):
    # the large-z expansion needs z >> alpha^2; below that the positive power
    # series is used (no cancellation, at most a few hundred terms)
    return max(BESSEL_SWITCH, alpha * alpha)


def bessel_i_scaled(alpha, z):
    r"""Exponentially scaled modified Bessel function :math:`e^{-z} I_\alpha(z)`.

    Parameters
    ----------
    alpha : float
        Order, ``alpha > -1``. Negative orders are allowed because the
        thermal state at ``-1 < alpha < 0`` needs them.
    z : float or ndarray
        Non-negative argument.

    Returns
    -------
    float or ndarray
        Never overflows; at ``z = 0`` the limit is returned (``inf`` for
        ``alpha < 0``).
    """
    if not alpha > -1:
        raise DomainError("bessel_i_scaled requires alpha > -1")
    za = np.asarray(z, dtype=float)
    if np.any(za < 0) or np.any(np.isnan(za)):
        raise DomainError("bessel_i_scaled requires z >= 0")
    out = np.empty_like(za)
    zero = za == 0
    switch = _bessel_switch(alpha)
    small = (za > 0) & (za < switch)
    large = za >= switch
    if zero.any():
        out[zero] = 1.0 if alpha == 0 else (0.0 if alpha > 0 else np.inf)
    if small.any():
        out[small] = _bessel_series_scaled(alpha, za[small])
    if large.any():
        out[large] = _bessel_asymptotic_scaled(alpha, za[large])
    return float(out) if out.ndim == 0 else out


def bessel_i_reduced_scaled(alpha, z):
    r"""Entire part of the Bessel function, :math:`e^{-z} (z/2)^{-\alpha} I_\alpha(z)`.

    Finite and positive at ``z = 0`` (value ``1/Gamma(alpha+1)``) for every
    ``alpha > -1``, which lets callers move the ``z**alpha`` behaviour into an
    explicit power that quadrature can treat exactly.
    """
    if not alpha > -1:
        raise DomainError("bessel_i_reduced_scaled requires alpha > -1")
    za = np.asarray(z, dtype=float)
    if np.any(za < 0) or np.any(np.isnan(za)):
        raise DomainError("bessel_i_reduced_scaled requires z >= 0")
    out = np.empty_like(za)
    small = za < _bessel_switch(alpha)
    if small.any():
        zs = za[small]
        q = 0.25 * zs * zs
        term = np.full_like(zs, math.exp(-gammaln(alpha + 1.0)))
        total = term.copy()
        for m in range(2000):
            term = term * q / ((m + 1) * (m + 1 + alpha))
            total = total + term
            if np.all(term <= 1e-17 * total):
                break
        out[small] = np.exp(-zs) * total
    large = ~small
    if large.any():
        zl = za[large]
        out[large] = _bessel_asymptotic_scaled(alpha, zl) * (0.5 * zl) ** (-alpha)
    return float(out) if out.ndim == 0 else out


def bessel_i_scaled_derivative(alpha, z):
    r"""Scaled derivative :math:`e^{-z} I'_\alpha(z)` for ``z > 0``.

    Uses :math:`I'_\alpha = I_{\alpha+1} + (\alpha/z) I_\alpha`.
    """
    z = np.asarray(z, dtype=float)
    return bessel_i_scaled(alpha + 1, z) + alpha / z * bessel_i_scaled(alpha, z)


def _check_series_param(value, name):
    if value <= 0 and float(value).is_integer():
        raise DomainError(f"{name} must not be a non-positive integer, got {value}")


def _sum_series(ratio, ctl, what):
    """Sum 1 + t_1 + t_2 + ... with t_{m+1} = t_m * ratio(m)."""
    term = 1.0
    running = 1.0
    parts = [1.0]
    small_run = 0
    for m in range(ctl.max_terms):
        r = ratio(m)
        term *= r
        if term == 0.0:
            break
        parts.append(term)
        running += term
        # geometric bound on the remaining tail once terms shrink
        tail = abs(term) * abs(r) / (1.0 - abs(r)) if abs(r) < 1 else abs(term)
        if tail <= ctl.tol * abs(running):
            small_run += 1
            if small_run >= 3:
                break
        else:
            small_run = 0
    else:
        raise SeriesTruncationError(
            f"{what} did not converge in {ctl.max_terms} terms",
            partial_sum=math.fsum(parts),
            last_term=term,
        )
    return math.fsum(parts)


def _hyp1f1_scalar(a, b, z, ctl):
    if z == 0.0:
        return 1.0
    if z < 0 and b - a >= 0:
        # Kummer transformation keeps every term positive
        return math.exp(z) * _hyp1f1_scalar(b - a, b, -z, ctl)
    return _sum_series(lambda m: (a + m) * z / ((b + m) * (m + 1)), ctl, "1F1")


def hyp1f1(a, b, z, ctl=DEFAULT_SERIES):
    """Confluent hypergeometric function 1F1(a; b; z) for real arguments."""
    _check_series_param(b, "b")
    za = np.asarray(z, dtype=float)
    if za.ndim == 0:
        return _hyp1f1_scalar(float(a), float(b), float(za), ctl)
    return np.array([_hyp1f1_scalar(float(a), float(b), float(v), ctl) for v in za.ravel()]).reshape(za.shape)


# Above this argument the direct 2F1 series is replaced by a 1 - z expansion.
HYP2F1_SWITCH = 0.9


def _is_nonpositive_int(v):
    return v <= 0 and float(v).is_integer()


def _log_series(a, b, m, w, ctl):
    """sum_k (a)_k (b)_k / (k! (k+m)!) w^k [ln w - psi(k+1) - psi(k+m+1) + psi(a+k) + psi(b+k)]."""
    lw = math.log(w)
    coef = 1.0 / math.factorial(m)
    parts = []
    for k in range(ctl.max_terms):
        term = coef * (lw - psi(k + 1.0) - psi(k + m + 1.0) + psi(a + k) + psi(b + k))
        parts.append(term)
        if k > 2 and abs(term) <= ctl.tol * 1e-2 * abs(math.fsum(parts)):
            return math.fsum(parts)
        coef *= (a + k) * (b + k) * w / ((k + 1) * (k + m + 1))
    raise SeriesTruncationError("2F1 log series did not converge",
                                partial_sum=math.fsum(parts), last_term=parts[-1])


def _hyp2f1_degenerate(a, b, m, z, ctl):
    # F(a, b; a + b - m; z) with integer m >= 0 (log case of the 1 - z expansion)
    c = a + b - m
    w = 1.0 - z
    head = 0.0
    if m > 0:
        terms, t = [], 1.0
        for k in range(m):
            terms.append(t * w ** k)
            if k + 1 < m:
                t *= (a - m + k) * (b - m + k) / ((k + 1) * (1 - m + k))
        head = (w ** (-m) * math.gamma(m) * rgamma(a) * rgamma(b) * math.fsum(terms))
    tail = (-1) ** m * rgamma(a - m) * rgamma(b - m) * _log_series(a, b, m, w, ctl)
    return math.gamma(c) * (head - tail)


def _hyp2f1_near_one(a, b, c, z, ctl):
    d = c - a - b
    w = 1.0 - z
    if abs(d - round(d)) < 1e-12:
        # integer up to rounding of c - a - b
        d = round(d)
        if d <= 0:
            return _hyp2f1_degenerate(a, b, int(-d), z, ctl)
        # Euler's transformation turns c - a - b = +m into the -m case
        return w ** d * _hyp2f1_degenerate(c - a, c - b, int(d), z, ctl)
    s1 = _sum_series(lambda m: (a + m) * (b + m) * w / ((a + b - c + 1 + m) * (m + 1)), ctl, "2F1")
    s2 = _sum_series(lambda m: (c - a + m) * (c - b + m) * w / ((d + 1 + m) * (m + 1)), ctl, "2F1")
    g1 = math.gamma(c) * math.gamma(d) * rgamma(c - a) * rgamma(c - b)
    g2 = math.gamma(c) * math.gamma(-d) * rgamma(a) * rgamma(b)
    return g1 * s1 + w ** d * g2 * s2


def hyp2f1(a, b, c, z, ctl=DEFAULT_SERIES):
    """Gauss hypergeometric function 2F1(a, b; c; z) for 0 <= z < 1.

    The power series is summed directly for ``z <= 0.9`` (or whenever it
    terminates). Closer to 1 the argument is mapped to ``1 - z`` through the
    standard connection formulas, including the logarithmic case of an
    integer ``c - a - b``, so convergence does not stall as ``z -> 1``.
    When ``c - a - b`` lies within about 1e-6 of an integer without being
    one, the two connection terms cancel and a few digits are lost.
    """
    _check_series_param(c, "c")
    z = float(z)
    if not 0.0 <= z < 1.0:
        raise DomainError(f"hyp2f1 needs 0 <= z < 1, got {z}")
    if z == 0.0:
        return 1.0
    if z > HYP2F1_SWITCH and not (_is_nonpositive_int(a) or _is_nonpositive_int(b)):
        return _hyp2f1_near_one(a, b, c, z, ctl)
    return _sum_series(lambda m: (a + m) * (b + m) * z / ((c + m) * (m + 1)), ctl, "2F1")


def laguerre_product_expansion(n, alpha, x, y):
    r"""Right-hand side of the product formula

    .. math::
        L_n^\alpha(x) L_n^\alpha(y) = \frac{\Gamma(n+\alpha+1)}{n!}
        \sum_{j=0}^{n} \frac{L_{n-j}^{\alpha+2j}(x+y)}{\Gamma(\alpha+j+1)} \frac{(xy)^j}{j!}.

    Returns ``(value, scale)`` where ``scale`` is the sum of the absolute
    terms, the natural yardstick for rounding error in the identity.
    """
    terms = []
    for j in range(int(n) + 1):
        log_c = (ln_gamma(n + alpha + 1.0) - ln_gamma(n + 1.0) - ln_gamma(alpha + j + 1.0)
                 - ln_gamma(j + 1.0))
        terms.append(math.exp(log_c) * laguerre(n - j, alpha + 2 * j, x + y) * (x * y) ** j)
    return math.fsum(terms), math.fsum(abs(t) for t in terms)


def hille_hardy_series(alpha, lam, x, y, tol=1e-14, max_terms=100000, return_scale=False):
    """sum_n lam^n n!/Gamma(n+alpha+1) L_n(x) L_n(y), cut by a geometric tail bound.

    The Laguerre recurrence runs alongside the sum, so the cost is linear in
    the number of terms. Stops once ``lam^N / (1 - lam) < tol`` times the
    running magnitude, for the normalised terms ``n!/Gamma L_n L_n e^{-(x+y)/2}``
    are bounded by ``1/Gamma(alpha+1)``-type constants for x, y >= 0.
    With ``return_scale`` the sum of absolute terms is returned as well.
    """
    if not 0 <= lam < 1:
        raise DomainError(f"lam must lie in [0, 1), got {lam}")
    lp_prev, lq_prev = 1.0, 1.0
    lp, lq = 1.0 + alpha - x, 1.0 + alpha - y
    norm = math.exp(-ln_gamma(alpha + 1.0))
    parts = [norm]
    weight = 1.0
    for n in range(1, max_terms):
        weight *= lam
        norm *= n / (n + alpha)
        parts.append(weight * norm * lp * lq)
        lp_prev, lp = lp, ((2 * n + 1 + alpha - x) * lp - (n + alpha) * lp_prev) / (n + 1)
        lq_prev, lq = lq, ((2 * n + 1 + alpha - y) * lq - (n + alpha) * lq_prev) / (n + 1)
        if n > 5 and weight / (1.0 - lam) * math.exp(0.5 * (x + y)) < tol * abs(math.fsum(parts)):
            total = math.fsum(parts)
            return (total, math.fsum(abs(t) for t in parts)) if return_scale else total
    raise SeriesTruncationError("Hille-Hardy series did not converge",
                                partial_sum=math.fsum(parts), last_term=parts[-1])


def hille_hardy_closed(alpha, lam, x, y):
    r"""Closed form of :func:`hille_hardy_series`,

    .. math::
        \frac{(xy\lambda)^{-\alpha/2}}{1-\lambda}
        \exp\!\Bigl(-\frac{\lambda(x+y)}{1-\lambda}\Bigr)
        I_\alpha\!\Bigl(\frac{2\sqrt{xy\lambda}}{1-\lambda}\Bigr),

    assembled from the reduced scaled Bessel function so the large
    exponentials cancel before evaluation.
    """
    if not 0 <= lam < 1:
        raise DomainError(f"lam must lie in [0, 1), got {lam}")
    z = 2.0 * math.sqrt(x * y * lam) / (1.0 - lam)
    # (xy lam)^{-a/2} I_a(z) = (1-lam)^{-a} (z/2)^{-a} I_a(z) = (1-lam)^{-a} e^{z} R(z)
    log_env = z - lam * (x + y) / (1.0 - lam) - (alpha + 1.0) * math.log1p(-lam)
    return math.exp(log_env) * bessel_i_reduced_scaled(alpha, z)
