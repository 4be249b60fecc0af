"""
Special functions behind the phase-space formulas
=================================================

Laguerre polynomials, exponentially scaled Bessel functions and the two
hypergeometric series, together with the two Laguerre identities the
thermal Wigner function is built from.
"""

import math

import numpy as np
from scipy import special

from isotonic_wigner.errors import SeriesTruncationError
from isotonic_wigner.specfun import (bessel_i_scaled, hille_hardy_closed, hille_hardy_series,
                                     hyp1f1, hyp2f1, laguerre, laguerre_product_expansion)

# Laguerre polynomials come from the three-term recurrence in n.
alpha, x = 0.75, 3.2
print("n   L_n^alpha(x)          scipy")
for n in (0, 1, 5, 20):
    print(f"{n:<3d} {laguerre(n, alpha, x):+.15e} {special.eval_genlaguerre(n, alpha, x):+.15e}")

# e^{-z} I_alpha(z) never overflows: the scaling is built into both branches.
for z in (0.5, 15.0, 700.0, 1e5):
    print(f"e^-z I_1.5({z:g}) = {bessel_i_scaled(1.5, z):.15e}")

# 1F1 and 2F1 are plain series (2F1 switches to the 1 - z expansion near 1).
print("1F1(1;1;2) - e^2          =", hyp1f1(1.0, 1.0, 2.0) - math.exp(2.0))
print("2F1(1,1;2;1/2) + 2 ln(1/2) =", hyp2f1(1.0, 1.0, 2.0, 0.5) + 2 * math.log(0.5))
print("2F1(1,2;3;1-1e-9)          =", hyp2f1(1.0, 2.0, 3.0, 1 - 1e-9),
      "scipy:", special.hyp2f1(1.0, 2.0, 3.0, 1 - 1e-9))

# Product of two Laguerre polynomials as a finite sum in x + y.
value, scale = laguerre_product_expansion(4, alpha, 1.3, 2.7)
print("product identity error:", abs(value - laguerre(4, alpha, 1.3) * laguerre(4, alpha, 2.7)))

# Hille-Hardy: the weighted sum over n collapses to one Bessel function.
# Truncating at N leaves a tail of order lam^N.
lam, X, Y = 0.4, 1.1, 2.3
closed = hille_hardy_closed(alpha, lam, X, Y)
for n_terms in (5, 10, 20, 40):
    try:
        partial = hille_hardy_series(alpha, lam, X, Y, tol=0.0, max_terms=n_terms)
    except SeriesTruncationError as exc:  # tol=0 never converges: keep the partial sum
        partial = exc.partial_sum
    print(f"N={n_terms:<3d} |sum - closed| = {abs(partial - closed):.2e}   lam^N = {lam ** n_terms:.2e}")
