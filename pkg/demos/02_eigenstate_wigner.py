"""
Wigner functions of the stationary states
=========================================

The half-line eigenstates phi_n give Wigner functions that live on x > 0
only. This walk-through evaluates a few of them, checks the marginal and the
normalisation, and measures purity and mutual overlaps.
"""

import numpy as np

from isotonic_wigner import EigenState, OscillatorParams, normalization, purity_grid, wigner_value
from isotonic_wigner.eigensystem import eigenfunction, energy, schrodinger_residual
from isotonic_wigner.wigner_states import MixtureState, marginal_position, overlap

p = OscillatorParams(1.5)          # g = 2: repulsive inverse-square core
print(f"alpha = {p.alpha}, g = {p.g}, energies:", [energy(n) for n in range(4)])

# The eigenfunctions solve the Schrodinger equation to second order in h.
grid = np.arange(0.5, 4.0, 1e-3)
print("Schrodinger residual (n=2, h=1e-3):", schrodinger_residual(p, 2, grid))

# A coarse look at W_1 on a few points; x <= 0 is exactly zero.
s1 = EigenState(p, 1)
ks = np.linspace(-2, 2, 5)
print("\n x \\ k " + "".join(f"{k:>10.1f}" for k in ks))
for x in (-0.5, 0.5, 1.0, 1.5, 2.5):
    print(f"{x:6.2f} " + "".join(f"{wigner_value(s1, x, k):10.5f}" for k in ks))

# Integrating over k gives back |phi_1(x)|^2.
for x in (0.5, 1.2, 2.0):
    print(f"marginal at x={x}: {marginal_position(s1, x):.12f}   phi^2 = "
          f"{eigenfunction(p, 1, x) ** 2:.12f}")

# Normalisation and purity: every pure state has 2 pi int W^2 = 1.
for n in range(3):
    s = EigenState(p, n)
    print(f"n={n}: norm = {normalization(s):.12f}, purity = {purity_grid(s):.12f}")

# Overlaps of different levels vanish, so an equal mixture has purity 1/2.
print("2 pi int W_0 W_1 =", overlap(EigenState(p, 0), s1))
mix = MixtureState(((0.5, EigenState(p, 0)), (0.5, s1)))
print("purity of (W_0 + W_1)/2 =", purity_grid(mix))
