"""
Wigner currents and the Moyal series
====================================

The momentum current J_k is classical force times W plus an infinite series
of quantum corrections with odd derivatives of the potential. For the
inverse-square potential the corrections sum in closed form; the truncated
series approaches that sum only slowly.
"""

from isotonic_wigner import EigenState, OscillatorParams
from isotonic_wigner.flow import (Region, continuity_residual, current_k, moyal_term,
                                  pseudo_velocity_divergence)

p = OscillatorParams(1.5)
ground = EigenState(p, 0)
x, k = 1.2, 0.5

# Individual Moyal terms: factorial suppression competes with x^{-(2 eta + 3)}.
for eta in range(8):
    print(f"eta={eta}: term {moyal_term(ground, p, x, k, eta):+.3e}")

exact = current_k(ground, p, x, k, eta_max=None)
print("\nresummed J_k:", exact)
for eta in (0, 2, 4, 6, 10, 20):
    val = current_k(ground, p, x, k, eta)
    print(f"eta_max={eta:<3d} J_k = {val:+.6f}   error {abs(val - exact):.2e}")

# A stationary state must be divergence free. With the resummed current it
# is, to rounding; truncations leave a residual.
region = Region(2.0, 4.0, -2.0, 2.0, nx=5, nk=5)
for eta in (0, 3, 6, None):
    label = "resummed" if eta is None else f"eta_max={eta}"
    print(f"{label:>10s}: max |div J| = {continuity_residual(ground, region, eta):.2e}")

# With a quadratic potential there are no corrections at all.
harmonic = OscillatorParams(-0.5)
print("harmonic eta=1 term:", moyal_term(EigenState(harmonic, 1), harmonic, 1.0, 0.3, 1))

# Divergence of the pseudo-velocity J / W: odd in k for a stationary state.
for kk in (-0.8, 0.0, 0.8):
    print(f"div w at (1.2, {kk:+.1f}):", pseudo_velocity_divergence(ground, p, 1.2, kk, None))
