"""
Thermal states: partition function, energy and purity
=====================================================

The canonical ensemble of the singular oscillator has a Wigner function in
closed form (a single Bessel-function integral). Its partition function,
mean energy and purity turn out not to depend on alpha at all.
"""

import math

from isotonic_wigner import OscillatorParams, ThermalParams, thermal_purity, thermal_wigner
from isotonic_wigner.thermal_ensemble import (hamiltonian_symbol, partition_function,
                                              phase_space_average, phase_space_normalization)

alphas = (-0.5, 0.5, 0.75, 1.5)

# Series over levels and the closed Bessel form give the same W.
p, t = OscillatorParams(1.5), ThermalParams(1.0)
print("W(1.2, 0.6): series", thermal_wigner(p, t, 1.2, 0.6, method="series"),
      " bessel", thermal_wigner(p, t, 1.2, 0.6, method="bessel"))

# Z from the phase-space volume, for several alpha.
print("\nbeta   Z=1/(2 sinh)   " + "  ".join(f"alpha={a:<5}" for a in alphas))
for beta in (0.25, 1.0, 2.0):
    t = ThermalParams(beta)
    row = "  ".join(f"{phase_space_normalization(OscillatorParams(a), t):.9f}" for a in alphas)
    print(f"{beta:4.2f}   {partition_function(t):.9f}    {row}")

# Mean energy from the Hamiltonian symbol equals coth(beta).
for beta in (0.5, 2.0):
    t = ThermalParams(beta)
    e = [phase_space_average(OscillatorParams(a), t, hamiltonian_symbol(OscillatorParams(a)))
         for a in (-0.5, 1.5)]
    print(f"beta={beta}: <H> = {e[0]:.12f}, {e[1]:.12f}; coth = {1 / math.tanh(beta):.12f}")

# Purity interpolates from 0 (hot) to 1 (cold) as tanh(beta), for every alpha.
print("\nbeta    tanh      " + "  ".join(f"alpha={a:<5}" for a in alphas))
for beta in (0.01, 0.1, 0.5, 1.0, 3.0, 10.0):
    t = ThermalParams(beta)
    row = "  ".join(f"{thermal_purity(OscillatorParams(a), t):.9f}" for a in alphas)
    print(f"{beta:5.2f}  {math.tanh(beta):.7f}  {row}")

# The 2F1 form (half-integer alpha) and the full (x, y) integral agree.
p, t = OscillatorParams(0.5), ThermalParams(0.7)
for method in ("reduced", "hypergeometric", "grid"):
    print(f"{method:15s} {thermal_purity(p, t, method):.12f}")
