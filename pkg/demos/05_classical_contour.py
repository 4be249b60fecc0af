"""
Classical orbits, enclosed probability and purity flux
======================================================

A classical orbit of the singular oscillator closes after half the harmonic
period. Integrating W inside it gives the probability carried by the
classical region; integrating the quantum part of the current across it
gives the purity flux.
"""

import math

import numpy as np
from scipy.integrate import solve_ivp

from isotonic_wigner import EigenState, OscillatorParams
from isotonic_wigner.flow import classical_orbit, contour_probability, purity_flux_report
from isotonic_wigner.wigner_states import QuasiGaussianParams, QuasiGaussianState

p = OscillatorParams(1.5)
orbit = classical_orbit(p, 2.0)
print("turning points:", orbit.turning_points, " period:", orbit.period)

# Closed form against a numerical integration of Hamilton's equations.
sol = solve_ivp(lambda t, z: [z[1], -(z[0] - p.g / z[0] ** 3)], (0, math.pi),
                [orbit.x(0.0), orbit.k(0.0)], method="DOP853", rtol=1e-13, atol=1e-13,
                t_eval=np.linspace(0, math.pi, 9))
print("max |closed form - ODE|:", np.max(np.abs(sol.y[0] - orbit.x(sol.t))))

# Probability inside growing contours.
ground = EigenState(p, 0)
for E in (1.5, 2.0, 3.0, 6.0, 20.0):
    print(f"E={E:5.1f}: probability inside = {contour_probability(ground, classical_orbit(p, E)):.8f}")

# A stationary state has zero flux by symmetry; a moving packet does not.
packet = QuasiGaussianState(p, QuasiGaussianParams(0.8, 1.0))
for state, name in ((ground, "ground state"), (packet, "quasi-Gaussian")):
    for eta in (1, 3, 5):
        rep = purity_flux_report(state, orbit, eta_max=eta, n_tau=64)
        print(f"{name:15s} eta_max={eta}: flux over one orbit {rep.one_period:+.6e}, "
              f"over 2 pi {rep.two_pi:+.6e}")
