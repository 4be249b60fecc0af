"""Phase-space (Wigner) description of the one-dimensional singular oscillator.

Modules
-------
specfun
    Laguerre polynomials, scaled modified Bessel functions, 1F1 and 2F1.
quadrature
    Adaptive Gauss-Kronrod integration and the oscillatory Wigner kernel.
eigensystem
    Potential, spectrum and eigenfunctions.
wigner_states
    Eigenstate, quasi-Gaussian and mixture Wigner functions, purity.
flow
    Wigner currents with Moyal corrections, classical orbits, fluxes.
thermal_ensemble
    Canonical-ensemble Wigner function, partition function and purity.
"""

from .eigensystem import OscillatorParams, energy, eigenfunction
from .errors import DomainError, IntegrationError, OrbitError, SeriesTruncationError
from .thermal_ensemble import ThermalParams, ThermalState, thermal_purity, thermal_wigner
from .wigner_states import (EigenState, MixtureState, QuasiGaussianParams, QuasiGaussianState,
                            normalization, purity_grid, wigner_value)

__version__ = "0.1.0"

__all__ = [
    "DomainError", "EigenState", "IntegrationError", "MixtureState", "OrbitError",
    "OscillatorParams", "QuasiGaussianParams", "QuasiGaussianState", "SeriesTruncationError",
    "ThermalParams", "ThermalState", "eigenfunction", "energy", "normalization",
    "purity_grid", "thermal_purity", "thermal_wigner", "wigner_value",
]
