"""
Thermodynamics of the one-time measurement scheme.
"""

from thermo.report import (
    kl_divergence,
    kl_divergence_from_energies,
    kl_from_ratio,
    pointer_state_residual,
    thermo_report,
)
from thermo.states import (
    ConditionalSpectrum,
    conditional_hamiltonian,
    conditional_spectrum,
    conditional_thermal_state,
    gibbs_state,
    initial_basis,
    relative_entropy,
    thermal_relative_entropy,
    von_neumann_entropy,
)
from thermo.work import conditional_works, ttm_distribution, work_distribution

__all__ = [
    "ConditionalSpectrum",
    "conditional_hamiltonian",
    "conditional_spectrum",
    "conditional_thermal_state",
    "conditional_works",
    "gibbs_state",
    "initial_basis",
    "kl_divergence",
    "kl_divergence_from_energies",
    "kl_from_ratio",
    "pointer_state_residual",
    "relative_entropy",
    "thermal_relative_entropy",
    "thermo_report",
    "ttm_distribution",
    "von_neumann_entropy",
    "work_distribution",
]
