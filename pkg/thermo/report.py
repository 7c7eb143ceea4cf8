"""
Thermodynamic report: free energies, relative entropies and the
fluctuation-theorem identities built on them.
"""

import numpy as np
from scipy.special import log_softmax

from linalg.core import dagger, herm_eig
from models.distribution import ThermoReport, WorkDistribution
from models.system import Direction, Endpoint, SystemSpec
from thermo.states import (
    check_beta,
    conditional_spectrum,
    conditional_thermal_state,
    log_partition,
    partition_from_log,
    thermal_relative_entropy,
    von_neumann_entropy,
)
from thermo.work import work_distribution
from utils.errors import DegenerateDistributionError
from utils.logger import get_logger

logger = get_logger(__name__)


def kl_divergence(forward: WorkDistribution, backward: WorkDistribution) -> float:
    """
    D[P_f || P_b] summed over matched trajectories i.

    Atoms are paired by index, not merged by work value.
    """
    p = forward.probabilities
    q = backward.probabilities
    if np.any((q == 0.0) & (p > 0.0)):
        raise DegenerateDistributionError("Backward probability vanished where forward did not")
    mask = p > 0.0
    return float(np.sum(p[mask] * (np.log(p[mask]) - np.log(q[mask]))))


def kl_divergence_from_energies(
    initial: np.ndarray, final: np.ndarray, beta: float
) -> float:
    """
    D[P_f || P_b] from the conditional energies h_i, g_i directly.

    Log weights are normalised with log_softmax, so atoms whose linear
    probabilities underflow at low temperature still count correctly.
    """
    log_p = log_softmax(-beta * np.asarray(initial, dtype=np.float64))
    log_q = log_softmax(-beta * np.asarray(final, dtype=np.float64))
    p = np.exp(log_p)
    mask = p > 0.0
    return float(np.sum(p[mask] * (log_p[mask] - log_q[mask])))


def kl_from_ratio(avg_work: float, beta: float, ratio: complex | float) -> float:
    """
    Irreversibility from measurable quantities: beta <W> + ln |C_f / C_b(-u + i beta)|.

    Equals the per-trajectory KL divergence when ratio is exact.
    """
    return float(beta * avg_work + np.log(abs(ratio)))


def pointer_state_residual(spec: SystemSpec) -> float:
    """max_i || G_tau U|psi_i> - g_i U|psi_i> ||; zero for a QND second measurement."""
    cs = conditional_spectrum(spec, Endpoint.FINAL)
    g = cs.operator()
    residual = g @ cs.states - cs.states * cs.values
    return float(np.max(np.linalg.norm(residual, axis=0)))


def _free_energy_difference(spec: SystemSpec, log_z0: float, log_z_tau: float) -> float:
    if spec.beta == 0.0:
        # infinite-temperature limit of -ln(Z_tau / Z0) / beta
        return float(np.real(np.trace(spec.h_tau) - np.trace(spec.h0)) / spec.dim)
    return -(log_z_tau - log_z0) / spec.beta


def thermo_report(spec: SystemSpec) -> ThermoReport:
    """
    Evaluate every thermodynamic quantity of the instance.

    Partition functions are carried as logarithms; the linear z fields are
    convenience copies that saturate at inf or 0 far from unit temperature.

    Args:
        spec: Problem instance

    Returns:
        ThermoReport with partition functions, entropies and identities
    """
    check_beta(spec.beta)
    beta = spec.beta

    log_z0 = log_partition(herm_eig(spec.h0).eigenvalues, beta)
    log_z_tau = log_partition(herm_eig(spec.h_tau).eigenvalues, beta)
    g0 = conditional_spectrum(spec, Endpoint.INITIAL)
    g_tau = conditional_spectrum(spec, Endpoint.FINAL)
    log_z_tilde_0 = log_partition(g0.values, beta)
    log_z_tilde_tau = log_partition(g_tau.values, beta)
    rho0_tilde, _ = conditional_thermal_state(spec, Endpoint.INITIAL)
    rho_tau_tilde, _ = conditional_thermal_state(spec, Endpoint.FINAL)
    delta_f = _free_energy_difference(spec, log_z0, log_z_tau)

    forward = work_distribution(spec, Direction.FORWARD)
    avg_work = forward.mean()

    evolved = spec.u_evol @ rho0_tilde @ dagger(spec.u_evol)
    rel_ent_tau = thermal_relative_entropy(rho_tau_tilde, spec.h_tau, beta, log_z_tau)
    rel_ent_0 = thermal_relative_entropy(rho0_tilde, spec.h0, beta, log_z0)

    crossing_work = delta_f
    if beta > 0.0:
        crossing_work += (rel_ent_tau - rel_ent_0) / beta

    report = ThermoReport(
        beta=beta,
        log_z0=log_z0,
        log_z_tau=log_z_tau,
        log_z_tilde_0=log_z_tilde_0,
        log_z_tilde_tau=log_z_tilde_tau,
        z0=partition_from_log(log_z0),
        z_tau=partition_from_log(log_z_tau),
        z_tilde_0=partition_from_log(log_z_tilde_0),
        z_tilde_tau=partition_from_log(log_z_tilde_tau),
        z_ratio=partition_from_log(log_z_tilde_tau - log_z_tilde_0),
        delta_f=delta_f,
        rel_ent_tau=rel_ent_tau,
        rel_ent_0=rel_ent_0,
        entropy_initial=von_neumann_entropy(rho0_tilde),
        avg_work=avg_work,
        excess_work=avg_work - delta_f,
        kl_fb=kl_divergence_from_energies(g0.values, g_tau.values, beta),
        rel_ent_evolved=thermal_relative_entropy(evolved, spec.h_tau, beta, log_z_tau),
        distinguishability=thermal_relative_entropy(evolved, g_tau.operator(), beta, log_z_tilde_tau),
        crossing_work=crossing_work,
        pointer_residual=pointer_state_residual(spec),
    )
    logger.debug("Thermo report: ln ratio=%.9g kl=%.9g", log_z_tilde_tau - log_z_tilde_0, report.kl_fb)
    return report
