"""
Thermal and conditional thermal states, conditional Hamiltonians, entropies.
"""

from typing import NamedTuple

import numpy as np
import scipy.stats
from numpy.typing import NDArray
from scipy.special import logsumexp

from linalg.core import LOG_FLOAT_MAX, ComplexMatrix, dagger, herm_eig, validate_matrix
from models.system import Endpoint, SystemSpec
from utils.errors import NumericalOverflowError, SupportMismatchError

# eigenvalues below this are outside the support of a density matrix
SUPPORT_CUTOFF = 1e-14
SUPPORT_LEAK_TOL = 1e-10


class ConditionalSpectrum(NamedTuple):
    """Eigen-pairs of a conditional Hamiltonian: G = sum_i g_i |phi_i><phi_i|."""

    values: NDArray[np.float64]
    states: ComplexMatrix

    def operator(self) -> ComplexMatrix:
        return (self.states * self.values) @ dagger(self.states)

    def exponential(self, c: complex, shift: float = 0.0) -> ComplexMatrix:
        """
        exp(c G - shift) built from the known eigen-pairs.

        Raises NumericalOverflowError when an entry would exceed double range;
        pass a shift to rescale instead.
        """
        exponents = c * self.values - shift
        peak = float(np.max(np.real(exponents)))
        if peak > LOG_FLOAT_MAX:
            raise NumericalOverflowError(f"exp(c G) overflows: exponent {peak:.6g}")
        return (self.states * np.exp(exponents)) @ dagger(self.states)


def check_beta(beta: float) -> None:
    if beta < 0 or not np.isfinite(beta):
        raise ValueError(f"beta must be finite and non-negative, got {beta}")


def _boltzmann(values: NDArray[np.float64], beta: float) -> tuple[NDArray[np.float64], float]:
    """Normalized Boltzmann weights and log partition function."""
    log_z = float(logsumexp(-beta * values))
    return np.exp(-beta * values - log_z), log_z


def partition_from_log(log_z: float) -> float:
    """Z = exp(ln Z), saturating at inf instead of overflowing."""
    if log_z > LOG_FLOAT_MAX:
        return float("inf")
    return float(np.exp(log_z))


def initial_basis(spec: SystemSpec) -> ComplexMatrix:
    """Columns |psi_i>: the supplied basis or the canonical eigenbasis of H0."""
    if spec.initial_basis is not None:
        return np.asarray(spec.initial_basis)
    return herm_eig(spec.h0).eigenvectors


def diagonal_expectations(h: ComplexMatrix, states: ComplexMatrix) -> NDArray[np.float64]:
    """<phi_i| h |phi_i> for every column phi_i."""
    return np.real(np.einsum("ji,jk,ki->i", states.conj(), h, states))


def conditional_spectrum(spec: SystemSpec, endpoint: Endpoint) -> ConditionalSpectrum:
    """
    Eigen-pairs of G0 (initial) or G_tau (final).

    initial: g_i = <psi_i|H0|psi_i>, states |psi_i>
    final:   g_i = <psi_i|U^dagger H_tau U|psi_i>, states U|psi_i>
    """
    psi = initial_basis(spec)
    if endpoint == Endpoint.INITIAL:
        return ConditionalSpectrum(values=diagonal_expectations(spec.h0, psi), states=psi)
    phi = spec.u_evol @ psi
    return ConditionalSpectrum(values=diagonal_expectations(spec.h_tau, phi), states=phi)


def conditional_hamiltonian(spec: SystemSpec, endpoint: Endpoint) -> ComplexMatrix:
    """
    Conditional Hamiltonian G0 or G_tau.

    Args:
        spec: Problem instance
        endpoint: INITIAL for G0, FINAL for G_tau

    Returns:
        Hermitian matrix whose eigenvectors are the pointer states
    """
    return conditional_spectrum(spec, endpoint).operator()


def gibbs_state(h: ComplexMatrix, beta: float) -> tuple[ComplexMatrix, float]:
    """
    Gibbs state exp(-beta H) / Z.

    Args:
        h: Hermitian Hamiltonian
        beta: Inverse temperature; 0 gives the maximally mixed state

    Returns:
        Tuple of (density matrix, partition function); Z is inf past double range
    """
    check_beta(beta)
    eig = herm_eig(h)
    weights, log_z = _boltzmann(eig.eigenvalues, beta)
    rho = (eig.eigenvectors * weights) @ dagger(eig.eigenvectors)
    return rho, partition_from_log(log_z)


def conditional_thermal_state(spec: SystemSpec, endpoint: Endpoint) -> tuple[ComplexMatrix, float]:
    """
    Conditional thermal state exp(-beta G) / Z~ for G0 or G_tau.

    Returns:
        Tuple of (density matrix, conditional partition function)
    """
    check_beta(spec.beta)
    cs = conditional_spectrum(spec, endpoint)
    weights, log_z = _boltzmann(cs.values, spec.beta)
    rho = (cs.states * weights) @ dagger(cs.states)
    return rho, partition_from_log(log_z)


def log_partition(values: NDArray[np.float64], beta: float) -> float:
    return float(logsumexp(-beta * np.asarray(values, dtype=np.float64)))


def von_neumann_entropy(rho: ComplexMatrix) -> float:
    """-tr(rho ln rho) in nats."""
    eigenvalues = np.linalg.eigvalsh(validate_matrix(rho))
    return float(scipy.stats.entropy(np.clip(eigenvalues, 0.0, None)))


def relative_entropy(rho: ComplexMatrix, sigma: ComplexMatrix) -> float:
    """
    Quantum relative entropy S(rho || sigma) = tr rho (ln rho - ln sigma).

    Args:
        rho: Density matrix
        sigma: Density matrix whose support contains rho's

    Returns:
        Relative entropy in nats
    """
    rho = validate_matrix(rho)
    sigma = validate_matrix(sigma)
    p, _ = np.linalg.eigh(0.5 * (rho + dagger(rho)))
    s, v = np.linalg.eigh(0.5 * (sigma + dagger(sigma)))

    # <v_j| rho |v_j> for sigma's eigenvectors
    overlaps = np.real(np.einsum("ji,jk,ki->i", v.conj(), rho, v))
    support = s > SUPPORT_CUTOFF
    leak = float(np.sum(overlaps[~support]))
    if leak > SUPPORT_LEAK_TOL:
        raise SupportMismatchError(f"rho has weight {leak:.3e} outside the support of sigma")

    p = p[p > SUPPORT_CUTOFF]
    tr_rho_log_rho = float(np.sum(p * np.log(p)))
    tr_rho_log_sigma = float(np.sum(overlaps[support] * np.log(s[support])))
    return tr_rho_log_rho - tr_rho_log_sigma


def thermal_relative_entropy(rho: ComplexMatrix, h: ComplexMatrix, beta: float, log_z: float) -> float:
    """
    S(rho || exp(-beta h) / Z) using the exact logarithm -beta h - ln Z.

    Stays accurate when the reference state has very small weights.
    """
    rho = validate_matrix(rho)
    energy = float(np.real(np.trace(rho @ h)))
    return -von_neumann_entropy(rho) + beta * energy + log_z
