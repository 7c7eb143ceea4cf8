"""
Generalized Hadamard-test circuits for the characteristic functions.

Forward: one job per initial pure component |psi_i> of rho~_0.
Backward: C_b(-u + i beta) = sum_{k,l} a_k^(0) a_l^(tau) F_kl with the
Pauli coefficients of exp(-beta G0) and exp(+beta G_tau) computed
classically; one job per nonzero pair and pure component of rho~_tau.
"""

from collections.abc import Sequence

import numpy as np
from scipy.special import softmax

from interferometry.pauli import pauli_decompose, pauli_label, pauli_string, qubit_count
from linalg.core import dagger
from models.circuit import CircuitJob, CircuitStep, ControlMode, PauliPairJob
from models.system import Endpoint, SystemSpec
from thermo.states import conditional_spectrum
from utils.logger import get_logger

logger = get_logger(__name__)

PRUNE_THRESHOLD = 1e-12


def hadamard_test_exact(job: CircuitJob) -> complex:
    """Ideal <X> + i<Y> = tr[branch1 rho branch0^dagger] for rho = |psi><psi|."""
    psi = job.input_state
    return complex(np.vdot(job.branch0 @ psi, job.branch1 @ psi))


def build_forward_jobs(spec: SystemSpec, u: float) -> list[CircuitJob]:
    """
    Jobs whose weighted exact sum is C_f(u).

    branch0 = U, branch1 = e^{iuG_tau} U e^{-iuG0}, input |psi_i>,
    weight exp(-beta g0_i) / Z~_0.
    """
    g0 = conditional_spectrum(spec, Endpoint.INITIAL)
    g_tau = conditional_spectrum(spec, Endpoint.FINAL)
    weights = softmax(-spec.beta * g0.values)
    steps = [
        CircuitStep(operator=g0.exponential(-1j * u), control=ControlMode.ON_ONE, name="c-exp(-iuG0)"),
        CircuitStep(operator=spec.u_evol, control=ControlMode.NONE, name="U"),
        CircuitStep(operator=g_tau.exponential(1j * u), control=ControlMode.ON_ONE, name="c-exp(iuGt)"),
    ]
    jobs = [
        CircuitJob(
            steps=steps,
            input_state=g0.states[:, i],
            weight=float(weights[i]),
            label=f"forward[{i}]",
        )
        for i in range(spec.dim)
    ]
    logger.info("Built %d forward jobs (%d circuits)", len(jobs), 2 * len(jobs))
    return jobs


def backward_coefficients(spec: SystemSpec) -> tuple[np.ndarray, np.ndarray]:
    """Pauli coefficients of exp(-beta G0) and exp(+beta G_tau)."""
    g0 = conditional_spectrum(spec, Endpoint.INITIAL)
    g_tau = conditional_spectrum(spec, Endpoint.FINAL)
    alpha0 = pauli_decompose(g0.exponential(-spec.beta)).coeffs
    alpha_tau = pauli_decompose(g_tau.exponential(spec.beta)).coeffs
    return alpha0, alpha_tau


def build_backward_jobs(spec: SystemSpec, u: float) -> list[PauliPairJob]:
    """
    Jobs whose coefficient- and weight-summed exact values give C_b(-u + i beta).

    For each nonzero (k, l): branch0 = U^dagger,
    branch1 = sigma_k e^{-iuG0} U^dagger sigma_l e^{iuG_tau}, inputs U|psi_i>
    with weights exp(-beta g_tau_i) / Z~_tau.

    Args:
        spec: Problem instance with dimension 2**n
        u: Real argument

    Returns:
        PauliPairJob entries ordered by (k, l, component)
    """
    g0 = conditional_spectrum(spec, Endpoint.INITIAL)
    g_tau = conditional_spectrum(spec, Endpoint.FINAL)
    weights = softmax(-spec.beta * g_tau.values)
    alpha0, alpha_tau = backward_coefficients(spec)
    n_qubits = qubit_count(spec.dim)

    exp_g0 = g0.exponential(-1j * u)
    exp_g_tau = g_tau.exponential(1j * u)
    u_dag = dagger(spec.u_evol)

    pair_jobs: list[PauliPairJob] = []
    pairs = 0
    for k in np.flatnonzero(np.abs(alpha0) > PRUNE_THRESHOLD):
        for l in np.flatnonzero(np.abs(alpha_tau) > PRUNE_THRESHOLD):  # noqa: E741
            coefficient = complex(alpha0[k] * alpha_tau[l])
            if abs(coefficient) <= PRUNE_THRESHOLD:
                continue
            pairs += 1
            label_k, label_l = pauli_label(int(k), n_qubits), pauli_label(int(l), n_qubits)
            steps = [
                CircuitStep(operator=exp_g_tau, control=ControlMode.ON_ONE, name="c-exp(iuGt)"),
                CircuitStep(operator=pauli_string(label_l), control=ControlMode.ON_ONE, name=f"c-{label_l}"),
                CircuitStep(operator=u_dag, control=ControlMode.NONE, name="U^dag"),
                CircuitStep(operator=exp_g0, control=ControlMode.ON_ONE, name="c-exp(-iuG0)"),
                CircuitStep(operator=pauli_string(label_k), control=ControlMode.ON_ONE, name=f"c-{label_k}"),
            ]
            for i in range(spec.dim):
                job = CircuitJob(
                    steps=steps,
                    input_state=g_tau.states[:, i],
                    weight=float(weights[i]),
                    label=f"backward[{label_k},{label_l}][{i}]",
                )
                pair_jobs.append(PauliPairJob(k=int(k), l=int(l), coefficient=coefficient, job=job))

    logger.info(
        "Built %d backward jobs over %d Pauli pairs (%d circuits)",
        len(pair_jobs),
        pairs,
        2 * len(pair_jobs),
    )
    return pair_jobs


def assemble_forward(jobs: Sequence[CircuitJob], values: Sequence[complex]) -> complex:
    """C_f(u) from per-job values: sum_i w_i v_i."""
    if len(jobs) != len(values):
        raise ValueError(f"{len(jobs)} jobs but {len(values)} values")
    return complex(sum(job.weight * value for job, value in zip(jobs, values, strict=True)))


def assemble_backward(pair_jobs: Sequence[PauliPairJob], values: Sequence[complex]) -> complex:
    """C_b(-u + i beta) from per-job values: sum a_k a_l w_i v_{k,l,i}."""
    if len(pair_jobs) != len(values):
        raise ValueError(f"{len(pair_jobs)} jobs but {len(values)} values")
    return complex(
        sum(
            entry.coefficient * entry.job.weight * value
            for entry, value in zip(pair_jobs, values, strict=True)
        )
    )


def pair_count(pair_jobs: Sequence[PauliPairJob]) -> int:
    """Number of distinct (k, l) pairs."""
    return len({(entry.k, entry.l) for entry in pair_jobs})
