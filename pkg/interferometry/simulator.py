"""
Density-matrix simulation of the ancilla + target Hadamard-test circuit.

The ancilla is qubit 0 (leftmost tensor factor). Noise channels:
joint depolarizing after every controlled step, ancilla depolarizing after
the first Hadamard and after the measurement-basis rotation, and a
classical readout flip on the outcome.
"""

from collections.abc import Mapping
from typing import Any

import numpy as np
from pydantic import ValidationError

from linalg.core import ComplexMatrix, dagger, ket_projector, kron
from models.circuit import CircuitJob, ControlMode, NoiseModel, Observable, ShotEstimate
from utils.errors import InvalidNoiseError
from utils.rng import derive_rng

_HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2.0)
_S_DAG = np.array([[1, 0], [0, -1j]], dtype=np.complex128)
_PROJ0 = np.array([[1, 0], [0, 0]], dtype=np.complex128)
_PROJ1 = np.array([[0, 0], [0, 1]], dtype=np.complex128)

# Z-basis readout after this rotation measures the named observable
_BASIS_ROTATION = {
    Observable.X: _HADAMARD,
    Observable.Y: _HADAMARD @ _S_DAG,
}

OBSERVABLES = (Observable.X, Observable.Y)
DEGENERATE_TOL = 1e-12


def resolve_noise(noise: NoiseModel | Mapping[str, Any] | None) -> NoiseModel:
    """Validate a noise model; None means noiseless."""
    if noise is None:
        return NoiseModel()
    if isinstance(noise, NoiseModel):
        return noise
    try:
        return NoiseModel.model_validate(dict(noise))
    except (ValidationError, TypeError, ValueError) as exc:
        raise InvalidNoiseError(f"Invalid noise model: {exc}") from exc


def _controlled(op: ComplexMatrix, control: ControlMode) -> ComplexMatrix:
    identity = np.eye(op.shape[0], dtype=np.complex128)
    if control == ControlMode.ON_ONE:
        return kron(_PROJ0, identity) + kron(_PROJ1, op)
    if control == ControlMode.ON_ZERO:
        return kron(_PROJ0, op) + kron(_PROJ1, identity)
    return kron(np.eye(2), op)


def _on_ancilla(gate: ComplexMatrix, dim: int) -> ComplexMatrix:
    return kron(gate, np.eye(dim))


def _depolarize_all(rho: ComplexMatrix, p: float) -> ComplexMatrix:
    if p == 0.0:
        return rho
    dim = rho.shape[0]
    return (1.0 - p) * rho + p * np.eye(dim) / dim


def _depolarize_ancilla(rho: ComplexMatrix, p: float) -> ComplexMatrix:
    if p == 0.0:
        return rho
    dim = rho.shape[0] // 2
    target = np.einsum("aiaj->ij", rho.reshape(2, dim, 2, dim))
    return (1.0 - p) * rho + p * kron(np.eye(2) / 2.0, target)


def _evolve(job: CircuitJob, noise: NoiseModel) -> ComplexMatrix:
    """Ancilla + target state just before the measurement-basis rotation."""
    dim = job.dim
    rho = kron(_PROJ0, ket_projector(job.input_state))

    h = _on_ancilla(_HADAMARD, dim)
    rho = _depolarize_ancilla(h @ rho @ dagger(h), noise.depol_1q)
    for step in job.steps:
        gate = _controlled(step.operator, step.control)
        rho = gate @ rho @ dagger(gate)
        if step.control != ControlMode.NONE:
            rho = _depolarize_all(rho, noise.depol_ctrl)
    return rho


def measurement_probabilities(
    job: CircuitJob, noise: NoiseModel | Mapping[str, Any] | None = None
) -> dict[Observable, float]:
    """
    Probability of reading ancilla outcome 0 for each measured observable.

    Args:
        job: Circuit job
        noise: Noise model; None is noiseless

    Returns:
        Mapping X/Y to P(0) after readout error
    """
    model = resolve_noise(noise)
    rho = _evolve(job, model)
    proj0 = _on_ancilla(_PROJ0, job.dim)

    probs: dict[Observable, float] = {}
    for observable in OBSERVABLES:
        r = _on_ancilla(_BASIS_ROTATION[observable], job.dim)
        rotated = _depolarize_ancilla(r @ rho @ dagger(r), model.depol_1q)
        p0 = float(np.clip(np.real(np.trace(proj0 @ rotated)), 0.0, 1.0))
        probs[observable] = p0 * (1.0 - model.readout_p10) + (1.0 - p0) * model.readout_p01
    return probs


def sample_probabilities(
    probs: Mapping[Observable, float], shots: int, seed: int, job_index: int = 0
) -> ShotEstimate:
    """
    Draw shots per observable from precomputed outcome probabilities.

    Each observable uses its own stream keyed by (seed, job_index, observable),
    so results do not depend on sampling order.
    """
    if shots < 1:
        raise ValueError(f"shots must be positive, got {shots}")
    means: dict[Observable, float] = {}
    for key, observable in enumerate(OBSERVABLES):
        rng = derive_rng(seed, job_index, key)
        p0 = float(np.clip(probs[observable], 0.0, 1.0))
        # snap degenerate outcomes
        if min(p0, 1.0 - p0) < DEGENERATE_TOL:
            p0 = float(round(p0))
        zeros = int(rng.binomial(shots, p0))
        means[observable] = (2 * zeros - shots) / shots
    return ShotEstimate(mean_x=means[Observable.X], mean_y=means[Observable.Y], shots=shots)


def sample_job(
    job: CircuitJob,
    shots: int,
    seed: int,
    noise: NoiseModel | Mapping[str, Any] | None = None,
    job_index: int = 0,
) -> ShotEstimate:
    """Shot-sampled estimate of <X> + i<Y> for one job."""
    return sample_probabilities(measurement_probabilities(job, noise), shots, seed, job_index)
