"""
Density-matrix backend: noisy circuit simulation with binomial shot sampling.
"""

from adapters.base.backend_base import InterferometryBackend
from interferometry.simulator import measurement_probabilities, sample_probabilities
from models.campaign import BackendKind
from models.circuit import CircuitJob, Observable


class DensityMatrixBackend(InterferometryBackend):
    """Simulates each job once and draws fresh shots for every trial."""

    @property
    def backend_kind(self) -> BackendKind:
        return BackendKind.DENSITY_MATRIX

    def prepare(self, job: CircuitJob) -> dict[Observable, float]:
        """
        Outcome probabilities of the noisy circuit.

        Args:
            job: Circuit job

        Returns:
            P(ancilla reads 0) per observable, readout error included
        """
        return measurement_probabilities(job, self.noise)

    def estimate(
        self, prepared: dict[Observable, float], shots: int, seed: int, job_index: int
    ) -> complex:
        return sample_probabilities(prepared, shots, seed, job_index).value
