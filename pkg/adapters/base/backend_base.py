"""
Abstract base class for interferometry execution backends.
"""

from abc import ABC, abstractmethod
from collections.abc import Sequence
from typing import Any

from models.campaign import BackendKind
from models.circuit import CircuitJob, NoiseModel


class InterferometryBackend(ABC):
    """Abstract base class for all interferometry backends."""

    def __init__(self, noise: NoiseModel | None = None):
        """Initialize the backend with an optional noise model."""
        self.noise = noise or NoiseModel()

    @property
    @abstractmethod
    def backend_kind(self) -> BackendKind:
        """Return the backend kind this class implements."""
        pass

    @abstractmethod
    def prepare(self, job: CircuitJob) -> Any:
        """
        Precompute everything about a job that does not depend on the seed.

        Args:
            job: Circuit job

        Returns:
            Backend-specific prepared data, reused across trials
        """
        pass

    @abstractmethod
    def estimate(self, prepared: Any, shots: int, seed: int, job_index: int) -> complex:
        """
        Estimate <X> + i<Y> of one prepared job.

        Args:
            prepared: Output of prepare for this job
            shots: Shots per observable
            seed: Trial seed
            job_index: Position of the job in the trial's job list

        Returns:
            Complex estimate of tr[branch1 rho branch0^dagger]
        """
        pass

    def prepare_all(self, jobs: Sequence[CircuitJob]) -> list[Any]:
        """Prepare every job of a job set in order."""
        return [self.prepare(job) for job in jobs]

    def estimate_all(
        self, prepared: Sequence[Any], shots: int, seed: int, offset: int = 0
    ) -> list[complex]:
        """
        Estimate a prepared job set.

        Args:
            prepared: Prepared jobs in order
            shots: Shots per observable
            seed: Trial seed
            offset: Job index of the first entry

        Returns:
            Estimates in job order
        """
        return [
            self.estimate(item, shots, seed, offset + i) for i, item in enumerate(prepared)
        ]
