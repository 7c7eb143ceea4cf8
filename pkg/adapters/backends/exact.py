"""
Exact backend: the infinite-shot limit of the Hadamard test.
"""

from adapters.base.backend_base import InterferometryBackend
from interferometry.circuits import hadamard_test_exact
from models.campaign import BackendKind
from models.circuit import CircuitJob, NoiseModel
from utils.logger import get_logger

logger = get_logger(__name__)


class ExactBackend(InterferometryBackend):
    """Returns ideal expectation values; shots, seeds and noise are ignored."""

    def __init__(self, noise: NoiseModel | None = None):
        super().__init__(noise)
        if not self.noise.is_noiseless:
            logger.warning("Exact backend ignores the configured noise model")

    @property
    def backend_kind(self) -> BackendKind:
        return BackendKind.EXACT

    def prepare(self, job: CircuitJob) -> complex:
        return hadamard_test_exact(job)

    def estimate(self, prepared: complex, shots: int, seed: int, job_index: int) -> complex:
        return prepared
