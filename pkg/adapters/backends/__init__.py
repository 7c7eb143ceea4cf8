"""
Interferometry backend implementations.
"""

from adapters.base.backend_base import InterferometryBackend
from models.campaign import BackendKind
from models.circuit import NoiseModel

from .density_matrix import DensityMatrixBackend
from .exact import ExactBackend

_BACKENDS: dict[BackendKind, type[InterferometryBackend]] = {
    BackendKind.EXACT: ExactBackend,
    BackendKind.DENSITY_MATRIX: DensityMatrixBackend,
}


def create_backend(kind: BackendKind | str, noise: NoiseModel | None = None) -> InterferometryBackend:
    """Instantiate the backend registered for kind."""
    return _BACKENDS[BackendKind(kind)](noise)


__all__ = [
    "DensityMatrixBackend",
    "ExactBackend",
    "create_backend",
]
