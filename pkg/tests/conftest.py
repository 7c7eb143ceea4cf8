"""
Shared fixtures: the two-qubit benchmark and small toy instances.
"""

import numpy as np
import pytest

from config.presets import benchmark_preset
from models.system import SystemSpec
from tests.helpers import HADAMARD, PAULI_Z


@pytest.fixture(scope="session")
def benchmark_spec() -> SystemSpec:
    return benchmark_preset()


@pytest.fixture
def hadamard_toy() -> SystemSpec:
    """h0 = h_tau = Z, U = Hadamard, beta = 1."""
    return SystemSpec(h0=PAULI_Z, h_tau=PAULI_Z, u_evol=HADAMARD, beta=1.0)


@pytest.fixture
def trivial_spec(benchmark_spec: SystemSpec) -> SystemSpec:
    """No driving: U = I and h_tau = h0."""
    return SystemSpec(
        h0=benchmark_spec.h0, h_tau=benchmark_spec.h0, u_evol=np.eye(4), beta=benchmark_spec.beta
    )
