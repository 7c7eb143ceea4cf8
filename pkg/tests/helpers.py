"""
Instance builders shared by the test modules.
"""

import numpy as np
from scipy.stats import unitary_group

from models.system import SystemSpec

BENCHMARK_RATIO = 0.433167
TOY_RATIO = 2.0 / (2.0 * np.cosh(1.0))

PAULI_Z = np.diag([1.0, -1.0]).astype(np.complex128)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2.0)


def random_hermitian(rng: np.random.Generator, dim: int, scale: float = 1.0) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * (a + a.conj().T) / 2.0


def make_random_spec(
    seed: int, dim: int, custom_basis: bool = False, scale: float = 1.0
) -> SystemSpec:
    """Random Hermitian H0/H_tau, Haar-random U and optionally a random basis."""
    rng = np.random.default_rng(seed)
    beta = float(rng.uniform(0.1, 1.5))
    return SystemSpec(
        h0=random_hermitian(rng, dim, scale),
        h_tau=random_hermitian(rng, dim, scale),
        u_evol=unitary_group.rvs(dim, random_state=rng),
        beta=beta,
        initial_basis=unitary_group.rvs(dim, random_state=rng) if custom_basis else None,
    )


RANDOM_CASES = [
    (seed, dim, custom)
    for dim in (2, 4, 8)
    for custom in (False, True)
    for seed in range(4)
]
