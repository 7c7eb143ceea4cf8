"""
Simulated interferometry: Pauli decomposition, Hadamard-test circuits and
shot-sampled estimates.
"""

from interferometry.circuits import (
    assemble_backward,
    assemble_forward,
    backward_coefficients,
    build_backward_jobs,
    build_forward_jobs,
    hadamard_test_exact,
    pair_count,
)
from interferometry.pauli import (
    labelled_coefficients,
    pauli_decompose,
    pauli_index,
    pauli_label,
    pauli_reconstruct,
    pauli_string,
)
from interferometry.simulator import (
    measurement_probabilities,
    resolve_noise,
    sample_job,
    sample_probabilities,
)

__all__ = [
    # Pauli basis
    "pauli_decompose",
    "pauli_reconstruct",
    "pauli_label",
    "pauli_index",
    "pauli_string",
    "labelled_coefficients",

    # Circuits
    "hadamard_test_exact",
    "build_forward_jobs",
    "build_backward_jobs",
    "backward_coefficients",
    "assemble_forward",
    "assemble_backward",
    "pair_count",

    # Sampling
    "measurement_probabilities",
    "sample_probabilities",
    "sample_job",
    "resolve_noise",
]
