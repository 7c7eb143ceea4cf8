"""
Pauli-string basis of n-qubit operators.

Canonical order: qubit 0 is the leftmost tensor factor and string k has
digits (I=0, X=1, Y=2, Z=3) read most significant first, so k = 1 is "I...IX".
"""

from functools import reduce

import numpy as np

from linalg.core import ComplexMatrix, is_hermitian, kron, validate_matrix
from models.circuit import PauliDecomposition
from utils.errors import NotPowerOfTwoDimError

PAULI_LETTERS = "IXYZ"

PAULI_I = np.eye(2, dtype=np.complex128)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

_SINGLE = {"I": PAULI_I, "X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z}

REAL_TOL = 1e-12


def qubit_count(dim: int) -> int:
    """n such that dim == 2**n."""
    if dim < 2 or dim & (dim - 1):
        raise NotPowerOfTwoDimError(f"Dimension {dim} is not a power of two")
    return dim.bit_length() - 1


def pauli_label(k: int, n_qubits: int) -> str:
    """Label such as "IZ" of canonical index k."""
    if not 0 <= k < 4**n_qubits:
        raise ValueError(f"Pauli index {k} out of range for {n_qubits} qubits")
    digits = []
    for _ in range(n_qubits):
        k, digit = divmod(k, 4)
        digits.append(PAULI_LETTERS[digit])
    return "".join(reversed(digits))


def pauli_index(label: str) -> int:
    """Canonical index of a label such as "ZX"."""
    k = 0
    for letter in label.upper():
        if letter not in _SINGLE:
            raise ValueError(f"Invalid Pauli letter {letter!r} in {label!r}")
        k = 4 * k + PAULI_LETTERS.index(letter)
    return k


def pauli_string(label: str) -> ComplexMatrix:
    """Matrix of a Pauli string label, qubit 0 leftmost."""
    if not label:
        raise ValueError("Empty Pauli label")
    pauli_index(label)
    return reduce(kron, (_SINGLE[letter] for letter in label.upper()))


def pauli_decompose(m: ComplexMatrix) -> PauliDecomposition:
    """
    Expand m = sum_k alpha_k sigma_k over Pauli strings.

    Args:
        m: Square matrix of dimension 2**n

    Returns:
        PauliDecomposition with alpha_k = tr(m sigma_k) / d; real coefficients
        for Hermitian m
    """
    m = validate_matrix(m)
    dim = m.shape[0]
    n_qubits = qubit_count(dim)

    coeffs = np.empty(4**n_qubits, dtype=np.complex128)
    for k in range(4**n_qubits):
        sigma = pauli_string(pauli_label(k, n_qubits))
        # tr(m sigma) without forming the product
        coeffs[k] = np.sum(m * sigma.T) / dim

    if is_hermitian(m) and np.max(np.abs(coeffs.imag)) <= REAL_TOL:
        return PauliDecomposition(n_qubits=n_qubits, coeffs=coeffs.real.copy())
    return PauliDecomposition(n_qubits=n_qubits, coeffs=coeffs)


def pauli_reconstruct(decomposition: PauliDecomposition) -> ComplexMatrix:
    """sum_k alpha_k sigma_k."""
    n = decomposition.n_qubits
    dim = 2**n
    out = np.zeros((dim, dim), dtype=np.complex128)
    for k in decomposition.nonzero(threshold=0.0):
        out += decomposition.coeffs[k] * pauli_string(pauli_label(k, n))
    return out


def labelled_coefficients(
    decomposition: PauliDecomposition, threshold: float = REAL_TOL
) -> dict[str, complex | float]:
    """Nonzero coefficients keyed by Pauli label, in canonical order."""
    n = decomposition.n_qubits
    return {
        pauli_label(k, n): decomposition.coeffs[k].item()
        for k in decomposition.nonzero(threshold)
    }
