"""
Dense complex linear algebra kernel.

Hermitian eigendecomposition with deterministic degenerate-cluster handling,
matrix functions of Hermitian operators, and Kronecker products.
"""

from typing import NamedTuple

import numpy as np
import scipy.linalg
from numpy.typing import NDArray

from utils.errors import (
    DimensionMismatchError,
    DimensionOverflowError,
    NoConvergenceError,
    NotHermitianError,
)
from utils.logger import get_logger

logger = get_logger(__name__)

ComplexMatrix = NDArray[np.complex128]

HERMITIAN_TOL = 1e-9
UNITARY_TOL = 1e-9
DEFAULT_MAX_DIM = 2**12
# ln of the largest finite double
LOG_FLOAT_MAX = float(np.log(np.finfo(np.float64).max))

# relative gap below which eigenvalues are one degenerate cluster
DEGENERACY_GAP = 1e-9
# projected unit vectors shorter than this are skipped while rebuilding a cluster
_PROJECTION_FLOOR = 1e-6
_PHASE_FLOOR = 1e-8

_max_dim = DEFAULT_MAX_DIM


class EigenSystem(NamedTuple):
    """Ascending eigenvalues and the unitary matrix of column eigenvectors."""

    eigenvalues: NDArray[np.float64]
    eigenvectors: ComplexMatrix

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)


def set_max_dim(max_dim: int) -> None:
    """Set the dimension cap enforced by kron."""
    global _max_dim
    if max_dim < 1:
        raise ValueError("max_dim must be positive")
    _max_dim = max_dim


def get_max_dim() -> int:
    return _max_dim


def validate_matrix(m: NDArray[np.generic] | list[list[complex]]) -> ComplexMatrix:
    """Return m as a square, finite complex128 array."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise DimensionMismatchError(f"Expected a non-empty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("Matrix has NaN or infinite entries")
    return arr


def dagger(m: ComplexMatrix) -> ComplexMatrix:
    return m.conj().T


def max_abs(m: ComplexMatrix) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


def is_hermitian(m: ComplexMatrix, tol: float = HERMITIAN_TOL) -> bool:
    """True if ||M - M^dagger||_max <= tol."""
    return max_abs(m - dagger(m)) <= tol


def is_unitary(m: ComplexMatrix, tol: float = UNITARY_TOL) -> bool:
    """True if ||M^dagger M - I||_max <= tol."""
    return max_abs(dagger(m) @ m - np.eye(m.shape[0])) <= tol


def ket_projector(v: NDArray[np.complex128]) -> ComplexMatrix:
    """|v><v| for a column vector v."""
    return np.outer(v, v.conj())


def _fix_phase(v: NDArray[np.complex128]) -> NDArray[np.complex128]:
    """Rotate v so its first significant component is real positive."""
    idx = int(np.argmax(np.abs(v) > _PHASE_FLOOR))
    pivot = v[idx]
    return v * (abs(pivot) / pivot)


def _canonical_cluster(block: ComplexMatrix) -> ComplexMatrix:
    """
    Rebuild an orthonormal basis of span(block) deterministically.

    Unit vectors e_0, e_1, ... are projected onto the subspace and
    Gram-Schmidt orthonormalised in index order until the span is filled.
    """
    dim, size = block.shape
    projector = block @ dagger(block)
    chosen: list[NDArray[np.complex128]] = []
    for j in range(dim):
        v = projector[:, j].copy()
        for q in chosen:
            v -= q * np.vdot(q, v)
        norm = np.linalg.norm(v)
        if norm > _PROJECTION_FLOOR:
            chosen.append(v / norm)
        if len(chosen) == size:
            break
    if len(chosen) < size:
        # numerically thin projections; fall back to the solver's own vectors
        logger.debug("Degenerate cluster canonicalisation fell short; keeping solver basis")
        return block
    return np.column_stack(chosen)


def herm_eig(h: ComplexMatrix, tol: float = HERMITIAN_TOL) -> EigenSystem:
    """
    Eigendecomposition of a Hermitian matrix.

    Eigenvalues are ascending. Within each degenerate cluster the basis is
    rebuilt in order of first nonzero component, and each eigenvector is
    phase-fixed, so the output is a deterministic function of the input.

    Args:
        h: Hermitian matrix
        tol: Hermiticity tolerance

    Returns:
        EigenSystem with ascending eigenvalues and unitary eigenvector matrix
    """
    h = validate_matrix(h)
    if not is_hermitian(h, tol):
        raise NotHermitianError(f"Matrix deviates from Hermitian by {max_abs(h - dagger(h)):.3e}")

    hs = 0.5 * (h + dagger(h))
    scale = max_abs(hs)
    if scale == 0.0:
        dim = hs.shape[0]
        return EigenSystem(eigenvalues=np.zeros(dim), eigenvectors=np.eye(dim, dtype=np.complex128))

    try:
        values, vectors = scipy.linalg.eigh(hs)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NoConvergenceError(f"Hermitian eigen-solver failed: {exc}") from exc

    # gap is relative to the matrix norm so tiny Hamiltonians keep their structure
    gap = DEGENERACY_GAP * scale
    vectors = np.array(vectors, dtype=np.complex128)

    start = 0
    dim = len(values)
    while start < dim:
        stop = start + 1
        while stop < dim and values[stop] - values[stop - 1] < gap:
            stop += 1
        if stop - start > 1:
            vectors[:, start:stop] = _canonical_cluster(vectors[:, start:stop])
        start = stop

    for col in range(dim):
        vectors[:, col] = _fix_phase(vectors[:, col])

    return EigenSystem(eigenvalues=np.asarray(values, dtype=np.float64), eigenvectors=vectors)


def spectral_fn(eigensystem: EigenSystem, c: complex) -> ComplexMatrix:
    """V diag(exp(c * lambda)) V^dagger for a precomputed eigensystem."""
    v = eigensystem.eigenvectors
    weights = np.exp(c * eigensystem.eigenvalues)
    return (v * weights) @ dagger(v)


def mat_fn_hermitian(h: ComplexMatrix, c: complex) -> ComplexMatrix:
    """
    Matrix exponential exp(c H) of a Hermitian matrix.

    Args:
        h: Hermitian matrix
        c: Complex scalar multiplying H in the exponent

    Returns:
        exp(c H); unitary when c is purely imaginary
    """
    if not np.isfinite(c):
        raise ValueError(f"Exponent scalar must be finite, got {c}")
    return spectral_fn(herm_eig(h), c)


def kron(a: ComplexMatrix, b: ComplexMatrix, max_dim: int | None = None) -> ComplexMatrix:
    """Kronecker product with a cap on the resulting dimension."""
    a = validate_matrix(a)
    b = validate_matrix(b)
    cap = get_max_dim() if max_dim is None else max_dim
    dim = a.shape[0] * b.shape[0]
    if dim > cap:
        raise DimensionOverflowError(f"Kronecker product dimension {dim} exceeds cap {cap}")
    return np.kron(a, b)
