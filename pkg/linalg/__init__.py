"""
Dense complex linear algebra kernel used by every other package.
"""

from linalg.core import (
    ComplexMatrix,
    EigenSystem,
    dagger,
    herm_eig,
    is_hermitian,
    is_unitary,
    ket_projector,
    kron,
    mat_fn_hermitian,
    spectral_fn,
    validate_matrix,
)

__all__ = [
    "ComplexMatrix",
    "EigenSystem",
    "dagger",
    "herm_eig",
    "is_hermitian",
    "is_unitary",
    "ket_projector",
    "kron",
    "mat_fn_hermitian",
    "spectral_fn",
    "validate_matrix",
]
