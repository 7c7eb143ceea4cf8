"""
Pydantic models describing a physical problem instance.
"""

from enum import Enum
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from linalg.core import (
    HERMITIAN_TOL,
    UNITARY_TOL,
    dagger,
    is_hermitian,
    is_unitary,
    max_abs,
    validate_matrix,
)
from utils.errors import (
    DimensionMismatchError,
    InvalidBasisError,
    NotHermitianError,
    NotUnitaryError,
)

BASIS_TOL = 1e-9


class Endpoint(str, Enum):
    """Which end of the protocol a conditional object refers to."""

    INITIAL = "initial"
    FINAL = "final"


class Direction(str, Enum):
    """Forward or backward process."""

    FORWARD = "forward"
    BACKWARD = "backward"


def _frozen_array(value: Any) -> np.ndarray:
    arr = validate_matrix(value).copy()
    arr.flags.writeable = False
    return arr


class SystemSpec(BaseModel):
    """Full problem instance: (H0, H_tau, U, beta, optional initial basis)."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    h0: np.ndarray = Field(..., description="Initial Hamiltonian (energy units)")
    h_tau: np.ndarray = Field(..., description="Final Hamiltonian (energy units)")
    u_evol: np.ndarray = Field(..., description="Unitary evolution operator")
    beta: float = Field(..., ge=0.0, description="Inverse temperature")
    initial_basis: np.ndarray | None = Field(
        None, description="Columns are the initial pure states |psi_i>; default eigenbasis of H0"
    )

    @field_validator("h0", "h_tau", "u_evol", mode="before")
    @classmethod
    def _as_matrix(cls, value: Any) -> np.ndarray:
        return _frozen_array(value)

    @field_validator("initial_basis", mode="before")
    @classmethod
    def _as_basis(cls, value: Any) -> np.ndarray | None:
        if value is None:
            return None
        return _frozen_array(value)

    @model_validator(mode="after")
    def _check_physics(self) -> "SystemSpec":
        dim = self.h0.shape[0]
        for name in ("h_tau", "u_evol", "initial_basis"):
            m = getattr(self, name)
            if m is not None and m.shape != (dim, dim):
                raise DimensionMismatchError(f"{name} has shape {m.shape}, expected ({dim}, {dim})")
        for name in ("h0", "h_tau"):
            m = getattr(self, name)
            if not is_hermitian(m, HERMITIAN_TOL):
                raise NotHermitianError(
                    f"{name} deviates from Hermitian by {max_abs(m - dagger(m)):.3e}"
                )
        if not is_unitary(self.u_evol, UNITARY_TOL):
            raise NotUnitaryError("u_evol is not unitary within 1e-9")
        if self.initial_basis is not None and not is_unitary(self.initial_basis, BASIS_TOL):
            raise InvalidBasisError("initial_basis columns are not orthonormal within 1e-9")
        return self

    @property
    def dim(self) -> int:
        return int(self.h0.shape[0])

    @property
    def has_custom_basis(self) -> bool:
        return self.initial_basis is not None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SystemSpec):
            return NotImplemented
        if self.beta != other.beta or self.has_custom_basis != other.has_custom_basis:
            return False
        pairs = [(self.h0, other.h0), (self.h_tau, other.h_tau), (self.u_evol, other.u_evol)]
        if self.initial_basis is not None and other.initial_basis is not None:
            pairs.append((self.initial_basis, other.initial_basis))
        return all(np.array_equal(a, b) for a, b in pairs)

    __hash__ = None  # type: ignore[assignment]
