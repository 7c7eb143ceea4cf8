"""
Interferometry models: Pauli decompositions, circuit jobs, noise and shot estimates.
"""

from enum import Enum
from functools import reduce
from typing import Any, NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from linalg.core import validate_matrix
from utils.errors import DimensionMismatchError


class Observable(str, Enum):
    """Ancilla measurement basis."""

    X = "X"
    Y = "Y"


class ControlMode(str, Enum):
    """How a circuit step is conditioned on the ancilla."""

    NONE = "none"
    ON_ONE = "on_one"
    ON_ZERO = "on_zero"


class CircuitStep(BaseModel):
    """One gate acting on the target register."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    operator: np.ndarray = Field(..., description="Target-register operator")
    control: ControlMode = Field(ControlMode.NONE, description="Ancilla conditioning")
    name: str = Field("", description="Gate label for logs")

    @field_validator("operator", mode="before")
    @classmethod
    def _as_matrix(cls, value: Any) -> np.ndarray:
        return validate_matrix(value)


class CircuitJob(BaseModel):
    """
    Generalized Hadamard-test instance on one pure input component.

    The ideal circuit yields <X> + i<Y> = tr[branch1 rho branch0^dagger].
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    steps: list[CircuitStep] = Field(..., min_length=1, description="Gates in circuit order")
    input_state: np.ndarray = Field(..., description="Pure state of the target register")
    weight: float = Field(1.0, ge=0.0, le=1.0, description="Mixture weight of this component")
    label: str = Field("", description="Human-readable job label")

    @field_validator("input_state", mode="before")
    @classmethod
    def _as_vector(cls, value: Any) -> np.ndarray:
        arr = np.asarray(value, dtype=np.complex128)
        if arr.ndim != 1:
            raise ValueError("input_state must be a vector")
        return arr

    @model_validator(mode="after")
    def _check_dims(self) -> "CircuitJob":
        dim = self.input_state.shape[0]
        for step in self.steps:
            if step.operator.shape != (dim, dim):
                raise DimensionMismatchError(
                    f"Step {step.name or '?'} has shape {step.operator.shape}, state has dim {dim}"
                )
        return self

    @classmethod
    def from_branches(
        cls,
        branch0: np.ndarray,
        branch1: np.ndarray,
        input_state: np.ndarray,
        weight: float = 1.0,
        label: str = "",
    ) -> "CircuitJob":
        """Two-step job realising an arbitrary (branch0, branch1) pair."""
        return cls(
            steps=[
                CircuitStep(operator=branch0, control=ControlMode.ON_ZERO, name="branch0"),
                CircuitStep(operator=branch1, control=ControlMode.ON_ONE, name="branch1"),
            ],
            input_state=input_state,
            weight=weight,
            label=label,
        )

    @property
    def dim(self) -> int:
        return int(self.input_state.shape[0])

    def _branch(self, skip: ControlMode) -> np.ndarray:
        ops = [s.operator for s in self.steps if s.control != skip]
        # later steps multiply from the left
        return reduce(lambda acc, op: op @ acc, ops, np.eye(self.dim, dtype=np.complex128))

    @property
    def branch0(self) -> np.ndarray:
        """Operator applied when the ancilla is |0>."""
        return self._branch(skip=ControlMode.ON_ONE)

    @property
    def branch1(self) -> np.ndarray:
        """Operator applied when the ancilla is |1>."""
        return self._branch(skip=ControlMode.ON_ZERO)

    @property
    def controlled_count(self) -> int:
        return sum(1 for s in self.steps if s.control != ControlMode.NONE)


class NoiseModel(BaseModel):
    """Depolarizing and readout error magnitudes."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    depol_1q: float = Field(0.0, ge=0.0, le=1.0, description="Ancilla depolarizing probability")
    depol_ctrl: float = Field(
        0.0, ge=0.0, le=1.0, description="Joint depolarizing probability per controlled block"
    )
    readout_p01: float = Field(0.0, ge=0.0, le=1.0, description="P(measure 0 | prepared 1)")
    readout_p10: float = Field(0.0, ge=0.0, le=1.0, description="P(measure 1 | prepared 0)")

    @property
    def is_noiseless(self) -> bool:
        return not any((self.depol_1q, self.depol_ctrl, self.readout_p01, self.readout_p10))


class ShotEstimate(BaseModel):
    """Sampled ancilla expectations of one job."""

    model_config = ConfigDict(frozen=True)

    mean_x: float = Field(..., ge=-1.0, le=1.0, description="Estimated <X>")
    mean_y: float = Field(..., ge=-1.0, le=1.0, description="Estimated <Y>")
    shots: int = Field(..., ge=1, description="Shots per observable")

    @property
    def value(self) -> complex:
        return complex(self.mean_x, self.mean_y)


class PauliDecomposition(BaseModel):
    """Coefficients over the n-qubit Pauli-string basis in canonical order."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n_qubits: int = Field(..., ge=1, description="Number of qubits")
    coeffs: np.ndarray = Field(..., description="alpha_k = tr(M sigma_k) / d, length 4**n")

    @model_validator(mode="after")
    def _check_length(self) -> "PauliDecomposition":
        if self.coeffs.shape != (4**self.n_qubits,):
            raise ValueError(f"Expected {4**self.n_qubits} coefficients, got {self.coeffs.shape}")
        return self

    def nonzero(self, threshold: float = 1e-12) -> list[int]:
        """Canonical indices with |alpha_k| above threshold."""
        return [int(k) for k in np.flatnonzero(np.abs(self.coeffs) > threshold)]


class PauliPairJob(NamedTuple):
    """Backward-circuit job for Pauli pair (k, l) and its classical coefficient."""

    k: int
    l: int  # noqa: E741
    coefficient: complex
    job: CircuitJob
