"""
Campaign configuration and results.
"""

from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from models.circuit import NoiseModel
from models.system import SystemSpec


class BackendKind(str, Enum):
    """Interferometry execution backends."""

    EXACT = "exact"
    DENSITY_MATRIX = "density-matrix"


class CampaignConfig(BaseModel):
    """Repeated noisy estimation of R = |C_f(u) / C_b(-u + i beta)|."""

    model_config = ConfigDict(frozen=True)

    spec: SystemSpec = Field(..., description="Physical problem instance")
    u: float = Field(1.0, description="Characteristic-function argument")
    shots: int = Field(20000, ge=1, description="Shots per circuit and observable")
    trials: int = Field(100, ge=1, description="Number of trials N")
    noise: NoiseModel | None = Field(None, description="Noise model; None is noiseless")
    seed: int = Field(20240101, ge=0, lt=2**64, description="Campaign seed")
    backend: BackendKind = Field(BackendKind.DENSITY_MATRIX, description="Execution backend")
    workers: int = Field(1, ge=1, description="Threads used to run trials")


class Checkpoint(BaseModel):
    """Running statistics after the first N trials."""

    model_config = ConfigDict(frozen=True)

    trials: int = Field(..., ge=1, description="N")
    mean_r: float = Field(..., description="<R>_N")
    ci99_low: float = Field(..., description="Lower 99% confidence bound")
    ci99_high: float = Field(..., description="Upper 99% confidence bound")
    error_rate_pct: float = Field(..., description="e_N in percent")


class CampaignResult(BaseModel):
    """Per-trial ratios and their running statistics."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    per_trial_r: np.ndarray = Field(..., description="R_j for each trial")
    running_mean: np.ndarray = Field(..., description="<R>_N after each trial")
    ci99_halfwidth: np.ndarray = Field(..., description="z_0.995 s_N / sqrt(N)")
    ci99_low: np.ndarray = Field(..., description="running_mean - halfwidth")
    ci99_high: np.ndarray = Field(..., description="running_mean + halfwidth")
    error_rate_pct: np.ndarray = Field(..., description="|1 - <R>_N / R_true| * 100")
    r_true: float = Field(..., ge=0.0, description="Exact |Z~_tau / Z~_0|")
    checkpoints: list[Checkpoint] = Field(default_factory=list, description="N = 10, 15, ...")
    kl_estimate: float = Field(..., description="beta <W> + ln <R>_N")

    @property
    def trials(self) -> int:
        return int(self.per_trial_r.shape[0])
