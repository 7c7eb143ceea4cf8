"""
Work distributions and the thermodynamic report.
"""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from models.system import Direction

NORMALIZATION_TOL = 1e-12


class WorkAtom(BaseModel):
    """One trajectory i of an atomic work distribution."""

    model_config = ConfigDict(frozen=True)

    index: int = Field(..., ge=0, description="Trajectory index i (initial-basis order)")
    work: float = Field(..., description="Conditional work W_i (energy units)")
    probability: float = Field(..., ge=0.0, description="Probability of trajectory i")


class WorkDistribution(BaseModel):
    """Atomic forward or backward conditional work distribution."""

    model_config = ConfigDict(frozen=True)

    direction: Direction = Field(..., description="Forward or backward process")
    atoms: list[WorkAtom] = Field(..., min_length=1, description="Atoms in trajectory order")

    @model_validator(mode="after")
    def _check_normalized(self) -> "WorkDistribution":
        total = sum(a.probability for a in self.atoms)
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise ValueError(f"Probabilities sum to {total!r}, not 1")
        if [a.index for a in self.atoms] != list(range(len(self.atoms))):
            raise ValueError("Atoms must be indexed 0..d-1 in order")
        return self

    @property
    def works(self) -> np.ndarray:
        return np.array([a.work for a in self.atoms], dtype=np.float64)

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([a.probability for a in self.atoms], dtype=np.float64)

    def mean(self) -> float:
        return float(self.probabilities @ self.works)

    def merged(self, tol: float = 1e-9) -> list[tuple[float, float]]:
        """
        Display view: (work, total probability) with nearly equal works combined.

        Never use this for KL divergence; that is defined per trajectory.
        """
        merged: list[list[float]] = []
        for work, prob in sorted(zip(self.works, self.probabilities, strict=True)):
            if merged and abs(work - merged[-1][0]) <= tol:
                merged[-1][1] += prob
            else:
                merged.append([float(work), float(prob)])
        return [(w, p) for w, p in merged]


class TtmDistribution(BaseModel):
    """Joint distribution p(i, j) of a two-measurement protocol."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    initial_energies: np.ndarray = Field(..., description="First-measurement outcomes E_i")
    final_energies: np.ndarray = Field(..., description="Second-measurement outcomes E'_j")
    joint: np.ndarray = Field(..., description="p(i, j), rows i, columns j")

    @property
    def work_values(self) -> np.ndarray:
        """W_{i->j} = E'_j - E_i as a matrix aligned with joint."""
        return self.final_energies[np.newaxis, :] - self.initial_energies[:, np.newaxis]

    def average_exp_work(self, beta: float) -> float:
        """<exp(-beta W)> over the joint distribution."""
        return float(np.sum(self.joint * np.exp(-beta * self.work_values)))

    def work_marginal(self, tol: float = 1e-9) -> list[tuple[float, float]]:
        """(work, probability) pairs with equal works combined."""
        pairs = sorted(zip(self.work_values.ravel(), self.joint.ravel(), strict=True))
        merged: list[list[float]] = []
        for work, prob in pairs:
            if merged and abs(work - merged[-1][0]) <= tol:
                merged[-1][1] += prob
            else:
                merged.append([float(work), float(prob)])
        return [(w, p) for w, p in merged]


class ThermoReport(BaseModel):
    """Partition functions, free energies, entropies and fluctuation identities."""

    model_config = ConfigDict(frozen=True)

    beta: float = Field(..., description="Inverse temperature")
    log_z0: float = Field(..., description="ln Z0")
    log_z_tau: float = Field(..., description="ln Z_tau")
    log_z_tilde_0: float = Field(..., description="ln Z~_0")
    log_z_tilde_tau: float = Field(..., description="ln Z~_tau")
    z0: float = Field(..., ge=0, description="Partition function of H0; inf past double range")
    z_tau: float = Field(..., ge=0, description="Partition function of H_tau")
    z_tilde_0: float = Field(..., ge=0, description="Conditional partition function of G0")
    z_tilde_tau: float = Field(..., ge=0, description="Conditional partition function of G_tau")
    z_ratio: float = Field(..., ge=0, description="Z~_tau / Z~_0")
    delta_f: float = Field(..., description="Equilibrium free energy difference")
    rel_ent_tau: float = Field(..., description="S(rho~_tau || rho_tau^eq)")
    rel_ent_0: float = Field(..., description="S(rho~_0 || rho_0^eq)")
    entropy_initial: float = Field(..., description="von Neumann entropy of rho~_0")
    avg_work: float = Field(..., description="Average conditional work")
    excess_work: float = Field(..., description="avg_work - delta_f")
    kl_fb: float = Field(..., description="Per-trajectory KL divergence D[P_f || P_b]")
    rel_ent_evolved: float = Field(..., description="S(U rho~_0 U^dagger || rho_tau^eq)")
    distinguishability: float = Field(..., description="S(U rho~_0 U^dagger || rho~_tau)")
    crossing_work: float = Field(..., description="Work at which the detailed-FT ratio is 1")
    pointer_residual: float = Field(..., description="Max deviation of G_tau U|psi_i> from g_i U|psi_i>")


class CharacteristicValue(BaseModel):
    """Characteristic function evaluated at a possibly complex argument."""

    model_config = ConfigDict(frozen=True)

    u_arg: complex = Field(..., description="Argument, e.g. u or -u + i beta")
    value: complex = Field(..., description="Characteristic function value")


class SweepPoint(BaseModel):
    """C_f(u), C_b(-u + i beta) and their ratio at one grid point."""

    model_config = ConfigDict(frozen=True)

    u: float = Field(..., description="Real argument u")
    forward: complex = Field(..., description="C_f(u)")
    backward_shifted: complex = Field(..., description="C_b(-u + i beta)")

    @property
    def ratio(self) -> complex:
        return self.forward / self.backward_shifted
