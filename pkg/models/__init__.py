"""
Pydantic models for problem instances, distributions, circuits and campaigns.
"""

from models.campaign import BackendKind, CampaignConfig, CampaignResult, Checkpoint
from models.circuit import (
    CircuitJob,
    CircuitStep,
    ControlMode,
    NoiseModel,
    Observable,
    PauliDecomposition,
    PauliPairJob,
    ShotEstimate,
)
from models.distribution import (
    CharacteristicValue,
    SweepPoint,
    ThermoReport,
    TtmDistribution,
    WorkAtom,
    WorkDistribution,
)
from models.system import Direction, Endpoint, SystemSpec

__all__ = [
    # System models
    "SystemSpec",
    "Endpoint",
    "Direction",

    # Distribution models
    "WorkAtom",
    "WorkDistribution",
    "TtmDistribution",
    "ThermoReport",
    "CharacteristicValue",
    "SweepPoint",

    # Circuit models
    "CircuitJob",
    "CircuitStep",
    "ControlMode",
    "Observable",
    "NoiseModel",
    "ShotEstimate",
    "PauliDecomposition",
    "PauliPairJob",

    # Campaign models
    "BackendKind",
    "CampaignConfig",
    "CampaignResult",
    "Checkpoint",
]
