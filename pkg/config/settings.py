# Runtime settings for otm-fluct
# Defaults live in config.yaml at the repository root

from pathlib import Path

import yaml
from pydantic import BaseModel, Field, ValidationError

from config.presets import NOISE_PRESETS
from models.campaign import BackendKind
from models.circuit import NoiseModel
from utils.errors import ConfigError

DEFAULT_CONFIG_PATH = Path(__file__).parent.parent / "config.yaml"


class LoggingSettings(BaseModel):
    level: str = Field("INFO", description="Root log level")


class LinalgSettings(BaseModel):
    max_dim: int = Field(2**12, ge=1, description="Kronecker-product dimension cap")


class CampaignSettings(BaseModel):
    u: float = Field(1.0, description="Characteristic-function argument")
    shots: int = Field(20000, ge=1, description="Shots per circuit and observable")
    trials: int = Field(100, ge=1, description="Number of trials")
    seed: int = Field(20240101, ge=0, lt=2**64, description="Campaign seed")
    workers: int = Field(1, ge=1, description="Trial threads")
    backend: BackendKind = Field(BackendKind.DENSITY_MATRIX, description="Execution backend")


class SweepSettings(BaseModel):
    u_min: float = Field(-3.0, description="First grid point")
    u_max: float = Field(3.0, description="Last grid point")
    points: int = Field(61, ge=1, description="Number of grid points")


class Settings(BaseModel):
    """Parsed contents of config.yaml."""

    logging: LoggingSettings = Field(default_factory=LoggingSettings)
    linalg: LinalgSettings = Field(default_factory=LinalgSettings)
    campaign: CampaignSettings = Field(default_factory=CampaignSettings)
    sweep: SweepSettings = Field(default_factory=SweepSettings)
    noise_presets: dict[str, NoiseModel] = Field(default_factory=lambda: dict(NOISE_PRESETS))


def load_config(path: Path | str | None = None) -> Settings:
    """
    Load settings from config.yaml.

    Args:
        path: Settings file; defaults to config.yaml next to the packages

    Returns:
        Settings, or built-in defaults when the default file is absent
    """
    config_path = Path(path) if path is not None else DEFAULT_CONFIG_PATH
    if path is None and not config_path.exists():
        return Settings()

    with open(config_path) as file:
        try:
            raw = yaml.safe_load(file) or {}
        except yaml.YAMLError as exc:
            raise ConfigError(f"Malformed settings file {config_path}: {exc}") from exc

    if not isinstance(raw, dict):
        raise ConfigError(f"Settings file {config_path} must contain a mapping")
    try:
        settings = Settings.model_validate(raw)
    except ValidationError as exc:
        raise ConfigError(f"Invalid settings in {config_path}: {exc}") from exc

    # user presets extend the built-in ones
    settings.noise_presets = {**NOISE_PRESETS, **settings.noise_presets}
    return settings
