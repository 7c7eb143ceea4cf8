"""
Config-file codec: matrices, SystemSpec, NoiseModel and dotted overrides.

Matrices are arrays of rows whose entries are [re, im] pairs; plain real
numbers are accepted on input.
"""

import copy
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any

import numpy as np
import yaml
from pydantic import ValidationError

from config.presets import NOISE_PRESETS, BENCHMARK_PRESET, benchmark_preset
from linalg.core import ComplexMatrix, mat_fn_hermitian
from models.circuit import NoiseModel
from models.system import SystemSpec
from utils.errors import ConfigError, DimensionMismatchError, InvalidNoiseError

PRESET_PARAM_KEYS = {"omega", "big_omega", "coupling", "tau"}


def decode_matrix(raw: Any, name: str = "matrix") -> ComplexMatrix:
    """Decode [[[re, im], ...], ...] (or real entries) into a complex array."""
    if not isinstance(raw, list) or not raw or not all(isinstance(row, list) for row in raw):
        raise ConfigError(f"{name} must be a non-empty array of rows")
    rows = []
    for row in raw:
        entries = []
        for entry in row:
            if isinstance(entry, bool):
                raise ConfigError(f"{name} has a boolean entry")
            if isinstance(entry, int | float):
                entries.append(complex(entry))
            elif isinstance(entry, list) and len(entry) == 2:
                entries.append(complex(float(entry[0]), float(entry[1])))
            else:
                raise ConfigError(f"{name} entry {entry!r} is not a number or [re, im] pair")
        rows.append(entries)
    if len({len(row) for row in rows}) != 1:
        raise ConfigError(f"{name} rows have different lengths")
    return np.array(rows, dtype=np.complex128)


def encode_matrix(m: ComplexMatrix) -> list[list[list[float]]]:
    """Encode a complex array as rows of [re, im] with full float precision."""
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def _decode_unitary(raw: Any) -> ComplexMatrix:
    if isinstance(raw, Mapping):
        if set(raw) != {"generator", "time"}:
            raise ConfigError('"u" object needs exactly "generator" and "time"')
        generator = decode_matrix(raw["generator"], "u.generator")
        # U = exp(-i K t)
        return mat_fn_hermitian(generator, -1j * float(raw["time"]))
    return decode_matrix(raw, "u")


def parse_system_spec(raw: Mapping[str, Any]) -> SystemSpec:
    """
    Build a SystemSpec from a config mapping.

    An optional "preset" supplies defaults (tuned by "preset_params");
    explicit keys override preset values.

    Args:
        raw: Parsed config file

    Returns:
        Validated SystemSpec
    """
    if not isinstance(raw, Mapping):
        raise ConfigError("System config must be a mapping")

    fields: dict[str, Any] = {}
    preset = raw.get("preset")
    if preset is not None:
        if preset != BENCHMARK_PRESET:
            raise ConfigError(f"Unknown preset {preset!r}; available: {BENCHMARK_PRESET}")
        params = dict(raw.get("preset_params") or {})
        unknown = set(params) - PRESET_PARAM_KEYS
        if unknown:
            raise ConfigError(f"Unknown preset_params: {sorted(unknown)}")
        try:
            base = benchmark_preset(**{k: float(v) for k, v in params.items()})
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"Invalid preset_params: {exc}") from exc
        fields = {"h0": base.h0, "h_tau": base.h_tau, "u_evol": base.u_evol, "beta": base.beta}
    elif "preset_params" in raw:
        raise ConfigError('"preset_params" requires "preset"')

    try:
        if "h0" in raw:
            fields["h0"] = decode_matrix(raw["h0"], "h0")
        if "h_tau" in raw:
            fields["h_tau"] = decode_matrix(raw["h_tau"], "h_tau")
        if "u" in raw:
            fields["u_evol"] = _decode_unitary(raw["u"])
        if "beta" in raw:
            fields["beta"] = float(raw["beta"])
        if raw.get("initial_basis") is not None:
            fields["initial_basis"] = decode_matrix(raw["initial_basis"], "initial_basis")
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"Invalid system config: {exc}") from exc

    missing = {"h0", "h_tau", "u_evol", "beta"} - set(fields)
    if missing:
        raise ConfigError(f"System config is missing {sorted(missing)}")
    if not np.isfinite(fields["beta"]):
        raise ConfigError("beta must be finite")

    try:
        return SystemSpec(**fields)
    except (ValidationError, DimensionMismatchError) as exc:
        raise ConfigError(f"Invalid system config: {exc}") from exc


def dump_system_spec(spec: SystemSpec) -> dict[str, Any]:
    """Explicit, preset-free config that re-parses to an identical SystemSpec."""
    raw: dict[str, Any] = {
        "beta": spec.beta,
        "h0": encode_matrix(spec.h0),
        "h_tau": encode_matrix(spec.h_tau),
        "u": encode_matrix(spec.u_evol),
    }
    if spec.initial_basis is not None:
        raw["initial_basis"] = encode_matrix(spec.initial_basis)
    return raw


def load_config_file(path: Path | str) -> dict[str, Any]:
    """Read a JSON or YAML config file into a mapping."""
    with open(path) as file:
        try:
            raw = yaml.safe_load(file)
        except yaml.YAMLError as exc:
            raise ConfigError(f"Malformed config file {path}: {exc}") from exc
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise ConfigError(f"Config file {path} must contain a mapping")
    return raw


def parse_noise_model(
    raw: str | Mapping[str, Any] | None,
    presets: Mapping[str, NoiseModel] | None = None,
) -> NoiseModel | None:
    """
    Resolve a noise model from a preset name, a file path or a mapping.

    Args:
        raw: "ibm-like", "none", path to a JSON/YAML file, or NoiseModel fields
        presets: Named presets; defaults to the built-in ones

    Returns:
        NoiseModel, or None when raw is None
    """
    if raw is None:
        return None
    presets = NOISE_PRESETS if presets is None else presets
    if isinstance(raw, str):
        if raw in presets:
            return presets[raw]
        if not Path(raw).is_file():
            raise InvalidNoiseError(f"Unknown noise preset or file {raw!r}; presets: {sorted(presets)}")
        raw = load_config_file(raw)
    try:
        return NoiseModel.model_validate(dict(raw))
    except (ValidationError, TypeError, ValueError) as exc:
        raise InvalidNoiseError(f"Invalid noise model: {exc}") from exc


def apply_overrides(raw: Mapping[str, Any], overrides: Sequence[str]) -> dict[str, Any]:
    """
    Apply dotted KEY=VALUE overrides; values are parsed as YAML scalars.

    Later overrides win. The input mapping is not modified.
    """
    result = copy.deepcopy(dict(raw))
    for item in overrides:
        key, sep, text = item.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f"Override {item!r} is not KEY=VALUE")
        try:
            value = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise ConfigError(f"Override {item!r} has an unparsable value") from exc

        parts = key.split(".")
        node = result
        for part in parts[:-1]:
            child = node.get(part)
            if not isinstance(child, dict):
                child = {}
                node[part] = child
            node = child
        node[parts[-1]] = value
    return result


