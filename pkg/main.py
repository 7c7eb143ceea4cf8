"""
Command-line interface for one-time-measurement fluctuation theorems.
"""

import io
import json
import sys
from collections.abc import Callable, Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Any

import click
import numpy as np

from characteristic.functions import sweep_ratio, symmetry_ratio
from config.codec import (
    apply_overrides,
    dump_system_spec,
    load_config_file,
    parse_noise_model,
    parse_system_spec,
)
from config.presets import BENCHMARK_PRESET
from config.settings import Settings, load_config
from experiment.export import campaign_summary, format_float, round_float, write_trials_csv
from experiment.runner import CampaignRunner, trial_seed
from interferometry.pauli import labelled_coefficients, pauli_decompose
from linalg.core import set_max_dim
from models.campaign import BackendKind, CampaignConfig
from models.system import Direction, Endpoint, SystemSpec
from thermo.report import kl_from_ratio, thermo_report
from thermo.states import conditional_spectrum
from thermo.work import work_distribution
from utils.errors import ConfigError, NumericalError
from utils.logger import get_logger, setup_logger

logger = get_logger(__name__)

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

SWEEP_COLUMNS = ["u", "cf_re", "cf_im", "cb_re", "cb_im", "ratio_re", "ratio_im", "ratio_abs"]


@contextmanager
def _exit_codes() -> Iterator[None]:
    """Map toolkit errors to exit codes with a message on stderr."""
    try:
        yield
    except ConfigError as exc:
        click.echo(f"Configuration error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    except NumericalError as exc:
        click.echo(f"Numerical error: {exc}", err=True)
        sys.exit(EXIT_NUMERICAL)
    except (OverflowError, FloatingPointError) as exc:
        click.echo(f"Numerical error: {exc}", err=True)
        sys.exit(EXIT_NUMERICAL)
    except OSError as exc:
        click.echo(f"I/O error: {exc}", err=True)
        sys.exit(EXIT_IO)


def _rounded(value: Any) -> Any:
    """Round every float in a JSON-like structure to 9 significant digits; inf and nan become null."""
    if isinstance(value, dict):
        return {k: _rounded(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [_rounded(v) for v in value]
    if isinstance(value, complex | np.complexfloating):
        return [round_float(value.real), round_float(value.imag)]
    if isinstance(value, bool | int | np.integer):
        return value
    if isinstance(value, float | np.floating):
        return round_float(value) if np.isfinite(value) else None
    return value


def _emit(text: str, path: Path | None) -> None:
    if path is None:
        click.echo(text, nl=False)
        return
    with open(path, "w", newline="") as file:
        file.write(text)
    logger.info("Wrote %s", path)


def _to_json(data: Any) -> str:
    return json.dumps(data, indent=2) + "\n"


def system_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """Options that select the problem instance."""
    func = click.option(
        "--set",
        "overrides",
        multiple=True,
        metavar="KEY=VAL",
        help="Dotted config override, e.g. beta=0.7; last one wins",
    )(func)
    func = click.option(
        "--config",
        "config_path",
        type=click.Path(path_type=Path),
        default=None,
        help="System config file (JSON or YAML); a missing or unreadable file is an I/O error (exit 4)",
    )(func)
    func = click.option(
        "--preset",
        type=click.Choice([BENCHMARK_PRESET]),
        default=None,
        help="Built-in problem instance",
    )(func)
    return func


def _load_spec(preset: str | None, config_path: Path | None, overrides: tuple[str, ...]) -> SystemSpec:
    raw: dict[str, Any] = load_config_file(config_path) if config_path else {}
    if preset:
        raw["preset"] = preset
    if "preset" not in raw and "h0" not in raw:
        raw["preset"] = BENCHMARK_PRESET
    return parse_system_spec(apply_overrides(raw, overrides))


def _campaign_config(
    settings: Settings,
    spec: SystemSpec,
    u: float | None,
    shots: int | None,
    trials: int | None,
    noise: str | None,
    seed: int | None,
    backend: str | None,
    workers: int | None,
) -> CampaignConfig:
    defaults = settings.campaign
    return CampaignConfig(
        spec=spec,
        u=defaults.u if u is None else u,
        shots=defaults.shots if shots is None else shots,
        trials=defaults.trials if trials is None else trials,
        noise=parse_noise_model(noise, settings.noise_presets),
        seed=defaults.seed if seed is None else seed,
        backend=defaults.backend if backend is None else BackendKind(backend),
        workers=defaults.workers if workers is None else workers,
    )


def sampling_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """Options shared by the sampling commands."""
    options = [
        click.option("--u", type=float, default=None, help="Characteristic-function argument"),
        click.option("--shots", type=click.IntRange(min=1), default=None, help="Shots per circuit and observable"),
        click.option("--noise", default=None, help="Noise preset (ibm-like, none) or file"),
        click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=None, help="Campaign seed"),
        click.option(
            "--backend",
            type=click.Choice([kind.value for kind in BackendKind]),
            default=None,
            help="Execution backend",
        ),
    ]
    for option in reversed(options):
        func = option(func)
    return func


@click.group()
@click.option("--verbose", is_flag=True, help="Enable debug logging")
@click.option(
    "--settings",
    "settings_path",
    type=click.Path(path_type=Path),
    default=None,
    help="Settings file (default: config.yaml)",
)
@click.pass_context
def main(ctx: click.Context, verbose: bool, settings_path: Path | None):
    """One-time-measurement quantum fluctuation theorems."""
    with _exit_codes():
        settings = load_config(settings_path)
    setup_logger(level="DEBUG" if verbose else settings.logging.level)
    set_max_dim(settings.linalg.max_dim)
    ctx.obj = settings


@main.command()
@system_options
@click.option("--u", type=float, default=None, help="Argument of the symmetry ratio")
@click.option("--out", type=click.Path(path_type=Path), default=None, help="Output file")
@click.option("--dump-config", is_flag=True, help="Print the explicit system config and exit")
@click.pass_obj
def exact(
    settings: Settings,
    preset: str | None,
    config_path: Path | None,
    overrides: tuple[str, ...],
    u: float | None,
    out: Path | None,
    dump_config: bool,
):
    """Exact thermodynamic report and symmetry ratio."""
    with _exit_codes():
        spec = _load_spec(preset, config_path, overrides)
        if dump_config:
            # unrounded so the dump re-parses to the same instance
            _emit(_to_json(dump_system_spec(spec)), out)
            return

        u = settings.campaign.u if u is None else u
        report = thermo_report(spec)
        ratio = symmetry_ratio(spec, u)
        forward = work_distribution(spec, Direction.FORWARD)
        backward = work_distribution(spec, Direction.BACKWARD)

        data: dict[str, Any] = {
            "u": u,
            "ratio": ratio.real,
            "ratio_imag": ratio.imag,
            **report.model_dump(),
            "kl_from_ratio": kl_from_ratio(report.avg_work, spec.beta, ratio),
            "forward_atoms": [list(atom) for atom in forward.merged()],
            "backward_atoms": [list(atom) for atom in backward.merged()],
        }
        _emit(_to_json(_rounded(data)), out)


@main.command()
@system_options
@sampling_options
@click.option("--trial-index", type=click.IntRange(min=0), default=0, help="Trial number j")
@click.option("--out", type=click.Path(path_type=Path), default=None, help="Output file")
@click.pass_obj
def estimate(
    settings: Settings,
    preset: str | None,
    config_path: Path | None,
    overrides: tuple[str, ...],
    u: float | None,
    shots: int | None,
    noise: str | None,
    seed: int | None,
    backend: str | None,
    trial_index: int,
    out: Path | None,
):
    """Single-trial estimate of R = |C_f(u) / C_b(-u + i beta)|."""
    with _exit_codes():
        spec = _load_spec(preset, config_path, overrides)
        config = _campaign_config(settings, spec, u, shots, 1, noise, seed, backend, 1)
        runner = CampaignRunner(config)
        r_j = runner.run_trial(trial_index)
        data = {
            "u": config.u,
            "trial_index": trial_index,
            "trial_seed": trial_seed(config.seed, trial_index),
            "shots": config.shots,
            "backend": config.backend.value,
            "r_j": r_j,
            "r_true": runner.r_true,
            "error_rate_pct": abs(1.0 - r_j / runner.r_true) * 100.0,
        }
        _emit(_to_json(_rounded(data)), out)


@main.command()
@system_options
@sampling_options
@click.option("--trials", type=click.IntRange(min=1), default=None, help="Number of trials N")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Trial threads")
@click.option("--out", type=click.Path(path_type=Path), default=None, help="Trial CSV file")
@click.option("--summary", type=click.Path(path_type=Path), default=None, help="Summary JSON file")
@click.pass_obj
def campaign(
    settings: Settings,
    preset: str | None,
    config_path: Path | None,
    overrides: tuple[str, ...],
    u: float | None,
    shots: int | None,
    noise: str | None,
    seed: int | None,
    backend: str | None,
    trials: int | None,
    workers: int | None,
    out: Path | None,
    summary: Path | None,
):
    """
    Repeated estimation of R with running mean, 99% CI and error rate.

    The trial CSV goes to --out (stdout if omitted). The summary JSON goes
    to --summary, or to stdout after any CSV when --summary is omitted.
    """
    with _exit_codes():
        spec = _load_spec(preset, config_path, overrides)
        config = _campaign_config(settings, spec, u, shots, trials, noise, seed, backend, workers)
        result = CampaignRunner(config).run()

        buffer = io.StringIO()
        write_trials_csv(result, buffer)
        _emit(buffer.getvalue(), out)

        _emit(_to_json(campaign_summary(config, result)), summary)


@main.command("sweep-u")
@system_options
@click.option("--u-min", type=float, default=None, help="First grid point")
@click.option("--u-max", type=float, default=None, help="Last grid point")
@click.option("--points", type=click.IntRange(min=1), default=None, help="Grid size")
@click.option("--workers", type=click.IntRange(min=1), default=1, help="Threads")
@click.option("--out", type=click.Path(path_type=Path), default=None, help="Output CSV file")
@click.pass_obj
def sweep_u(
    settings: Settings,
    preset: str | None,
    config_path: Path | None,
    overrides: tuple[str, ...],
    u_min: float | None,
    u_max: float | None,
    points: int | None,
    workers: int,
    out: Path | None,
):
    """C_f(u), C_b(-u + i beta) and their ratio over a u grid."""
    with _exit_codes():
        spec = _load_spec(preset, config_path, overrides)
        grid = np.linspace(
            settings.sweep.u_min if u_min is None else u_min,
            settings.sweep.u_max if u_max is None else u_max,
            settings.sweep.points if points is None else points,
        )
        rows = [",".join(SWEEP_COLUMNS)]
        for point in sweep_ratio(spec, [float(u) for u in grid], workers=workers):
            ratio = point.ratio
            values = [
                point.u,
                point.forward.real,
                point.forward.imag,
                point.backward_shifted.real,
                point.backward_shifted.imag,
                ratio.real,
                ratio.imag,
                abs(ratio),
            ]
            rows.append(",".join(format_float(v) for v in values))
        _emit("\n".join(rows) + "\n", out)


@main.command()
@system_options
@click.option(
    "--which",
    type=click.Choice(["h0", "gtau"]),
    default="h0",
    show_default=True,
    help="exp(-beta G0) or exp(+beta G_tau)",
)
@click.option("--out", type=click.Path(path_type=Path), default=None, help="Output file")
@click.pass_obj
def decompose(
    settings: Settings,
    preset: str | None,
    config_path: Path | None,
    overrides: tuple[str, ...],
    which: str,
    out: Path | None,
):
    """Nonzero Pauli coefficients of the backward-circuit exponentials."""
    with _exit_codes():
        spec = _load_spec(preset, config_path, overrides)
        if which == "h0":
            matrix = conditional_spectrum(spec, Endpoint.INITIAL).exponential(-spec.beta)
        else:
            matrix = conditional_spectrum(spec, Endpoint.FINAL).exponential(spec.beta)
        coefficients = labelled_coefficients(pauli_decompose(matrix))
        _emit(_to_json(_rounded(coefficients)), out)


if __name__ == "__main__":
    main()
