"""
Verification campaign: repeated estimation of R = |C_f(u) / C_b(-u + i beta)|.
"""

from concurrent.futures import ThreadPoolExecutor

import numpy as np
import scipy.stats

from adapters.backends import create_backend
from adapters.base.backend_base import InterferometryBackend
from characteristic.functions import symmetry_ratio
from interferometry.circuits import (
    assemble_backward,
    assemble_forward,
    build_backward_jobs,
    build_forward_jobs,
)
from models.campaign import CampaignConfig, CampaignResult, Checkpoint
from models.system import Direction
from thermo.report import kl_from_ratio
from thermo.work import work_distribution
from utils.errors import DivisionNearZeroError
from utils.logger import get_logger
from utils.rng import derive_seed

logger = get_logger(__name__)

Z_99 = float(scipy.stats.norm.ppf(0.995))
ESTIMATE_FLOOR = 1e-12
CHECKPOINT_START = 10
CHECKPOINT_STEP = 5


def trial_seed(campaign_seed: int, trial_index: int) -> int:
    """Seed of trial j, independent of execution order."""
    return derive_seed(campaign_seed, trial_index)


def running_statistics(per_trial_r: np.ndarray, r_true: float) -> dict[str, np.ndarray]:
    """
    Running mean, 99% CI halfwidth and error rate after each trial.

    The CI uses the normal approximation z_0.995 s_N / sqrt(N) with the
    sample standard deviation; it is 0 for N = 1.
    """
    r = np.asarray(per_trial_r, dtype=np.float64)
    running_mean = np.array([np.mean(r[: n + 1]) for n in range(len(r))])
    halfwidth = np.array(
        [0.0 if n == 0 else Z_99 * np.std(r[: n + 1], ddof=1) / np.sqrt(n + 1) for n in range(len(r))]
    )
    error_rate = np.abs(1.0 - running_mean / r_true) * 100.0
    return {
        "running_mean": running_mean,
        "ci99_halfwidth": halfwidth,
        "ci99_low": running_mean - halfwidth,
        "ci99_high": running_mean + halfwidth,
        "error_rate_pct": error_rate,
    }


def checkpoint_sizes(trials: int) -> list[int]:
    """N = 10, 15, 20, ... and the final trial count."""
    sizes = list(range(CHECKPOINT_START, trials + 1, CHECKPOINT_STEP))
    if not sizes or sizes[-1] != trials:
        sizes.append(trials)
    return sizes


class CampaignRunner:
    """Builds the job sets once and runs trials against a backend."""

    def __init__(self, config: CampaignConfig, backend: InterferometryBackend | None = None):
        """
        Initialize the runner.

        Args:
            config: Campaign configuration
            backend: Execution backend; defaults to the one named in config
        """
        self.config = config
        self.backend = backend or create_backend(config.backend, config.noise)
        spec = config.spec

        self.forward_jobs = build_forward_jobs(spec, config.u)
        self.backward_jobs = build_backward_jobs(spec, config.u)
        self._forward_prepared = self.backend.prepare_all(self.forward_jobs)
        self._backward_prepared = self.backend.prepare_all([entry.job for entry in self.backward_jobs])

        self.r_true = abs(symmetry_ratio(spec, config.u))
        self.avg_work = work_distribution(spec, Direction.FORWARD).mean()

        logger.info(
            "Campaign ready: backend=%s noise=%s circuits=%d",
            self.backend.backend_kind.value,
            self.backend.noise.model_dump(),
            2 * (len(self.forward_jobs) + len(self.backward_jobs)),
        )

    def run_trial(self, trial_index: int) -> float:
        """
        One trial: sample every circuit with the trial's seed and form R_j.

        Args:
            trial_index: Zero-based trial number

        Returns:
            R_j = |C_f / C_b| from the estimates
        """
        seed = trial_seed(self.config.seed, trial_index)
        shots = self.config.shots
        forward_values = self.backend.estimate_all(self._forward_prepared, shots, seed)
        backward_values = self.backend.estimate_all(
            self._backward_prepared, shots, seed, offset=len(self._forward_prepared)
        )
        cf = assemble_forward(self.forward_jobs, forward_values)
        cb = assemble_backward(self.backward_jobs, backward_values)
        if abs(cb) < ESTIMATE_FLOOR:
            raise DivisionNearZeroError(f"Trial {trial_index}: |C_b estimate| = {abs(cb):.3e}")
        return abs(cf / cb)

    def _run_logged(self, trial_index: int) -> float:
        try:
            return self.run_trial(trial_index)
        except Exception:
            logger.error("Trial %d failed; aborting campaign", trial_index)
            raise

    def run(self) -> CampaignResult:
        """Run all trials and compute the running statistics."""
        trials = self.config.trials
        logger.info("Starting campaign: trials=%d shots=%d seed=%d", trials, self.config.shots, self.config.seed)

        if self.config.workers > 1:
            with ThreadPoolExecutor(max_workers=self.config.workers) as pool:
                values = list(pool.map(self._run_logged, range(trials)))
        else:
            values = [self._run_logged(j) for j in range(trials)]

        per_trial_r = np.array(values, dtype=np.float64)
        stats = running_statistics(per_trial_r, self.r_true)
        checkpoints = [
            Checkpoint(
                trials=n,
                mean_r=float(stats["running_mean"][n - 1]),
                ci99_low=float(stats["ci99_low"][n - 1]),
                ci99_high=float(stats["ci99_high"][n - 1]),
                error_rate_pct=float(stats["error_rate_pct"][n - 1]),
            )
            for n in checkpoint_sizes(trials)
        ]
        result = CampaignResult(
            per_trial_r=per_trial_r,
            r_true=self.r_true,
            checkpoints=checkpoints,
            kl_estimate=kl_from_ratio(self.avg_work, self.config.spec.beta, stats["running_mean"][-1]),
            **stats,
        )
        logger.info(
            "Campaign finished: <R>_%d=%.9g e_N=%.4g%%",
            trials,
            result.running_mean[-1],
            result.error_rate_pct[-1],
        )
        return result


def run_trial(config: CampaignConfig, trial_index: int) -> float:
    """R_j for a single trial of config."""
    return CampaignRunner(config).run_trial(trial_index)


def run_campaign(config: CampaignConfig) -> CampaignResult:
    """Run every trial of config."""
    return CampaignRunner(config).run()
