"""
CSV and JSON export of campaign results.
"""

import csv
from typing import Any, TextIO

from models.campaign import CampaignConfig, CampaignResult

TRIAL_COLUMNS = [
    "trial_index",
    "r_j",
    "running_mean",
    "ci99_low",
    "ci99_high",
    "error_rate_pct",
]

SIGNIFICANT_DIGITS = 9


def format_float(value: float) -> str:
    """Fixed 9-significant-digit text used in every exported file."""
    return f"{float(value):.{SIGNIFICANT_DIGITS}g}"


def round_float(value: float) -> float:
    return float(format_float(value))


def write_trials_csv(result: CampaignResult, stream: TextIO) -> None:
    """
    Write one row per trial with a header row.

    Args:
        result: Campaign result
        stream: Open text stream
    """
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(TRIAL_COLUMNS)
    for j in range(result.trials):
        writer.writerow(
            [
                j,
                format_float(result.per_trial_r[j]),
                format_float(result.running_mean[j]),
                format_float(result.ci99_low[j]),
                format_float(result.ci99_high[j]),
                format_float(result.error_rate_pct[j]),
            ]
        )


def campaign_summary(config: CampaignConfig, result: CampaignResult) -> dict[str, Any]:
    """Summary of a finished campaign with floats rounded for stable diffs."""
    return {
        "r_true": round_float(result.r_true),
        "mean_R_N": round_float(result.running_mean[-1]),
        "ci99": [round_float(result.ci99_low[-1]), round_float(result.ci99_high[-1])],
        "e_N_pct": round_float(result.error_rate_pct[-1]),
        "trials": result.trials,
        "shots": config.shots,
        "seed": config.seed,
        "u": round_float(config.u),
        "backend": config.backend.value,
        "noise": config.noise.model_dump() if config.noise else None,
        "kl_estimate": round_float(result.kl_estimate),
        "checkpoints": [
            {
                "trials": cp.trials,
                "mean_R_N": round_float(cp.mean_r),
                "ci99": [round_float(cp.ci99_low), round_float(cp.ci99_high)],
                "e_N_pct": round_float(cp.error_rate_pct),
            }
            for cp in result.checkpoints
        ],
    }
