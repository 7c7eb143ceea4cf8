"""
Verification campaigns and their export formats.
"""

from experiment.export import campaign_summary, write_trials_csv
from experiment.runner import CampaignRunner, run_campaign, run_trial, trial_seed

__all__ = [
    "CampaignRunner",
    "campaign_summary",
    "run_campaign",
    "run_trial",
    "trial_seed",
    "write_trials_csv",
]
