import io

import numpy as np
import pytest

from adapters.backends import DensityMatrixBackend, ExactBackend, create_backend
from characteristic.functions import cf_trace
from experiment.export import TRIAL_COLUMNS, campaign_summary, write_trials_csv
from experiment.runner import (
    Z_99,
    CampaignRunner,
    checkpoint_sizes,
    run_campaign,
    run_trial,
    running_statistics,
    trial_seed,
)
from interferometry.circuits import (
    assemble_backward,
    assemble_forward,
    build_backward_jobs,
    build_forward_jobs,
)
from models.campaign import BackendKind, CampaignConfig
from models.circuit import NoiseModel, Observable
from tests.helpers import BENCHMARK_RATIO, make_random_spec
from thermo.report import thermo_report


def test_backend_factory():
    assert isinstance(create_backend("exact"), ExactBackend)
    assert isinstance(create_backend(BackendKind.DENSITY_MATRIX), DensityMatrixBackend)
    assert create_backend("exact").backend_kind == BackendKind.EXACT


def test_trial_seeds_are_stable_and_distinct():
    assert trial_seed(7, 3) == trial_seed(7, 3)
    assert len({trial_seed(7, j) for j in range(100)}) == 100


def test_running_statistics_single_trial():
    stats = running_statistics(np.array([0.5]), r_true=0.5)
    assert stats["running_mean"].tolist() == [0.5]
    assert stats["ci99_halfwidth"].tolist() == [0.0]
    assert stats["error_rate_pct"].tolist() == [0.0]


def test_running_statistics_recomputable():
    r = np.array([0.40, 0.45, 0.43, 0.44])
    stats = running_statistics(r, r_true=0.433167)
    for n in range(1, 5):
        assert stats["running_mean"][n - 1] == np.mean(r[:n])
    assert stats["ci99_halfwidth"][3] == pytest.approx(Z_99 * np.std(r, ddof=1) / 2.0)
    assert Z_99 == pytest.approx(2.5758, abs=1e-4)
    np.testing.assert_allclose(
        stats["error_rate_pct"], np.abs(1 - stats["running_mean"] / 0.433167) * 100
    )


def test_checkpoint_sizes():
    assert checkpoint_sizes(20) == [10, 15, 20]
    assert checkpoint_sizes(22) == [10, 15, 20, 22]
    assert checkpoint_sizes(3) == [3]


def test_exact_backend_reproduces_ratio(benchmark_spec):
    config = CampaignConfig(spec=benchmark_spec, trials=3, backend=BackendKind.EXACT)
    result = run_campaign(config)
    np.testing.assert_allclose(result.per_trial_r, BENCHMARK_RATIO, atol=5e-6)
    assert result.r_true == pytest.approx(BENCHMARK_RATIO, abs=5e-6)
    assert result.error_rate_pct[-1] < 1e-6


def test_exact_backend_trivial_protocol(trivial_spec):
    config = CampaignConfig(spec=trivial_spec, trials=1, backend=BackendKind.EXACT)
    assert run_trial(config, 0) == pytest.approx(1.0, abs=1e-12)


def test_single_trial_campaign(benchmark_spec):
    config = CampaignConfig(spec=benchmark_spec, shots=2000, trials=1)
    result = run_campaign(config)
    assert result.trials == 1
    np.testing.assert_array_equal(result.running_mean, result.per_trial_r)
    assert result.ci99_halfwidth[0] == 0.0


def test_noiseless_trial_is_close(benchmark_spec):
    config = CampaignConfig(spec=benchmark_spec, trials=1)
    assert abs(run_trial(config, 0) - BENCHMARK_RATIO) < 0.1


def test_campaign_is_independent_of_thread_count(benchmark_spec):
    base = dict(spec=benchmark_spec, shots=3000, trials=8, seed=99, noise=NoiseModel(depol_ctrl=0.01))
    sequential = run_campaign(CampaignConfig(**base, workers=1))
    threaded = run_campaign(CampaignConfig(**base, workers=4))
    np.testing.assert_array_equal(sequential.per_trial_r, threaded.per_trial_r)
    np.testing.assert_array_equal(sequential.ci99_low, threaded.ci99_low)


def test_runner_reuses_prepared_jobs(benchmark_spec, mocker):
    runner = CampaignRunner(CampaignConfig(spec=benchmark_spec, shots=500, trials=2))
    spy = mocker.spy(runner.backend, "prepare")
    runner.run()
    spy.assert_not_called()


def test_export_csv_and_summary(benchmark_spec):
    config = CampaignConfig(spec=benchmark_spec, shots=1000, trials=12, seed=5)
    result = run_campaign(config)

    buffer = io.StringIO()
    write_trials_csv(result, buffer)
    lines = buffer.getvalue().splitlines()
    assert lines[0] == ",".join(TRIAL_COLUMNS)
    assert len(lines) == 13
    assert lines[1].split(",")[0] == "0"

    summary = campaign_summary(config, result)
    assert summary["trials"] == 12
    assert summary["seed"] == 5
    assert [cp["trials"] for cp in summary["checkpoints"]] == [10, 12]
    assert summary["mean_R_N"] == float(f"{result.running_mean[-1]:.9g}")


@pytest.mark.slow
def test_noiseless_campaign_error_rate(benchmark_spec):
    config = CampaignConfig(spec=benchmark_spec, shots=20000, trials=100, seed=20240101)
    result = run_campaign(config)
    assert result.error_rate_pct[-1] < 1.0
    assert result.ci99_low[-1] < result.running_mean[-1] < result.ci99_high[-1]
    assert result.kl_estimate == pytest.approx(
        0.5 * CampaignRunner(config).avg_work + np.log(result.running_mean[-1])
    )


@pytest.mark.slow
def test_error_grows_with_controlled_gate_noise(benchmark_spec):
    errors = []
    for p in (0.0, 0.002, 0.01, 0.05):
        per_seed = []
        for seed in (11, 12, 13):
            config = CampaignConfig(
                spec=benchmark_spec,
                shots=1_000_000,
                trials=50,
                seed=seed,
                noise=NoiseModel(depol_ctrl=p),
            )
            result = run_campaign(config)
            per_seed.append(abs(result.running_mean[-1] - result.r_true))
        errors.append(float(np.mean(per_seed)))
    assert errors == sorted(errors)


def _circuit_values(backend, jobs):
    return [backend.prepare(job) for job in jobs]


def _probabilities_to_value(probs):
    return complex(2 * probs[Observable.X] - 1, 2 * probs[Observable.Y] - 1)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(50))
def test_exact_values_agree_with_both_backends(seed):
    dim = (2, 4)[seed % 2]
    spec = make_random_spec(500 + seed, dim, custom_basis=bool(seed % 4 >= 2), scale=0.5)
    z_ratio = thermo_report(spec).z_ratio
    exact = ExactBackend()
    density = DensityMatrixBackend()
    for u in (-1.0, 0.3, 1.0):
        forward = build_forward_jobs(spec, u)
        backward = build_backward_jobs(spec, u)
        backward_jobs = [entry.job for entry in backward]

        cf = cf_trace(spec, u, "forward").value
        cb = cf_trace(spec, u, "backward_shifted").value
        assert cf / cb == pytest.approx(z_ratio, rel=1e-8)

        cf_exact = assemble_forward(forward, _circuit_values(exact, forward))
        cb_exact = assemble_backward(backward, _circuit_values(exact, backward_jobs))
        cf_density = assemble_forward(
            forward, [_probabilities_to_value(p) for p in _circuit_values(density, forward)]
        )
        cb_density = assemble_backward(
            backward, [_probabilities_to_value(p) for p in _circuit_values(density, backward_jobs)]
        )
        for value in (cf_exact, cf_density):
            assert value == pytest.approx(cf, abs=1e-9)
        for value in (cb_exact, cb_density):
            assert value == pytest.approx(cb, abs=1e-9)


def _chunked_means(runner, chunks, size):
    values = np.array([runner.run_trial(j) for j in range(chunks * size)])
    return values.reshape(chunks, size)


@pytest.mark.slow
def test_ci99_covers_exact_ratio(benchmark_spec):
    # each block of trial indices is an independent campaign with its own trial seeds
    runner = CampaignRunner(CampaignConfig(spec=benchmark_spec, shots=20000, trials=30, seed=424242))
    campaigns = _chunked_means(runner, 100, 30)
    covered = 0
    for per_trial in campaigns:
        stats = running_statistics(per_trial, runner.r_true)
        covered += int(stats["ci99_low"][-1] <= runner.r_true <= stats["ci99_high"][-1])
    assert covered >= 95


@pytest.mark.slow
def test_error_shrinks_with_more_shots(benchmark_spec):
    medians = []
    for shots in (2000, 8000):
        runner = CampaignRunner(CampaignConfig(spec=benchmark_spec, shots=shots, trials=10, seed=7))
        replicas = _chunked_means(runner, 40, 10)
        errors = np.abs(replicas.mean(axis=1) - runner.r_true)
        medians.append(float(np.median(errors)))
    assert medians[1] < medians[0]
