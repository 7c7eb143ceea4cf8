import numpy as np
import pytest

from characteristic.functions import cf_trace
from interferometry.circuits import (
    assemble_backward,
    assemble_forward,
    build_backward_jobs,
    build_forward_jobs,
    hadamard_test_exact,
    pair_count,
)
from interferometry.pauli import (
    labelled_coefficients,
    pauli_decompose,
    pauli_index,
    pauli_label,
    pauli_reconstruct,
    pauli_string,
)
from interferometry.simulator import measurement_probabilities, sample_job
from linalg.core import dagger
from models.circuit import CircuitJob, NoiseModel, Observable
from models.system import Endpoint
from tests.helpers import make_random_spec, random_hermitian
from thermo.states import conditional_spectrum
from utils.errors import DimensionMismatchError, InvalidNoiseError, NotPowerOfTwoDimError

KET0 = np.array([1.0, 0.0])
KET1 = np.array([0.0, 1.0])
Z = np.diag([1.0, -1.0])


class TestPauli:
    def test_labels_follow_canonical_order(self):
        assert pauli_label(0, 2) == "II"
        assert pauli_label(1, 2) == "IX"
        assert pauli_label(3, 2) == "IZ"
        assert pauli_label(12, 2) == "ZI"
        assert pauli_index("ZX") == 13

    def test_string_places_qubit_zero_leftmost(self):
        np.testing.assert_array_equal(pauli_string("ZI"), np.diag([1, 1, -1, -1]))

    def test_identity_decomposition(self):
        coeffs = pauli_decompose(np.eye(4)).coeffs
        expected = np.zeros(16)
        expected[0] = 1.0
        np.testing.assert_allclose(coeffs, expected, atol=1e-15)

    def test_reconstruction_of_random_operators(self):
        rng = np.random.default_rng(0)
        h = random_hermitian(rng, 8)
        decomposition = pauli_decompose(h)
        assert np.isrealobj(decomposition.coeffs)
        np.testing.assert_allclose(pauli_reconstruct(decomposition), h, atol=1e-10)

        m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        np.testing.assert_allclose(pauli_reconstruct(pauli_decompose(m)), m, atol=1e-10)

    def test_rejects_non_power_of_two(self):
        with pytest.raises(NotPowerOfTwoDimError):
            pauli_decompose(np.eye(3))

    def test_benchmark_initial_exponential(self, benchmark_spec):
        m = conditional_spectrum(benchmark_spec, Endpoint.INITIAL).exponential(-0.5)
        coeffs = labelled_coefficients(pauli_decompose(m))
        assert set(coeffs) == {"II", "IZ", "ZI", "ZZ"}
        expected = {"II": 2.3811, "IZ": -1.81343, "ZI": -1.81343, "ZZ": 1.3811}
        for label, value in expected.items():
            assert coeffs[label] == pytest.approx(value, abs=5e-5)

    def test_benchmark_final_exponential(self, benchmark_spec):
        m = conditional_spectrum(benchmark_spec, Endpoint.FINAL).exponential(0.5)
        coeffs = labelled_coefficients(pauli_decompose(m))
        expected = {
            "II": 1.03141,
            "XX": 0.126306,
            "XZ": -0.126306,
            "ZX": -0.126306,
            "ZZ": 0.126306,
        }
        assert set(coeffs) == set(expected)
        for label, value in expected.items():
            assert coeffs[label] == pytest.approx(value, abs=5e-5)


class TestHadamardTest:
    def test_identity_branches(self):
        job = CircuitJob.from_branches(np.eye(2), np.eye(2), KET0)
        assert hadamard_test_exact(job) == pytest.approx(1.0)

    def test_z_branch(self):
        assert hadamard_test_exact(CircuitJob.from_branches(np.eye(2), Z, KET0)) == pytest.approx(1.0)
        assert hadamard_test_exact(CircuitJob.from_branches(np.eye(2), Z, KET1)) == pytest.approx(-1.0)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            CircuitJob.from_branches(np.eye(4), np.eye(4), KET0)

    def test_branches_fold_uncontrolled_steps(self, benchmark_spec):
        job = build_forward_jobs(benchmark_spec, 1.0)[0]
        g0 = conditional_spectrum(benchmark_spec, Endpoint.INITIAL)
        g_tau = conditional_spectrum(benchmark_spec, Endpoint.FINAL)
        np.testing.assert_allclose(job.branch0, benchmark_spec.u_evol, atol=1e-12)
        expected = g_tau.exponential(1j) @ benchmark_spec.u_evol @ g0.exponential(-1j)
        np.testing.assert_allclose(job.branch1, expected, atol=1e-12)
        assert job.controlled_count == 2


class TestJobSets:
    def test_benchmark_circuit_counts(self, benchmark_spec):
        forward = build_forward_jobs(benchmark_spec, 1.0)
        backward = build_backward_jobs(benchmark_spec, 1.0)
        assert len(forward) == 4
        assert 2 * len(forward) == 8
        assert pair_count(backward) == 20
        assert 2 * len(backward) == 160

    def test_qubit_toy_has_two_forward_jobs(self, hadamard_toy):
        assert len(build_forward_jobs(hadamard_toy, 0.7)) == 2

    @pytest.mark.parametrize("custom", [False, True])
    @pytest.mark.parametrize("dim", [2, 4])
    def test_weighted_exact_sums_match_trace_forms(self, dim, custom):
        spec = make_random_spec(17, dim, custom, scale=0.5)
        for u in (-1.0, 0.3, 1.0):
            forward = build_forward_jobs(spec, u)
            cf = assemble_forward(forward, [hadamard_test_exact(job) for job in forward])
            assert cf == pytest.approx(cf_trace(spec, u, "forward").value, abs=1e-10)

            backward = build_backward_jobs(spec, u)
            cb = assemble_backward(backward, [hadamard_test_exact(e.job) for e in backward])
            assert cb == pytest.approx(cf_trace(spec, u, "backward_shifted").value, abs=1e-10)

    def test_pair_job_evaluates_f_kl(self):
        spec = make_random_spec(4, 4, scale=0.5)
        u = 0.8
        g0 = conditional_spectrum(spec, Endpoint.INITIAL)
        g_tau = conditional_spectrum(spec, Endpoint.FINAL)
        rho_tau = (g_tau.states * np.exp(-spec.beta * g_tau.values)) @ dagger(g_tau.states)
        rho_tau /= np.trace(rho_tau)

        entries = [e for e in build_backward_jobs(spec, u) if (e.k, e.l) == (pauli_index("ZI"), pauli_index("XY"))]
        assert len(entries) == spec.dim
        value = sum(e.job.weight * hadamard_test_exact(e.job) for e in entries)

        sigma_k, sigma_l = pauli_string("ZI"), pauli_string("XY")
        direct = np.trace(
            spec.u_evol @ sigma_k @ g0.exponential(-1j * u) @ dagger(spec.u_evol)
            @ sigma_l @ g_tau.exponential(1j * u) @ rho_tau
        )
        assert value == pytest.approx(direct, abs=1e-10)

    def test_identity_pair_at_zero_is_one(self, benchmark_spec):
        entries = [e for e in build_backward_jobs(benchmark_spec, 0.0) if (e.k, e.l) == (0, 0)]
        value = sum(e.job.weight * hadamard_test_exact(e.job) for e in entries)
        assert value == pytest.approx(1.0, abs=1e-12)


class TestSampling:
    def test_identity_job_is_exact(self):
        job = CircuitJob.from_branches(np.eye(2), np.eye(2), KET0)
        estimate = sample_job(job, shots=500, seed=1)
        assert estimate.mean_x == 1.0

    def test_sampling_is_deterministic(self, benchmark_spec):
        job = build_forward_jobs(benchmark_spec, 1.0)[1]
        first = sample_job(job, 1000, seed=42, job_index=3)
        assert sample_job(job, 1000, seed=42, job_index=3) == first
        assert sample_job(job, 1000, seed=43, job_index=3) != first

    def test_noiseless_probabilities_match_exact_value(self, benchmark_spec):
        for job in build_forward_jobs(benchmark_spec, 1.0):
            probs = measurement_probabilities(job)
            value = hadamard_test_exact(job)
            assert 2 * probs[Observable.X] - 1 == pytest.approx(value.real, abs=1e-12)
            assert 2 * probs[Observable.Y] - 1 == pytest.approx(value.imag, abs=1e-12)

    def test_estimate_concentrates(self, benchmark_spec):
        for index, job in enumerate(build_forward_jobs(benchmark_spec, 1.0)):
            estimate = sample_job(job, 20000, seed=2024, job_index=index)
            assert abs(estimate.value - hadamard_test_exact(job)) < 0.03

    def test_estimator_is_unbiased(self, benchmark_spec):
        job = build_forward_jobs(benchmark_spec, 1.0)[1]
        exact = hadamard_test_exact(job)
        shots = 200
        errors = np.array(
            [sample_job(job, shots, seed=s).mean_x - exact.real for s in range(1000)]
        )
        bound = 4 * np.sqrt((1 - exact.real**2) / shots) / np.sqrt(1000)
        assert abs(errors.mean()) < bound

    def test_fully_random_readout(self):
        job = CircuitJob.from_branches(np.eye(2), np.eye(2), KET0)
        noise = NoiseModel(readout_p01=0.5, readout_p10=0.5)
        probs = measurement_probabilities(job, noise)
        assert probs[Observable.X] == pytest.approx(0.5, abs=1e-15)
        assert probs[Observable.Y] == pytest.approx(0.5, abs=1e-15)

    def test_depolarizing_shrinks_coherence_monotonically(self, benchmark_spec):
        job = build_backward_jobs(benchmark_spec, 1.0)[0].job
        previous = np.inf
        for p in (0.0, 0.002, 0.01, 0.05):
            probs = measurement_probabilities(job, NoiseModel(depol_ctrl=p, depol_1q=1e-3))
            coherence = abs(complex(2 * probs[Observable.X] - 1, 2 * probs[Observable.Y] - 1))
            assert coherence <= previous
            previous = coherence

    def test_tiny_noise_matches_noiseless(self, benchmark_spec):
        job = build_forward_jobs(benchmark_spec, 1.0)[0]
        clean = measurement_probabilities(job)
        noisy = measurement_probabilities(job, NoiseModel(depol_1q=1e-6, depol_ctrl=1e-6))
        for observable in Observable:
            assert noisy[observable] == pytest.approx(clean[observable], abs=1e-5)

    def test_invalid_noise(self):
        job = CircuitJob.from_branches(np.eye(2), np.eye(2), KET0)
        with pytest.raises(InvalidNoiseError):
            sample_job(job, 10, seed=0, noise={"depol_1q": 1.5})
        with pytest.raises(InvalidNoiseError):
            sample_job(job, 10, seed=0, noise={"bogus": 0.1})
