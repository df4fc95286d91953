import numpy as np
import pytest

from bellnoise.channel import PauliProbabilities
from bellnoise.estimation import (
    dc_std_bound,
    empirical_covariance,
    estimate_dc,
    estimate_pauli,
    min_covariance,
)
from bellnoise.measurement import (
    SamplingConfig,
    bell_outcome_probs,
    derive_seed,
    sample_counts,
    two_outcome_probs,
)


class TestEstimatePauli:
    def test_relative_frequencies_through_permutation(self):
        est = estimate_pauli(np.array([700, 100, 150, 50]))
        np.testing.assert_allclose(est.probs.as_array(), [0.7, 0.1, 0.15, 0.05])
        assert est.total_counts == 1000

    def test_noiseless_counts(self):
        est = estimate_pauli(np.array([500, 0, 0, 0]))
        assert est.probs == PauliProbabilities(1, 0, 0, 0)

    def test_components_sum_to_one(self):
        rng = np.random.default_rng(6)
        for _ in range(50):
            counts = rng.integers(0, 1000, size=4)
            if counts.sum() == 0:
                continue
            est = estimate_pauli(counts)
            assert abs(sum(est.probs) - 1.0) < 1e-12

    def test_empty_sample_rejected(self):
        with pytest.raises(ValueError, match="no events"):
            estimate_pauli(np.zeros(4, dtype=int))


class TestEstimateDc:
    def test_no_noise_events(self):
        assert estimate_dc(0, 1000).p_hat == 0.0

    def test_direct_ratio(self):
        assert estimate_dc(300, 700).p_hat == pytest.approx(0.3)

    def test_fully_depolarized(self):
        assert estimate_dc(1000, 0).p_hat == 1.0

    def test_empty_sample_rejected(self):
        with pytest.raises(ValueError, match="no events"):
            estimate_dc(0, 0)


class TestMinCovariance:
    def test_entrywise_formula(self):
        # Direct substitution: diagonal p_i (1 - p_i), off-diagonal -p_i p_j.
        v = min_covariance(PauliProbabilities(0.4, 0.1, 0.2, 0.3))
        expected = np.array(
            [
                [0.09, -0.02, -0.03],
                [-0.02, 0.16, -0.06],
                [-0.03, -0.06, 0.21],
            ]
        )
        np.testing.assert_allclose(v, expected, atol=1e-15)

    def test_noiseless_channel(self):
        np.testing.assert_allclose(
            min_covariance(PauliProbabilities(1, 0, 0, 0)), np.zeros((3, 3))
        )

    def test_uniform_flips(self):
        v = min_covariance(PauliProbabilities(0, 1 / 3, 1 / 3, 1 / 3))
        expected = np.full((3, 3), -1 / 9) + np.eye(3) / 3
        np.testing.assert_allclose(v, expected, atol=1e-15)

    def test_inverse_of_fisher_matrix(self):
        # Independent construction valid at interior points:
        # J = diag(1/p_i) + ones / p0.
        rng = np.random.default_rng(14)
        checked = 0
        while checked < 100:
            p = rng.dirichlet(np.ones(4) * 2.0)
            if p.min() < 0.01:
                continue
            checked += 1
            probs = PauliProbabilities(*p)
            fisher = np.diag(1.0 / p[1:]) + np.ones((3, 3)) / p[0]
            np.testing.assert_allclose(fisher @ min_covariance(probs), np.eye(3), atol=1e-10)


class TestDcStdBound:
    def test_values(self):
        assert dc_std_bound(0.5, 10_000) == pytest.approx(0.005, abs=1e-15)
        assert dc_std_bound(0.0, 123) == 0.0
        assert dc_std_bound(0.3, 1) == pytest.approx(np.sqrt(0.21), abs=1e-15)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            dc_std_bound(1.2, 10)
        with pytest.raises(ValueError):
            dc_std_bound(0.5, 0)


class TestEmpiricalCovariance:
    def test_identical_samples(self):
        np.testing.assert_allclose(
            empirical_covariance([(0.1, 0.2, 0.3)] * 5), np.zeros((3, 3)), atol=1e-15
        )

    def test_two_point_sample(self):
        # By hand: each deviation is 0.5 in the first component, divisor n-1 = 1.
        v = empirical_covariance([(0, 0, 0), (1, 0, 0)])
        expected = np.zeros((3, 3))
        expected[0, 0] = 0.5
        np.testing.assert_allclose(v, expected, atol=1e-15)

    def test_translation_invariant(self):
        rng = np.random.default_rng(20)
        samples = rng.normal(size=(40, 3))
        shifted = samples + np.array([1.0, -2.0, 3.0])
        np.testing.assert_allclose(
            empirical_covariance(samples), empirical_covariance(shifted), atol=1e-12
        )

    def test_rejects_single_sample(self):
        with pytest.raises(ValueError, match="at least 2"):
            empirical_covariance([(0.1, 0.2, 0.3)])


def _pauli_samples(probs, shots, trials, master_seed):
    dist = bell_outcome_probs(probs)
    rows = []
    for t in range(trials):
        counts = sample_counts(dist, SamplingConfig("multinomial", shots, derive_seed(master_seed, t)))
        est = estimate_pauli(counts)
        rows.append([est.probs.p1, est.probs.p2, est.probs.p3])
    return np.array(rows)


class TestStatisticalProperties:
    def test_estimator_is_unbiased(self):
        probs = PauliProbabilities(0.4, 0.3, 0.2, 0.1)
        trials, shots = 10_000, 1000
        samples = _pauli_samples(probs, shots, trials, master_seed=7)
        mean = samples.mean(axis=0)
        truth = probs.as_array()[1:]
        standard_error = np.sqrt(truth * (1 - truth) / shots / trials)
        assert np.all(np.abs(mean - truth) < 4 * standard_error)

    @pytest.mark.parametrize(
        "weights", [(0.25, 0.25, 0.25, 0.25), (0.4, 0.3, 0.2, 0.1)]
    )
    def test_covariance_attains_the_bound(self, weights):
        # Multinomial sampling attains the minimum covariance exactly; check
        # the empirical covariance scaled by the shot count entrywise.
        probs = PauliProbabilities(*weights)
        shots = 1000
        samples = _pauli_samples(probs, shots, trials=10_000, master_seed=99)
        empirical = empirical_covariance(samples) * shots
        np.testing.assert_allclose(empirical, min_covariance(probs), rtol=0.1)

    def test_dc_estimator_reaches_the_bound(self):
        trials, shots, p = 1000, 10_000, 0.5
        estimates = []
        for t in range(trials):
            counts = sample_counts(
                two_outcome_probs(p), SamplingConfig("multinomial", shots, derive_seed(21, t))
            )
            estimates.append(estimate_dc(int(counts[1]), int(counts[0])).p_hat)
        std = float(np.std(estimates, ddof=1))
        bound = dc_std_bound(p, shots)
        assert abs(std - bound) / bound < 0.05
