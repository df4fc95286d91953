import numpy as np
import pytest

from bellnoise.channel import PauliProbabilities, depolarizing_probs, apply_channel_one_side
from bellnoise.measurement import (
    BELL_FROM_PAULI,
    SamplingConfig,
    bell_outcome_probs,
    bell_permutation,
    derive_seed,
    sample_counts,
    two_outcome_probs,
    validate_distribution,
)
from bellnoise.qcore import PAULIS, BellLabel, bell_projector, bell_state, tensor_product


def brute_force_bell_probs(probs: PauliProbabilities) -> np.ndarray:
    """Independent oracle: apply the channel explicitly, project on Bell states."""
    rho = apply_channel_one_side(probs, bell_projector(BellLabel.PSI_MINUS))
    out = np.empty(4)
    for label in BellLabel:
        vec = bell_state(label)
        out[label] = float(np.vdot(vec, rho @ vec).real)
    return out


class TestBellPermutation:
    def test_matches_brute_force_overlaps(self):
        # Oracle: apply each conjugation to the singlet and find the unique
        # Bell state it lands on.
        singlet = bell_state(BellLabel.PSI_MINUS)
        for index, expected_label in bell_permutation().items():
            moved = tensor_product(PAULIS[index], np.eye(2)) @ singlet
            overlaps = {
                label: abs(np.vdot(bell_state(label), moved)) ** 2 for label in BellLabel
            }
            winner = max(overlaps, key=overlaps.get)
            assert overlaps[winner] == pytest.approx(1.0, abs=1e-12)
            assert winner == expected_label

    def test_fixed_mapping(self):
        assert BELL_FROM_PAULI == (
            BellLabel.PSI_MINUS,
            BellLabel.PHI_MINUS,
            BellLabel.PHI_PLUS,
            BellLabel.PSI_PLUS,
        )


class TestBellOutcomeProbs:
    def test_noiseless(self):
        np.testing.assert_allclose(
            bell_outcome_probs(PauliProbabilities(1, 0, 0, 0)), [1, 0, 0, 0]
        )

    def test_fully_anisotropic(self):
        dist = bell_outcome_probs(PauliProbabilities(0, 3 / 8, 1 / 2, 1 / 8))
        np.testing.assert_allclose(dist, [0, 3 / 8, 1 / 2, 1 / 8], atol=1e-15)

    def test_uniform(self):
        np.testing.assert_allclose(
            bell_outcome_probs(PauliProbabilities(0.25, 0.25, 0.25, 0.25)), [0.25] * 4
        )

    def test_agrees_with_brute_force_on_random_vectors(self):
        rng = np.random.default_rng(123)
        for _ in range(100):
            probs = PauliProbabilities(*rng.dirichlet(np.ones(4)))
            np.testing.assert_allclose(
                bell_outcome_probs(probs), brute_force_bell_probs(probs), atol=1e-12
            )


class TestTwoOutcomeProbs:
    def test_boundaries(self):
        np.testing.assert_allclose(two_outcome_probs(0.0), [1, 0])
        np.testing.assert_allclose(two_outcome_probs(1.0), [0, 1])

    def test_marginalizes_the_bell_distribution(self):
        # Oracle: coarse-grain the four-outcome distribution into
        # {singlet, everything else}.
        for p in np.linspace(0.0, 1.0, 101):
            full = bell_outcome_probs(depolarizing_probs(p))
            rest = sum(full[label] for label in BellLabel if label != BellLabel.PSI_MINUS)
            coarse = np.array([full[BellLabel.PSI_MINUS], rest])
            np.testing.assert_allclose(two_outcome_probs(p), coarse, atol=1e-12)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            two_outcome_probs(-0.1)


class TestSamplingConfig:
    def test_rejects_unknown_mode(self):
        with pytest.raises(ValueError, match="mode"):
            SamplingConfig("uniform", 10, 0)

    def test_rejects_negative_budget(self):
        with pytest.raises(ValueError, match="shots_or_mean"):
            SamplingConfig("multinomial", -1, 0)


class TestDeriveSeed:
    def test_deterministic(self):
        assert derive_seed(12, 3, 4) == derive_seed(12, 3, 4)

    def test_distinct_paths_differ(self):
        seeds = {derive_seed(12, i, j) for i in range(10) for j in range(10)}
        assert len(seeds) == 100


class TestSampleCounts:
    def test_deterministic_per_seed(self):
        dist = np.array([0.4, 0.3, 0.2, 0.1])
        cfg = SamplingConfig("multinomial", 1000, 99)
        np.testing.assert_array_equal(sample_counts(dist, cfg), sample_counts(dist, cfg))
        other = SamplingConfig("multinomial", 1000, 100)
        assert not np.array_equal(sample_counts(dist, cfg), sample_counts(dist, other))

    def test_poisson_deterministic_per_seed(self):
        dist = np.array([0.7, 0.3])
        cfg = SamplingConfig("poisson", 500, 4)
        np.testing.assert_array_equal(sample_counts(dist, cfg), sample_counts(dist, cfg))

    def test_deterministic_distribution(self):
        counts = sample_counts(np.array([1.0, 0, 0, 0]), SamplingConfig("multinomial", 500, 1))
        np.testing.assert_array_equal(counts, [500, 0, 0, 0])

    def test_zero_shots(self):
        counts = sample_counts(np.array([0.5, 0.5]), SamplingConfig("multinomial", 0, 1))
        np.testing.assert_array_equal(counts, [0, 0])

    def test_multinomial_totals_are_exact(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            dist = rng.dirichlet(np.ones(4))
            counts = sample_counts(dist, SamplingConfig("multinomial", 1234, int(rng.integers(2**32))))
            assert counts.sum() == 1234
            assert np.all(counts >= 0)

    def test_binomial_five_sigma(self):
        # Binomial mean/variance: first count within 5 sigma of N * p.
        counts = sample_counts(np.array([0.7, 0.3]), SamplingConfig("multinomial", 10**6, 17))
        sigma = np.sqrt(10**6 * 0.7 * 0.3)
        assert abs(counts[0] - 700_000) < 5 * sigma

    def test_empirical_convergence_at_large_n(self):
        dist = np.array([0.4, 0.3, 0.2, 0.1])
        for s in range(10):
            counts = sample_counts(dist, SamplingConfig("multinomial", 10**6, derive_seed(3, s)))
            assert np.abs(counts / 10**6 - dist).max() < 0.005

    def test_poisson_variance_matches_mean(self):
        dist = np.array([0.7, 0.3])
        table = np.array(
            [
                sample_counts(dist, SamplingConfig("poisson", 200, derive_seed(5, t)))
                for t in range(10_000)
            ]
        )
        means = table.mean(axis=0)
        variances = table.var(axis=0, ddof=1)
        np.testing.assert_allclose(variances, means, rtol=0.1)

    def test_rejects_invalid_distribution(self):
        with pytest.raises(ValueError, match="sums"):
            validate_distribution(np.array([0.5, 0.2]))
