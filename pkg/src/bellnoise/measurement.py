"""Bell-analysis outcome distributions and seeded count generation.

A channel acting on qubit A of the singlet permutes the four Bell states, so
the Bell-measurement outcome distribution is the channel's probability
vector read through a fixed permutation.  Coarse-graining onto
{singlet, everything else} gives the two-outcome measurement used for the
isotropic channel.

Sampling is reproducible by construction: every draw takes an explicit seed,
and sub-streams are derived by hashing (seed, index path) rather than by
advancing shared generator state, so results do not depend on evaluation
order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import PauliProbabilities
from .qcore import ATOL_STRUCT, BellLabel

SAMPLING_MODES = ("multinomial", "poisson")

#: Bell outcome produced by each conjugation index acting on the singlet:
#: identity -> psi-, x -> phi-, y -> phi+, z -> psi+.
BELL_FROM_PAULI = (
    BellLabel.PSI_MINUS,
    BellLabel.PHI_MINUS,
    BellLabel.PHI_PLUS,
    BellLabel.PSI_PLUS,
)


@dataclass(frozen=True)
class SamplingConfig:
    """How to turn an outcome distribution into counts.

    mode: "multinomial" draws a fixed total of shots_or_mean shots;
        "poisson" draws each outcome count independently with mean
        shots_or_mean * probability.
    shots_or_mean: total shots (multinomial) or mean total count (poisson).
    seed: 64-bit seed; identical (distribution, config) gives identical counts.
    """

    mode: str
    shots_or_mean: float
    seed: int

    def __post_init__(self):
        if self.mode not in SAMPLING_MODES:
            raise ValueError(f"mode must be one of {SAMPLING_MODES}, got {self.mode!r}")
        if self.shots_or_mean < 0:
            raise ValueError(f"shots_or_mean={self.shots_or_mean} must be nonnegative")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError(f"seed={self.seed} outside the 64-bit range")


def derive_seed(master: int, *path: int) -> int:
    """Mix a master seed and sub-stream indices into a fresh 64-bit seed.

    Pure function of its arguments, so concurrent callers get independent,
    order-insensitive streams.
    """
    words = np.random.SeedSequence([int(master), *(int(i) for i in path)]).generate_state(2)
    return int(words[0]) | (int(words[1]) << 32)


def bell_permutation() -> dict[int, BellLabel]:
    """Map conjugation index (0..3 for identity, x, y, z) to Bell outcome.

    The mapping follows from the phase conventions fixed in qcore: the x
    flip sends the singlet to phi-, the y flip to phi+.  Under the opposite
    sign convention for phi-+ the two labels swap; the outcome statistics
    are unaffected either way.
    """
    return dict(enumerate(BELL_FROM_PAULI))


def validate_distribution(dist) -> np.ndarray:
    """Check that ``dist`` is a probability vector over a finite outcome set."""
    arr = np.asarray(dist, dtype=float)
    if arr.ndim != 1 or arr.size < 2:
        raise ValueError(f"expected a 1-d distribution over >=2 outcomes, got shape {arr.shape}")
    if np.any(arr < -ATOL_STRUCT) or np.any(arr > 1.0 + ATOL_STRUCT):
        raise ValueError("distribution entries outside [0, 1]")
    total = float(arr.sum())
    if abs(total - 1.0) > ATOL_STRUCT:
        raise ValueError(f"distribution sums to {total}, expected 1")
    return np.clip(arr, 0.0, 1.0)


def bell_outcome_probs(probs: PauliProbabilities) -> np.ndarray:
    """Bell-measurement outcome distribution, indexed by BellLabel order.

    Outcome B receives the weight of the unique conjugation mapping the
    singlet onto B; equals the explicit channel-plus-projector computation.
    """
    if not isinstance(probs, PauliProbabilities):
        probs = PauliProbabilities.from_array(probs)
    weights = probs.as_array()
    out = np.zeros(4)
    for pauli_index, label in bell_permutation().items():
        out[label] = weights[pauli_index]
    return out


def two_outcome_probs(p: float) -> np.ndarray:
    """Distribution over {singlet, rest} for the isotropic channel: (1-p, p)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p} outside [0, 1]")
    return np.array([1.0 - p, p])


def sample_counts(dist, cfg: SamplingConfig) -> np.ndarray:
    """Draw integer counts for each outcome of ``dist`` per the sampling config.

    Multinomial mode conditions sequentially on binomials (exact, O(K) cost
    independent of the shot count); poisson mode draws each outcome
    independently.  Deterministic for a fixed (dist, cfg).
    """
    arr = validate_distribution(dist)
    rng = np.random.default_rng(np.random.SeedSequence(int(cfg.seed)))
    if cfg.mode == "poisson":
        return rng.poisson(cfg.shots_or_mean * arr).astype(np.int64)
    counts = np.zeros(arr.size, dtype=np.int64)
    remaining_shots = int(round(cfg.shots_or_mean))
    remaining_mass = 1.0
    for k in range(arr.size - 1):
        if remaining_shots == 0:
            break
        q = 1.0 if arr[k] >= remaining_mass else arr[k] / remaining_mass
        drawn = int(rng.binomial(remaining_shots, q))
        counts[k] = drawn
        remaining_shots -= drawn
        remaining_mass -= arr[k]
    counts[arr.size - 1] = remaining_shots
    return counts
