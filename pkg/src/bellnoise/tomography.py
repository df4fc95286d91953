"""Entangled-pair process tomography baseline.

Pipeline: send one half of a Bell pair through the channel, run two-qubit
state tomography on the output (9 local basis-pair settings, 4 projector
outcomes each), reconstruct the state by linear inversion with a positivity
projection, read the process matrix off the reconstructed state in the
displaced-Bell basis, and fit the isotropic noise weight by maximizing the
fidelity to the one-parameter diagonal family.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import apply_channel_one_side, depolarizing_chi, depolarizing_probs
from .measurement import SamplingConfig, derive_seed, sample_counts
from .qcore import (
    PAULIS,
    SIGMA_0,
    BellLabel,
    bell_projector,
    bell_state,
    psd_project,
    tensor_product,
    uhlmann_fidelity,
)

BASES = ("X", "Y", "Z")

_SQRT2 = np.sqrt(2.0)
_EIGENVECTORS = {
    "X": (np.array([1, 1], dtype=complex) / _SQRT2, np.array([1, -1], dtype=complex) / _SQRT2),
    "Y": (np.array([1, 1j], dtype=complex) / _SQRT2, np.array([1, -1j], dtype=complex) / _SQRT2),
    "Z": (np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex)),
}
#: Plus/minus eigenprojectors of each local basis.
PROJECTORS = {
    basis: tuple(np.outer(v, v.conj()) for v in vecs) for basis, vecs in _EIGENVECTORS.items()
}

#: The 9 local basis pairs, row-major in (A basis, B basis).
SETTING_PAIRS = tuple((a, b) for a in BASES for b in BASES)

#: Outcome order within a setting: (+,+), (+,-), (-,+), (-,-).
OUTCOME_SIGNS = np.array([[1, 1], [1, -1], [-1, 1], [-1, -1]])

_PAULI_INDEX = {"X": 1, "Y": 2, "Z": 3}


@dataclass(frozen=True)
class TomographySettings:
    """The measurement plan: 9 local basis pairs and a per-setting budget."""

    pairs: tuple = SETTING_PAIRS
    counts_per_setting: float = 1000.0

    def __post_init__(self):
        if tuple(sorted(self.pairs)) != tuple(sorted(SETTING_PAIRS)):
            raise ValueError("settings must cover each of the 9 local basis pairs once")
        if self.counts_per_setting < 0:
            raise ValueError(
                f"counts_per_setting={self.counts_per_setting} must be nonnegative"
            )


@dataclass
class TomographyCounts:
    """Per-setting outcome counts (9 x 4) plus the plan that produced them."""

    counts: np.ndarray
    settings: TomographySettings

    def __post_init__(self):
        raw = np.asarray(self.counts)
        if raw.shape != (9, 4):
            raise ValueError(f"expected a (9, 4) count table, got shape {raw.shape}")
        if not np.issubdtype(raw.dtype, np.integer) and not np.all(raw == np.round(raw)):
            raise ValueError("counts must be integers")
        arr = raw.astype(np.int64)
        if np.any(arr < 0):
            raise ValueError("counts must be nonnegative")
        self.counts = arr


@dataclass(frozen=True)
class AaqptResult:
    """Outcome of one tomography run: process matrix, fitted weight, fit quality."""

    chi_exp: np.ndarray
    p_fit: float
    fidelity_at_fit: float


def setting_probabilities(rho, pair) -> np.ndarray:
    """Outcome probabilities tr[rho (P_a^s x P_b^t)] for one basis pair."""
    mat = np.asarray(rho, dtype=complex)
    proj_a = PROJECTORS[pair[0]]
    proj_b = PROJECTORS[pair[1]]
    probs = np.empty(4)
    for k, (i, j) in enumerate(((0, 0), (0, 1), (1, 0), (1, 1))):
        probs[k] = float(np.trace(mat @ tensor_product(proj_a[i], proj_b[j])).real)
    return np.clip(probs, 0.0, 1.0)


def exact_setting_frequencies(rho, pairs=SETTING_PAIRS) -> np.ndarray:
    """The (9, 4) table of exact outcome probabilities (infinite statistics)."""
    return np.array([setting_probabilities(rho, pair) for pair in pairs])


def simulate_qst_counts(rho, settings: TomographySettings, cfg: SamplingConfig) -> TomographyCounts:
    """Draw tomography counts for every setting of the plan.

    The sampling mode and master seed come from ``cfg``; the per-setting
    budget comes from ``settings.counts_per_setting``.  Each setting samples
    from its own derived sub-stream, so the table is independent of
    evaluation order and fully determined by (rho, settings, cfg).
    """
    rows = []
    for index, pair in enumerate(settings.pairs):
        dist = setting_probabilities(rho, pair)
        sub = SamplingConfig(
            mode=cfg.mode,
            shots_or_mean=settings.counts_per_setting,
            seed=derive_seed(cfg.seed, index),
        )
        rows.append(sample_counts(dist, sub))
    return TomographyCounts(counts=np.array(rows), settings=settings)


def state_from_setting_frequencies(freqs, pairs=SETTING_PAIRS) -> np.ndarray:
    """Assemble a physical state from per-setting outcome frequencies.

    Every one of the 15 two-qubit Pauli expectations is read off the
    frequency table (single-qubit marginals are averaged over the three
    settings that share the local basis), the operator expansion
    rho = (1/4) sum <s_i x s_j> s_i x s_j is summed, and the result is
    projected onto the unit-trace positive cone.  Exact frequencies
    reproduce the underlying state exactly.
    """
    table = np.asarray(freqs, dtype=float)
    if table.shape != (9, 4):
        raise ValueError(f"expected a (9, 4) frequency table, got shape {table.shape}")

    sign_a = OUTCOME_SIGNS[:, 0].astype(float)
    sign_b = OUTCOME_SIGNS[:, 1].astype(float)
    marg_a = {b: [] for b in BASES}
    marg_b = {b: [] for b in BASES}
    correlation = {}
    for row, (basis_a, basis_b) in zip(table, pairs):
        marg_a[basis_a].append(float(row @ sign_a))
        marg_b[basis_b].append(float(row @ sign_b))
        correlation[(basis_a, basis_b)] = float(row @ (sign_a * sign_b))

    rho = tensor_product(SIGMA_0, SIGMA_0).astype(complex)
    for basis in BASES:
        sigma = PAULIS[_PAULI_INDEX[basis]]
        rho += np.mean(marg_a[basis]) * tensor_product(sigma, SIGMA_0)
        rho += np.mean(marg_b[basis]) * tensor_product(SIGMA_0, sigma)
    for (basis_a, basis_b), value in correlation.items():
        rho += value * tensor_product(PAULIS[_PAULI_INDEX[basis_a]], PAULIS[_PAULI_INDEX[basis_b]])
    return psd_project(rho / 4.0)


def linear_inversion_state(counts: TomographyCounts) -> np.ndarray:
    """Reconstruct the measured state from a tomography count table.

    Raises ValueError if any setting recorded no events at all.
    """
    totals = counts.counts.sum(axis=1)
    zero = np.flatnonzero(totals == 0)
    if zero.size:
        raise ValueError(f"setting {int(zero[0])} has zero total counts")
    freqs = counts.counts / totals[:, None]
    return state_from_setting_frequencies(freqs, counts.settings.pairs)


def chi_from_output(rho_out, input_label: BellLabel = BellLabel.PSI_MINUS) -> np.ndarray:
    """Read the process matrix off the channel output for a Bell-state input.

    The vectors (s_i x I)|input> form an orthonormal basis, so the process
    matrix is simply the output state expressed in that basis; the
    extraction is exact for any channel.
    """
    mat = np.asarray(rho_out, dtype=complex)
    if mat.shape != (4, 4):
        raise ValueError(f"expected a 4x4 output state, got shape {mat.shape}")
    trace = float(np.trace(mat).real)
    if abs(trace - 1.0) > 1e-6:
        raise ValueError(f"output state has trace {trace}, expected 1")
    ket = bell_state(input_label)
    basis = np.column_stack([tensor_product(sigma, SIGMA_0) @ ket for sigma in PAULIS])
    chi = basis.conj().T @ mat @ basis
    return (chi + chi.conj().T) / 2.0


def _family_fidelities(chi: np.ndarray, p_grid: np.ndarray) -> np.ndarray:
    # Batched Uhlmann fidelity against diag(1-p, p/3, p/3, p/3); the square
    # root of a diagonal matrix is diagonal, so sqrt(chi_p) chi sqrt(chi_p)
    # is an elementwise scaling of chi.
    diag = np.stack([1.0 - p_grid, p_grid / 3.0, p_grid / 3.0, p_grid / 3.0], axis=1)
    roots = np.sqrt(np.clip(diag, 0.0, None))
    inner = roots[:, :, None] * chi[None, :, :] * roots[:, None, :]
    evals = np.linalg.eigvalsh(inner)
    return np.sqrt(np.clip(evals, 0.0, None)).sum(axis=1) ** 2


def fit_p_fidelity(chi_exp, grid_step: float = 1e-3, tol: float = 1e-6) -> tuple[float, float]:
    """Fit the isotropic noise weight by maximizing fidelity to the family.

    Coarse grid over [0, 1] followed by golden-section refinement of the
    bracketing interval; ties resolve toward the smaller weight.  Returns
    (p_fit, fidelity at p_fit).  The input is positivity-projected before
    fidelity evaluation.
    """
    chi = psd_project(np.asarray(chi_exp, dtype=complex))
    grid = np.linspace(0.0, 1.0, int(round(1.0 / grid_step)) + 1)
    coarse = _family_fidelities(chi, grid)
    best = int(np.argmax(coarse))
    lo = float(grid[max(best - 1, 0)])
    hi = float(grid[min(best + 1, grid.size - 1)])

    def objective(p: float) -> float:
        return uhlmann_fidelity(chi, depolarizing_chi(p))

    inv_phi = (np.sqrt(5.0) - 1.0) / 2.0
    left = hi - inv_phi * (hi - lo)
    right = lo + inv_phi * (hi - lo)
    f_left, f_right = objective(left), objective(right)
    while hi - lo > tol:
        if f_left >= f_right:
            hi, right, f_right = right, left, f_left
            left = hi - inv_phi * (hi - lo)
            f_left = objective(left)
        else:
            lo, left, f_left = left, right, f_right
            right = lo + inv_phi * (hi - lo)
            f_right = objective(right)

    p_fit, fidelity = lo, objective(lo)
    for candidate in (0.5 * (lo + hi), hi):
        value = objective(candidate)
        if value > fidelity:
            p_fit, fidelity = candidate, value
    return float(p_fit), float(fidelity)


def aaqpt_pipeline(
    p_true: float,
    cfg: SamplingConfig | None,
    input_label: BellLabel = BellLabel.PSI_MINUS,
) -> AaqptResult:
    """Run the full tomography estimate of an isotropic channel.

    Prepares a Bell pair, sends qubit A through the channel with total flip
    weight ``p_true``, tomographs the output, and fits the weight back.
    ``cfg`` carries the sampling mode, the *total* count budget (split
    uniformly over the 9 settings), and the seed; ``cfg=None`` runs the
    infinite-statistics limit on exact outcome probabilities.  Deterministic
    per seed.
    """
    rho_out = apply_channel_one_side(depolarizing_probs(p_true), bell_projector(input_label))
    if cfg is None:
        rho_hat = state_from_setting_frequencies(exact_setting_frequencies(rho_out))
    else:
        settings = TomographySettings(counts_per_setting=cfg.shots_or_mean / 9.0)
        rho_hat = linear_inversion_state(simulate_qst_counts(rho_out, settings, cfg))
    chi = chi_from_output(rho_hat, input_label)
    p_fit, fidelity = fit_p_fidelity(chi)
    return AaqptResult(chi_exp=chi, p_fit=p_fit, fidelity_at_fit=fidelity)
