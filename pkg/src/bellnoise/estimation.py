"""Plug-in estimators for the channel weights and their variance limits.

The Bell-measurement estimator is the relative-frequency estimator read
through the inverse outcome permutation; for the isotropic channel the
two-outcome ratio n_ss / (n_ss + c_int) suffices.  Both attain the minimum
covariance allowed by the quantum Cramer-Rao bound, which is provided here
in closed form together with the empirical covariance used to check
attainment by Monte Carlo.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import PauliProbabilities
from .measurement import bell_permutation


@dataclass(frozen=True)
class PauliEstimate:
    """Point estimate of the channel weights and the sample size behind it."""

    probs: PauliProbabilities
    total_counts: int


@dataclass(frozen=True)
class DcEstimate:
    """Isotropic-channel estimate p_hat = n_ss / (n_ss + c_int).

    n_ss counts same-side (non-singlet) events, c_int the interference
    coincidences (singlet outcomes).
    """

    p_hat: float
    n_ss: int
    c_int: int


def estimate_pauli(counts) -> PauliEstimate:
    """Estimate the channel weights from Bell outcome counts.

    ``counts`` is a 4-vector in canonical Bell order; weight i is the
    relative frequency of the outcome the i-th conjugation maps the singlet
    onto.  Raises ValueError on an empty sample.
    """
    arr = np.asarray(counts)
    if arr.shape != (4,):
        raise ValueError(f"expected 4 Bell outcome counts, got shape {arr.shape}")
    if np.any(arr < 0):
        raise ValueError("counts must be nonnegative")
    total = int(arr.sum())
    if total == 0:
        raise ValueError("no events to estimate from")
    perm = bell_permutation()
    probs = PauliProbabilities(*(float(arr[perm[i]]) / total for i in range(4)))
    return PauliEstimate(probs=probs, total_counts=total)


def estimate_dc(n_ss: int, c_int: int) -> DcEstimate:
    """Estimate the isotropic noise weight from two-outcome counts."""
    if n_ss < 0 or c_int < 0:
        raise ValueError("counts must be nonnegative")
    total = n_ss + c_int
    if total == 0:
        raise ValueError("no events to estimate from")
    return DcEstimate(p_hat=n_ss / total, n_ss=int(n_ss), c_int=int(c_int))


def min_covariance(probs: PauliProbabilities) -> np.ndarray:
    """Minimum estimator covariance over (p1, p2, p3) for one channel use.

    The inverse of the quantum Fisher information of a maximally entangled
    input: diagonal p_i (1 - p_i), off-diagonal -p_i p_j.  Well defined on
    the simplex boundary even though the Fisher matrix is singular there.
    """
    if not isinstance(probs, PauliProbabilities):
        probs = PauliProbabilities.from_array(probs)
    p = probs.as_array()[1:]
    return np.diag(p) - np.outer(p, p)


def dc_std_bound(p: float, n: int) -> float:
    """Standard-deviation lower bound sqrt(p (1 - p) / n) for the isotropic fit."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p} outside [0, 1]")
    if n < 1:
        raise ValueError(f"n={n} must be a positive integer")
    return math.sqrt(p * (1.0 - p) / n)


def empirical_covariance(samples) -> np.ndarray:
    """Unbiased sample covariance (divisor n - 1) of (p1, p2, p3) vectors."""
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError(f"expected an (n, 3) array of samples, got shape {arr.shape}")
    if arr.shape[0] < 2:
        raise ValueError("need at least 2 samples for a covariance estimate")
    return np.cov(arr, rowvar=False, ddof=1)
