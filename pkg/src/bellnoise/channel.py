"""The Pauli noise channel on a single qubit and its entangled-pair action.

The channel is kept in its diagonal mixing form, a probability 4-vector over
(identity, x, y, z) conjugations; a dense superoperator is never built.
Includes the retarder-timing parameterization (activation intervals over a
cycle period), the isotropic (depolarizing) specialization, and the diagonal
process matrices both channels induce.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qcore import ATOL_STRUCT, PAULIS, SIGMA_0, tensor_product


@dataclass(frozen=True)
class PauliProbabilities:
    """Mixing weights (p0, p1, p2, p3) of the identity, x, y and z flips."""

    p0: float
    p1: float
    p2: float
    p3: float

    def __post_init__(self):
        values = (self.p0, self.p1, self.p2, self.p3)
        for name, value in zip(("p0", "p1", "p2", "p3"), values):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name}={value} outside [0, 1]")
        total = float(sum(values))
        if abs(total - 1.0) > ATOL_STRUCT:
            raise ValueError(f"probabilities sum to {total}, expected 1")

    def __iter__(self):
        return iter((self.p0, self.p1, self.p2, self.p3))

    def as_array(self) -> np.ndarray:
        return np.array([self.p0, self.p1, self.p2, self.p3])

    @classmethod
    def from_array(cls, values) -> "PauliProbabilities":
        arr = np.asarray(values, dtype=float)
        if arr.shape != (4,):
            raise ValueError(f"expected 4 probabilities, got shape {arr.shape}")
        return cls(*(float(v) for v in arr))


@dataclass(frozen=True)
class TimingConfig:
    """Activation intervals t1, t2, t3 (x, y, z flips) within a cycle period.

    Only the ratios t_i / period matter; scaling all four durations by the
    same positive constant leaves the induced channel unchanged.
    """

    t1: float
    t2: float
    t3: float
    period: float

    def __post_init__(self):
        for name, value in zip(("t1", "t2", "t3"), (self.t1, self.t2, self.t3)):
            if value < 0.0:
                raise ValueError(f"{name}={value} must be nonnegative")
        if self.period <= 0.0:
            raise ValueError(f"period={self.period} must be positive")
        delta = self.t1 + self.t2 + self.t3
        # Tiny relative slack absorbs rounding in sums like 3 * (period / 3).
        if delta > self.period * (1.0 + ATOL_STRUCT):
            raise ValueError(
                f"activation intervals sum to {delta}, exceeding period {self.period}"
            )


_ONE_SIDE_PAULIS = tuple(tensor_product(sigma, SIGMA_0) for sigma in PAULIS)


def apply_pauli_channel(probs: PauliProbabilities, rho) -> np.ndarray:
    """Apply the mixed-conjugation channel sum_i p_i s_i rho s_i to one qubit.

    Trace and Hermiticity are preserved exactly up to floating point.
    """
    if not isinstance(probs, PauliProbabilities):
        probs = PauliProbabilities.from_array(probs)
    mat = np.asarray(rho, dtype=complex)
    if mat.shape != (2, 2):
        raise ValueError(f"expected a 2x2 density matrix, got shape {mat.shape}")
    out = np.zeros((2, 2), dtype=complex)
    for p, sigma in zip(probs, PAULIS):
        out += p * (sigma @ mat @ sigma)
    return out


def apply_channel_one_side(probs: PauliProbabilities, rho) -> np.ndarray:
    """Apply the channel to qubit A of a two-qubit state, leaving B untouched.

    Returns sum_i p_i (s_i x I) rho (s_i x I).
    """
    if not isinstance(probs, PauliProbabilities):
        probs = PauliProbabilities.from_array(probs)
    mat = np.asarray(rho, dtype=complex)
    if mat.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got shape {mat.shape}")
    out = np.zeros((4, 4), dtype=complex)
    for p, op in zip(probs, _ONE_SIDE_PAULIS):
        out += p * (op @ mat @ op)
    return out


def timing_to_probs(cfg: TimingConfig) -> PauliProbabilities:
    """Convert activation intervals to mixing weights: p_i = t_i / period.

    The identity weight is the idle fraction 1 - (t1 + t2 + t3) / period.
    """
    p1 = cfg.t1 / cfg.period
    p2 = cfg.t2 / cfg.period
    p3 = cfg.t3 / cfg.period
    p0 = max(0.0, 1.0 - (p1 + p2 + p3))
    return PauliProbabilities(p0, p1, p2, p3)


def depolarizing_probs(p: float) -> PauliProbabilities:
    """Isotropic channel with total flip weight p, split evenly over x, y, z."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p} outside [0, 1]")
    return PauliProbabilities(1.0 - p, p / 3.0, p / 3.0, p / 3.0)


def chi_of_pauli(probs: PauliProbabilities) -> np.ndarray:
    """Process matrix of a mixed-conjugation channel: diag(p0, p1, p2, p3)."""
    if not isinstance(probs, PauliProbabilities):
        probs = PauliProbabilities.from_array(probs)
    return np.diag(probs.as_array()).astype(complex)


def depolarizing_chi(p: float) -> np.ndarray:
    """Process matrix of the isotropic channel: diag(1-p, p/3, p/3, p/3)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p} outside [0, 1]")
    return np.diag([1.0 - p, p / 3.0, p / 3.0, p / 3.0]).astype(complex)


def validate_chi(mat) -> np.ndarray:
    """Check that a process matrix is Hermitian with unit trace (loose tolerance)."""
    m = np.asarray(mat, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 process matrix, got shape {m.shape}")
    if not np.allclose(m, m.conj().T, atol=1e-9, rtol=0.0):
        raise ValueError("process matrix is not Hermitian")
    trace = complex(np.trace(m))
    if abs(trace - 1.0) > 1e-9:
        raise ValueError(f"process matrix has trace {trace}, expected 1")
    return m
