"""Small dense linear algebra for one and two qubits.

Pauli operators, Bell states, density-matrix validation, projection onto the
positive cone, and Uhlmann fidelity.  Everything operates on plain complex
numpy arrays; all functions are pure and all module constants are read-only
by convention.

Basis conventions, fixed once here and used everywhere:
  * two-qubit computational basis order is |00>, |01>, |10>, |11>;
  * the noisy qubit (A) is the left tensor factor;
  * Bell outcomes are indexed in the order psi-, phi-, phi+, psi+.
"""

from __future__ import annotations

import enum

import numpy as np

# Structural tolerances (normalization, Hermiticity, orthogonality).
ATOL_STRUCT = 1e-12
# Positivity / reconstruction tolerances, where eigensolver noise accumulates.
ATOL_PSD = 1e-9

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

#: Single-qubit operator basis (identity, x, y, z), indexed 0..3 throughout.
PAULIS = (SIGMA_0, SIGMA_X, SIGMA_Y, SIGMA_Z)


class BellLabel(enum.IntEnum):
    """The four Bell outcomes, in the canonical order used for count vectors."""

    PSI_MINUS = 0
    PHI_MINUS = 1
    PHI_PLUS = 2
    PSI_PLUS = 3


_SQRT2 = np.sqrt(2.0)

_BELL_AMPLITUDES = {
    BellLabel.PSI_MINUS: np.array([0, 1, -1, 0], dtype=complex) / _SQRT2,
    BellLabel.PHI_MINUS: np.array([1, 0, 0, -1], dtype=complex) / _SQRT2,
    BellLabel.PHI_PLUS: np.array([1, 0, 0, 1], dtype=complex) / _SQRT2,
    BellLabel.PSI_PLUS: np.array([0, 1, 1, 0], dtype=complex) / _SQRT2,
}


def bell_state(label: BellLabel) -> np.ndarray:
    """Return the Bell state vector for ``label`` in the computational basis.

    psi-+ = (|01> -+ |10>)/sqrt(2), phi-+ = (|00> -+ |11>)/sqrt(2).
    """
    return _BELL_AMPLITUDES[BellLabel(label)].copy()


def bell_projector(label: BellLabel) -> np.ndarray:
    """Return the rank-one projector |B><B| onto a Bell state."""
    vec = bell_state(label)
    return np.outer(vec, vec.conj())


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two operators (left factor acts on qubit A)."""
    return np.kron(np.asarray(a), np.asarray(b))


def validate_pure_state(vec) -> np.ndarray:
    """Check that ``vec`` is a normalized 2- or 4-amplitude state vector."""
    v = np.asarray(vec, dtype=complex)
    if v.ndim != 1 or v.shape[0] not in (2, 4):
        raise ValueError(f"expected a 2- or 4-amplitude vector, got shape {v.shape}")
    norm_sq = float(np.vdot(v, v).real)
    if abs(norm_sq - 1.0) > ATOL_STRUCT:
        raise ValueError(f"state vector has squared norm {norm_sq}, expected 1")
    return v


def validate_density_matrix(mat) -> np.ndarray:
    """Check Hermiticity, unit trace, and positivity of a density matrix.

    Raises ValueError on violation; returns the matrix as a complex array.
    Hermiticity and trace are checked at the structural tolerance, the
    spectrum at the looser positivity tolerance.
    """
    m = np.asarray(mat, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in (2, 4):
        raise ValueError(f"expected a 2x2 or 4x4 matrix, got shape {m.shape}")
    if not np.allclose(m, m.conj().T, atol=ATOL_STRUCT, rtol=0.0):
        raise ValueError("matrix is not Hermitian")
    trace = complex(np.trace(m))
    if abs(trace - 1.0) > ATOL_STRUCT:
        raise ValueError(f"matrix has trace {trace}, expected 1")
    lowest = float(np.linalg.eigvalsh(m)[0])
    if lowest < -ATOL_PSD:
        raise ValueError(f"matrix has negative eigenvalue {lowest}")
    return m


def psd_project(mat) -> np.ndarray:
    """Project a Hermitian matrix onto the unit-trace positive cone.

    Negative eigenvalues are clipped to zero and the result is renormalized
    to unit trace.  A matrix that already is a valid density matrix comes
    back unchanged (up to floating-point noise).

    Raises:
        ValueError: if the input is not square/Hermitian, or if no positive
            spectral weight remains after clipping.
    """
    m = np.asarray(mat, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.allclose(m, m.conj().T, atol=ATOL_PSD, rtol=0.0):
        raise ValueError("matrix is not Hermitian")
    evals, evecs = np.linalg.eigh((m + m.conj().T) / 2.0)
    clipped = np.clip(evals, 0.0, None)
    weight = float(clipped.sum())
    if weight <= ATOL_STRUCT:
        raise ValueError("no positive spectral weight left after clipping")
    out = (evecs * (clipped / weight)) @ evecs.conj().T
    return (out + out.conj().T) / 2.0


def _sqrt_psd(mat: np.ndarray) -> np.ndarray:
    # Hermitian eigendecomposition with clipping; robust for near-singular input.
    evals, evecs = np.linalg.eigh(mat)
    return (evecs * np.sqrt(np.clip(evals, 0.0, None))) @ evecs.conj().T


def uhlmann_fidelity(a, b) -> float:
    """Uhlmann fidelity F(a, b) = (tr sqrt(sqrt(a) b sqrt(a)))^2.

    Symmetric in its arguments, 1 iff a == b, 0 for orthogonal states.
    Both arguments must be density matrices of the same dimension.
    """
    ma = np.asarray(a, dtype=complex)
    mb = np.asarray(b, dtype=complex)
    if ma.shape != mb.shape:
        raise ValueError(f"dimension mismatch: {ma.shape} vs {mb.shape}")
    root_a = _sqrt_psd(ma)
    inner = root_a @ mb @ root_a
    evals = np.linalg.eigvalsh((inner + inner.conj().T) / 2.0)
    total = float(np.sqrt(np.clip(evals, 0.0, None)).sum())
    return min(1.0, total * total)
