"""Liouville-space algebra: vectorization, inner products, superoperators.

Basis convention
----------------
Physical basis states are enumerated in *descending* order, so matrix index
``i`` refers to state ``|d-1-i>``.  Vectorization is row-major over that
enumeration.  For a qubit (``d = 2``) the enumeration and the resulting
component layout are::

    matrix index   state     vec slot   component
    (0, 0)         |1><1|    0          rho_11
    (0, 1)         |1><0|    1          rho_10
    (1, 0)         |0><1|    2          rho_01
    (1, 1)         |0><0|    3          rho_00

i.e. ``vectorize(rho) = (rho_11, rho_10, rho_01, rho_00)^T``.  With this
convention the standard Pauli matrices keep their textbook form
(``sigma_z = diag(1, -1)`` with the excited state first) and superoperators
act as ``vec(A rho B) = (A (x) B^T) vec(rho)``.

All functions are pure; nothing here mutates its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, InvalidDensityMatrix, NonSquareDim

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_FLOOR = -1e-10

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
# |0><1| and |1><0| in the descending (|1>, |0>) enumeration.
SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)

PAULI_BY_NAME = {"sigma_x": SIGMA_X, "sigma_y": SIGMA_Y, "sigma_z": SIGMA_Z}


@dataclass(frozen=True)
class DensityMatrix:
    """A validated d x d density matrix (Hermitian, unit trace, PSD)."""

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def validate(self) -> "DensityMatrix":
        validate_density(self.matrix)
        return self


def validate_density(matrix: np.ndarray) -> np.ndarray:
    """Check Hermiticity, unit trace, and positive semidefiniteness.

    Raises :class:`InvalidDensityMatrix` on violation; returns the input
    unchanged otherwise.  Tolerances: 1e-12 for the algebraic identities and
    a -1e-10 eigenvalue floor for positivity.
    """
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InvalidDensityMatrix(f"expected a square matrix, got shape {matrix.shape}")
    if np.max(np.abs(matrix - matrix.conj().T)) > HERMITICITY_TOL:
        raise InvalidDensityMatrix("matrix is not Hermitian within 1e-12")
    if abs(np.trace(matrix) - 1.0) > TRACE_TOL:
        raise InvalidDensityMatrix("trace deviates from 1 by more than 1e-12")
    eigvals = np.linalg.eigvalsh(matrix)
    if eigvals.min() < PSD_FLOOR:
        raise InvalidDensityMatrix(f"negative eigenvalue {eigvals.min():.3e} below floor {PSD_FLOOR}")
    return matrix


def _as_matrix(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    return np.asarray(rho, dtype=complex)


def vectorize(rho) -> np.ndarray:
    """Map a d x d operator to its length-d^2 Liouville vector (row-major)."""
    matrix = _as_matrix(rho)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimMismatch(f"expected a square matrix, got shape {matrix.shape}")
    return matrix.reshape(-1).astype(complex)


def devectorize(v: np.ndarray) -> np.ndarray:
    """Inverse of :func:`vectorize`.

    Returns a plain matrix; density-matrix invariants are deliberately not
    enforced here because intermediate Liouville vectors (perturbed states,
    quadrature reconstructions) need not be physical states.  Use
    :func:`validate_density` when a physical state is expected.
    """
    v = np.asarray(v, dtype=complex).reshape(-1)
    d = int(round(np.sqrt(v.size)))
    if d * d != v.size:
        raise NonSquareDim(f"vector length {v.size} is not a perfect square")
    return v.reshape(d, d)


def identity_vector(d: int) -> np.ndarray:
    """Vectorized identity |I> = sum_i |i>|i>; norm^2 = d."""
    return np.eye(d, dtype=complex).reshape(-1)


def expectation(a: np.ndarray, v: np.ndarray) -> complex:
    """<I| (A (x) I) |v>; equals Tr(A rho) when v = vectorize(rho)."""
    a = np.asarray(a, dtype=complex)
    v = np.asarray(v, dtype=complex).reshape(-1)
    d = a.shape[0]
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimMismatch(f"observable must be square, got shape {a.shape}")
    if v.size != d * d:
        raise DimMismatch(f"state length {v.size} does not match observable dim {d}")
    return complex(np.vdot(identity_vector(d), left_superop(a) @ v))


def hs_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product Tr(A^dag B) = sum_ij conj(A_ij) B_ij."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimMismatch(f"shape mismatch {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def left_superop(a: np.ndarray) -> np.ndarray:
    """Superoperator of left multiplication: left(A) vec(rho) = vec(A rho)."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimMismatch(f"operator must be square, got shape {a.shape}")
    return np.kron(a, np.eye(a.shape[0], dtype=complex))


def right_superop(a: np.ndarray) -> np.ndarray:
    """Superoperator of right multiplication: right(A) vec(rho) = vec(rho A).

    The transpose convention follows from the row-major vectorization:
    vec(rho A) = (I (x) A^T) vec(rho).
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimMismatch(f"operator must be square, got shape {a.shape}")
    return np.kron(np.eye(a.shape[0], dtype=complex), a.T)
