"""Lindblad models, vectorized Liouvillians, and two exact-evolution oracles.

The general construction accepts an arbitrary jump list; the amplitude
damping model (Hamiltonian ``(omega0/2) sigma_z`` plus a single ``sigma_-``
jump at rate ``gamma``) is the worked example used throughout the test suite,
and additionally has a hand-derived closed-form propagator that serves as an
independent oracle against the dense matrix exponential.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import DegenerateKernel, DimMismatch, NegativeRate
from .liouville import (
    SIGMA_MINUS,
    SIGMA_Z,
    DensityMatrix,
    _as_matrix,
    devectorize,
    identity_vector,
    left_superop,
    right_superop,
)

TRACE_PRESERVATION_TOL = 1e-12
SPECTRAL_STABILITY_TOL = 1e-10
KERNEL_GAP_TOL = 1e-8
STEADY_RESIDUAL_TOL = 1e-10
EIG_COND_LIMIT = 1e8


@dataclass(frozen=True)
class LindbladModel:
    """System Hamiltonian plus a list of (jump operator, rate) pairs."""

    hamiltonian: np.ndarray
    jumps: tuple = ()

    @property
    def dim(self) -> int:
        return self.hamiltonian.shape[0]


@dataclass(frozen=True)
class Liouvillian:
    """Vectorized generator; ``matrix`` is the d^2 x d^2 superoperator."""

    matrix: np.ndarray
    model: LindbladModel | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def amplitude_damping_model(omega0: float, gamma: float) -> LindbladModel:
    """Spontaneous-emission qubit: H = (omega0/2) sigma_z, jump sigma_- at gamma."""
    if gamma < 0:
        raise NegativeRate(f"gamma must be >= 0, got {gamma}")
    return LindbladModel(hamiltonian=0.5 * omega0 * SIGMA_Z, jumps=((SIGMA_MINUS, float(gamma)),))


def build_liouvillian(model: LindbladModel) -> Liouvillian:
    """Vectorize the master equation into a d^2 x d^2 superoperator.

    L = -i (left(H) - right(H))
        + sum_k gamma_k [ L_k (x) conj(L_k) - (left(L_k^dag L_k) + right(L_k^dag L_k)) / 2 ]
    """
    h = np.asarray(model.hamiltonian, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DimMismatch(f"Hamiltonian must be square, got shape {h.shape}")
    d = h.shape[0]
    gen = -1j * (left_superop(h) - right_superop(h))
    for jump, rate in model.jumps:
        jump = np.asarray(jump, dtype=complex)
        if jump.shape != (d, d):
            raise DimMismatch(f"jump operator shape {jump.shape} does not match dim {d}")
        if rate < 0:
            raise NegativeRate(f"jump rate must be >= 0, got {rate}")
        jdj = jump.conj().T @ jump
        gen = gen + rate * (
            np.kron(jump, jump.conj()) - 0.5 * (left_superop(jdj) + right_superop(jdj))
        )
    return Liouvillian(matrix=gen, model=model)


def steady_state(liouvillian: Liouvillian) -> np.ndarray:
    """Kernel vector of L, normalized to unit devectorized trace.

    Extracted as the right-singular vector of the smallest singular value;
    a second singular value below the 1e-8 gap tolerance signals multiple
    steady states and raises :class:`DegenerateKernel`.
    """
    matrix = liouvillian.matrix
    _, svals, vh = np.linalg.svd(matrix)
    if svals[-1] > KERNEL_GAP_TOL:
        raise DegenerateKernel(f"no kernel vector found (smallest singular value {svals[-1]:.3e})")
    if svals.size > 1 and svals[-2] <= KERNEL_GAP_TOL:
        raise DegenerateKernel(
            f"kernel is at least two-dimensional (singular values {svals[-2]:.3e}, {svals[-1]:.3e})"
        )
    vec = vh[-1].conj()
    trace = np.trace(devectorize(vec))
    if abs(trace) < 1e-14:
        raise DegenerateKernel("kernel vector is traceless; cannot normalize to a state")
    vec = vec / trace
    residual = np.linalg.norm(matrix @ vec)
    if residual > STEADY_RESIDUAL_TOL:
        raise DegenerateKernel(f"steady-state residual {residual:.3e} exceeds {STEADY_RESIDUAL_TOL}")
    return vec


def evolve_exact(liouvillian: Liouvillian, v0: np.ndarray, t: float, method: str = "pade") -> np.ndarray:
    """Propagate v0 by e^{L t} with a dense matrix exponential.

    ``method="pade"`` uses scaling-and-squaring (scipy); ``method="eig"``
    uses an eigendecomposition, valid when the generator is diagonalizable
    with eigenvector condition number below 1e8.  The two paths cross-check
    each other in the test suite.
    """
    v0 = np.asarray(v0, dtype=complex).reshape(-1)
    if v0.size != liouvillian.dim:
        raise DimMismatch(f"state length {v0.size} does not match generator dim {liouvillian.dim}")
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if method == "pade":
        return scipy.linalg.expm(liouvillian.matrix * t) @ v0
    if method == "eig":
        evals, evecs = np.linalg.eig(liouvillian.matrix)
        cond = np.linalg.cond(evecs)
        if cond > EIG_COND_LIMIT:
            raise ValueError(f"eigenvector condition number {cond:.3e} exceeds {EIG_COND_LIMIT}")
        return evecs @ (np.exp(evals * t) * np.linalg.solve(evecs, v0))
    raise ValueError(f"unknown method {method!r}")


def closed_form_amplitude_damping(rho0, t: float, omega0: float, gamma: float) -> np.ndarray:
    """Analytic amplitude-damping propagator, independent of any exponential.

    rho_11(t) = e^{-gamma t} rho_11(0)
    rho_10(t) = e^{(-i omega0 - gamma/2) t} rho_10(0),  rho_01 = conj
    rho_00(t) = 1 - e^{-gamma t} rho_11(0)
    """
    rho0 = _as_matrix(rho0)
    if rho0.shape != (2, 2):
        raise DimMismatch(f"closed form is for a single qubit, got shape {rho0.shape}")
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    decay = np.exp(-gamma * t)
    coherence = np.exp((-1j * omega0 - 0.5 * gamma) * t)
    out = np.empty((2, 2), dtype=complex)
    out[0, 0] = decay * rho0[0, 0]
    out[0, 1] = coherence * rho0[0, 1]
    out[1, 0] = np.conj(coherence) * rho0[1, 0]
    out[1, 1] = 1.0 - decay * rho0[0, 0]
    return out


def trace_preservation_defect(liouvillian: Liouvillian) -> float:
    """Max-abs of <I| L; zero for any trace-preserving generator."""
    d = int(round(np.sqrt(liouvillian.dim)))
    return float(np.max(np.abs(identity_vector(d) @ liouvillian.matrix)))


def random_density_matrix(rng: np.random.Generator, d: int) -> DensityMatrix:
    """Haar-ish random full-rank density matrix, for tests and property checks."""
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    m = g @ g.conj().T
    return DensityMatrix(matrix=m / np.trace(m))
