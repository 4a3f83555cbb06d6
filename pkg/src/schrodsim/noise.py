"""Density-matrix circuit simulation with parametric noise channels.

Three scalar knobs stand in for a calibrated device model: per-gate
depolarizing probabilities (p1 on single-qubit supports, p2 on larger
ones), a per-qubit phase-flip probability, and a symmetric readout flip.
After each gate the depolarizing channel fires on the gate's support,
followed by the dephasing channel, in that fixed order.

Synthetic compiled depth: hardware compilation of the controlled evolution
block deepens with both the evolved time and the size of the momentum
register a coherent implementation would carry.  The evolution gate is
therefore charged ``ceil(depth_alpha * t) * register_depth`` channel
applications; sweeps over the grid size inherit an error floor that grows
with the register, which is what inverts the convergence trend once the
discretization error drops below it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import circuit as qc
from .errors import TooManyQubits
from .schrod import HermitianPair, dilated_hamiltonian, unitary_propagator

MAX_DENSITY_QUBITS = 10


@dataclass(frozen=True)
class NoiseModel:
    p1: float = 0.0
    p2: float = 0.0
    p_dephase: float = 0.0
    readout_flip: float = 0.0
    depth_alpha: float = 1.0
    register_depth: int = 1

    def __post_init__(self):
        for name in ("p1", "p2", "p_dephase", "readout_flip"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be a probability in [0, 1], got {value}")

    @property
    def is_noiseless(self) -> bool:
        return self.p1 == self.p2 == self.p_dephase == self.readout_flip == 0.0


DEFAULT_NOISE = NoiseModel(p1=1e-3, p2=1e-2, p_dephase=1e-3, readout_flip=0.01)


def scaled_for_register(nm: NoiseModel, register_depth: int) -> NoiseModel:
    """Charge the evolution block for a momentum register of that size."""
    return replace(nm, register_depth=max(1, int(register_depth)))


@dataclass(frozen=True)
class RegisterDensityMatrix:
    num_qubits: int
    matrix: np.ndarray


def validate_register_density(rho: RegisterDensityMatrix, tol: float = 1e-9) -> RegisterDensityMatrix:
    m = rho.matrix
    if np.max(np.abs(m - m.conj().T)) > tol:
        raise ValueError("register state is not Hermitian")
    if abs(np.trace(m).real - 1.0) > tol:
        raise ValueError("register state trace deviates from 1")
    if np.linalg.eigvalsh(m).min() < -tol:
        raise ValueError("register state has a negative eigenvalue")
    return rho


def _depolarize(matrix: np.ndarray, support: tuple, p: float, num_qubits: int) -> np.ndarray:
    """rho -> (1-p) rho + p (I/2^k on support) (x) Tr_support(rho)."""
    if p == 0.0:
        return matrix
    n = num_qubits
    k = len(support)
    tensor = matrix.reshape([2] * (2 * n))
    # trace out the support axes (row axis q contracts with column axis q+n)
    traced = tensor
    for q in sorted(support, reverse=True):
        traced = np.trace(traced, axis1=q, axis2=q + traced.ndim // 2)
    # traced now has axes for the kept qubits only, in original order
    kept = [q for q in range(n) if q not in support]
    mixed = np.zeros_like(tensor)
    eye = np.eye(2 ** k).reshape([2] * (2 * k)) / (2 ** k)
    # rebuild: mixed[row(support)=a, row(kept)=r; col(support)=b, col(kept)=c]
    #        = eye[a, b] * traced[r, c]
    src_row = [f"r{q}" for q in kept]
    src_col = [f"c{q}" for q in kept]
    sup_row = [f"r{q}" for q in support]
    sup_col = [f"c{q}" for q in support]
    # einsum with explicit index letters
    letters = {}

    def sym(name):
        if name not in letters:
            letters[name] = chr(ord("a") + len(letters))
        return letters[name]

    eye_idx = "".join(sym(i) for i in sup_row + sup_col)
    traced_idx = "".join(sym(i) for i in src_row + src_col)
    out_idx = "".join(sym(f"r{q}") for q in range(n)) + "".join(sym(f"c{q}") for q in range(n))
    mixed = np.einsum(f"{eye_idx},{traced_idx}->{out_idx}", eye, traced)
    return (1.0 - p) * matrix + p * mixed.reshape(matrix.shape)


def _dephase(matrix: np.ndarray, support: tuple, p: float, num_qubits: int) -> np.ndarray:
    """Phase flip on each support qubit: rho -> (1-p) rho + p Z_q rho Z_q."""
    if p == 0.0:
        return matrix
    n = num_qubits
    z = np.array([1.0, -1.0])
    for q in support:
        signs = np.ones(2 ** n)
        signs = signs.reshape([2] * n)
        shape = [1] * n
        shape[q] = 2
        signs = signs * z.reshape(shape)
        signs = signs.reshape(-1)
        flipped = signs[:, None] * matrix * signs[None, :]
        matrix = (1.0 - p) * matrix + p * flipped
    return matrix


def _gate_unitary(gate: qc.Gate, num_qubits: int) -> np.ndarray:
    dim = 2 ** num_qubits
    # fast paths for the shapes the Hadamard-test circuits use
    if gate.kind != "unitary" and gate.targets == (0,) and not gate.controls:
        return np.kron(gate.resolved_matrix(), np.eye(dim // 2, dtype=complex))
    if (
        gate.kind == "unitary"
        and gate.controls == (0,)
        and gate.targets == tuple(range(1, num_qubits))
    ):
        full = np.eye(dim, dtype=complex)
        full[dim // 2 :, dim // 2 :] = gate.matrix
        return full
    full = np.empty((dim, dim), dtype=complex)
    for col in range(dim):
        basis = np.zeros(dim, dtype=complex)
        basis[col] = 1.0
        full[:, col] = qc.apply_gate(basis, gate, num_qubits)
    return full


def _apply_gate_with_noise(rho: np.ndarray, gate: qc.Gate, nm: NoiseModel, n: int) -> np.ndarray:
    u = _gate_unitary(gate, n)
    rho = u @ rho @ u.conj().T
    support = tuple(sorted(set(gate.targets) | set(gate.controls)))
    p_dep = nm.p1 if len(support) == 1 else nm.p2
    reps = max(1, gate.noise_reps)
    # r interleaved applications compose exactly into one of each: the
    # depolarizing weights multiply toward the fixed point and the per-qubit
    # phase-flip coherence factor is (1-2p)^r.
    p_dep_eff = 1.0 - (1.0 - p_dep) ** reps
    p_deph_eff = 0.5 * (1.0 - (1.0 - 2.0 * nm.p_dephase) ** reps)
    rho = _depolarize(rho, support, p_dep_eff, n)
    return _dephase(rho, support, p_deph_eff, n)


def simulate_density(circ: qc.Circuit, nm: NoiseModel) -> RegisterDensityMatrix:
    """Evolve |0..0><0..0| through the circuit with noise channels.

    Each gate acts as rho -> U rho U^dag, then the depolarizing channel on
    the gate's support (p1 single-qubit, p2 otherwise) and the dephasing
    channel fire ``gate.noise_reps`` times, in that order.
    """
    n = circ.num_qubits
    if n > MAX_DENSITY_QUBITS:
        raise TooManyQubits(f"{n} qubits exceeds the {MAX_DENSITY_QUBITS}-qubit density limit")
    dim = 2 ** n
    rho = np.zeros((dim, dim), dtype=complex)
    rho[0, 0] = 1.0
    for gate in circ.gates:
        rho = _apply_gate_with_noise(rho, gate, nm, n)
    return RegisterDensityMatrix(num_qubits=n, matrix=rho)


def measure_probabilities(rho: RegisterDensityMatrix, qubit: int, readout_flip: float = 0.0) -> tuple[float, float]:
    """(P(0), P(1)) marginal of one qubit with a symmetric readout flip."""
    if not 0.0 <= readout_flip <= 1.0:
        raise ValueError(f"readout_flip must be in [0, 1], got {readout_flip}")
    n = rho.num_qubits
    diag = np.real(np.diag(rho.matrix)).reshape([2] * n)
    p0 = float(diag.sum(axis=tuple(i for i in range(n) if i != qubit))[0])
    p0 = min(1.0, max(0.0, p0))
    p1 = 1.0 - p0
    flipped0 = (1.0 - readout_flip) * p0 + readout_flip * p1
    return flipped0, 1.0 - flipped0


def evolution_noise_reps(nm: NoiseModel, t: float) -> int:
    """Synthetic compiled-depth charge for the evolution block at time t."""
    return max(1, math.ceil(nm.depth_alpha * t)) * max(1, nm.register_depth)


def noisy_overlap(
    pair: HermitianPair,
    eta: float,
    t: float,
    phi_init: np.ndarray,
    phi_obs: np.ndarray,
    part: str,
    nm: NoiseModel,
    propagator: np.ndarray | None = None,
) -> float:
    """Ancilla bias P(0) - P(1) of the noisy modified Hadamard test."""
    if propagator is None:
        propagator = unitary_propagator(dilated_hamiltonian(pair, eta), t)
    circ = qc.build_hadamard_test(
        propagator, phi_init, phi_obs, part,
        evolution_noise_reps=evolution_noise_reps(nm, t),
    )
    rho = simulate_density(circ, nm)
    p0, p1 = measure_probabilities(rho, circ.measured_qubits[0], nm.readout_flip)
    return p0 - p1


def noisy_bias_pair(
    circ_re: qc.Circuit,
    nm: NoiseModel,
) -> tuple[float, float]:
    """(Re, Im) ancilla biases sharing the common circuit prefix.

    ``circ_re`` is the real-part Hadamard-test circuit; the imaginary
    variant differs only by an S gate before the closing Hadamard, so the
    density matrix up to that point is simulated once.
    """
    n = circ_re.num_qubits
    if n > MAX_DENSITY_QUBITS:
        raise TooManyQubits(f"{n} qubits exceeds the {MAX_DENSITY_QUBITS}-qubit density limit")
    *prefix, closing_h = circ_re.gates
    dim = 2 ** n
    rho = np.zeros((dim, dim), dtype=complex)
    rho[0, 0] = 1.0
    for gate in prefix:
        rho = _apply_gate_with_noise(rho, gate, nm, n)
    biases = []
    for tail in ((closing_h,), (qc.Gate("s", (0,)), closing_h)):
        branch = rho
        for gate in tail:
            branch = _apply_gate_with_noise(branch, gate, nm, n)
        state = RegisterDensityMatrix(num_qubits=n, matrix=branch)
        p0, p1 = measure_probabilities(state, circ_re.measured_qubits[0], nm.readout_flip)
        biases.append(p0 - p1)
    return biases[0], biases[1]
