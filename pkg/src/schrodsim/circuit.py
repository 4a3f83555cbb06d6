"""Minimal statevector circuit simulator and the modified Hadamard test.

Qubit 0 is the most significant index (statevector reshaped to ``[2]*n``
puts qubit q on axis q).  Gates are applied by index arithmetic on the
reshaped amplitude array; full ``2^n x 2^n`` matrices are never built.
Controls trigger on value 1.  Measurement happens only at the end of a
circuit, on the declared ``measured_qubits``.

The modified Hadamard test interferes two register states: the ancilla's
|0> branch carries ``U_prep_init`` followed by the evolution unitary, the
|1> branch carries ``U_prep_obs``; after the closing Hadamard the ancilla
bias P(0) - P(1) equals Re<phi_obs|U|phi_init> (or the imaginary part when
the phase variant inserts an S gate before the closing Hadamard).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, TooManyQubits, ZeroVector

MAX_QUBITS = 20
UNITARITY_TOL = 1e-10
GRAM_SCHMIDT_TOL = 1e-8

_SQ2 = 1.0 / math.sqrt(2.0)
_FIXED_GATES = {
    "h": np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex),
    "x": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "s": np.array([[1.0, 0.0], [0.0, 1.0j]], dtype=complex),
    "sdg": np.array([[1.0, 0.0], [0.0, -1.0j]], dtype=complex),
}


@dataclass(frozen=True)
class Gate:
    """One gate: a named single-qubit kind or an explicit unitary payload.

    ``noise_reps`` is a synthetic compiled-depth charge used only by the
    density-matrix simulator: its noise channels fire that many times after
    the gate.  The ideal simulator ignores it.
    """

    kind: str
    targets: tuple
    controls: tuple = ()
    matrix: np.ndarray | None = None
    noise_reps: int = 1

    def __post_init__(self):
        if self.kind not in _FIXED_GATES and self.kind != "unitary":
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if set(self.targets) & set(self.controls):
            raise ValueError("target and control sets must be disjoint")
        if self.kind == "unitary":
            if self.matrix is None:
                raise ValueError("unitary gate requires a matrix payload")
            dim = 2 ** len(self.targets)
            if self.matrix.shape != (dim, dim):
                raise DimMismatch(
                    f"matrix shape {self.matrix.shape} does not cover {len(self.targets)} qubits"
                )
            defect = np.max(np.abs(self.matrix.conj().T @ self.matrix - np.eye(dim)))
            if defect > UNITARITY_TOL:
                raise ValueError(f"gate payload is not unitary (defect {defect:.3e})")

    def resolved_matrix(self) -> np.ndarray:
        return _FIXED_GATES[self.kind] if self.kind != "unitary" else self.matrix


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    gates: tuple
    measured_qubits: tuple = ()

    def __post_init__(self):
        for g in self.gates:
            for q in g.targets + g.controls:
                if not 0 <= q < self.num_qubits:
                    raise ValueError(f"qubit index {q} out of range for {self.num_qubits} qubits")
        for q in self.measured_qubits:
            if not 0 <= q < self.num_qubits:
                raise ValueError(f"measured qubit {q} out of range")


@dataclass(frozen=True)
class ShotResult:
    counts: dict
    shots: int
    seed: object


def apply_gate(state: np.ndarray, gate: Gate, num_qubits: int) -> np.ndarray:
    """Apply one (possibly controlled) gate to a flat statevector."""
    u = gate.resolved_matrix()
    psi = state.reshape([2] * num_qubits)
    if gate.controls:
        sel = [slice(None)] * num_qubits
        for c in gate.controls:
            sel[c] = 1
        sel = tuple(sel)
        controls = sorted(gate.controls)
        # target axis positions inside the control-sliced view
        shifted = [t - sum(1 for c in controls if c < t) for t in gate.targets]
        sub = psi[sel]
        psi = psi.copy()
        psi[sel] = _apply_local(sub, u, shifted, num_qubits - len(controls))
        return psi.reshape(-1)
    return _apply_local(psi, u, list(gate.targets), num_qubits).reshape(-1)


def _apply_local(block: np.ndarray, u: np.ndarray, axes: list, n_axes: int) -> np.ndarray:
    k = len(axes)
    u_tensor = u.reshape([2] * (2 * k))
    out = np.tensordot(u_tensor, block, axes=(list(range(k, 2 * k)), axes))
    return np.moveaxis(out, list(range(k)), axes)


def simulate_statevector(circ: Circuit) -> np.ndarray:
    """Exact amplitudes after the full gate list; norm 1 to 1e-10."""
    if circ.num_qubits > MAX_QUBITS:
        raise TooManyQubits(f"{circ.num_qubits} qubits exceeds the {MAX_QUBITS}-qubit limit")
    state = np.zeros(2**circ.num_qubits, dtype=complex)
    state[0] = 1.0
    for gate in circ.gates:
        state = apply_gate(state, gate, circ.num_qubits)
    return state


def measurement_probabilities(circ: Circuit) -> tuple[float, float]:
    """(P(0), P(1)) of the single measured qubit, from exact amplitudes."""
    if len(circ.measured_qubits) != 1:
        raise ValueError("expected exactly one measured qubit")
    state = simulate_statevector(circ)
    q = circ.measured_qubits[0]
    probs = np.abs(state.reshape([2] * circ.num_qubits)) ** 2
    marg = probs.sum(axis=tuple(i for i in range(circ.num_qubits) if i != q))
    return float(marg[0]), float(marg[1])


def sample(circ: Circuit, shots: int, seed) -> ShotResult:
    """Seeded multinomial sampling of the measured qubit.

    Uses a counter-based PRNG (Philox) keyed by ``seed`` so results are
    reproducible bit-for-bit; the seed is recorded in the result.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    p0, _ = measurement_probabilities(circ)
    rng = np.random.Generator(np.random.Philox(_as_seed_sequence(seed)))
    ones = int(rng.binomial(shots, min(1.0, max(0.0, 1.0 - p0))))
    return ShotResult(counts={0: shots - ones, 1: ones}, shots=shots, seed=_seed_repr(seed))


def _as_seed_sequence(seed) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(entropy=int(seed))


def _seed_repr(seed):
    if isinstance(seed, np.random.SeedSequence):
        return (seed.entropy, tuple(seed.spawn_key))
    return int(seed)


def state_prep_unitary(target: np.ndarray) -> np.ndarray:
    """Unitary whose first column is ``target`` (deterministic Gram-Schmidt).

    Remaining columns come from the standard basis, skipping candidates that
    are near-parallel to the span built so far (threshold 1e-8).
    """
    target = np.asarray(target, dtype=complex).reshape(-1)
    norm = np.linalg.norm(target)
    if norm < 1e-14:
        raise ZeroVector("cannot prepare a zero vector")
    if abs(norm - 1.0) > UNITARITY_TOL:
        raise ValueError(f"target must be normalized, got norm {norm}")
    dim = target.size
    columns = [target]
    for k in range(dim):
        if len(columns) == dim:
            break
        cand = np.zeros(dim, dtype=complex)
        cand[k] = 1.0
        for col in columns:
            cand = cand - np.vdot(col, cand) * col
        cnorm = np.linalg.norm(cand)
        if cnorm < GRAM_SCHMIDT_TOL:
            continue
        columns.append(cand / cnorm)
    if len(columns) != dim:
        raise ValueError("Gram-Schmidt failed to complete an orthonormal basis")
    return np.stack(columns, axis=1)


def _pad_to_power_of_two(vec: np.ndarray) -> np.ndarray:
    dim = vec.size
    padded_dim = 1 << max(1, (dim - 1).bit_length())
    if padded_dim == dim:
        return vec
    out = np.zeros(padded_dim, dtype=complex)
    out[:dim] = vec
    return out


def _embed_unitary(u: np.ndarray, padded_dim: int) -> np.ndarray:
    if u.shape[0] == padded_dim:
        return u
    out = np.eye(padded_dim, dtype=complex)
    out[: u.shape[0], : u.shape[1]] = u
    return out


def build_hadamard_test(u: np.ndarray, phi_init: np.ndarray, phi_obs: np.ndarray, part: str,
                        evolution_noise_reps: int = 1) -> Circuit:
    """Modified Hadamard test extracting Re or Im of <phi_obs|U|phi_init>.

    Gate order: ancilla H; X; controlled prep of phi_init; controlled U;
    X; controlled prep of phi_obs; (S for the Im variant); H; measure the
    ancilla.  The X conjugation routes preparation and evolution onto the
    ancilla's |0> branch and the observable preparation onto the |1>
    branch.  Non-power-of-two dimensions are zero-padded; the padding
    subspace is never populated.
    """
    if part not in ("re", "im"):
        raise ValueError(f"part must be 're' or 'im', got {part!r}")
    phi_init = np.asarray(phi_init, dtype=complex).reshape(-1)
    phi_obs = np.asarray(phi_obs, dtype=complex).reshape(-1)
    u = np.asarray(u, dtype=complex)
    if phi_init.size != phi_obs.size or u.shape != (phi_init.size, phi_init.size):
        raise DimMismatch("U and the prepared states must share one dimension")
    padded = _pad_to_power_of_two(phi_init).size
    n_sys = padded.bit_length() - 1
    system = tuple(range(1, 1 + n_sys))
    prep_init = _embed_unitary(state_prep_unitary(phi_init), padded)
    prep_obs = _embed_unitary(state_prep_unitary(phi_obs), padded)
    u_emb = _embed_unitary(u, padded)
    gates = [
        Gate("h", (0,)),
        Gate("x", (0,)),
        Gate("unitary", system, (0,), prep_init),
        Gate("unitary", system, (0,), u_emb, noise_reps=evolution_noise_reps),
        Gate("x", (0,)),
        Gate("unitary", system, (0,), prep_obs),
    ]
    if part == "im":
        gates.append(Gate("s", (0,)))
    gates.append(Gate("h", (0,)))
    return Circuit(num_qubits=1 + n_sys, gates=tuple(gates), measured_qubits=(0,))


def compile_propagator(dh, t: float, method: str = "exact", order: int = 1, steps: int = 1) -> np.ndarray:
    """Unitary for exp(-i H_sch(eta) t): exact or Trotter-split.

    Order 1: [e^{-i eta H1 dt} e^{-i H2 dt}]^steps.  Order 2 uses the
    symmetric splitting with half steps of the eta H1 factor.  Every factor
    comes from a Hermitian eigendecomposition, so the output is unitary
    regardless of step count.
    """
    from .schrod import unitary_propagator

    if method == "exact":
        return unitary_propagator(dh, t)
    if method != "trotter":
        raise ValueError(f"unknown method {method!r}")
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order}")
    if dh.pair is None:
        raise ValueError("Trotter compilation needs the Hermitian pair behind H_sch")
    dt = t / steps
    evals1, evecs1 = np.linalg.eigh(dh.pair.h1)
    evals2, evecs2 = np.linalg.eigh(dh.pair.h2)

    def expfac(evals, evecs, scale):
        return (evecs * np.exp(-1j * evals * scale)) @ evecs.conj().T

    if order == 1:
        step = expfac(evals1, evecs1, dh.eta * dt) @ expfac(evals2, evecs2, dt)
    else:
        half = expfac(evals1, evecs1, 0.5 * dh.eta * dt)
        step = half @ expfac(evals2, evecs2, dt) @ half
    return np.linalg.matrix_power(step, steps)


def dump_gates(circ: Circuit) -> str:
    """Textual gate list for debugging; not a stable interchange format."""
    lines = []
    for g in circ.gates:
        ctrl = ",".join(map(str, g.controls)) or "-"
        tgt = ",".join(map(str, g.targets))
        lines.append(f"{g.kind} controls={ctrl} targets={tgt}")
    return "\n".join(lines)
