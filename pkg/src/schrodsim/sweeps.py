"""Parameter-sweep harness behind the convergence and noise experiments.

A sweep varies exactly one axis (grid size, truncation width, recovery
offset, shot count, or the two-qubit depolarizing probability), computes the
response series for each value, and reports max-abs/RMS errors against a
reference oracle evaluated once.  Rows are computed in parallel (worker
count capped by ``SCHRODSIM_THREADS``) but the output is ordered by axis
value and every row is a pure function of the spec, so repeated runs with
the same seed are identical.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import response as rp
from .errors import DegenerateFit, SchrodsimError
from .lindblad import amplitude_damping_model, build_liouvillian, steady_state
from .liouville import PAULI_BY_NAME
from .noise import NoiseModel
from .schrod import decompose, make_grid

ERROR_FLOOR = 1e-14

SWEEP_AXES = ("eta_points", "eta_half_width", "recovery_offset", "shots", "noise_p2")


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    values: tuple
    method: str = "schrod"
    omega0: float = 2.0
    gamma: float = 0.2
    drive: str = "sigma_x"
    observable: str = "sigma_x"
    eta_half_width: float = 800.0
    eta_points: int = 2048
    recovery_offset: float = 1.0
    t_max: float = 10.0
    num_times: int = 81
    reference: str = "dense"
    shots: int = 0
    seed: int = 0
    repeats: int = 5
    noise: NoiseModel | None = None

    def __post_init__(self):
        if self.axis not in SWEEP_AXES:
            raise SchrodsimError(f"unknown sweep axis {self.axis!r}; expected one of {SWEEP_AXES}")
        if not self.values:
            raise SchrodsimError("sweep needs a nonempty value list")
        diffs = np.diff(np.asarray(self.values, dtype=float))
        if not (np.all(diffs > 0) or np.all(diffs < 0)):
            raise SchrodsimError("sweep values must be strictly monotone")
        if self.method not in ("schrod", "circuit", "noisy_circuit"):
            raise SchrodsimError(f"unknown sweep method {self.method!r}")
        if self.method == "noisy_circuit" and self.noise is None:
            raise SchrodsimError("noisy_circuit sweeps need a noise model")
        if self.reference not in ("dense", "closed_form"):
            raise SchrodsimError(f"unknown reference oracle {self.reference!r}")


@dataclass(frozen=True)
class SweepRow:
    axis: str
    value: float
    max_abs: float
    rms: float
    wall_time_s: float
    floored: bool
    meta: dict = field(default_factory=dict)


def _problem(spec: SweepSpec):
    model = amplitude_damping_model(spec.omega0, spec.gamma)
    liouvillian = build_liouvillian(model)
    pair = decompose(liouvillian)
    rho_eq = steady_state(liouvillian)
    a = PAULI_BY_NAME[spec.observable]
    v = rp.commutator_perturbation(PAULI_BY_NAME[spec.drive], spec.drive)
    times = np.linspace(0.0, spec.t_max, spec.num_times)
    return liouvillian, pair, a, v, rho_eq, times


def _reference_series(spec: SweepSpec, liouvillian, a, v, rho_eq, times) -> rp.ResponseSeries:
    if spec.reference == "closed_form":
        if spec.drive != "sigma_x" or spec.observable != "sigma_x":
            raise SchrodsimError("closed_form reference is only derived for the sigma_x/sigma_x setup")
        return rp.closed_form_chi(times, spec.omega0, spec.gamma)
    return rp.chi_dense(liouvillian, a, v, rho_eq, times)


def _row_params(spec: SweepSpec, value):
    """Apply one axis value, returning (grid kwargs, shots, noise)."""
    grid_kwargs = {
        "half_width": spec.eta_half_width,
        "points": spec.eta_points,
        "recovery_offset": spec.recovery_offset,
    }
    shots = spec.shots
    noise = spec.noise
    if spec.axis == "eta_points":
        grid_kwargs["points"] = int(value)
    elif spec.axis == "eta_half_width":
        grid_kwargs["half_width"] = float(value)
    elif spec.axis == "recovery_offset":
        grid_kwargs["recovery_offset"] = float(value)
    elif spec.axis == "shots":
        shots = int(value)
    elif spec.axis == "noise_p2":
        base = noise if noise is not None else NoiseModel()
        noise = replace(base, p2=float(value))
    return grid_kwargs, shots, noise


def _one_series(spec, pair, a, v, rho_eq, times, grid_kwargs, shots, noise, seed):
    grid = make_grid(**grid_kwargs)
    if spec.method == "schrod":
        return rp.chi_schrod(pair, a, v, rho_eq, times, grid)
    return rp.chi_circuit(
        pair, a, v, rho_eq, times, grid,
        shots=shots,
        noise=noise if spec.method == "noisy_circuit" else None,
        seed=seed,
    )


def _evaluate_row(spec: SweepSpec, value, pair, a, v, rho_eq, times, reference) -> SweepRow:
    grid_kwargs, shots, noise = _row_params(spec, value)
    start = time.perf_counter()
    stochastic = shots > 0
    repeats = spec.repeats if stochastic else 1
    max_abs_samples = []
    rms_samples = []
    for r in range(repeats):
        series = _one_series(spec, pair, a, v, rho_eq, times, grid_kwargs, shots, noise,
                             seed=spec.seed + r)
        metrics = rp.error_metric(series, reference)
        max_abs_samples.append(metrics["max_abs"])
        rms_samples.append(metrics["rms"])
    wall = time.perf_counter() - start
    max_abs = float(np.mean(max_abs_samples))
    rms = float(np.mean(rms_samples))
    meta = {"grid": grid_kwargs, "shots": shots, "repeats": repeats}
    if stochastic and repeats > 1:
        meta["max_abs_std"] = float(np.std(max_abs_samples))
        meta["rms_std"] = float(np.std(rms_samples))
    return SweepRow(
        axis=spec.axis,
        value=float(value),
        max_abs=max_abs,
        rms=rms,
        wall_time_s=wall,
        floored=max_abs < ERROR_FLOOR,
        meta=meta,
    )


def worker_count() -> int:
    """Worker cap: SCHRODSIM_THREADS if set, else min(4, cpu count)."""
    env = os.environ.get("SCHRODSIM_THREADS", "")
    if env.strip():
        return max(1, int(env))
    return max(1, min(4, os.cpu_count() or 1))


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """One row per axis value, ordered by value; reference computed once."""
    liouvillian, pair, a, v, rho_eq, times = _problem(spec)
    reference = _reference_series(spec, liouvillian, a, v, rho_eq, times)
    workers = worker_count()
    if workers == 1 or len(spec.values) == 1:
        return [
            _evaluate_row(spec, value, pair, a, v, rho_eq, times, reference)
            for value in spec.values
        ]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_evaluate_row, spec, value, pair, a, v, rho_eq, times, reference)
            for value in spec.values
        ]
        return [f.result() for f in futures]


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r2: float
    n_used: int


def fit_loglinear(rows: list[SweepRow], x_transform: str = "identity") -> FitResult:
    """Least-squares fit of log(error) against the (optionally log) axis.

    Rows at the numerical floor (max_abs < 1e-14) are excluded; fewer than
    three usable rows raise :class:`DegenerateFit`.
    """
    if x_transform not in ("identity", "log"):
        raise SchrodsimError(f"unknown x_transform {x_transform!r}")
    usable = [r for r in rows if not r.floored and r.max_abs > 0]
    if len(usable) < 3:
        raise DegenerateFit(f"need at least 3 non-floored rows, got {len(usable)}")
    x = np.array([r.value for r in usable], dtype=float)
    if x_transform == "log":
        if np.any(x <= 0):
            raise SchrodsimError("log transform needs positive axis values")
        x = np.log(x)
    y = np.log(np.array([r.max_abs for r in usable]))
    slope, intercept = np.polyfit(x, y, 1)
    predicted = slope * x + intercept
    ss_res = float(np.sum((y - predicted) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return FitResult(slope=float(slope), intercept=float(intercept), r2=float(r2), n_used=len(usable))
