"""Run configuration: a single self-describing JSON file, strictly validated.

Sections: ``model`` (omega0/gamma or explicit matrices), ``grid``
(eta_half_width, eta_points, recovery_offset), ``time`` (t_max,
num_points), ``execution`` (method, shots, seed, repeats), optional
``noise``, optional ``sweep`` (axis, values), and ``output``.  Unknown keys
anywhere are rejected; error messages name the offending key.  CLI flags
override file values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .lindblad import LindbladModel, amplitude_damping_model
from .noise import NoiseModel

_SECTIONS = {"model", "grid", "time", "execution", "noise", "sweep", "output"}
_MODEL_KEYS = {"omega0", "gamma", "hamiltonian", "jumps", "drive", "observable"}
_GRID_KEYS = {"eta_half_width", "eta_points", "recovery_offset"}
_TIME_KEYS = {"t_max", "num_points"}
_EXEC_KEYS = {"method", "shots", "seed", "repeats"}
_NOISE_KEYS = {"p1", "p2", "p_dephase", "readout_flip", "depth_alpha"}
_SWEEP_KEYS = {"axis", "values", "reference"}
_OUTPUT_KEYS = {"directory", "label", "reproducible"}

METHODS = ("dense", "schrod", "circuit", "noisy_circuit")


@dataclass(frozen=True)
class RunConfig:
    omega0: float = 2.0
    gamma: float = 0.2
    hamiltonian: np.ndarray | None = None
    jumps: tuple = ()
    drive: str = "sigma_x"
    observable: str = "sigma_x"
    eta_half_width: float = 4000.0
    eta_points: int = 16384
    recovery_offset: float = 1.0
    t_max: float = 10.0
    num_points: int = 200
    method: str = "schrod"
    shots: int = 0
    seed: int = 0
    repeats: int = 5
    noise: NoiseModel | None = None
    sweep_axis: str | None = None
    sweep_values: tuple = ()
    sweep_reference: str = "dense"
    out_dir: str = "out"
    label: str | None = None
    reproducible: bool = False

    def model(self) -> LindbladModel:
        if self.hamiltonian is not None:
            return LindbladModel(hamiltonian=self.hamiltonian, jumps=self.jumps)
        return amplitude_damping_model(self.omega0, self.gamma)

    def to_manifest_dict(self) -> dict:
        payload = {
            "model": {
                "omega0": self.omega0,
                "gamma": self.gamma,
                "drive": self.drive,
                "observable": self.observable,
            },
            "grid": {
                "eta_half_width": self.eta_half_width,
                "eta_points": self.eta_points,
                "recovery_offset": self.recovery_offset,
            },
            "time": {"t_max": self.t_max, "num_points": self.num_points},
            "execution": {
                "method": self.method,
                "shots": self.shots,
                "seed": self.seed,
                "repeats": self.repeats,
            },
            "output": {
                "directory": self.out_dir,
                "reproducible": self.reproducible,
                **({"label": self.label} if self.label else {}),
            },
        }
        if self.hamiltonian is not None:
            payload["model"]["hamiltonian"] = _matrix_to_json(self.hamiltonian)
            payload["model"]["jumps"] = [
                {"matrix": _matrix_to_json(j), "rate": rate} for j, rate in self.jumps
            ]
        if self.noise is not None:
            payload["noise"] = {
                "p1": self.noise.p1,
                "p2": self.noise.p2,
                "p_dephase": self.noise.p_dephase,
                "readout_flip": self.noise.readout_flip,
                "depth_alpha": self.noise.depth_alpha,
            }
        if self.sweep_axis is not None:
            payload["sweep"] = {
                "axis": self.sweep_axis,
                "values": list(self.sweep_values),
                "reference": self.sweep_reference,
            }
        return payload


def _matrix_to_json(matrix: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(matrix, dtype=complex)]


def _matrix_from_json(payload, key: str) -> np.ndarray:
    try:
        arr = np.array([[complex(re, im) for re, im in row] for row in payload])
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{key}: expected a matrix of [re, im] pairs ({exc})") from exc
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ConfigError(f"{key}: matrix must be square, got shape {arr.shape}")
    return arr


def _reject_unknown(section: dict, allowed: set, where: str):
    for key in section:
        if key not in allowed:
            raise ConfigError(f"unknown key {where}.{key}")


def _expect(section, key, types, where, default=None, required=False):
    if key not in section:
        if required:
            raise ConfigError(f"missing required key {where}.{key}")
        return default
    value = section[key]
    if not isinstance(value, types) or isinstance(value, bool) and bool not in (
        types if isinstance(types, tuple) else (types,)
    ):
        raise ConfigError(f"{where}.{key}: unexpected type {type(value).__name__}")
    return value


def parse_config(payload: dict) -> RunConfig:
    """Validate a raw dict (already JSON-decoded) into a RunConfig."""
    if not isinstance(payload, dict):
        raise ConfigError("config root must be an object")
    # a manifest wraps the config it was produced from; accept it directly
    if "config" in payload and isinstance(payload.get("config"), dict):
        payload = payload["config"]
    _reject_unknown(payload, _SECTIONS, "config")

    model = payload.get("model", {})
    _reject_unknown(model, _MODEL_KEYS, "model")
    omega0 = float(_expect(model, "omega0", (int, float), "model", default=2.0))
    gamma = float(_expect(model, "gamma", (int, float), "model", default=0.2))
    if gamma < 0:
        raise ConfigError("model.gamma must be >= 0")
    drive = _expect(model, "drive", str, "model", default="sigma_x")
    observable = _expect(model, "observable", str, "model", default="sigma_x")
    for name, value in (("drive", drive), ("observable", observable)):
        if value not in ("sigma_x", "sigma_y", "sigma_z"):
            raise ConfigError(f"model.{name}: unknown operator {value!r}")
    hamiltonian = None
    jumps = ()
    if "hamiltonian" in model:
        hamiltonian = _matrix_from_json(model["hamiltonian"], "model.hamiltonian")
        raw_jumps = model.get("jumps", [])
        if not isinstance(raw_jumps, list):
            raise ConfigError("model.jumps must be a list")
        parsed = []
        for idx, entry in enumerate(raw_jumps):
            if not isinstance(entry, dict) or set(entry) - {"matrix", "rate"}:
                raise ConfigError(f"model.jumps[{idx}]: expected {{matrix, rate}}")
            rate = entry.get("rate", 0.0)
            if not isinstance(rate, (int, float)) or rate < 0:
                raise ConfigError(f"model.jumps[{idx}].rate must be >= 0")
            parsed.append((_matrix_from_json(entry["matrix"], f"model.jumps[{idx}].matrix"), float(rate)))
        jumps = tuple(parsed)
    elif "jumps" in model:
        raise ConfigError("model.jumps requires model.hamiltonian")

    grid = payload.get("grid", {})
    _reject_unknown(grid, _GRID_KEYS, "grid")
    eta_half_width = float(_expect(grid, "eta_half_width", (int, float), "grid", default=4000.0))
    eta_points = _expect(grid, "eta_points", int, "grid", default=16384)
    recovery_offset = float(_expect(grid, "recovery_offset", (int, float), "grid", default=1.0))
    if eta_half_width <= 0:
        raise ConfigError("grid.eta_half_width must be > 0")
    # resource estimates are meaningful from a single node; quadrature use
    # is guarded separately by make_grid
    if eta_points < 1:
        raise ConfigError("grid.eta_points must be >= 1")
    if recovery_offset <= 0:
        raise ConfigError("grid.recovery_offset must be > 0")

    time_section = payload.get("time", {})
    _reject_unknown(time_section, _TIME_KEYS, "time")
    t_max = float(_expect(time_section, "t_max", (int, float), "time", default=10.0))
    num_points = _expect(time_section, "num_points", int, "time", default=200)
    if t_max <= 0:
        raise ConfigError("time.t_max must be > 0")
    if num_points < 2:
        raise ConfigError("time.num_points must be >= 2")

    execution = payload.get("execution", {})
    _reject_unknown(execution, _EXEC_KEYS, "execution")
    method = _expect(execution, "method", str, "execution", default="schrod")
    if method not in METHODS:
        raise ConfigError(f"execution.method: unknown method {method!r}")
    shots = _expect(execution, "shots", int, "execution", default=0)
    if shots < 0:
        raise ConfigError("execution.shots must be >= 0")
    seed = _expect(execution, "seed", int, "execution", default=0)
    repeats = _expect(execution, "repeats", int, "execution", default=5)
    if repeats < 1:
        raise ConfigError("execution.repeats must be >= 1")

    noise = None
    if "noise" in payload:
        noise_section = payload["noise"]
        _reject_unknown(noise_section, _NOISE_KEYS, "noise")
        kwargs = {}
        for key in _NOISE_KEYS:
            if key in noise_section:
                value = noise_section[key]
                if not isinstance(value, (int, float)):
                    raise ConfigError(f"noise.{key}: expected a number")
                kwargs[key] = float(value)
        try:
            noise = NoiseModel(**kwargs)
        except ValueError as exc:
            raise ConfigError(f"noise: {exc}") from exc
    if method == "noisy_circuit" and noise is None:
        raise ConfigError("execution.method=noisy_circuit requires a noise section")

    sweep_axis = None
    sweep_values: tuple = ()
    sweep_reference = "dense"
    if "sweep" in payload:
        sweep = payload["sweep"]
        _reject_unknown(sweep, _SWEEP_KEYS, "sweep")
        sweep_axis = _expect(sweep, "axis", str, "sweep", required=True)
        raw_values = sweep.get("values")
        if not isinstance(raw_values, list) or not raw_values:
            raise ConfigError("sweep.values must be a nonempty list")
        sweep_values = tuple(float(v) for v in raw_values)
        sweep_reference = _expect(sweep, "reference", str, "sweep", default="dense")
        if sweep_reference not in ("dense", "closed_form"):
            raise ConfigError(f"sweep.reference: unknown oracle {sweep_reference!r}")

    output = payload.get("output", {})
    _reject_unknown(output, _OUTPUT_KEYS, "output")
    out_dir = _expect(output, "directory", str, "output", default="out")
    label = _expect(output, "label", str, "output", default=None)
    reproducible = _expect(output, "reproducible", bool, "output", default=False)

    return RunConfig(
        omega0=omega0,
        gamma=gamma,
        hamiltonian=hamiltonian,
        jumps=jumps,
        drive=drive,
        observable=observable,
        eta_half_width=eta_half_width,
        eta_points=int(eta_points),
        recovery_offset=recovery_offset,
        t_max=t_max,
        num_points=int(num_points),
        method=method,
        shots=int(shots),
        seed=int(seed),
        repeats=int(repeats),
        noise=noise,
        sweep_axis=sweep_axis,
        sweep_values=sweep_values,
        sweep_reference=sweep_reference,
        out_dir=out_dir,
        label=label,
        reproducible=bool(reproducible),
    )
