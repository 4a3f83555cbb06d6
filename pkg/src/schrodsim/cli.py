"""Command-line front end: ``respond``, ``sweep``, and ``estimate``.

Every run resolves a single JSON config (flags override file values),
validates it up front, and writes its outputs plus a manifest capturing the
full resolved config, seed, package version, and input-file hash.  Feeding
a manifest back through ``--config`` reproduces the run bit-for-bit.

Exit codes: 0 success, 2 config validation failure, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from . import response as rp
from .config import METHODS, RunConfig, parse_config
from .errors import ConfigError, SchrodsimError
from .lindblad import build_liouvillian, steady_state
from .liouville import PAULI_BY_NAME
from .schrod import decompose, make_grid, resource_estimate
from .serialize import write_json, write_response_csv, write_sweep_csv
from .sweeps import SweepSpec, fit_loglinear, run_sweep


def _load_config(args) -> tuple[RunConfig, str | None, str | None]:
    """Resolved config plus (config file hash, manifest run_id if any)."""
    payload: dict = {}
    config_hash = None
    run_id = None
    if args.config:
        path = Path(args.config)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        raw = path.read_bytes()
        config_hash = hashlib.sha256(raw).hexdigest()
        try:
            payload = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        if isinstance(payload, dict) and "run_id" in payload and "config" in payload:
            run_id = payload["run_id"]
    config = parse_config(payload)
    overrides = {}
    if getattr(args, "method", None):
        if args.method not in METHODS:
            raise ConfigError(f"execution.method: unknown method {args.method!r}")
        overrides["method"] = args.method
    if getattr(args, "shots", None) is not None:
        if args.shots < 0:
            raise ConfigError("execution.shots must be >= 0")
        overrides["shots"] = args.shots
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    if getattr(args, "out", None):
        overrides["out_dir"] = args.out
    if overrides:
        from dataclasses import replace

        config = replace(config, **overrides)
    if config.method == "noisy_circuit" and config.noise is None:
        raise ConfigError("execution.method=noisy_circuit requires a noise section")
    return config, config_hash, run_id


def _run_id(config: RunConfig, manifest_run_id: str | None) -> str:
    if manifest_run_id:
        return manifest_run_id
    if config.label:
        return config.label
    return datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%SZ")


def _manifest(command: str, config: RunConfig, config_hash: str | None, run_id: str,
              outputs: list[str]) -> dict:
    return {
        "artifact": {"name": "schrodsim", "version": __version__},
        "command": command,
        "run_id": run_id,
        "seed": config.seed,
        "config": config.to_manifest_dict(),
        "config_sha256": config_hash,
        "outputs": outputs,
    }


def _problem(config: RunConfig):
    model = config.model()
    liouvillian = build_liouvillian(model)
    pair = decompose(liouvillian)
    rho_eq = steady_state(liouvillian)
    a = PAULI_BY_NAME[config.observable]
    v = rp.commutator_perturbation(PAULI_BY_NAME[config.drive], config.drive)
    times = np.linspace(0.0, config.t_max, config.num_points)
    return liouvillian, pair, a, v, rho_eq, times


def _series_params(config: RunConfig) -> dict:
    params = {
        "omega0": config.omega0,
        "gamma": config.gamma,
        "drive": config.drive,
        "observable": config.observable,
        "seed": config.seed,
    }
    if config.noise is not None:
        params["noise"] = {
            "p1": config.noise.p1,
            "p2": config.noise.p2,
            "p_dephase": config.noise.p_dephase,
            "readout_flip": config.noise.readout_flip,
            "depth_alpha": config.noise.depth_alpha,
        }
    return params


def cmd_respond(config: RunConfig, config_hash: str | None = None,
                manifest_run_id: str | None = None) -> list[Path]:
    """Write the requested response series plus the dense reference."""
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    run_id = _run_id(config, manifest_run_id)
    liouvillian, pair, a, v, rho_eq, times = _problem(config)
    params = _series_params(config)

    dense = rp.chi_dense(liouvillian, a, v, rho_eq, times, params=params)
    written = [write_response_csv(out_dir / "chi_dense.csv", dense)]
    write_json(out_dir / "chi_dense.meta.json", {"params": params, "method": "dense"})

    if config.method != "dense":
        grid = make_grid(config.eta_half_width, config.eta_points, config.recovery_offset)
        if config.method == "schrod":
            series = rp.chi_schrod(pair, a, v, rho_eq, times, grid, params=params)
        else:
            series = rp.chi_circuit(
                pair, a, v, rho_eq, times, grid,
                shots=config.shots,
                noise=config.noise if config.method == "noisy_circuit" else None,
                seed=config.seed,
                params=params,
            )
        written.append(write_response_csv(out_dir / f"chi_{config.method}.csv", series))
        write_json(out_dir / f"chi_{config.method}.meta.json",
                   {"params": series.params, "method": series.method})

    manifest = _manifest("respond", config, config_hash, run_id, [p.name for p in written])
    write_json(out_dir / "manifest.json", manifest)
    return written


def cmd_sweep(config: RunConfig, axis: str | None = None, config_hash: str | None = None,
              manifest_run_id: str | None = None) -> list[Path]:
    """Run the configured sweep and write its CSV, fit summary, and manifest."""
    axis = axis or config.sweep_axis
    if not axis:
        raise ConfigError("sweep.axis is required (config key or --axis flag)")
    if not config.sweep_values:
        raise ConfigError("sweep.values is required")
    method = config.method if config.method != "dense" else "schrod"
    spec = SweepSpec(
        axis=axis,
        values=config.sweep_values,
        method=method,
        omega0=config.omega0,
        gamma=config.gamma,
        drive=config.drive,
        observable=config.observable,
        eta_half_width=config.eta_half_width,
        eta_points=config.eta_points,
        recovery_offset=config.recovery_offset,
        t_max=config.t_max,
        num_times=config.num_points,
        reference=config.sweep_reference,
        shots=config.shots,
        seed=config.seed,
        repeats=config.repeats,
        noise=config.noise,
    )
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    run_id = _run_id(config, manifest_run_id)
    rows = run_sweep(spec)
    stem = f"sweep_{axis}_{method}_{run_id}"
    written = [write_sweep_csv(out_dir / f"{stem}.csv", rows,
                               include_wall_time=not config.reproducible)]
    write_json(
        out_dir / f"{stem}.meta.json",
        {
            "axis": axis,
            "method": method,
            "params": _series_params(config),
            "reference": config.sweep_reference,
            "rows": [
                {"value": r.value, "max_abs": r.max_abs, "rms": r.rms,
                 "wall_time_s": r.wall_time_s, "floored": r.floored, **r.meta}
                for r in rows
            ],
        },
    )
    fits = {}
    for transform in ("identity", "log"):
        try:
            fit = fit_loglinear(rows, x_transform=transform)
            fits[transform] = {
                "slope": fit.slope,
                "intercept": fit.intercept,
                "r2": fit.r2,
                "n_used": fit.n_used,
            }
        except SchrodsimError as exc:
            fits[transform] = {"error": str(exc)}
    written.append(write_json(out_dir / f"{stem}.fit.json", fits))
    manifest = _manifest("sweep", config, config_hash, run_id, [p.name for p in written])
    write_json(out_dir / "manifest.json", manifest)
    return written


def cmd_estimate(config: RunConfig) -> dict:
    """Auxiliary-register size and circuit counts for the configured grid."""
    report = resource_estimate(config.eta_points)
    total = report.circuits_per_timepoint * config.num_points
    return {
        "eta_points": config.eta_points,
        "ancilla_qubits": report.ancilla_qubits,
        "circuits_per_timepoint": report.circuits_per_timepoint,
        "time_points": config.num_points,
        "total_circuits": total,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schrodsim",
        description="Non-Hermitian linear response via exact, quadrature, and circuit paths",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, desc in (
        ("respond", "compute a chi(tau) series plus the dense reference"),
        ("sweep", "run a one-axis convergence or noise sweep"),
        ("estimate", "report auxiliary-register size and circuit counts"),
    ):
        p = sub.add_parser(name, help=desc)
        p.add_argument("--config", help="JSON config (or a manifest from a previous run)")
        p.add_argument("--out", help="output directory (overrides output.directory)")
        p.add_argument("--seed", type=int, help="override execution.seed")
        p.add_argument("--method", help="override execution.method")
        p.add_argument("--shots", type=int, help="override execution.shots")
        if name == "sweep":
            p.add_argument("--axis", help="sweep axis (overrides sweep.axis)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config, config_hash, manifest_run_id = _load_config(args)
        if args.command == "respond":
            written = cmd_respond(config, config_hash, manifest_run_id)
            for path in written:
                print(path)
        elif args.command == "sweep":
            written = cmd_sweep(config, getattr(args, "axis", None), config_hash, manifest_run_id)
            for path in written:
                print(path)
        elif args.command == "estimate":
            report = cmd_estimate(config)
            print(json.dumps(report, indent=2, sort_keys=True))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (SchrodsimError, np.linalg.LinAlgError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
