"""CSV/JSON emission for response series and sweep tables.

Floats are written with shortest round-trip ``repr`` so identical runs
produce byte-identical files; every CSV gets a JSON sidecar with the
parameters that produced it.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .response import ResponseSeries
from .sweeps import SweepRow


def _fmt(x) -> str:
    return repr(float(x))


def write_response_csv(path, series: ResponseSeries) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "re_chi", "im_chi", "method"])
        for t, value in zip(series.times, series.values):
            writer.writerow([_fmt(t), _fmt(value.real), _fmt(value.imag), series.method])
    return path


def read_response_csv(path) -> ResponseSeries:
    path = Path(path)
    times, re_vals, im_vals, methods = [], [], [], []
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            times.append(float(row["t"]))
            re_vals.append(float(row["re_chi"]))
            im_vals.append(float(row["im_chi"]))
            methods.append(row["method"])
    values = np.array(re_vals) + 1j * np.array(im_vals)
    method = methods[0] if methods else "unknown"
    return ResponseSeries(times=np.array(times), values=values, method=method)


def write_sweep_csv(path, rows: list[SweepRow], include_wall_time: bool = True) -> Path:
    """Sweep table; with ``include_wall_time=False`` the timing column is
    written as 0.0 so re-runs are byte-identical (true timings always land
    in the JSON sidecar)."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["axis", "value", "max_abs", "rms", "wall_time_s", "floored"])
        for row in rows:
            wall = row.wall_time_s if include_wall_time else 0.0
            writer.writerow(
                [row.axis, _fmt(row.value), _fmt(row.max_abs), _fmt(row.rms),
                 _fmt(wall), str(row.floored).lower()]
            )
    return path


def read_sweep_csv(path) -> list[dict]:
    path = Path(path)
    out = []
    with path.open(newline="") as fh:
        for row in csv.DictReader(fh):
            out.append(
                {
                    "axis": row["axis"],
                    "value": float(row["value"]),
                    "max_abs": float(row["max_abs"]),
                    "rms": float(row["rms"]),
                    "wall_time_s": float(row["wall_time_s"]),
                    "floored": row["floored"] == "true",
                }
            )
    return out


def write_json(path, payload: dict) -> Path:
    path = Path(path)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


def read_json(path) -> dict:
    return json.loads(Path(path).read_text())
