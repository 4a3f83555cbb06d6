"""Shared plotting helpers for the schrodsim output files.

Reads only the documented CSV/JSON formats (response series:
``t,re_chi,im_chi,method``; sweep tables:
``axis,value,max_abs,rms,wall_time_s,floored``; fit summaries from the
``.fit.json`` sidecars).  Never imports the simulator package.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

RESPONSE_COLUMNS = ("t", "re_chi", "im_chi", "method")
SWEEP_COLUMNS = ("axis", "value", "max_abs", "rms", "wall_time_s", "floored")

DYNAMICS_KINDS = ("dynamics_overlay", "noisy_overlay")
CONVERGENCE_KINDS = ("loglog_convergence", "semilog_tail", "noisy_convergence")


class MissingColumn(ValueError):
    pass


@dataclass(frozen=True)
class FigureRecipe:
    inputs: tuple
    kind: str
    output: str
    fit: str | None = None
    title: str | None = None
    dpi: int = 120

    def __post_init__(self):
        if self.kind not in DYNAMICS_KINDS + CONVERGENCE_KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}")
        if not self.inputs:
            raise ValueError("recipe needs at least one input CSV")
        for path in self.inputs:
            if not Path(path).exists():
                raise FileNotFoundError(f"input CSV not found: {path}")


def read_response_csv(path) -> dict:
    with Path(path).open(newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for column in RESPONSE_COLUMNS:
            if column not in header:
                raise MissingColumn(f"{path}: missing column {column!r}")
        t, re_chi, im_chi, methods = [], [], [], []
        for row in reader:
            t.append(float(row["t"]))
            re_chi.append(float(row["re_chi"]))
            im_chi.append(float(row["im_chi"]))
            methods.append(row["method"])
    return {
        "t": np.array(t),
        "re_chi": np.array(re_chi),
        "im_chi": np.array(im_chi),
        "method": methods[0] if methods else "unknown",
    }


def read_sweep_csv(path) -> dict:
    with Path(path).open(newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for column in SWEEP_COLUMNS:
            if column not in header:
                raise MissingColumn(f"{path}: missing column {column!r}")
        value, max_abs, floored = [], [], []
        axis = "value"
        for row in reader:
            axis = row["axis"]
            value.append(float(row["value"]))
            max_abs.append(float(row["max_abs"]))
            floored.append(row["floored"] == "true")
    return {
        "axis": axis,
        "value": np.array(value),
        "max_abs": np.array(max_abs),
        "floored": np.array(floored, dtype=bool),
    }


def read_fit_json(path, transform: str) -> dict | None:
    payload = json.loads(Path(path).read_text())
    fit = payload.get(transform)
    if not fit or "slope" not in fit:
        return None
    return fit


_STYLES = [
    {"color": "black", "linestyle": "-", "linewidth": 1.6},
    {"color": "tab:red", "linestyle": "--", "linewidth": 1.4},
    {"color": "tab:blue", "linestyle": "-.", "linewidth": 1.4},
    {"color": "tab:green", "linestyle": ":", "linewidth": 1.6},
]


def plot_dynamics(recipe: FigureRecipe) -> Path:
    """Overlay of response series: first input solid (reference), rest dashed."""
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    for index, path in enumerate(recipe.inputs):
        series = read_response_csv(path)
        style = _STYLES[index % len(_STYLES)]
        ax.plot(series["t"], series["re_chi"], label=series["method"], **style)
    ax.set_xlabel("t")
    ax.set_ylabel("Re chi(t)")
    ax.legend(frameon=False)
    if recipe.title:
        ax.set_title(recipe.title)
    ax.grid(alpha=0.25)
    return _save(fig, recipe)


def plot_convergence(recipe: FigureRecipe) -> Path:
    """Log-scaled error plot, optionally with the fitted trend line."""
    fig, ax = plt.subplots(figsize=(5.2, 3.8))
    labels = ("noiseless", "noisy") if recipe.kind == "noisy_convergence" else (None,)
    any_usable = False
    for index, path in enumerate(recipe.inputs):
        sweep = read_sweep_csv(path)
        keep = ~sweep["floored"] & (sweep["max_abs"] > 0)
        if not np.any(keep):
            continue
        any_usable = True
        style = _STYLES[index % len(_STYLES)]
        label = labels[index % len(labels)] or Path(path).stem
        ax.plot(sweep["value"][keep], sweep["max_abs"][keep], marker="o",
                markersize=4, label=label, **style)
    if not any_usable:
        plt.close(fig)
        raise ValueError("all sweep rows are at the numerical floor; nothing to plot")

    x_log = recipe.kind in ("loglog_convergence", "noisy_convergence")
    ax.set_yscale("log")
    if x_log:
        ax.set_xscale("log")
    if recipe.fit:
        fit = read_fit_json(recipe.fit, "log" if x_log else "identity")
        if fit:
            first = read_sweep_csv(recipe.inputs[0])
            keep = ~first["floored"] & (first["max_abs"] > 0)
            x = first["value"][keep]
            log_x = np.log(x) if x_log else x
            trend = np.exp(fit["slope"] * log_x + fit["intercept"])
            ax.plot(x, trend, color="gray", linestyle="-", linewidth=1.0, alpha=0.8,
                    label=f"fit slope {fit['slope']:.2f}")
    sweep = read_sweep_csv(recipe.inputs[0])
    ax.set_xlabel(sweep["axis"])
    ax.set_ylabel("max-abs error")
    ax.legend(frameon=False)
    if recipe.title:
        ax.set_title(recipe.title)
    ax.grid(alpha=0.25, which="both")
    return _save(fig, recipe)


def _save(fig, recipe: FigureRecipe) -> Path:
    out = Path(recipe.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, dpi=recipe.dpi)
    plt.close(fig)
    return out


def run_script(kind: str, argv=None, default_title: str | None = None) -> int:
    """Common argparse front end for the per-kind scripts."""
    import argparse

    parser = argparse.ArgumentParser(description=f"render a {kind} figure")
    parser.add_argument("--in", dest="inputs", required=True,
                        help="comma-separated input CSV paths")
    parser.add_argument("--fit", help="fit-summary JSON (convergence kinds)")
    parser.add_argument("--out", required=True, help="output PNG path")
    parser.add_argument("--title", default=default_title)
    args = parser.parse_args(argv)
    recipe = FigureRecipe(
        inputs=tuple(p.strip() for p in args.inputs.split(",") if p.strip()),
        kind=kind,
        output=args.out,
        fit=args.fit,
        title=args.title,
    )
    if kind in DYNAMICS_KINDS:
        path = plot_dynamics(recipe)
    else:
        path = plot_convergence(recipe)
    print(path)
    return 0
