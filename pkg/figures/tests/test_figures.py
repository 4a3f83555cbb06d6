"""Figure scripts render from fixture CSVs alone (no simulator import)."""

import csv
import hashlib
import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from figlib import (  # noqa: E402
    FigureRecipe,
    MissingColumn,
    plot_convergence,
    plot_dynamics,
    read_response_csv,
    read_sweep_csv,
)

SCRIPT_DIR = Path(__file__).resolve().parents[1]


def write_response(path, method, damping=0.1, amplitude=2.0):
    t = np.linspace(0.0, 10.0, 101)
    values = -amplitude * np.exp(-damping * t) * np.sin(2.0 * t)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "re_chi", "im_chi", "method"])
        for ti, vi in zip(t, values):
            writer.writerow([repr(float(ti)), repr(float(vi)), "0.0", method])
    return path


def write_sweep(path, values, errors, axis="eta_points", floored=None):
    floored = floored or [False] * len(values)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["axis", "value", "max_abs", "rms", "wall_time_s", "floored"])
        for v, e, f in zip(values, errors, floored):
            writer.writerow([axis, repr(float(v)), repr(float(e)), repr(float(e / 2)),
                             "0.0", str(f).lower()])
    return path


def write_fit(path, slope, intercept):
    payload = {
        "log": {"slope": slope, "intercept": intercept, "r2": 0.99, "n_used": 5},
        "identity": {"slope": slope / 10, "intercept": intercept, "r2": 0.95, "n_used": 5},
    }
    path.write_text(json.dumps(payload))
    return path


@pytest.fixture
def fixture_files(tmp_path):
    exact = write_response(tmp_path / "chi_dense.csv", "dense")
    quad = write_response(tmp_path / "chi_schrod.csv", "schrod", damping=0.1001)
    noisy = write_response(tmp_path / "chi_noisy.csv", "noisy_circuit", amplitude=1.2)
    n_values = [256.0, 512.0, 1024.0, 2048.0, 4096.0]
    n_sweep = write_sweep(tmp_path / "sweep_n.csv", n_values,
                          [3.0 * np.exp(-0.02 * v) + 1e-3 for v in n_values])
    l_values = [25.0, 50.0, 100.0, 200.0, 400.0]
    l_sweep = write_sweep(tmp_path / "sweep_l.csv", l_values,
                          [1.5 / v for v in l_values], axis="eta_half_width")
    noisy_sweep = write_sweep(tmp_path / "sweep_noisy.csv", n_values,
                              [0.5, 0.55, 0.6, 0.62, 0.64])
    fit = write_fit(tmp_path / "fit.json", -2.5, 10.0)
    return {
        "exact": exact, "quad": quad, "noisy": noisy,
        "n_sweep": n_sweep, "l_sweep": l_sweep, "noisy_sweep": noisy_sweep,
        "fit": fit, "dir": tmp_path,
    }


def test_readers_validate_headers(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("t,only_re\n0.0,1.0\n")
    with pytest.raises(MissingColumn):
        read_response_csv(bad)
    with pytest.raises(MissingColumn):
        read_sweep_csv(bad)


def test_round_trip_readers(fixture_files):
    series = read_response_csv(fixture_files["exact"])
    assert series["method"] == "dense"
    assert series["t"].size == 101
    sweep = read_sweep_csv(fixture_files["n_sweep"])
    assert sweep["axis"] == "eta_points"
    assert not sweep["floored"].any()


def test_all_five_kinds_render(fixture_files):
    out = fixture_files["dir"]
    rendered = [
        plot_dynamics(FigureRecipe(
            inputs=(str(fixture_files["exact"]), str(fixture_files["quad"])),
            kind="dynamics_overlay", output=str(out / "fig_dynamics.png"))),
        plot_dynamics(FigureRecipe(
            inputs=(str(fixture_files["exact"]), str(fixture_files["noisy"])),
            kind="noisy_overlay", output=str(out / "fig_noisy_dynamics.png"))),
        plot_convergence(FigureRecipe(
            inputs=(str(fixture_files["n_sweep"]),), kind="loglog_convergence",
            output=str(out / "fig_convergence_n.png"), fit=str(fixture_files["fit"]))),
        plot_convergence(FigureRecipe(
            inputs=(str(fixture_files["l_sweep"]),), kind="semilog_tail",
            output=str(out / "fig_tail_l.png"), fit=str(fixture_files["fit"]))),
        plot_convergence(FigureRecipe(
            inputs=(str(fixture_files["n_sweep"]), str(fixture_files["noisy_sweep"])),
            kind="noisy_convergence", output=str(out / "fig_noisy_convergence.png"))),
    ]
    for path in rendered:
        assert path.exists()
        assert path.stat().st_size > 2000


def test_rendering_is_deterministic(fixture_files):
    out = fixture_files["dir"]

    def render(name):
        path = plot_convergence(FigureRecipe(
            inputs=(str(fixture_files["n_sweep"]),), kind="loglog_convergence",
            output=str(out / name), fit=str(fixture_files["fit"])))
        return hashlib.sha256(path.read_bytes()).hexdigest()

    assert render("first.png") == render("second.png")


def test_all_floored_rows_rejected(fixture_files, tmp_path):
    dead = write_sweep(tmp_path / "dead.csv", [1.0, 2.0, 3.0], [0.0, 0.0, 0.0],
                       floored=[True, True, True])
    with pytest.raises(ValueError):
        plot_convergence(FigureRecipe(inputs=(str(dead),), kind="loglog_convergence",
                                      output=str(tmp_path / "never.png")))


def test_recipe_validation(fixture_files, tmp_path):
    with pytest.raises(ValueError):
        FigureRecipe(inputs=(str(fixture_files["exact"]),), kind="bogus", output="x.png")
    with pytest.raises(FileNotFoundError):
        FigureRecipe(inputs=(str(tmp_path / "nope.csv"),), kind="dynamics_overlay",
                     output="x.png")


@pytest.mark.parametrize(
    "script,inputs,needs_fit",
    [
        ("plot_dynamics.py", ("exact", "quad"), False),
        ("plot_noisy_dynamics.py", ("exact", "noisy"), False),
        ("plot_convergence_points.py", ("n_sweep",), True),
        ("plot_convergence_width.py", ("l_sweep",), True),
        ("plot_noisy_convergence.py", ("n_sweep", "noisy_sweep"), False),
    ],
)
def test_scripts_run_standalone(fixture_files, script, inputs, needs_fit):
    out = fixture_files["dir"] / f"{script}.png"
    cmd = [
        sys.executable,
        str(SCRIPT_DIR / script),
        "--in", ",".join(str(fixture_files[k]) for k in inputs),
        "--out", str(out),
    ]
    if needs_fit:
        cmd += ["--fit", str(fixture_files["fit"])]
    result = subprocess.run(cmd, capture_output=True, text=True, cwd=SCRIPT_DIR)
    assert result.returncode == 0, result.stderr
    assert out.exists()
