#!/usr/bin/env python3
"""Drive the CLI through every experiment and collect the outputs.

Produces, under --out:
  dynamics/            chi_schrod.csv + chi_dense.csv (fine default grid)
  convergence_points/  noiseless error vs. grid size + fit
  convergence_width/   noiseless error vs. truncation half-width + fit
  noisy_dynamics/      chi_noisy_circuit.csv + chi_dense.csv
  inversion/           paired noiseless / noisy sweeps over grid size

Runtime is a few minutes, dominated by the noisy density-matrix runs.
"""

import argparse
import json
import sys
import tempfile
from pathlib import Path

from schrodsim.cli import main as cli_main

MODEL = {"omega0": 2.0, "gamma": 0.2}
NOISE = {"p1": 1e-3, "p2": 1e-2, "p_dephase": 1e-3, "readout_flip": 0.01}


def run(config: dict, *args: str) -> None:
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        json.dump(config, fh)
        path = fh.name
    code = cli_main([*args, "--config", path])
    if code != 0:
        sys.exit(code)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results")
    args = parser.parse_args()
    out = Path(args.out)

    run(
        {
            "model": MODEL,
            "grid": {"eta_half_width": 4000.0, "eta_points": 16384, "recovery_offset": 1.0},
            "time": {"t_max": 10.0, "num_points": 200},
            "execution": {"method": "schrod"},
            "output": {"directory": str(out / "dynamics"), "label": "dynamics"},
        },
        "respond",
    )

    run(
        {
            "model": MODEL,
            "grid": {"eta_half_width": 800.0, "eta_points": 2048, "recovery_offset": 1.0},
            "time": {"t_max": 10.0, "num_points": 201},
            "execution": {"method": "schrod"},
            "sweep": {"axis": "eta_points", "values": [256, 512, 1024, 2048, 4096, 8192]},
            "output": {"directory": str(out / "convergence_points"), "label": "npoints"},
        },
        "sweep",
    )

    run(
        {
            "model": MODEL,
            "grid": {"eta_half_width": 100.0, "eta_points": 16384, "recovery_offset": 1.0},
            "time": {"t_max": 10.0, "num_points": 201},
            "execution": {"method": "schrod"},
            "sweep": {"axis": "eta_half_width", "values": [25.0, 50.0, 100.0, 200.0, 400.0]},
            "output": {"directory": str(out / "convergence_width"), "label": "width"},
        },
        "sweep",
    )

    run(
        {
            "model": MODEL,
            "grid": {"eta_half_width": 100.0, "eta_points": 256, "recovery_offset": 1.0},
            "time": {"t_max": 10.0, "num_points": 81},
            "execution": {"method": "noisy_circuit"},
            "noise": NOISE,
            "output": {"directory": str(out / "noisy_dynamics"), "label": "noisy"},
        },
        "respond",
    )

    inversion = {
        "model": MODEL,
        "grid": {"eta_half_width": 100.0, "eta_points": 256, "recovery_offset": 1.0},
        "time": {"t_max": 10.0, "num_points": 41},
        "execution": {"method": "schrod"},
        "sweep": {"axis": "eta_points", "values": [16, 32, 64, 128, 256]},
        "output": {"directory": str(out / "inversion"), "label": "ideal"},
    }
    run(inversion, "sweep")
    inversion["execution"] = {"method": "noisy_circuit"}
    inversion["noise"] = NOISE
    inversion["output"]["label"] = "noisy"
    run(inversion, "sweep")

    print(f"all outputs under {out}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
