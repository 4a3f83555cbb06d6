#!/usr/bin/env python3
"""Print the quadrature-error landscape used to freeze grid defaults.

Tabulates the max-abs reconstruction error against the dense oracle over
t in [0, 10] for a grid of (half-width, point-count) pairs, for both a
coherence-type and a population-type initial vector.
"""

import argparse
import time

import numpy as np

from schrodsim.lindblad import amplitude_damping_model, build_liouvillian, evolve_exact
from schrodsim.schrod import decompose, make_grid, reconstruct_series

CASES = [
    (100.0, 1024),
    (100.0, 4096),
    (400.0, 4096),
    (800.0, 8192),
    (2000.0, 16384),
    (4000.0, 16384),
    (8000.0, 65536),
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--omega0", type=float, default=2.0)
    parser.add_argument("--gamma", type=float, default=0.2)
    parser.add_argument("--num-times", type=int, default=201)
    args = parser.parse_args()

    liouvillian = build_liouvillian(amplitude_damping_model(args.omega0, args.gamma))
    pair = decompose(liouvillian)
    times = np.linspace(0.0, 10.0, args.num_times)
    starts = {
        "coherence": np.array([0, -1j, 1j, 0], dtype=complex),
        "population": np.array([1, 0, 0, 0], dtype=complex),
    }
    oracles = {
        name: np.stack([evolve_exact(liouvillian, v, t) for t in times])
        for name, v in starts.items()
    }

    print(f"{'L_eta':>8} {'N':>7} {'coherence':>12} {'population':>12} {'secs':>6}")
    for half_width, points in CASES:
        grid = make_grid(half_width, points, 1.0)
        tic = time.perf_counter()
        errs = {}
        for name, v in starts.items():
            rec = reconstruct_series(pair, v, times, grid)
            errs[name] = float(np.max(np.abs(rec - oracles[name])))
        wall = time.perf_counter() - tic
        print(f"{half_width:8.0f} {points:7d} {errs['coherence']:12.3e} "
              f"{errs['population']:12.3e} {wall:6.2f}")
    return 0


if __name__ == "__main__":
    import sys

    sys.exit(main())
