#!/usr/bin/env python3
"""Render the noisy convergence figure from schrodsim CSV outputs."""

import sys

from figlib import run_script

if __name__ == "__main__":
    sys.exit(run_script("noisy_convergence"))
