#!/usr/bin/env python3
"""Render the dynamics overlay figure from schrodsim CSV outputs."""

import sys

from figlib import run_script

if __name__ == "__main__":
    sys.exit(run_script("dynamics_overlay"))
