#!/usr/bin/env python3
"""Uniform-measure convergence experiment.

Optimizes n charges in the unit ball for a growing sequence of n and records
shell occupancy, the Riesz gap |F_N - 1|, and the spherical-cap discrepancy.
All three should trend toward the uniform boundary measure (the Riesz gap
scales like ~1.1/sqrt(n) for optimal configurations).
"""

import sys

from charged_drop.cli import run

if __name__ == "__main__":
    sys.exit(run(["charges", "converge", "--n-list", "25,50,100,200",
                  "--eps", "1e-3", "--seed", "417", "--restarts", "2",
                  "--tol", "1e-7", "--plot", "svg", "--out-dir", "out"]
                 + sys.argv[1:]))
