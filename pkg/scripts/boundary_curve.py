#!/usr/bin/env python3
"""Existence-threshold experiment: gamma_c(eps) * eps -> 8 pi.

Runs the two-charge boundary bisection over a decreasing eps sequence and
writes the curve (CSV + SVG) into out/.  The product gamma_c * eps should
approach 8 pi ~ 25.13 from below as eps shrinks.
"""

import sys

from charged_drop.cli import run

EPS = "1e-2,5e-3,2e-3,1e-3"

if __name__ == "__main__":
    sys.exit(run(["two", "boundary", "--eps-list", EPS, "--plot", "svg",
                  "--out-dir", "out"] + sys.argv[1:]))
