#!/usr/bin/env python3
"""Phase-diagram sweep over (eps, gamma, N).

Classifies a log-spaced grid with the default threshold constants and writes
the labeled cells to out/regime_map.csv.  The Exists/NotExists divider sits
at n = C/(eps * gamma); cells beyond delta0/eps^2 stay Unknown.
"""

import sys

from charged_drop.cli import run

EPS = "1e-5,1e-4,1e-3"
GAMMA = "250,1000,4000"
N = "1,2,10,100,1000,10000,100000,1000000"

if __name__ == "__main__":
    sys.exit(run(["regime", "map", "--eps-list", EPS, "--gamma-list", GAMMA,
                  "--n-list", N, "--out-dir", "out"] + sys.argv[1:]))
