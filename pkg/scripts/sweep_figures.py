#!/usr/bin/env python3
"""Export the data behind the figure-style analyses as CSV.

Produces, per beta in {5, 10, 15, 20, 25, 30}, a fine gamma sweep with all
per-state quantities (energies, occupancies, uncertainties, information
measures, actions), plus phase-space contours for the four illustrative
(gamma, beta) parameter sets.  Sweeps are cached, so re-runs are cheap.
"""

import argparse
import sys
from pathlib import Path

from dwell.cli import main as dwell_main


def run(outdir: Path, step: float, states: int) -> int:
    outdir.mkdir(parents=True, exist_ok=True)
    for beta in (5, 10, 15, 20, 25, 30):
        rc = dwell_main([
            "sweep", "--alpha", "1", "--beta", str(beta),
            "--gamma", f"0:7:{step}", "--states", str(states),
            "--outdir", str(outdir / f"beta_{beta}"),
            "--cache-dir", str(outdir / "cache"),
        ])
        if rc != 0:
            return rc
    for gamma, beta in ((2, 8), (3, 12), (4, 16), (6, 25)):
        rc = dwell_main([
            "phase-space", "--alpha", "1", "--beta", str(beta),
            "--gamma", str(gamma), "--states", "4", "--contours",
            "--outdir", str(outdir / f"phase_g{gamma}_b{beta}"),
        ])
        if rc != 0:
            return rc
    return 0


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", type=Path, default=Path("out/figures"))
    parser.add_argument("--step", type=float, default=0.25,
                        help="gamma increment of the sweeps")
    parser.add_argument("--states", type=int, default=6)
    args = parser.parse_args()
    sys.exit(run(args.outdir, args.step, args.states))
