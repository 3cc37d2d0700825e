#!/usr/bin/env python3
"""Sweep the dither amplitude and report gates, verdicts, and radii.

Usage:
    python scripts/amplitude_sweep.py [--a-min 1.2] [--a-max 2.6] [--a-step 0.05]
"""

import argparse

from seek3d.cli import main as cli_main


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results/sweep")
    ap.add_argument("--a-min", type=float, default=1.2)
    ap.add_argument("--a-max", type=float, default=2.6)
    ap.add_argument("--a-step", type=float, default=0.05)
    args = ap.parse_args()
    raise SystemExit(cli_main([
        "sweep", "--preset", "corollary1", "--out", args.out,
        "--a-min", str(args.a_min), "--a-max", str(args.a_max),
        "--a-step", str(args.a_step),
    ]))


if __name__ == "__main__":
    main()
