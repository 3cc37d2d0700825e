#!/usr/bin/env python3
"""Run every bundled scenario preset and write trajectories + summaries.

Usage:
    python scripts/run_scenarios.py [--out results] [--t-end 120]
"""

import argparse
from pathlib import Path

from seek3d.cli import main as cli_main
from seek3d.presets import PRESET_NAMES


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results")
    ap.add_argument("--t-end", type=float, default=120.0)
    args = ap.parse_args()

    for name in PRESET_NAMES:
        out = Path(args.out) / name
        rc = cli_main(["simulate", "--preset", name, "--t-end", str(args.t_end),
                       "--out", str(out)])
        if rc != 0:
            raise SystemExit(f"{name} failed with exit code {rc}")
        cli_main(["analyze", "--preset", name, "--out", str(out)])


if __name__ == "__main__":
    main()
