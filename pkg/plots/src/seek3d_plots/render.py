"""Render PNG figures from seek3d CSV files.

Plot kinds:

* ``traj3d``            -- 3-D vehicle trajectory with start/source markers.
* ``proj_xy``           -- x-y projection of the trajectory.
* ``velocities``        -- forward speed and both steering rates vs time,
                           with the settled-window mean speed annotated.
* ``averaged_vs_full``  -- distance to source from a full run overlaid with
                           the averaged slow dynamics mapped to real time.

Every kind reads only the named CSV columns; nothing is recomputed from
the dynamics.  Axis limits are derived from the data so repeated renders
of the same inputs are deterministic.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

KINDS = ("traj3d", "proj_xy", "velocities", "averaged_vs_full")

#: Columns each kind needs from the main (trajectory) CSV.
REQUIRED = {
    "traj3d": ("x", "y", "z"),
    "proj_xy": ("x", "y"),
    "velocities": ("t", "v", "psi_alpha", "psi_theta"),
    "averaged_vs_full": ("t", "x", "y", "z"),
}

#: Columns needed from the averaged CSV (averaged_vs_full only).
REQUIRED_AVERAGED = ("tau", "r_tilde")

#: Fraction of the trace treated as the settled window for statistics.
SETTLED_FRACTION = 0.25


class SchemaError(Exception):
    """A required column is missing from an input CSV."""

    def __init__(self, path: str, column: str):
        self.path = path
        self.column = column
        super().__init__(f"{path}: missing column '{column}'")


@dataclass(frozen=True)
class PlotJob:
    csv_path: str
    kind: str
    out_path: str
    averaged_csv_path: str | None = None
    omega: float | None = None
    source: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown plot kind {self.kind!r}; choose from {KINDS}")
        if self.kind == "averaged_vs_full":
            if self.averaged_csv_path is None:
                raise ValueError("averaged_vs_full needs averaged_csv_path")
            if self.omega is None or self.omega <= 0:
                raise ValueError("averaged_vs_full needs a positive omega to map "
                                 "slow time onto real time")


def load_columns(path: str, names: tuple[str, ...]) -> dict[str, np.ndarray]:
    """Read the named columns from a CSV file with a header row."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise SchemaError(path, names[0])
        for name in names:
            if name not in header:
                raise SchemaError(path, name)
        idx = [header.index(name) for name in names]
        rows = [[float(row[i]) for i in idx] for row in reader]
    data = np.asarray(rows, dtype=float).reshape(len(rows), len(names))
    return {name: data[:, j] for j, name in enumerate(names)}


def _settled_slice(n: int) -> slice:
    return slice(max(0, n - max(1, int(n * SETTLED_FRACTION))), n)


def _pad_limits(lo: float, hi: float) -> tuple[float, float]:
    pad = 0.05 * (hi - lo) or 1e-6
    return lo - pad, hi + pad


def render(job: PlotJob) -> dict[str, float]:
    """Render one figure; return summary statistics of what was drawn."""
    cols = load_columns(job.csv_path, REQUIRED[job.kind])
    stats: dict[str, float] = {}
    fig = plt.figure(figsize=(7.0, 5.0), dpi=120)

    if job.kind == "traj3d":
        ax = fig.add_subplot(projection="3d")
        ax.plot(cols["x"], cols["y"], cols["z"], lw=0.7, color="tab:blue")
        ax.scatter(*[[c[0]] for c in (cols["x"], cols["y"], cols["z"])],
                   color="tab:green", label="start")
        ax.scatter([job.source[0]], [job.source[1]], [job.source[2]],
                   color="tab:red", marker="*", s=80, label="source")
        ax.set_xlabel("x"), ax.set_ylabel("y"), ax.set_zlabel("z")
        ax.legend(loc="upper right")

    elif job.kind == "proj_xy":
        ax = fig.add_subplot()
        ax.plot(cols["x"], cols["y"], lw=0.7, color="tab:blue")
        ax.scatter([cols["x"][0]], [cols["y"][0]], color="tab:green", label="start")
        ax.scatter([job.source[0]], [job.source[1]], color="tab:red",
                   marker="*", s=80, label="source")
        ax.set_xlim(*_pad_limits(min(cols["x"].min(), job.source[0]),
                                 max(cols["x"].max(), job.source[0])))
        ax.set_ylim(*_pad_limits(min(cols["y"].min(), job.source[1]),
                                 max(cols["y"].max(), job.source[1])))
        ax.set_xlabel("x"), ax.set_ylabel("y")
        ax.set_aspect("equal", adjustable="box")
        ax.legend(loc="upper right")

    elif job.kind == "velocities":
        t, v = cols["t"], cols["v"]
        window = _settled_slice(len(t))
        mean_v = float(np.mean(v[window]))
        stats["settled_mean_v"] = mean_v
        axes = fig.subplots(3, 1, sharex=True)
        for ax, key, label in zip(axes, ("v", "psi_alpha", "psi_theta"),
                                  ("forward speed v", "pitch rate", "yaw rate")):
            ax.plot(t, cols[key], lw=0.5, color="tab:blue")
            ax.set_ylabel(label)
            ax.set_xlim(t[0], t[-1])
        axes[0].axhline(mean_v, color="tab:red", ls="--", lw=0.8,
                        label=f"settled mean = {mean_v:.4g}")
        axes[0].legend(loc="upper right")
        axes[-1].set_xlabel("t [s]")

    else:  # averaged_vs_full
        r = np.hypot(np.hypot(cols["x"] - job.source[0], cols["y"] - job.source[1]),
                     cols["z"] - job.source[2])
        avg = load_columns(job.averaged_csv_path, REQUIRED_AVERAGED)
        ax = fig.add_subplot()
        ax.plot(cols["t"], r, lw=0.6, color="tab:blue", label="full system")
        ax.plot(avg["tau"] / job.omega, avg["r_tilde"], lw=1.4,
                color="tab:orange", label="averaged")
        ax.set_xlim(cols["t"][0], max(cols["t"][-1], avg["tau"][-1] / job.omega))
        ax.set_xlabel("t [s]"), ax.set_ylabel("distance to source")
        ax.legend(loc="upper right")
        stats["final_r_full"] = float(r[-1])
        stats["final_r_averaged"] = float(avg["r_tilde"][-1])

    fig.tight_layout()
    fig.savefig(job.out_path)
    plt.close(fig)
    return stats


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="seek3d-plots",
        description="Render figures from seek3d CSV output files.")
    parser.add_argument("--csv", required=True, help="trajectory CSV path")
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--out", required=True, help="output PNG path")
    parser.add_argument("--averaged-csv",
                        help="averaged-dynamics CSV (averaged_vs_full only)")
    parser.add_argument("--omega", type=float,
                        help="dither frequency used to map slow time onto "
                             "real time (averaged_vs_full only)")
    parser.add_argument("--source", type=float, nargs=3, default=(0.0, 0.0, 0.0),
                        metavar=("X", "Y", "Z"), help="source position marker")
    args = parser.parse_args(argv)

    try:
        job = PlotJob(csv_path=args.csv, kind=args.kind, out_path=args.out,
                      averaged_csv_path=args.averaged_csv, omega=args.omega,
                      source=tuple(args.source))
        stats = render(job)
    except (ValueError, SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for key, value in stats.items():
        print(f"{key} = {value:.6g}")
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
