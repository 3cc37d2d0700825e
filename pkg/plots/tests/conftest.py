"""Generate real input CSVs by invoking the seek3d CLI as a subprocess.

The plotting package consumes the simulator's files only through its
external interface, so the fixtures do the same: run the installed
``seek3d`` command and hand the resulting paths to the tests.
"""

import configparser
import subprocess
import sys

import pytest


def _run_cli(*args: str) -> None:
    result = subprocess.run([sys.executable, "-m", "seek3d.cli", *args],
                            capture_output=True, text=True)
    assert result.returncode == 0, result.stderr


@pytest.fixture(scope="session")
def sim_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("c1")
    _run_cli("simulate", "--preset", "corollary1", "--t-end", "360",
             "--out", str(out))
    return out


@pytest.fixture(scope="session")
def trajectory_csv(sim_dir):
    return sim_dir / "trajectory.csv"


@pytest.fixture(scope="session")
def sim_config(sim_dir):
    parser = configparser.ConfigParser()
    parser.read(sim_dir / "config.ini")
    return parser


@pytest.fixture(scope="session")
def averaged_csv(tmp_path_factory):
    out = tmp_path_factory.mktemp("avg")
    _run_cli("averaged", "--preset", "corollary1", "--start-at", "eq1",
             "--perturb", "0.05", "--tau-end", "2000", "--out", str(out))
    return out / "averaged.csv"
