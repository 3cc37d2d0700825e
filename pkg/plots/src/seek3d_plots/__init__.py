"""Figure rendering for seek3d CSV outputs.

Strictly downstream of the CSV files written by the ``seek3d`` command
line tool: this package reads columns, draws, and writes PNGs.  It never
recomputes dynamics, so the trajectory data has a single source of truth.
"""

from .render import PlotJob, SchemaError, load_columns, render

__all__ = ["PlotJob", "SchemaError", "load_columns", "render"]
