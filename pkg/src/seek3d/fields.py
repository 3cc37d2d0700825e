"""Signal-strength landscapes and their evaluation at a sensor location.

Every variant attains its (isolated) maximum at ``r_star``.  The acoustic
variant feeds the controller the bounded transform -exp(-J) of the raw
inverse-square intensity, which blows up at the source; the raw intensity is
available separately for diagnostics.
"""

from dataclasses import dataclass, field
from math import exp, pi
from typing import Union

import numpy as np

from .errors import FieldDomainError

_ORIGIN = (0.0, 0.0, 0.0)


def _vec3(v) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class QuadraticSpherical:
    """J = f_star - q_r * |r - r_star|^2 (spherical level sets)."""

    f_star: float = 1.0
    q_r: float = 1.0
    r_star: tuple = _ORIGIN

    def __post_init__(self):
        if self.q_r <= 0:
            raise ValueError("q_r must be positive")


@dataclass(frozen=True)
class QuadraticElliptical:
    """J = f_star - sum_i c_i * (r_i - r_star_i)^2 with positive curvatures c_i."""

    f_star: float = 1.0
    diag_coeffs: tuple = (2.0, 0.5, 1.0)
    r_star: tuple = _ORIGIN

    def __post_init__(self):
        if len(self.diag_coeffs) != 3 or any(c <= 0 for c in self.diag_coeffs):
            raise ValueError("diag_coeffs must be three positive curvatures")


@dataclass(frozen=True)
class Acoustic:
    """Unit-power acoustic source; the controller sees J' = -exp(-1/(4*pi*d^2))."""

    r_star: tuple = _ORIGIN


@dataclass(frozen=True)
class Rosenbrock:
    """J = -x^2 - (y - x^2)^2 - y^2 - (z - y^2)^2 in coordinates relative to r_star."""

    r_star: tuple = _ORIGIN


FieldSpec = Union[QuadraticSpherical, QuadraticElliptical, Acoustic, Rosenbrock]


def source_location(spec: FieldSpec) -> np.ndarray:
    return _vec3(spec.r_star)


def acoustic_raw_intensity(spec: Acoustic, point) -> float:
    """Raw inverse-square intensity 1/(4*pi*d^2); diagnostics only."""
    d = _vec3(point) - _vec3(spec.r_star)
    d2 = float(d @ d)
    if d2 == 0.0:
        raise FieldDomainError("acoustic intensity is singular at the source")
    return 1.0 / (4.0 * pi * d2)


def eval_field(spec: FieldSpec, point) -> float:
    """Signal strength at ``point`` for any field variant."""
    p = _vec3(point)
    if not np.all(np.isfinite(p)):
        raise ValueError("point must be finite")
    rel = p - _vec3(spec.r_star)
    if isinstance(spec, QuadraticSpherical):
        return spec.f_star - spec.q_r * float(rel @ rel)
    if isinstance(spec, QuadraticElliptical):
        c = np.asarray(spec.diag_coeffs, dtype=float)
        return spec.f_star - float(c @ (rel * rel))
    if isinstance(spec, Acoustic):
        d2 = float(rel @ rel)
        if d2 == 0.0:
            # limit of -exp(-1/(4*pi*d^2)) as d -> 0; the transform is bounded
            return 0.0
        return -exp(-1.0 / (4.0 * pi * d2))
    if isinstance(spec, Rosenbrock):
        x, y, z = rel
        return -(x**2) - (y - x**2) ** 2 - y**2 - (z - y**2) ** 2
    raise TypeError(f"unknown field spec {type(spec).__name__}")
