"""Nonholonomic kinematics of the vehicle center and its offset sensor.

The vehicle moves only along its heading (no sideways translation); pitch and
yaw rates are direct inputs.  Roll does not affect the sensor or the motion
and is omitted.  Angles are never wrapped here: the shifted-variable
transforms downstream need alpha and theta to accumulate continuously.
"""

from dataclasses import dataclass
from math import cos, sin

import numpy as np


@dataclass
class VehicleState:
    r_c: np.ndarray  # center position, 3-vector
    alpha: float  # pitch angle (rad)
    theta: float  # yaw angle (rad)

    def __post_init__(self):
        self.r_c = np.asarray(self.r_c, dtype=float)
        if self.r_c.shape != (3,):
            raise ValueError("r_c must be a 3-vector")


def heading(alpha: float, theta: float) -> np.ndarray:
    """Unit heading vector (cos a cos t, cos a sin t, sin a)."""
    ca = cos(alpha)
    return np.array([ca * cos(theta), ca * sin(theta), sin(alpha)])


def kinematics_rhs(state: VehicleState, v: float, psi_alpha: float, psi_theta: float) -> VehicleState:
    """Time derivative of the vehicle state under (v, psi_alpha, psi_theta)."""
    return VehicleState(r_c=v * heading(state.alpha, state.theta), alpha=psi_alpha, theta=psi_theta)


def sensor_position(state: VehicleState, R: float) -> np.ndarray:
    """Sensor location r_c + R * heading; R >= 0."""
    if R < 0:
        raise ValueError("sensor offset R must be nonnegative")
    return state.r_c + R * heading(state.alpha, state.theta)
