"""Extremum-seeking control law with washout filter and velocity regulation.

The washout filter s/(s+h) is realized through its low-pass complement: the
state eta tracks h/(s+h)[J] and the filter output is xi = J - eta.  This is
the same filter as the output-error form of the analysis (shifted by the
unknown field maximum) but needs no knowledge of that maximum.
"""

from dataclasses import dataclass
from math import cos, sin


@dataclass(frozen=True)
class ControllerParams:
    a: float  # perturbation amplitude (rad)
    c_alpha: float  # pitch demodulation gain
    c_theta: float  # yaw demodulation gain
    b: float  # velocity gain (speed per signal unit)
    h: float  # washout cutoff (1/s)
    V_c: float  # bias forward velocity
    omega: float  # probing frequency (rad/s)
    R: float  # sensor offset (length)

    def __post_init__(self):
        for name in ("a", "c_alpha", "c_theta", "b", "h", "V_c", "omega", "R"):
            if getattr(self, name) <= 0:
                raise ValueError(f"controller parameter {name} must be positive")

    @property
    def period(self) -> float:
        return 2.0 * 3.141592653589793 / self.omega


@dataclass
class WashoutState:
    eta: float  # low-pass state h/(s+h)[J]


def washout_rhs(ws: WashoutState, J: float, h: float) -> float:
    """d(eta)/dt = h * (J - eta)."""
    return h * (J - ws.eta)


def xi(ws: WashoutState, J: float) -> float:
    """Washout filter output s/(s+h)[J] = J - eta."""
    return J - ws.eta


def control(xi_val: float, t: float, p: ControllerParams):
    """Control inputs (v, psi_alpha, psi_theta) at time t given filter output xi."""
    wt = p.omega * t
    v = p.V_c + p.b * xi_val
    psi_alpha = p.a * p.omega * cos(wt) + p.c_alpha * xi_val * sin(wt)
    psi_theta = -p.a * p.omega * sin(wt) + p.c_theta * xi_val * cos(wt)
    return v, psi_alpha, psi_theta
