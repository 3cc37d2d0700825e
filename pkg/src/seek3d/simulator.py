"""Fixed-step RK4 integration of the closed-loop seeking system.

State advanced per step: (x, y, z, alpha, theta, eta).  The field is sampled
at the offset sensor at every Runge-Kutta stage, and the control law at the
stage time.  Trajectories record time, pose, signal, filter output, and the
three control inputs; error coordinates relative to the source are derived on
demand.
"""

import csv
import json
from dataclasses import dataclass
from math import atan2, cos, floor, hypot, isfinite, pi, sin, sqrt
from typing import Optional

import numpy as np

from .controller import ControllerParams, WashoutState, control, xi as washout_xi
from .errors import SimulationDiverged
from .fields import FieldSpec, QuadraticSpherical, eval_field, source_location
from .vehicle import VehicleState, heading, sensor_position

CSV_COLUMNS = ("t", "x", "y", "z", "alpha", "theta", "J", "xi", "v", "psi_alpha", "psi_theta")


@dataclass
class SimConfig:
    params: ControllerParams
    field: FieldSpec
    initial: VehicleState
    dt: float
    t_end: float
    record_stride: int = 1

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.t_end < 0:
            raise ValueError("t_end must be nonnegative")
        if self.record_stride < 1:
            raise ValueError("record_stride must be a positive integer")
        # at least 32 integrator steps per perturbation period
        if self.dt * self.params.omega > 2 * pi / 32 + 1e-12:
            raise ValueError("dt too large: need dt * omega <= 2*pi/32")


def default_dt(omega: float) -> float:
    """64 RK4 steps per perturbation period."""
    return (2 * pi / omega) / 64


@dataclass
class Trajectory:
    t: np.ndarray
    r_c: np.ndarray  # (n, 3)
    alpha: np.ndarray
    theta: np.ndarray
    J: np.ndarray
    xi: np.ndarray
    v: np.ndarray
    psi_alpha: np.ndarray
    psi_theta: np.ndarray
    eta: np.ndarray

    def __len__(self):
        return len(self.t)

    def column(self, name: str) -> np.ndarray:
        if name in ("x", "y", "z"):
            return self.r_c[:, "xyz".index(name)]
        return getattr(self, name)

    def distance_to(self, r_star) -> np.ndarray:
        return np.linalg.norm(self.r_c - np.asarray(r_star, dtype=float), axis=1)

    def to_csv(self, path):
        with open(path, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(CSV_COLUMNS)
            for i in range(len(self.t)):
                row = (self.t[i], *self.r_c[i], self.alpha[i], self.theta[i], self.J[i],
                       self.xi[i], self.v[i], self.psi_alpha[i], self.psi_theta[i])
                w.writerow([repr(float(val)) for val in row])

    @classmethod
    def from_csv(cls, path) -> "Trajectory":
        data = np.genfromtxt(path, delimiter=",", names=True)
        data = np.atleast_1d(data)
        cols = {name: np.asarray(data[name], dtype=float) for name in CSV_COLUMNS}
        r_c = np.column_stack([cols["x"], cols["y"], cols["z"]])
        return cls(t=cols["t"], r_c=r_c, alpha=cols["alpha"], theta=cols["theta"],
                   J=cols["J"], xi=cols["xi"], v=cols["v"], psi_alpha=cols["psi_alpha"],
                   psi_theta=cols["psi_theta"], eta=cols["J"] - cols["xi"])


@dataclass
class ErrorCoords:
    r_tilde: float
    alpha_star: Optional[float]
    theta_star: Optional[float]
    alpha_hat: float
    theta_hat: float
    theta_tilde: Optional[float]  # wrapped to (-pi, pi]
    e_hat: Optional[float]  # only for spherical quadratic fields
    degenerate: bool = False


def wrap_angle(x: float) -> float:
    """Wrap to (-pi, pi]."""
    w = (x + pi) % (2 * pi) - pi
    return pi if w == -pi else w


def _rhs(s, t, p: ControllerParams, field: FieldSpec):
    x, y, z, al, th, eta = s
    ca = cos(al)
    hx, hy, hz = ca * cos(th), ca * sin(th), sin(al)
    J = eval_field(field, (x + p.R * hx, y + p.R * hy, z + p.R * hz))
    xi_val = J - eta
    wt = p.omega * t
    v = p.V_c + p.b * xi_val
    return (v * hx, v * hy, v * hz,
            p.a * p.omega * cos(wt) + p.c_alpha * xi_val * sin(wt),
            -p.a * p.omega * sin(wt) + p.c_theta * xi_val * cos(wt),
            p.h * xi_val)


def _rk4_step(s, t, dt, p, field):
    k1 = _rhs(s, t, p, field)
    s2 = tuple(si + 0.5 * dt * ki for si, ki in zip(s, k1))
    k2 = _rhs(s2, t + 0.5 * dt, p, field)
    s3 = tuple(si + 0.5 * dt * ki for si, ki in zip(s, k2))
    k3 = _rhs(s3, t + 0.5 * dt, p, field)
    s4 = tuple(si + dt * ki for si, ki in zip(s, k3))
    k4 = _rhs(s4, t + dt, p, field)
    return tuple(si + dt / 6.0 * (a + 2 * b_ + 2 * c + d)
                 for si, a, b_, c, d in zip(s, k1, k2, k3, k4))


def initial_washout(config: SimConfig) -> WashoutState:
    """eta(0) = J(r_s(0)), so xi(0) = 0 and v(0) = V_c (no startup spike)."""
    J0 = eval_field(config.field, sensor_position(config.initial, config.params.R))
    return WashoutState(eta=J0)


def step(state: VehicleState, washout: WashoutState, t: float, config: SimConfig):
    """One RK4 step of size config.dt; returns (state', washout')."""
    s = (*state.r_c, state.alpha, state.theta, washout.eta)
    try:
        s = _rk4_step(s, t, config.dt, config.params, config.field)
    except (OverflowError, ValueError):
        # trig/field evaluation on an overflowed state
        raise SimulationDiverged(step_index=int(round(t / config.dt)) + 1, t=t + config.dt)
    if not all(isfinite(v) for v in s):
        raise SimulationDiverged(step_index=int(round(t / config.dt)) + 1, t=t + config.dt)
    return VehicleState(r_c=np.array(s[:3]), alpha=s[3], theta=s[4]), WashoutState(eta=s[5])


def run(config: SimConfig) -> Trajectory:
    """Integrate from t = 0 to t_end, recording every record_stride-th step."""
    p, field, dt = config.params, config.field, config.dt
    n_steps = int(floor(config.t_end / dt / config.record_stride)) * config.record_stride
    n_rows = n_steps // config.record_stride + 1
    out = np.empty((n_rows, 11))

    s = (*config.initial.r_c, config.initial.alpha, config.initial.theta,
         initial_washout(config).eta)
    t = 0.0
    row = 0
    for i in range(n_steps + 1):
        if i % config.record_stride == 0:
            x, y, z, al, th, eta = s
            J = eval_field(field, (x + p.R * cos(al) * cos(th),
                                   y + p.R * cos(al) * sin(th),
                                   z + p.R * sin(al)))
            xi_val = J - eta
            v, pa, pt = control(xi_val, t, p)
            out[row] = (t, x, y, z, al, th, J, xi_val, v, pa, pt)
            row += 1
        if i == n_steps:
            break
        try:
            s = _rk4_step(s, i * dt, dt, p, field)
        except (OverflowError, ValueError):
            raise SimulationDiverged(step_index=i + 1, t=(i + 1) * dt)
        t = (i + 1) * dt
        if not all(isfinite(v) for v in s):
            raise SimulationDiverged(step_index=i + 1, t=t)

    eta_col = out[:, 6] - out[:, 7]
    return Trajectory(t=out[:, 0], r_c=out[:, 1:4], alpha=out[:, 4], theta=out[:, 5],
                      J=out[:, 6], xi=out[:, 7], v=out[:, 8], psi_alpha=out[:, 9],
                      psi_theta=out[:, 10], eta=eta_col)


def error_coords(state: VehicleState, washout: WashoutState, t: float,
                 params: ControllerParams, field: FieldSpec) -> ErrorCoords:
    """Error coordinates relative to the source (spherical form of -r_hat)."""
    r_hat = state.r_c - source_location(field)
    r_tilde = float(np.linalg.norm(r_hat))
    alpha_hat = state.alpha - params.a * sin(params.omega * t)
    theta_hat = state.theta - params.a * cos(params.omega * t)

    e_hat = None
    if isinstance(field, QuadraticSpherical):
        e_hat = (washout.eta - field.f_star) + field.q_r * params.R**2

    if r_tilde == 0.0:
        return ErrorCoords(r_tilde=0.0, alpha_star=None, theta_star=None,
                           alpha_hat=alpha_hat, theta_hat=theta_hat, theta_tilde=None,
                           e_hat=e_hat, degenerate=True)

    # -r_hat = r_tilde * (cos a* cos t*, cos a* sin t*, sin a*)
    alpha_star = atan2(-r_hat[2], hypot(r_hat[0], r_hat[1]))
    theta_star = atan2(-r_hat[1], -r_hat[0])
    theta_tilde = wrap_angle(theta_hat - theta_star)
    return ErrorCoords(r_tilde=r_tilde, alpha_star=alpha_star, theta_star=theta_star,
                       alpha_hat=alpha_hat, theta_hat=theta_hat, theta_tilde=theta_tilde,
                       e_hat=e_hat)


def trajectory_error_coords(traj: Trajectory, params: ControllerParams, field: FieldSpec):
    """Per-row error coordinates for a recorded trajectory (vectorized)."""
    r_hat = traj.r_c - source_location(field)
    r_tilde = np.linalg.norm(r_hat, axis=1)
    alpha_hat = traj.alpha - params.a * np.sin(params.omega * traj.t)
    theta_hat = traj.theta - params.a * np.cos(params.omega * traj.t)
    with np.errstate(invalid="ignore"):
        alpha_star = np.arctan2(-r_hat[:, 2], np.hypot(r_hat[:, 0], r_hat[:, 1]))
        theta_star = np.arctan2(-r_hat[:, 1], -r_hat[:, 0])
    theta_tilde = np.mod(theta_hat - theta_star + pi, 2 * pi) - pi
    theta_tilde[theta_tilde == -pi] = pi
    out = {"r_tilde": r_tilde, "alpha_star": alpha_star, "theta_star": theta_star,
           "alpha_hat": alpha_hat, "theta_hat": theta_hat, "theta_tilde": theta_tilde}
    if isinstance(field, QuadraticSpherical):
        out["e_hat"] = (traj.eta - field.f_star) + field.q_r * params.R**2
    return out


def per_period_average(traj: Trajectory, column, t_from: float = 0.0, omega: Optional[float] = None):
    """Mean of a column over consecutive windows of one perturbation period.

    ``column`` is a column name or an array aligned with traj.t.  Windows are
    aligned to t_from; returns (window start times, window means), empty when
    less than one full period of data is available.
    """
    if omega is None:
        raise ValueError("omega required to define the period")
    values = traj.column(column) if isinstance(column, str) else np.asarray(column)
    period = 2 * pi / omega
    mask = traj.t >= t_from - 1e-12
    t = traj.t[mask]
    vals = values[mask]
    if len(t) == 0 or t[-1] - t[0] < period - 1e-12:
        return np.array([]), np.array([])
    idx = np.floor((t - t[0]) / period + 1e-9).astype(int)
    n_windows = int(np.floor((t[-1] - t[0] + 1e-9) / period))
    starts = t[0] + period * np.arange(n_windows)
    means = np.array([vals[idx == k].mean() for k in range(n_windows)])
    return starts, means


def settle_time(traj: Trajectory, r_star, omega: float, rtol: float = 0.1, atol: float = 0.01):
    """Earliest window-start time after which every per-period mean distance
    stays within rtol (relative) or atol (absolute) of the final window mean."""
    starts, means = per_period_average(traj, traj.distance_to(r_star), 0.0, omega=omega)
    if len(means) == 0:
        return None
    final = means[-1]
    tol = max(rtol * abs(final), atol)
    ok = np.abs(means - final) <= tol
    # last False, then settled ever after
    bad = np.nonzero(~ok)[0]
    if len(bad) == 0:
        return float(starts[0])
    if bad[-1] + 1 >= len(starts):
        return None
    return float(starts[bad[-1] + 1])


def summary(traj: Trajectory, params: ControllerParams, field: FieldSpec, n_periods: int = 10) -> dict:
    """Run summary: final distance plus per-period means over the last n_periods."""
    r_star = source_location(field)
    dist = traj.distance_to(r_star)
    ec = trajectory_error_coords(traj, params, field)
    period = 2 * pi / params.omega
    t_from = max(0.0, traj.t[-1] - n_periods * period)
    _, mean_r = per_period_average(traj, dist, t_from, omega=params.omega)
    # per-window means first: the dither a*sin(omega*t) averages out, leaving
    # the slow component of alpha
    _, mean_alpha = per_period_average(traj, traj.alpha, t_from, omega=params.omega)
    mean_alpha = np.abs(mean_alpha)
    # circular mean: theta_tilde near pi wraps between -pi and pi, a plain mean
    # of the wrapped values would cancel to ~0
    _, mean_sin = per_period_average(traj, np.sin(ec["theta_tilde"]), t_from, omega=params.omega)
    _, mean_cos = per_period_average(traj, np.cos(ec["theta_tilde"]), t_from, omega=params.omega)
    mean_tt = np.arctan2(mean_sin.mean(), mean_cos.mean()) if len(mean_sin) else None
    return {
        "final_distance": float(dist[-1]),
        "mean_r_tilde_last_periods": float(mean_r.mean()) if len(mean_r) else None,
        "mean_abs_alpha_last_periods": float(mean_alpha.mean()) if len(mean_alpha) else None,
        "mean_theta_tilde_last_periods": float(mean_tt) if mean_tt is not None else None,
        "settle_time": settle_time(traj, r_star, params.omega),
        "n_rows": len(traj),
        "t_end": float(traj.t[-1]),
    }


def write_summary(path, summ: dict):
    with open(path, "w") as f:
        json.dump(summ, f, indent=2)
        f.write("\n")
