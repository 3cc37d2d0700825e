"""3-D nonholonomic source seeking via extremum seeking with regulated
forward velocity: closed-loop simulation, averaged-system analysis, and
Routh-Hurwitz stability gates."""

from .averaging import AnalysisConstants, AveragedState, Equilibrium, averaged_rhs, constants, equilibria, xi_averages
from .bessel import bessel_j0, bessel_j1
from .controller import ControllerParams, WashoutState, control, washout_rhs, xi
from .fields import Acoustic, FieldSpec, QuadraticElliptical, QuadraticSpherical, Rosenbrock, eval_field
from .simulator import ErrorCoords, SimConfig, Trajectory, default_dt, error_coords, per_period_average, run, step, summary
from .stability import corollary_gate, hurwitz_eq1, hurwitz_eq3, jacobian_eq1_analytic, jacobian_numeric, stability_report
from .vehicle import VehicleState, heading, kinematics_rhs, sensor_position

__version__ = "0.1.0"
