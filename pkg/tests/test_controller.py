import numpy as np
import pytest
from hypothesis import given, strategies as st

from seek3d.controller import ControllerParams, WashoutState, control, washout_rhs, xi

REF = ControllerParams(
    a=2.0, c_alpha=100.0, c_theta=100.0, b=5.0, h=10.0, V_c=0.001, omega=40.0, R=0.1
)


def test_params_validation():
    with pytest.raises(ValueError):
        ControllerParams(a=0.0, c_alpha=1, c_theta=1, b=1, h=1, V_c=1, omega=1, R=1)
    with pytest.raises(ValueError):
        ControllerParams(a=1, c_alpha=1, c_theta=1, b=1, h=-1, V_c=1, omega=1, R=1)


def test_period():
    assert REF.period == pytest.approx(2.0 * np.pi / 40.0)


def test_control_at_zero_output():
    v, psi_alpha, psi_theta = control(0.0, 0.0, REF)
    assert v == pytest.approx(0.001)
    assert psi_alpha == pytest.approx(80.0)  # a*omega*cos(0)
    assert psi_theta == pytest.approx(0.0)


def test_control_quarter_period():
    t = REF.period / 4.0  # omega*t = pi/2
    v, psi_alpha, psi_theta = control(0.5, t, REF)
    assert v == pytest.approx(REF.V_c + REF.b * 0.5)
    assert psi_alpha == pytest.approx(REF.c_alpha * 0.5, abs=1e-9)
    assert psi_theta == pytest.approx(-REF.a * REF.omega, abs=1e-9)


@given(st.floats(min_value=-2.0, max_value=2.0))
def test_speed_affine_in_output(xi_val):
    v, _, _ = control(xi_val, 0.37, REF)
    assert v == pytest.approx(REF.V_c + REF.b * xi_val)


def test_dither_integrates_to_zero_over_period():
    # with the output held at zero the steering commands are pure dither
    ts = np.linspace(0.0, REF.period, 20001)
    pa = np.array([control(0.0, t, REF)[1] for t in ts])
    pt = np.array([control(0.0, t, REF)[2] for t in ts])
    assert abs(np.trapezoid(pa, ts)) < 1e-8
    assert abs(np.trapezoid(pt, ts)) < 1e-8


def test_washout_decays_exponentially():
    # constant input J: xi(t) = xi(0) * exp(-h t)
    h = 3.0
    J = 0.7
    ws = WashoutState(eta=0.2)
    dt = 1e-4
    for _ in range(10000):  # integrate to t = 1 with RK4
        k1 = washout_rhs(ws, J, h)
        k2 = washout_rhs(WashoutState(ws.eta + 0.5 * dt * k1), J, h)
        k3 = washout_rhs(WashoutState(ws.eta + 0.5 * dt * k2), J, h)
        k4 = washout_rhs(WashoutState(ws.eta + dt * k3), J, h)
        ws = WashoutState(ws.eta + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4))
    expected = (J - 0.2) * np.exp(-h * 1.0)
    assert xi(ws, J) == pytest.approx(expected, abs=1e-9)
