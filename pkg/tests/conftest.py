"""Shared oracles and samplers for the test suite.

Everything here is deliberately independent of the analytic formulas under
test: period averages are computed by brute-force quadrature, and the
slow-time drift of the error coordinates is rebuilt from the instantaneous
closed-loop equations rather than from the averaged right-hand side.
"""

from __future__ import annotations

import numpy as np
import pytest

from seek3d.averaging import AveragedState
from seek3d.controller import ControllerParams

# Rectangle rule on a uniform grid is spectrally accurate for smooth
# 2*pi-periodic integrands, so 4096 nodes is far beyond 1e-12.
N_QUAD = 4096
TAU = np.linspace(0.0, 2.0 * np.pi, N_QUAD, endpoint=False)


def xi_integrands(s: AveragedState, a: float):
    """Instantaneous direction cosines over one perturbation period.

    Returns arrays (xi_c, xi_alpha, xi_cossin) sampled on the TAU grid.
    """
    A = s.alpha_hat + a * np.sin(TAU)
    T = s.theta_tilde + a * np.cos(TAU)
    ca, sa = np.cos(A), np.sin(A)
    cs, ss = np.cos(s.alpha_star), np.sin(s.alpha_star)
    ct = np.cos(T)
    xi_c = ca * cs * ct + sa * ss
    xi_alpha = sa * cs - ca * ss * ct
    xi_cossin = ca * np.sin(T)
    return xi_c, xi_alpha, xi_cossin


def quad_xi_averages(s: AveragedState, a: float) -> dict:
    """Brute-force period averages of the eight direction-cosine moments."""
    xi_c, xi_alpha, xi_cossin = xi_integrands(s, a)
    return {
        "xi_c_ave": xi_c.mean(),
        "xi_c_2ave": (xi_c**2).mean(),
        "xi_alpha_ave": xi_alpha.mean(),
        "xi_c_alpha_ave": (xi_c * xi_alpha).mean(),
        "xi_c_sin_ave": (xi_c * np.sin(TAU)).mean(),
        "xi_c_cos_ave": (xi_c * np.cos(TAU)).mean(),
        "xi_c_cossin_ave": (xi_c * xi_cossin).mean(),
        "xi_cossin_ave": xi_cossin.mean(),
    }


def quad_averaged_rhs(s: AveragedState, p: ControllerParams, q_r: float) -> np.ndarray:
    """Period average of the instantaneous error-coordinate drift.

    Builds the closed-loop slow equations from scratch: the demodulated
    output xi, the speed V_c + b*xi, and the kinematic projections onto the
    error coordinates, then averages over the fast phase by quadrature.
    """
    xi_c, xi_alpha, xi_cossin = xi_integrands(s, p.a)
    xi = -q_r * s.r_tilde**2 + 2.0 * q_r * p.R * s.r_tilde * xi_c - s.e_hat
    v = p.V_c + p.b * xi
    dr = -v * xi_c
    dalpha_star = -v * xi_alpha / s.r_tilde
    dalpha_hat = p.c_alpha * xi * np.sin(TAU)
    dtheta = p.c_theta * xi * np.cos(TAU) + v * xi_cossin / (
        s.r_tilde * np.cos(s.alpha_star)
    )
    de = p.h * xi
    cols = [dr, dalpha_star, dalpha_hat, dtheta, de]
    return np.array([c.mean() for c in cols]) / p.omega


def sample_params(rng: np.random.Generator, interval=(1.25, 2.5)) -> tuple[ControllerParams, float]:
    """Draw a random controller/field parameter set.

    The dither amplitude is drawn from `interval`; the remaining ranges
    cover two orders of magnitude around the reference tuning.
    """
    p = ControllerParams(
        a=rng.uniform(*interval),
        c_alpha=rng.uniform(1.0, 200.0),
        c_theta=rng.uniform(1.0, 200.0),
        b=rng.uniform(0.5, 10.0),
        h=rng.uniform(1.0, 20.0),
        V_c=rng.uniform(1e-4, 1.0),
        omega=rng.uniform(10.0, 100.0),
        R=rng.uniform(0.01, 0.5),
    )
    q_r = rng.uniform(0.1, 5.0)
    return p, q_r


def sample_state(rng: np.random.Generator) -> AveragedState:
    """Random error state away from the r=0 and |alpha*|=pi/2 singularities."""
    return AveragedState(
        r_tilde=rng.uniform(0.05, 5.0),
        alpha_star=rng.uniform(-1.2, 1.2),
        alpha_hat=rng.uniform(-1.2, 1.2),
        theta_tilde=rng.uniform(-np.pi, np.pi),
        e_hat=rng.uniform(-2.0, 2.0),
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260826)
