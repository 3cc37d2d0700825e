"""Averaged error dynamics, their Bessel building blocks, analysis constants,
and the four equilibria.

The averaged system lives in the error coordinates (r_tilde, alpha_star,
alpha_hat, theta_tilde, e_hat) with time rescaled by the probing frequency.
All trigonometric period averages reduce to closed forms in J0 and J1; the
test suite validates each one against brute-force quadrature.

Note on rho1: the published closed form carries J0(2a) with coefficient 1,
which is inconsistent with the (quadrature-verified) averaged dynamics - the
radial equilibrium only exists with coefficient 2, i.e. rho1 = 2*J0^2(sqrt2 a)
- phi4/2.  We use the consistent form; with it the equilibrium residuals
vanish to machine precision and the last explicit stability condition becomes
literally 2*rho1 < 0.
"""

from dataclasses import dataclass
from math import acos, cos, pi, sin, sqrt
from typing import Optional

import numpy as np

from .bessel import bessel_j0, bessel_j1
from .controller import ControllerParams
from .errors import DegenerateParameterError, SingularStateError

SQRT2 = sqrt(2.0)
SQRT5 = sqrt(5.0)

EQUILIBRIUM_KINDS = ("eq1", "eq2", "eq3", "eq4")


@dataclass(frozen=True)
class AveragedState:
    r_tilde: float  # average distance center-to-source
    alpha_star: float  # azimuth of the source direction
    alpha_hat: float  # shifted pitch
    theta_tilde: float  # yaw error
    e_hat: float  # shifted output error

    def as_array(self) -> np.ndarray:
        return np.array([self.r_tilde, self.alpha_star, self.alpha_hat,
                         self.theta_tilde, self.e_hat])

    @classmethod
    def from_array(cls, arr) -> "AveragedState":
        return cls(*map(float, arr))


@dataclass(frozen=True)
class XiAverages:
    """Period averages of the demodulation terms appearing in the averaged RHS."""

    xi_c_ave: float
    xi_c_2ave: float
    xi_alpha_ave: float
    xi_c_alpha_ave: float
    xi_c_sin_ave: float
    xi_c_cos_ave: float
    xi_c_cossin_ave: float
    xi_cossin_ave: float


def xi_averages(s: AveragedState, a: float) -> XiAverages:
    """All eight closed-form period averages at the given averaged state."""
    als, alh, tt = s.alpha_star, s.alpha_hat, s.theta_tilde
    j0_s2a = bessel_j0(SQRT2 * a)
    j0_a = bessel_j0(a)
    j0_2s2a = bessel_j0(2 * SQRT2 * a)
    j0_2a = bessel_j0(2 * a)
    j0_s5a = bessel_j0(SQRT5 * a)
    j1_s2a = bessel_j1(SQRT2 * a)
    j1_a = bessel_j1(a)

    c_als, s_als = cos(als), sin(als)
    c_alh, s_alh = cos(alh), sin(alh)
    c_tt, s_tt = cos(tt), sin(tt)
    c2alh, s2alh = cos(2 * alh), sin(2 * alh)
    c2tt, s2tt = cos(2 * tt), sin(2 * tt)
    c2als, s2als = cos(2 * als), sin(2 * als)

    xi_c = j0_s2a * c_als * c_alh * c_tt + j0_a * s_als * s_alh
    xi_c2 = (c_als**2 / 4 * (j0_2s2a * c2alh * c2tt + j0_2a * (c2alh + c2tt) + 1)
             + s_als**2 / 2 * (1 - j0_2a * c2alh)
             + j0_s5a / 2 * s2als * s2alh * c_tt)
    xi_al = j0_a * c_als * s_alh - j0_s2a * s_als * c_alh * c_tt
    xi_cal = (j0_s5a / 2 * c2als * s2alh * c_tt
              - s2als / 8 * (j0_2s2a * c2alh * c2tt + 3 * j0_2a * c2alh + j0_2a * c2tt - 1))
    xi_csin = -j1_s2a / SQRT2 * c_als * s_alh * c_tt + j1_a * s_als * c_alh
    xi_ccos = -j1_s2a / SQRT2 * c_als * c_alh * s_tt
    xi_ccossin = (j0_2s2a / 4 * c_als * c2alh * s2tt + j0_2a / 4 * c_als * s2tt
                  + j0_s5a / 2 * s_als * s2alh * s_tt)
    xi_cossin = j0_s2a * c_alh * s_tt

    return XiAverages(xi_c, xi_c2, xi_al, xi_cal, xi_csin, xi_ccos, xi_ccossin, xi_cossin)


def averaged_rhs(s: AveragedState, p: ControllerParams, q_r: float) -> np.ndarray:
    """d/d(tau) of the five averaged error coordinates."""
    r = s.r_tilde
    if r <= 0:
        raise SingularStateError("averaged dynamics undefined at r_tilde <= 0")
    cos_als = cos(s.alpha_star)
    if abs(cos_als) < 1e-12:
        raise SingularStateError("averaged dynamics singular at cos(alpha_star) = 0")
    x = xi_averages(s, p.a)
    b, R, om, h = p.b, p.R, p.omega, p.h
    A = b * q_r * r**2 + b * s.e_hat - p.V_c
    return np.array([
        (A * x.xi_c_ave - 2 * b * q_r * R * r * x.xi_c_2ave) / om,
        (A / r * x.xi_alpha_ave - 2 * b * q_r * R * x.xi_c_alpha_ave) / om,
        2 * p.c_alpha * q_r * R * r * x.xi_c_sin_ave / om,
        (2 * p.c_theta * q_r * R * r * x.xi_c_cos_ave
         + 2 * b * q_r * R / cos_als * x.xi_c_cossin_ave
         - A / (r * cos_als) * x.xi_cossin_ave) / om,
        (-h * q_r * r**2 - h * s.e_hat + 2 * h * q_r * R * r * x.xi_c_ave) / om,
    ])


@dataclass(frozen=True)
class AnalysisConstants:
    gamma1: float
    gamma2: float
    gamma3: float
    rho1: float
    rho2: float
    mu0: Optional[float]  # defined only when 2*gamma3 >= 1
    e1: float
    e2: float
    phi1: float
    phi2: float
    phi3: float
    phi4: float


def constants(p: ControllerParams, q_r: float) -> AnalysisConstants:
    """Closed-form analysis constants for the spherical quadratic field."""
    a = p.a
    j0_s2a = bessel_j0(SQRT2 * a)
    j0_a = bessel_j0(a)
    j0_2s2a = bessel_j0(2 * SQRT2 * a)
    j0_2a = bessel_j0(2 * a)
    j0_s5a = bessel_j0(SQRT5 * a)
    j1_s2a = bessel_j1(SQRT2 * a)

    phi1 = 3 * j0_2a - 2
    phi2 = j0_2s2a + j0_2a - 1
    phi4 = j0_2s2a + 2 * j0_2a + 1
    if abs(j0_s2a) < 1e-14:
        raise DegenerateParameterError("J0(sqrt(2) a)")
    phi3 = j0_a / j0_s2a * (phi2 + 2) - 4 * j0_s5a

    rho1 = 2 * j0_s2a**2 - 0.5 * phi4
    if abs(rho1) < 1e-14:
        raise DegenerateParameterError("rho1")
    if abs(j1_s2a) < 1e-14:
        raise DegenerateParameterError("J1(sqrt(2) a)")
    rho2 = SQRT2 * p.b * (1 - j0_2s2a) / (4 * p.c_theta * j1_s2a)
    if abs(rho2) < 1e-14:
        raise DegenerateParameterError("rho2")

    gamma1 = p.V_c * j0_s2a / (p.b * q_r * p.R * rho1)
    gamma2 = 2 * j0_s2a**2 + p.V_c * j0_s2a / (p.b * q_r * p.R * rho2)
    gamma3 = (j0_2s2a + j0_2a - gamma2) / (j0_2s2a - 1)
    e1 = (-p.V_c**2 * j0_s2a**2 / (q_r * p.b**2 * p.R**2 * rho1**2)
          + 2 * p.V_c * j0_s2a**2 / (p.b * rho1))
    e2 = -2 * q_r * gamma3 * rho2**2 - 2 * q_r * p.R * rho2 * j0_s2a
    mu0 = acos(-sqrt(1.0 / (2 * gamma3))) if 2 * gamma3 >= 1 else None

    return AnalysisConstants(gamma1=gamma1, gamma2=gamma2, gamma3=gamma3, rho1=rho1,
                             rho2=rho2, mu0=mu0, e1=e1, e2=e2,
                             phi1=phi1, phi2=phi2, phi3=phi3, phi4=phi4)


@dataclass(frozen=True)
class Equilibrium:
    kind: str  # one of EQUILIBRIUM_KINDS
    state: AveragedState
    exists: bool  # r_tilde real and positive (and mu0 defined, for eq3/eq4)


def equilibria(p: ControllerParams, q_r: float) -> list[Equilibrium]:
    """The four equilibria of the averaged system, in a fixed order.

    Nonexistent equilibria (radius not real-positive, or theta offset
    undefined) are returned with exists=False so reports always carry four
    slots.
    """
    c = constants(p, q_r)
    out = [
        Equilibrium("eq1", AveragedState(c.gamma1, 0.0, 0.0, 0.0, c.e1), c.gamma1 > 0),
        Equilibrium("eq2", AveragedState(-c.gamma1, 0.0, 0.0, pi, c.e1), -c.gamma1 > 0),
    ]
    radius_ok = c.gamma3 > 0 and 2 * c.gamma3 >= 1 and c.rho2 > 0
    r3 = c.rho2 * sqrt(2 * c.gamma3) if c.gamma3 > 0 else float("nan")
    mu = c.mu0 if c.mu0 is not None else float("nan")
    out.append(Equilibrium("eq3", AveragedState(r3, 0.0, 0.0, mu, c.e2), radius_ok))
    out.append(Equilibrium("eq4", AveragedState(r3, 0.0, 0.0, -mu, c.e2), radius_ok))
    return out
