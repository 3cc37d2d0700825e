"""Jacobians at the averaged equilibria, characteristic equations,
Routh-Hurwitz gates, and the perturbation-amplitude selection rule.

Eigenvalues of the 5x5 Jacobians are computed from their block structure
(2x2 and 3x3 blocks, closed-form quadratic and Cardano cubic roots) rather
than a general eigensolver.

The closed-form entries are required to agree with finite differences of the
(quadrature-verified) averaged dynamics; the psi combinations in
_entry_coefficients are the coefficients that make this hold exactly, and the
explicit gain conditions and the bias-speed bound are rearrangements of the
same entries, so every stability verdict here is internally consistent with
averaged_rhs.
"""

import cmath
from dataclasses import dataclass
from math import sqrt
from typing import Optional

import numpy as np

from .averaging import (SQRT2, SQRT5, AnalysisConstants, AveragedState, Equilibrium,
                        averaged_rhs, constants)
from .bessel import bessel_j0, bessel_j1
from .controller import ControllerParams
from .errors import DegenerateParameterError

A_INTERVAL_1 = (1.25, 1.65)  # J0(sqrt2 a) > 0 here
A_INTERVAL_2 = (1.75, 2.5)  # J0(sqrt2 a) < 0 here

MARGIN = 1e-8  # eigenvalue real-part margin below which a verdict is "marginal"


@dataclass(frozen=True)
class Eq1Entries:
    """Nonzero entries of omega * J^eq1 (J^eq2 flips the signs of m15, m23, m32, m51)."""

    m11: float
    m15: float
    m22: float
    m23: float
    m32: float
    m33: float
    m44: float
    m51: float
    h: float  # entry (5,5) is -h


def _entry_coefficients(a: float):
    """Bessel combinations entering the R-coupled Jacobian entries.

    These are the exact linearizations of the averaged system's second
    moments (cross-checked against finite differences of averaged_rhs to
    machine precision); substituting them for psi1..psi3 below reproduces
    every m-entry exactly.
    """
    j0_s2a = bessel_j0(SQRT2 * a)
    psi1 = 2.0 * (bessel_j0(2 * a) - 1.0)
    psi2 = bessel_j0(2 * SQRT2 * a) - 1.0
    phi4 = bessel_j0(2 * SQRT2 * a) + 2.0 * bessel_j0(2 * a) + 1.0
    psi3 = bessel_j0(a) * phi4 / j0_s2a - 4.0 * bessel_j0(SQRT5 * a)
    return psi1, psi2, psi3


def jacobian_eq1_analytic(p: ControllerParams, q_r: float) -> Eq1Entries:
    a = p.a
    j0_s2a = bessel_j0(SQRT2 * a)
    j1_s2a = bessel_j1(SQRT2 * a)
    c = constants(p, q_r)
    if abs(j0_s2a) < 1e-14:
        raise DegenerateParameterError("J0(sqrt(2) a)")
    bqR = p.b * q_r * p.R
    vj_rho = p.V_c * j0_s2a / (p.b * c.rho1)  # = q_r * R * gamma1
    psi1, psi2, psi3 = _entry_coefficients(a)
    return Eq1Entries(
        m11=2 * p.V_c * j0_s2a**2 / (p.R * c.rho1) - 0.5 * bqR * c.phi4,
        m15=p.b * j0_s2a,
        m22=0.5 * bqR * psi1,
        m23=0.5 * bqR * psi3,
        m32=2 * p.c_alpha * vj_rho * bessel_j1(a),
        m33=-SQRT2 * p.c_alpha * vj_rho * j1_s2a,
        m44=-SQRT2 * p.c_theta * vj_rho * j1_s2a + 0.5 * bqR * psi2,
        m51=-2 * p.h * p.V_c * j0_s2a / (p.b * p.R * c.rho1) + 2 * p.h * q_r * p.R * j0_s2a,
        h=p.h,
    )


def assemble_eq1(e: Eq1Entries, kind: str = "eq1") -> np.ndarray:
    """omega * J^eq at eq1 or eq2 (sign pattern per kind)."""
    s = 1.0 if kind == "eq1" else -1.0
    M = np.zeros((5, 5))
    M[0, 0], M[0, 4] = e.m11, s * e.m15
    M[1, 1], M[1, 2] = e.m22, s * e.m23
    M[2, 1], M[2, 2] = s * e.m32, e.m33
    M[3, 3] = e.m44
    M[4, 0], M[4, 4] = s * e.m51, -e.h
    return M


def jacobian_numeric(eq: Equilibrium, p: ControllerParams, q_r: float) -> np.ndarray:
    """Central finite differences of the averaged RHS at an equilibrium.

    Includes the 1/omega scaling of the averaged RHS itself.
    """
    if not eq.exists:
        raise ValueError(f"{eq.kind} does not exist for these parameters")
    x0 = eq.state.as_array()
    J = np.zeros((5, 5))
    for j in range(5):
        step = max(1e-6, 1e-6 * abs(x0[j]))
        xp, xm = x0.copy(), x0.copy()
        xp[j] += step
        xm[j] -= step
        fp = averaged_rhs(AveragedState.from_array(xp), p, q_r)
        fm = averaged_rhs(AveragedState.from_array(xm), p, q_r)
        J[:, j] = (fp - fm) / (2 * step)
    return J


def quadratic_roots(b: float, c: float):
    """Roots of s^2 + b s + c (complex pair)."""
    d = cmath.sqrt(b * b - 4 * c)
    return [(-b + d) / 2, (-b - d) / 2]


def cubic_roots(k1: float, k2: float, k3: float):
    """Roots of s^3 + k1 s^2 + k2 s + k3 via Cardano."""
    d0 = k1 * k1 - 3 * k2
    d1 = 2 * k1**3 - 9 * k1 * k2 + 27 * k3
    inner = cmath.sqrt(d1 * d1 - 4 * d0**3)
    C = ((d1 + inner) / 2) ** (1 / 3)
    if abs(C) < 1e-300:
        C = ((d1 - inner) / 2) ** (1 / 3)
    if abs(C) < 1e-300:  # triple root
        return [complex(-k1 / 3)] * 3
    zeta = complex(-0.5, sqrt(3) / 2)
    roots = []
    ck = C
    for _ in range(3):
        roots.append(-(k1 + ck + d0 / ck) / 3)
        ck *= zeta
    return roots


@dataclass(frozen=True)
class CharacteristicFactors:
    """Factored characteristic polynomial of omega*J^eq1 in the variable (omega s).

    quad1:  s^2 - (m22+m33) s + (m22 m33 - m23 m32)
    linear: s - m44
    quad2:  s^2 + (h - m11) s - m11 h - m15 m51
    """

    quad1: tuple  # (b, c) of s^2 + b s + c
    linear: float  # root m44
    quad2: tuple

    def roots(self):
        return (quadratic_roots(*self.quad1) + [complex(self.linear)]
                + quadratic_roots(*self.quad2))

    def evaluate(self, s: complex) -> complex:
        b1, c1 = self.quad1
        b2, c2 = self.quad2
        return (s * s + b1 * s + c1) * (s - self.linear) * (s * s + b2 * s + c2)


def characteristic_eq1(e: Eq1Entries) -> CharacteristicFactors:
    return CharacteristicFactors(
        quad1=(-(e.m22 + e.m33), e.m22 * e.m33 - e.m23 * e.m32),
        linear=e.m44,
        quad2=(e.h - e.m11, -e.m11 * e.h - e.m15 * e.m51),
    )


def eigenvalues_eq1(e: Eq1Entries):
    """Eigenvalues of omega * J^eq1 (= those of J^eq2 scaled by omega)."""
    return characteristic_eq1(e).roots()


def eigenvalues_eq3(L: np.ndarray, h: float):
    """Eigenvalues of omega * J^eq3/eq4 from its 2x2 + 3x3 block structure.

    L is the unscaled matrix (omega times the numeric Jacobian).
    """
    k1, k2, k3 = _k_coefficients(L, h)
    quad = quadratic_roots(-(L[1, 1] + L[2, 2]), L[1, 1] * L[2, 2] - L[1, 2] * L[2, 1])
    return quad + cubic_roots(k1, k2, k3)


def _k_coefficients(L: np.ndarray, h: float):
    """Cubic coefficients of the (r, theta_tilde, e_hat) block of omega*J^eq3."""
    l11, l14, l15 = L[0, 0], L[0, 3], L[0, 4]
    l41, l44, l45 = L[3, 0], L[3, 3], L[3, 4]
    l51, l54 = L[4, 0], L[4, 3]
    k1 = h - l11 - l44
    k2 = (l11 * l44 - l11 * h - l44 * h - l45 * l54 - l14 * l41 - l15 * l51)
    k3 = (l11 * l44 * h - l14 * l41 * h + l11 * l45 * l54 + l15 * l44 * l51
          - l14 * l45 * l51 - l15 * l41 * l54)
    return k1, k2, k3


@dataclass(frozen=True)
class HurwitzEq1Report:
    raw: tuple  # 5 booleans on the m-entries
    explicit: tuple  # 5 booleans in terms of phi1..phi4, rho1
    verdict: bool  # all raw conditions hold
    marginal: bool  # some eigenvalue real part within MARGIN of zero
    roots: tuple  # eigenvalues of omega * J^eq1


def hurwitz_eq1(p: ControllerParams, q_r: float) -> HurwitzEq1Report:
    e = jacobian_eq1_analytic(p, q_r)
    c = constants(p, q_r)
    raw = (
        e.m22 + e.m33 < 0,
        e.m22 * e.m33 - e.m23 * e.m32 > 0,
        e.m44 < 0,
        e.h - e.m11 > 0,
        -e.m11 * e.h - e.m15 * e.m51 > 0,
    )
    a = p.a
    j0_s2a = bessel_j0(SQRT2 * a)
    j1_s2a = bessel_j1(SQRT2 * a)
    psi1, psi2, psi3 = _entry_coefficients(a)
    explicit = (
        p.b**2 * q_r * p.R * psi1 < 2 * SQRT2 * p.c_alpha * p.V_c * j0_s2a / c.rho1 * j1_s2a,
        (j0_s2a / c.rho1) * (SQRT2 / 2 * psi1 * j1_s2a + psi3 * bessel_j1(a)) < 0,
        p.b**2 * q_r * p.R * psi2 < 2 * SQRT2 * p.c_theta * p.V_c * j0_s2a / c.rho1 * j1_s2a,
        2 * p.V_c * j0_s2a**2 / c.rho1 < p.h * p.R + 0.5 * p.b * q_r * p.R**2 * c.phi4,
        4 * j0_s2a**2 - c.phi4 < 0,
    )
    roots = tuple(eigenvalues_eq1(e))
    marginal = min(abs(r.real) for r in roots) < MARGIN
    return HurwitzEq1Report(raw=raw, explicit=explicit, verdict=all(raw),
                            marginal=marginal, roots=roots)


@dataclass(frozen=True)
class HurwitzEq3Report:
    conditions: tuple  # 6 booleans
    verdict: bool
    marginal: bool
    roots: tuple
    k: tuple  # (k1, k2, k3)


def hurwitz_eq3(p: ControllerParams, q_r: float) -> HurwitzEq3Report:
    from .averaging import equilibria

    eq3 = equilibria(p, q_r)[2]
    if not eq3.exists:
        raise ValueError("eq3 does not exist for these parameters")
    L = p.omega * jacobian_numeric(eq3, p, q_r)
    k1, k2, k3 = _k_coefficients(L, p.h)
    conditions = (
        bool(L[1, 1] + L[2, 2] < 0),
        bool(L[1, 1] * L[2, 2] - L[1, 2] * L[2, 1] > 0),
        bool(k1 > 0),
        bool(k2 > 0),
        bool(k3 > 0),
        bool(k1 * k2 - k3 > 0),
    )
    roots = tuple(eigenvalues_eq3(L, p.h))
    marginal = bool(min(abs(r.real) for r in roots) < MARGIN)
    return HurwitzEq3Report(conditions=conditions, verdict=bool(all(conditions)),
                            marginal=marginal, roots=roots, k=(k1, k2, k3))


@dataclass(frozen=True)
class CorollaryGate:
    corollary1: bool  # a in [1.75, 2.5]
    corollary2: bool  # a in [1.25, 1.65] and V_c < vc_bar
    vc_bar: Optional[float]  # bias-velocity bound, defined on the first interval


def vc_bar(p: ControllerParams, q_r: float) -> float:
    """Bias-speed bound certifying the reversed-heading equilibrium.

    Rearranges the two gain-coupled Hurwitz inequalities on the first
    amplitude interval, so it uses the same psi combinations as the
    Jacobian entries.
    """
    c = constants(p, q_r)
    j0_s2a = bessel_j0(SQRT2 * p.a)
    j1_s2a = bessel_j1(SQRT2 * p.a)
    denom = 4 * j0_s2a * j1_s2a
    if abs(denom) < 1e-14:
        raise DegenerateParameterError("J0(sqrt(2) a) * J1(sqrt(2) a)")
    pref = SQRT2 * p.b**2 * q_r * p.R / denom
    psi1, psi2, _ = _entry_coefficients(p.a)
    return pref * min(psi1 * c.rho1 / p.c_alpha, psi2 * c.rho1 / p.c_theta)


def corollary_gate(p: ControllerParams, q_r: float) -> CorollaryGate:
    in1 = A_INTERVAL_1[0] <= p.a <= A_INTERVAL_1[1]
    in2 = A_INTERVAL_2[0] <= p.a <= A_INTERVAL_2[1]
    bound = vc_bar(p, q_r) if in1 else None
    return CorollaryGate(corollary1=in2,
                         corollary2=in1 and bound is not None and p.V_c < bound,
                         vc_bar=bound)


def stability_report(p: ControllerParams, q_r: float) -> dict:
    """Full JSON-ready report: constants, equilibria, Jacobians, verdicts."""
    from .averaging import equilibria

    c = constants(p, q_r)
    eqs = equilibria(p, q_r)
    report = {
        "params": {k: getattr(p, k) for k in ("a", "c_alpha", "c_theta", "b", "h", "V_c", "omega", "R")},
        "q_r": q_r,
        "constants": {k: getattr(c, k) for k in AnalysisConstants.__dataclass_fields__},
        "equilibria": {},
    }
    e1 = jacobian_eq1_analytic(p, q_r)
    h1 = hurwitz_eq1(p, q_r)
    for eq in eqs:
        entry = {
            "exists": eq.exists,
            "state": list(eq.state.as_array()),
        }
        if eq.exists:
            J = jacobian_numeric(eq, p, q_r)
            entry["jacobian"] = J.tolist()
            if eq.kind in ("eq1", "eq2"):
                entry["analytic_entries"] = {k: getattr(e1, k) for k in
                                             ("m11", "m15", "m22", "m23", "m32", "m33", "m44", "m51")}
                entry["roots"] = [[r.real, r.imag] for r in h1.roots]
                entry["hurwitz"] = h1.verdict
                entry["marginal"] = h1.marginal
                entry["raw_conditions"] = list(h1.raw)
                entry["explicit_conditions"] = list(h1.explicit)
            else:
                h3 = hurwitz_eq3(p, q_r)
                entry["roots"] = [[r.real, r.imag] for r in h3.roots]
                entry["hurwitz"] = h3.verdict
                entry["marginal"] = h3.marginal
                entry["conditions"] = list(h3.conditions)
        report["equilibria"][eq.kind] = entry
    gate = corollary_gate(p, q_r)
    report["corollary_gate"] = {"corollary1": gate.corollary1, "corollary2": gate.corollary2,
                                "vc_bar": gate.vc_bar}
    return report
