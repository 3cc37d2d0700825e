import numpy as np
import pytest

from seek3d.averaging import constants, equilibria
from seek3d.controller import ControllerParams
from seek3d.stability import (
    A_INTERVAL_1,
    A_INTERVAL_2,
    MARGIN,
    assemble_eq1,
    characteristic_eq1,
    corollary_gate,
    cubic_roots,
    eigenvalues_eq1,
    eigenvalues_eq3,
    hurwitz_eq1,
    hurwitz_eq3,
    jacobian_eq1_analytic,
    jacobian_numeric,
    quadratic_roots,
    stability_report,
    vc_bar,
)

from conftest import sample_params

REF = ControllerParams(
    a=2.0, c_alpha=100.0, c_theta=100.0, b=5.0, h=10.0, V_c=0.001, omega=40.0, R=0.1
)


def ref_with(**kw):
    base = dict(a=2.0, c_alpha=100.0, c_theta=100.0, b=5.0, h=10.0,
                V_c=0.001, omega=40.0, R=0.1)
    base.update(kw)
    return ControllerParams(**base)


# ---------------------------------------------------------------- root finders


def test_quadratic_roots():
    r = quadratic_roots(-3.0, 2.0)  # s^2 - 3 s + 2
    assert sorted(x.real for x in r) == pytest.approx([1.0, 2.0])
    r = quadratic_roots(2.0, 5.0)  # complex pair
    assert r[0] == pytest.approx(complex(-1.0, 2.0)) or r[0] == pytest.approx(complex(-1.0, -2.0))


def test_cubic_roots():
    # s^3 - 6 s^2 + 11 s - 6 = (s-1)(s-2)(s-3)
    r = cubic_roots(-6.0, 11.0, -6.0)
    assert sorted(x.real for x in r) == pytest.approx([1.0, 2.0, 3.0])
    assert max(abs(x.imag) for x in r) < 1e-12
    # a complex pair: (s+1)(s^2+2s+5)
    r = cubic_roots(3.0, 7.0, 5.0)
    vals = sorted(r, key=lambda z: z.imag)
    assert vals[1] == pytest.approx(complex(-1.0, 0.0), abs=1e-12)


# -------------------------------------------------------- Jacobian cross-check


def test_analytic_entries_match_finite_differences(rng):
    checked = 0
    for _ in range(60):
        p, q_r = sample_params(rng)
        eqs = {eq.kind: eq for eq in equilibria(p, q_r)}
        for kind in ("eq1", "eq2"):
            if not eqs[kind].exists:
                continue
            e = jacobian_eq1_analytic(p, q_r)
            analytic = assemble_eq1(e, kind=kind)
            numeric = p.omega * jacobian_numeric(eqs[kind], p, q_r)
            scale = max(1.0, np.abs(numeric).max())
            assert np.allclose(analytic, numeric, atol=1e-6 * scale), kind
            checked += 1
    assert checked >= 30


def test_eq2_entry_sign_flips():
    p = ref_with(a=1.5)  # gamma1 < 0 so eq2 exists
    e = jacobian_eq1_analytic(p, 1.0)
    m1 = assemble_eq1(e, kind="eq1")
    m2 = assemble_eq1(e, kind="eq2")
    flip = np.ones((5, 5))
    for i, j in ((0, 4), (1, 2), (2, 1), (4, 0)):
        flip[i, j] = -1.0
    assert np.array_equal(m2, m1 * flip)


def test_eq3_sparsity_and_eq4_sign_pattern(rng):
    checked = 0
    for _ in range(60):
        p, q_r = sample_params(rng, interval=A_INTERVAL_1)
        eqs = {eq.kind: eq for eq in equilibria(p, q_r)}
        if not eqs["eq3"].exists:
            continue
        L3 = p.omega * jacobian_numeric(eqs["eq3"], p, q_r)
        L4 = p.omega * jacobian_numeric(eqs["eq4"], p, q_r)
        scale = np.abs(L3).max()
        # rows/cols decouple into a (r, theta, e) block and an (a*, a^) block
        zero_pattern = [(0, 1), (0, 2), (1, 0), (1, 3), (1, 4), (2, 0), (2, 3),
                        (2, 4), (3, 1), (3, 2), (4, 1), (4, 2)]
        for i, j in zero_pattern:
            assert abs(L3[i, j]) < 1e-7 * max(1.0, scale), (i, j)
        flip = np.ones((5, 5))
        for i, j in ((0, 3), (3, 0), (3, 4), (4, 3)):
            flip[i, j] = -1.0
        assert np.allclose(L4, L3 * flip, atol=1e-5 * max(1.0, scale))
        checked += 1
    assert checked >= 20


# ---------------------------------------------------- characteristic equation


def test_factored_polynomial_annihilates_eigenvalues(rng):
    for _ in range(50):
        p, q_r = sample_params(rng)
        e = jacobian_eq1_analytic(p, q_r)
        factors = characteristic_eq1(e)
        M = assemble_eq1(e, kind="eq1")
        eigs = np.linalg.eigvals(M)
        scale = max(1.0, np.abs(M).max()) ** 5
        for lam in eigs:
            assert abs(factors.evaluate(lam)) < 1e-8 * scale


def test_closed_form_eigenvalues_match_numeric(rng):
    for _ in range(50):
        p, q_r = sample_params(rng)
        e = jacobian_eq1_analytic(p, q_r)
        got = np.sort_complex(np.asarray(eigenvalues_eq1(e)))
        want = np.sort_complex(np.linalg.eigvals(assemble_eq1(e, kind="eq1")))
        assert np.allclose(got, want, atol=1e-6 * max(1.0, np.abs(want).max()))


def test_eq1_eq2_share_characteristic_polynomial(rng):
    for _ in range(50):
        p, q_r = sample_params(rng)
        e = jacobian_eq1_analytic(p, q_r)
        c1 = np.poly(assemble_eq1(e, kind="eq1"))
        c2 = np.poly(assemble_eq1(e, kind="eq2"))
        assert np.allclose(c1, c2, atol=1e-10 * max(1.0, np.abs(c1).max()))


def test_eq3_k_coefficients_annihilate_block_spectrum(rng):
    checked = 0
    for _ in range(60):
        p, q_r = sample_params(rng, interval=A_INTERVAL_1)
        eqs = {eq.kind: eq for eq in equilibria(p, q_r)}
        if not eqs["eq3"].exists:
            continue
        L = p.omega * jacobian_numeric(eqs["eq3"], p, q_r)
        rep = hurwitz_eq3(p, q_r)
        k1, k2, k3 = rep.k
        # cubic factor must vanish on the (r, theta, e) block spectrum
        block = L[np.ix_([0, 3, 4], [0, 3, 4])]
        scale = max(1.0, np.abs(block).max()) ** 3
        for lam in np.linalg.eigvals(block):
            assert abs(lam**3 + k1 * lam**2 + k2 * lam + k3) < 1e-8 * scale
        checked += 1
    assert checked >= 20


# --------------------------------------------------------------- Routh-Hurwitz


def test_raw_and_explicit_conditions_agree(rng):
    for _ in range(200):
        p, q_r = sample_params(rng)
        rep = hurwitz_eq1(p, q_r)
        if rep.marginal:
            continue
        assert list(rep.raw) == list(rep.explicit)


def test_hurwitz_eq1_matches_spectrum(rng):
    for _ in range(200):
        p, q_r = sample_params(rng)
        rep = hurwitz_eq1(p, q_r)
        max_real = max(z.real for z in rep.roots)
        if rep.marginal or abs(max_real) < MARGIN:
            continue
        assert rep.verdict == (max_real < 0.0)


def test_hurwitz_eq3_matches_spectrum(rng):
    checked = 0
    tries = 0
    while checked < 100 and tries < 2000:
        tries += 1
        p, q_r = sample_params(rng, interval=A_INTERVAL_1)
        eqs = {eq.kind: eq for eq in equilibria(p, q_r)}
        if not eqs["eq3"].exists:
            continue
        rep = hurwitz_eq3(p, q_r)
        max_real = max(z.real for z in rep.roots)
        if rep.marginal or abs(max_real) < MARGIN:
            continue
        assert rep.verdict == (max_real < 0.0)
        checked += 1
    assert checked >= 100


# ------------------------------------------------------------- corollary gates


def test_gate_examples():
    assert corollary_gate(REF, 1.0).corollary1 is True
    assert corollary_gate(REF, 1.0).corollary2 is False
    low = ref_with(a=1.5)
    gate = corollary_gate(low, 1.0)
    assert gate.corollary1 is False
    assert vc_bar(low, 1.0) == pytest.approx(gate.vc_bar)
    # the gate holds exactly when the bias speed is below the bound
    assert gate.corollary2 is (low.V_c < gate.vc_bar)
    slow = ref_with(a=1.5, V_c=0.5 * gate.vc_bar)
    assert corollary_gate(slow, 1.0).corollary2 is True
    neither = ref_with(a=1.0)
    gate = corollary_gate(neither, 1.0)
    assert gate.corollary1 is False and gate.corollary2 is False


def test_gate_implies_hurwitz(rng):
    passed = 0
    tries = 0
    while passed < 100 and tries < 5000:
        tries += 1
        p, q_r = sample_params(rng)
        gate = corollary_gate(p, q_r)
        if not (gate.corollary1 or gate.corollary2):
            continue
        rep = hurwitz_eq1(p, q_r)
        if rep.marginal:
            continue
        assert rep.verdict, (p, q_r)
        passed += 1
    assert passed >= 100


def test_hurwitz_without_gates_exists():
    # a dither amplitude outside both certified intervals can still be stable
    p = ref_with(a=1.7)
    gate = corollary_gate(p, 1.0)
    assert not gate.corollary1 and not gate.corollary2
    assert hurwitz_eq1(p, 1.0).verdict


def test_interval_sign_facts():
    # the two certified amplitude windows fix the signs the gates rely on
    for a in np.linspace(*A_INTERVAL_1, 50):
        c = constants(ref_with(a=a), 1.0)
        assert c.gamma1 < 0  # reversed-heading branch
        assert c.phi1 < 0 and c.phi2 < 0
    for a in np.linspace(*A_INTERVAL_2, 50):
        c = constants(ref_with(a=a), 1.0)
        assert c.gamma1 > 0  # forward-approach branch
        assert c.phi1 < 0 and c.phi2 < 0


def test_washout_condition_on_grid():
    # 4 J0(sqrt(2) a)^2 < phi4 across the sampling range; this is what makes
    # the filter-coupled Hurwitz condition hold independently of the gains
    from seek3d.bessel import bessel_j0

    for a in np.linspace(1.25, 2.5, 60):
        c = constants(ref_with(a=a), 1.0)
        assert 4.0 * bessel_j0(np.sqrt(2.0) * a) ** 2 < c.phi4
        assert c.rho1 < 0  # the same inequality, folded into rho1


def test_stability_report_shape():
    rep = stability_report(REF, 1.0)
    assert set(rep["equilibria"]) == {"eq1", "eq2", "eq3", "eq4"}
    assert rep["equilibria"]["eq1"]["exists"] is True
    assert rep["corollary_gate"]["corollary1"] is True
    assert "constants" in rep and "rho1" in rep["constants"]
