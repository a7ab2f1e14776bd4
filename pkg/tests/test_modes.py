import math

import numpy as np
import pytest

from dirac_lab import (
    DomainInputError,
    SectorDomain,
    SpinorField,
    SuperpositionTerm,
    boundary_condition_residual,
    dirac_apply_polar,
    infinite_mass_bc_matrix,
    integrate_1d,
    integrate_sector,
    radial_bump,
    singular_mode,
    spin_orbit_mode,
    spin_orbit_superposition,
)
from dirac_lab.modes import dirac_l2_pairing

OMEGA = 1.5 * math.pi


def test_plus_mode_point_value():
    mode = singular_mode("+", OMEGA, 1.0)
    v = mode.field.at(0.25, 0.0)
    expect = 0.25 ** (-1.0 / 6.0) / math.sqrt(3.0 * math.pi)
    assert v[0] == pytest.approx(expect, abs=1e-14)
    assert v[1] == pytest.approx(expect, abs=1e-14)


def test_mode_requires_concave_opening():
    with pytest.raises(DomainInputError):
        singular_mode("+", 0.5 * math.pi, 1.0)
    with pytest.raises(DomainInputError):
        singular_mode("+", 2.0 * math.pi, 1.0)


def test_dirac_image_vanishes_on_cutoff_plateau():
    mode = singular_mode("+", OMEGA, 1.0)
    r = np.linspace(0.05, 0.49, 20)
    img = mode.field.dirac(r, np.full_like(r, 0.7))
    assert np.abs(img).max() == 0.0


def test_dirac_closed_form_matches_finite_differences(rng):
    for sign in ("+", "-"):
        mode = singular_mode(sign, OMEGA, 1.0)
        fd = SpinorField(components=mode.field.components,
                         support=mode.field.support)
        r = 0.3 + 0.5 * rng.random(12)
        t = 0.2 + (OMEGA - 0.4) * rng.random(12)
        closed = mode.field.dirac(r, t)
        approx = fd.dirac(r, t)
        assert np.abs(closed - approx).max() < 1e-5


def test_mass_term_is_exact_matrix_action():
    m0 = singular_mode("+", OMEGA, 1.0, mass=0.0)
    m1 = singular_mode("+", OMEGA, 1.0, mass=2.5)
    r = np.array([0.3, 0.6])
    t = np.array([1.0, 2.0])
    psi = m0.field(r, t)
    expected = m0.field.dirac(r, t) + 2.5 * np.stack([psi[0], -psi[1]])
    assert np.abs(m1.field.dirac(r, t) - expected).max() < 1e-14


@pytest.mark.parametrize("omega", [1.25 * math.pi, 1.5 * math.pi, 1.75 * math.pi])
def test_green_pairings_at_one_corner(omega):
    plus = singular_mode("+", omega, 1.0)
    minus = singular_mode("-", omega, 1.0)
    dom = SectorDomain(1.0, omega)
    pm = dirac_l2_pairing(plus.field, minus.field, dom).value
    mp = dirac_l2_pairing(minus.field, plus.field, dom).value
    pp = dirac_l2_pairing(plus.field, plus.field, dom).value
    mm = dirac_l2_pairing(minus.field, minus.field, dom).value
    assert pm == pytest.approx(0.5j, abs=1e-8)
    assert mp == pytest.approx(0.5j, abs=1e-8)
    assert abs(pp) < 1e-8 and abs(mm) < 1e-8


def test_modes_satisfy_infinite_mass_boundary_condition():
    dom = SectorDomain(1.0, OMEGA)
    for sign in ("+", "-"):
        mode = singular_mode(sign, OMEGA, 1.0)
        assert boundary_condition_residual(mode.field, dom) < 1e-10


def test_constant_spinor_fails_half_plane_edge_condition():
    # theta = 0 edge of the upper half plane, outward normal (0, -1)
    bc = infinite_mass_bc_matrix((0.0, -1.0))
    psi = np.array([1.0, 0.0], dtype=complex)
    assert np.linalg.norm(bc @ psi - psi) == pytest.approx(math.sqrt(2.0))


def test_norm_identity_both_signs():
    from dirac_lab import cutoff_eval

    for sign, expo in (("+", +1), ("-", -1)):
        mode = singular_mode(sign, OMEGA, 1.0)

        def density(r, t, mode=mode):
            v = mode.field(r, t)
            return np.abs(v * v.conj()).sum(axis=0).real

        q2 = integrate_sector(density, SectorDomain(1.0, OMEGA), tol=1e-9)

        def radial(r, expo=expo, lam=mode.lam):
            return r ** (2 * expo * lam) * cutoff_eval(r)[0] ** 2

        q1 = integrate_1d(radial, 0.0, 1.0, tol=1e-9)
        assert np.real(q2.value) == pytest.approx(np.real(q1.value), abs=1e-8)


def test_spin_orbit_gram_matrix_is_identity():
    modes = [spin_orbit_mode(k, s, OMEGA) for k in range(3) for s in ("+", "-")]
    gram = np.empty((6, 6), dtype=complex)
    for i, mi in enumerate(modes):
        for j, mj in enumerate(modes):
            def f(t, mi=mi, mj=mj):
                return (mi.profile(t) * mj.profile(t).conj()).sum(axis=0)
            gram[i, j] = integrate_1d(f, 0.0, OMEGA, tol=1e-12).value
    assert np.abs(gram - np.eye(6)).max() < 1e-10


def test_spin_orbit_eigen_relation_pointwise():
    theta = np.linspace(0.0, OMEGA, 100)
    for k in range(3):
        for s in (+1, -1):
            m = spin_orbit_mode(k, s, OMEGA)
            prof = m.profile(theta)
            dprof = m.profile_deriv(theta)
            img = 0.5 * prof - 1j * np.stack([dprof[0], -dprof[1]])
            assert np.abs(img - m.eigenvalue() * prof).max() < 1e-10


def test_spin_orbit_radial_flip():
    theta = np.linspace(0.0, OMEGA, 100)
    for k in range(3):
        for s in (+1, -1):
            m = spin_orbit_mode(k, s, OMEGA)
            prof = m.profile(theta)
            flipped = -1j * np.stack([np.exp(-1j * theta) * prof[1],
                                      np.exp(1j * theta) * prof[0]])
            partner = spin_orbit_mode(k, -s, OMEGA)
            assert np.abs(flipped - s * partner.profile(theta)).max() < 1e-10


def test_spin_orbit_domain_boundary_conditions():
    for k in range(4):
        for s in (+1, -1):
            m = spin_orbit_mode(k, s, OMEGA)
            f0 = m.profile(np.array([0.0]))[:, 0]
            fw = m.profile(np.array([OMEGA]))[:, 0]
            assert f0[1] == pytest.approx(f0[0], abs=1e-14)
            assert fw[1] == pytest.approx(-np.exp(1j * OMEGA) * fw[0], abs=1e-13)


def test_spin_orbit_eigenvalue_gap():
    eigs = sorted({spin_orbit_mode(k, s, OMEGA).eigenvalue()
                   for k in range(6) for s in (+1, -1)})
    gaps = [b - a for a, b in zip(eigs[:-1], eigs[1:])]
    assert min(gaps) >= math.pi / OMEGA - 1e-12


def test_dirac_apply_polar_annihilates_kernel_element():
    tau = (2 * 2 + 1) * math.pi / (2 * OMEGA)
    u_plus = lambda r: np.power(r, tau)
    du_plus = lambda r: tau * np.power(r, tau - 1)
    zero = lambda r: np.zeros_like(r)
    g_plus, g_minus = dirac_apply_polar(u_plus, zero, 2, OMEGA,
                                        du_plus=du_plus, du_minus=zero)
    r = np.linspace(0.1, 0.9, 30)
    assert np.abs(g_minus(r)).max() < 1e-12
    assert np.abs(g_plus(r)).max() < 1e-12


def test_dirac_apply_polar_product_rule():
    # u- = r^(-tau) chi(r) maps to -chi'(r) r^(-tau) in the f+ slot
    k = 1
    tau = (2 * k + 1) * math.pi / (2 * OMEGA)
    chi, dchi = radial_bump(0.5, 0.25)
    u_minus = lambda r: np.power(r, -tau) * chi(r)
    zero = lambda r: np.zeros_like(r)
    g_plus, _ = dirac_apply_polar(zero, u_minus, k, OMEGA, du_plus=zero)
    r = np.linspace(0.3, 0.7, 50)
    expect = -dchi(r) * np.power(r, -tau)
    assert np.abs(g_plus(r) - expect).max() < 1e-5


def test_dirac_apply_polar_rejects_origin():
    g_plus, _ = dirac_apply_polar(lambda r: r, lambda r: r, 0, OMEGA)
    with pytest.raises(DomainInputError):
        g_plus(np.array([0.0, 0.5]))


def test_superposition_reconstruction_matches_cartesian_dirac(rng):
    u, du = radial_bump(0.55, 0.3)
    terms = [SuperpositionTerm(k=0, sign=+1, amplitude=1.0, u=u, du=du),
             SuperpositionTerm(k=1, sign=-1, amplitude=0.3 + 0.4j, u=u, du=du)]
    psi = spin_orbit_superposition(OMEGA, 1.0, terms)
    fd = SpinorField(components=psi.components, support=psi.support)
    r = 0.35 + 0.35 * rng.random(20)
    t = 0.3 + (OMEGA - 0.6) * rng.random(20)
    assert np.abs(psi.dirac(r, t) - fd.dirac(r, t)).max() < 1e-4


def test_superposition_respects_boundary_conditions():
    u, du = radial_bump(0.5, 0.2)
    terms = [SuperpositionTerm(k=2, sign=-1, amplitude=1.0, u=u, du=du)]
    psi = spin_orbit_superposition(OMEGA, 1.0, terms)
    assert boundary_condition_residual(psi, SectorDomain(1.0, OMEGA)) < 1e-10
