import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dirac_lab import (
    DomainInputError,
    ExtensionParameter,
    ModeCoefficients,
    g_parametrization,
    gamma_maps,
    green_pairing,
    solve_g,
    tu_membership_residual,
)

W32 = 1.5 * math.pi
TWO_CORNER_OMEGAS = [1.3 * math.pi, 1.7 * math.pi]


def random_unitary(rng, n):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, _ = np.linalg.qr(z)
    return q


def coeffs_1(cp, cm, omega=W32):
    return ModeCoefficients.build([0], [cp], [cm], [omega])


def test_gamma_maps_single_corner():
    gp, gm = gamma_maps(coeffs_1(1.0, 0.0))
    assert gp[0] == 1j and gm[0] == 0


def test_gamma_maps_zero():
    gp, gm = gamma_maps(coeffs_1(0.0, 0.0))
    assert gp[0] == 0 and gm[0] == 0


def test_gamma_maps_componentwise_two_corners():
    c = ModeCoefficients.build([0, 1], [1.0, -1j], [2.0, 0.0], TWO_CORNER_OMEGAS)
    gp, gm = gamma_maps(c)
    assert np.allclose(gp, [1j, 1.0])
    assert np.allclose(gm, [2.0, 0.0])


@given(st.lists(st.complex_numbers(max_magnitude=5, allow_nan=False,
                                   allow_infinity=False), min_size=1, max_size=4))
def test_gamma_plus_is_rotation_by_i(cs):
    n = len(cs)
    omegas = [math.pi + 0.3 + 0.1 * i for i in range(n)]
    c = ModeCoefficients.build(list(range(n)), cs, [0.0] * n, omegas)
    gp, _ = gamma_maps(c)
    assert np.allclose(gp, 1j * np.asarray(cs, dtype=complex))


def test_mode_coefficients_reject_convex_openings():
    with pytest.raises(DomainInputError):
        ModeCoefficients.build([0], [1.0], [0.0], [0.9 * math.pi])
    with pytest.raises(DomainInputError):
        ModeCoefficients.build([0], [1.0], [0.0], [math.pi])


def test_mode_coefficients_reject_length_mismatch():
    with pytest.raises(DomainInputError):
        ModeCoefficients.build([0, 1], [1.0], [0.0, 0.0], TWO_CORNER_OMEGAS)


def test_green_pairing_cross_coefficients():
    pairing = green_pairing(coeffs_1(1.0, 0.0), coeffs_1(0.0, 1.0))
    assert pairing.rhs == pytest.approx(1j, abs=1e-15)
    assert pairing.lhs == pytest.approx(pairing.rhs, abs=1e-8)


def test_green_pairing_real_coefficients_is_purely_imaginary():
    a = coeffs_1(0.7, -0.3)
    pairing = green_pairing(a, a)
    assert abs(pairing.rhs.real) < 1e-15
    assert pairing.lhs == pytest.approx(pairing.rhs, abs=1e-8)


def test_green_pairing_disjoint_windows_vanishes():
    a = ModeCoefficients.build([0], [1.0], [0.5], [W32])
    b = ModeCoefficients.build([1], [2.0], [1.0], [1.25 * math.pi])
    pairing = green_pairing(a, b)
    assert pairing.lhs == 0 and pairing.rhs == 0


def test_green_pairing_random_families_agree(rng):
    for _ in range(6):
        n = int(rng.integers(1, 4))
        omegas = [math.pi * (1.2 + 0.2 * i) for i in range(n)]
        window = list(range(n))

        def draw():
            z = rng.normal(size=(2, n)) + 1j * rng.normal(size=(2, n))
            return ModeCoefficients.build(window, z[0], z[1], omegas)

        pairing = green_pairing(draw(), draw())
        assert pairing.lhs == pytest.approx(pairing.rhs, abs=1e-8)


def test_unitarity_is_enforced():
    with pytest.raises(DomainInputError):
        ExtensionParameter.from_matrix(np.array([[1.0, 0.1], [0.0, 1.0]]))


def test_distinguished_extension_selects_zero_minus_data():
    ident = ExtensionParameter.from_matrix(np.eye(1))
    assert tu_membership_residual(coeffs_1(3.0 - 1j, 0.0), ident) < 1e-12
    assert tu_membership_residual(coeffs_1(0.0, 1.0), ident) == pytest.approx(2.0)


def test_minus_identity_selects_zero_plus_data():
    mid = ExtensionParameter.from_matrix(-np.eye(1))
    assert tu_membership_residual(coeffs_1(0.0, 5.0), mid) < 1e-12
    assert tu_membership_residual(coeffs_1(1.0, 0.0), mid) == pytest.approx(2.0)


@pytest.mark.parametrize("alpha", [0.3, 1.2, 2.9, 4.4])
def test_phase_unitary_parametrizes_one_parameter_family(alpha):
    u = ExtensionParameter.from_matrix(np.array([[np.exp(1j * alpha)]]))
    c_plus = 1.3 - 0.2j
    # solve i(1-e^{ia}) * (i c+) = (1+e^{ia}) c- for c-
    c_minus = 1j * (1 - np.exp(1j * alpha)) * (1j * c_plus) / (1 + np.exp(1j * alpha))
    assert tu_membership_residual(coeffs_1(c_plus, c_minus), u) < 1e-12
    assert tu_membership_residual(coeffs_1(c_plus, c_minus + 0.1), u) > 1e-3


def test_g_parametrization_identity_kills_gamma_minus(rng):
    ident = ExtensionParameter.from_matrix(np.eye(3))
    g = rng.normal(size=3) + 1j * rng.normal(size=3)
    data = g_parametrization(ident, g)
    assert np.allclose(data.gamma_minus, 0.0)
    assert np.allclose(data.gamma_plus, 2.0 * g)


def test_g_parametrization_always_lands_in_domain(rng):
    for n in (1, 2, 3):
        u = ExtensionParameter.from_matrix(random_unitary(rng, n))
        omegas = [math.pi * 1.4] * n
        for _ in range(10):
            g = rng.normal(size=n) + 1j * rng.normal(size=n)
            data = g_parametrization(u, g)
            c = ModeCoefficients.build(list(range(n)), data.c_plus, data.c_minus,
                                       omegas)
            assert tu_membership_residual(c, u) <= 1e-12


def test_g_parametrization_injective(rng):
    u = ExtensionParameter.from_matrix(random_unitary(rng, 2))
    g1 = rng.normal(size=2) + 1j * rng.normal(size=2)
    g2 = g1 + np.array([1e-3, 0.0])
    d1, d2 = g_parametrization(u, g1), g_parametrization(u, g2)
    gap = np.linalg.norm(np.concatenate([d1.gamma_plus - d2.gamma_plus,
                                         d1.gamma_minus - d2.gamma_minus]))
    assert gap > 1e-4


def test_admissible_data_is_reproduced_by_unique_g(rng):
    # Lambda = Pi at finite truncation: solve the membership condition
    # directly, then recover g and reproduce the data
    for _ in range(10):
        n = int(rng.integers(1, 4))
        u = ExtensionParameter.from_matrix(random_unitary(rng, n))
        eye = np.eye(n)
        gp = rng.normal(size=n) + 1j * rng.normal(size=n)
        gm = np.linalg.solve(eye + u.matrix, 1j * (eye - u.matrix) @ gp)
        g = solve_g(gp, gm)
        data = g_parametrization(u, g)
        resid = np.linalg.norm(data.gamma_plus - gp) + np.linalg.norm(data.gamma_minus - gm)
        assert resid <= 1e-10


def test_green_rhs_vanishes_for_pairs_in_domain(rng):
    u = ExtensionParameter.from_matrix(random_unitary(rng, 2),
                                       omegas=TWO_CORNER_OMEGAS)
    for _ in range(10):
        g1 = rng.normal(size=2) + 1j * rng.normal(size=2)
        g2 = rng.normal(size=2) + 1j * rng.normal(size=2)
        d1, d2 = g_parametrization(u, g1), g_parametrization(u, g2)
        rhs = sum(1j * cp * np.conj(cm2) + 1j * cm * np.conj(cp2)
                  for cp, cm, cp2, cm2 in zip(d1.c_plus, d1.c_minus,
                                              d2.c_plus, d2.c_minus))
        assert abs(rhs) <= 1e-12


def test_gtilde_stability_note_records_window_gap():
    u = ExtensionParameter.from_matrix(np.eye(2), omegas=TWO_CORNER_OMEGAS)
    assert "min(omega - pi)" in u.gtilde_stability_note
