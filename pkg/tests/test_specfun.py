import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dirac_lab import (
    BesselZeroTable,
    NonConvergenceError,
    RangeError,
    bessel_first_zero,
    bessel_j,
    cutoff_derivative,
    cutoff_eval,
)

# independent 40-digit evaluation of the logistic cut-off at 0.6
PHI_AT_06 = 0.9770226300899744


def test_cutoff_plateau_and_tail():
    assert cutoff_eval(0.25) == (1.0, 0.0)
    assert cutoff_eval(0.0) == (1.0, 0.0)
    assert cutoff_eval(1.0) == (0.0, 0.0)
    assert cutoff_eval(7.3) == (0.0, 0.0)


def test_cutoff_midpoint_is_half():
    phi, _ = cutoff_eval(0.75)
    assert phi == pytest.approx(0.5, abs=1e-15)


def test_cutoff_against_high_precision_value():
    phi, _ = cutoff_eval(0.6)
    assert phi == pytest.approx(PHI_AT_06, abs=1e-15)


def test_cutoff_limits_are_exact_near_transitions():
    assert cutoff_eval(0.5 + 1e-13)[0] == 1.0
    assert cutoff_eval(1.0 - 1e-13)[0] == 0.0


def test_cutoff_rejects_negative_argument():
    with pytest.raises(RangeError):
        cutoff_eval(-0.1)


def test_cutoff_derivative_matches_finite_differences():
    r = np.linspace(0.501, 0.999, 400)
    r = r[(r > 0.5 + 1e-3) & (r < 1.0 - 1e-3)]
    h = 1e-6
    fd = (cutoff_eval(r + h)[0] - cutoff_eval(r - h)[0]) / (2 * h)
    assert np.max(np.abs(fd - cutoff_derivative(r))) < 1e-6


@given(st.floats(min_value=0.515, max_value=0.996),
       st.floats(min_value=1e-4, max_value=1e-3))
def test_cutoff_strictly_decreasing_on_transition(r, step):
    # doubles saturate at 1.0 below r ~ 0.514 and underflow past ~ 0.999;
    # strict monotonicity is testable on the window in between
    a, _ = cutoff_eval(r)
    b, _ = cutoff_eval(min(r + step, 0.997))
    assert 0.0 <= b < a <= 1.0


def test_cutoff_vectorized_matches_scalar():
    r = np.array([0.1, 0.6, 0.8, 1.5])
    phi, dphi = cutoff_eval(r)
    for i, ri in enumerate(r):
        p, d = cutoff_eval(float(ri))
        assert phi[i] == p and dphi[i] == d


def test_bessel_j_at_origin():
    assert bessel_j(0.0, 0.0) == pytest.approx(1.0, abs=1e-15)


def test_bessel_half_integer_closed_form():
    # J_{1/2}(x) = sqrt(2/(pi x)) sin x
    for x in (0.5, 1.0, 2.5, 10.0):
        expect = math.sqrt(2.0 / (math.pi * x)) * math.sin(x)
        assert bessel_j(0.5, x) == pytest.approx(expect, abs=1e-12)


def test_bessel_first_zero_self_consistency():
    j01 = bessel_first_zero(0.0)
    assert abs(bessel_j(0.0, j01)) < 1e-10


def test_bessel_range_errors():
    with pytest.raises(RangeError):
        bessel_j(-0.5, 1.0)
    with pytest.raises(RangeError):
        bessel_j(200.0, 1.0)
    with pytest.raises(RangeError):
        bessel_j(1.0, -1.0)
    with pytest.raises(RangeError):
        bessel_first_zero(151.0)


def test_first_zero_square_anchor():
    j01 = bessel_first_zero(0.0)
    assert j01 ** 2 == pytest.approx(5.78, abs=0.01)


def test_first_zero_half_integer_is_pi():
    assert bessel_first_zero(0.5) == pytest.approx(math.pi, abs=1e-12)


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_integer_zero_square_inequality(k):
    j01 = bessel_first_zero(0.0)
    jk = bessel_first_zero(float(k))
    assert jk ** 2 >= j01 ** 2 + k ** 2 - 1e-12


def test_first_zero_monotone_in_order():
    grid = np.arange(0.0, 2.0001, 0.1)
    zeros = [bessel_first_zero(float(nu)) for nu in grid]
    assert all(b > a for a, b in zip(zeros[:-1], zeros[1:]))


def test_first_zero_large_order():
    # first zero exceeds the order; the scan must still bracket it
    z = bessel_first_zero(120.0)
    assert z > 120.0
    assert abs(bessel_j(120.0, z)) < 1e-10


def test_zero_table_eager_and_immutable():
    table = BesselZeroTable.build([0.0, 0.5, 1.0])
    assert len(table) == 3
    assert table[0.5] == pytest.approx(math.pi, abs=1e-12)
    with pytest.raises(KeyError):
        table[0.25]


def test_first_zero_residual_guard():
    # unreachable residual forces the non-convergence branch
    with pytest.raises(NonConvergenceError):
        bessel_first_zero(1.0, residual_tol=1e-30)
