import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dirac_lab import (
    DegenerateCornerError,
    DomainInputError,
    PolygonSpec,
    RangeError,
    ball_inside,
    contains,
    corner_report,
    load_domain,
    sawtooth,
    segment_safety_constant,
    validate_polygon,
)
from dirac_lab.geometry import exterior_turning

REFLEX_3PI2 = PolygonSpec.from_points([(-1, -1), (0, 0), (1, -1)], rho=0.1)
# opening 7pi/4: slopes +-(1 + sqrt 2) give a base angle of pi/4 at the peak
A = 1.0 + math.sqrt(2.0)
REFLEX_7PI4 = PolygonSpec.from_points([(-1, -A), (0, 0), (1, -A)], rho=0.1)


def test_sawtooth_window_is_valid():
    spec = sawtooth(3, rho=0.4)
    assert validate_polygon(spec) == []
    # exhaustive pairwise distances: consecutive teeth sqrt(5), the overall
    # minimum 2.0 between same-parity vertices; both clear 3*rho = 1.2
    pts = np.array(spec.vertices)
    d = np.hypot(*(pts[:, None, :] - pts[None, :, :]).transpose(2, 0, 1))
    consecutive = min(np.hypot(*(pts[i + 1] - pts[i])) for i in range(len(pts) - 1))
    assert consecutive == pytest.approx(math.sqrt(5.0), rel=1e-12)
    d[np.diag_indices(len(pts))] = np.inf
    assert d.min() == pytest.approx(2.0, rel=1e-12)
    assert d.min() > 3 * 0.4


def test_collinear_vertices_violate_ii():
    spec = PolygonSpec.from_points([(0, 0), (1, 0), (2, 0)], rho=0.1)
    v = validate_polygon(spec)
    assert [x.condition for x in v] == ["ii"]
    assert v[0].indices == (1,)


def test_close_vertices_violate_iii():
    spec = PolygonSpec.from_points([(0, 0), (0.5, 1), (1.3, 0.2)], rho=0.4)
    conds = {x.condition for x in validate_polygon(spec)}
    assert "iii" in conds
    # 3*rho = 1.2 and |(0,0)-(0.5,1)| ~ 1.118 < 1.2


def test_decreasing_abscissae_violate_i():
    spec = PolygonSpec.from_points([(0, 0), (1, 1), (0.5, 2.5)], rho=0.05)
    assert any(x.condition == "i" for x in validate_polygon(spec))


def test_vertical_edge_reported_as_graph_defect():
    spec = PolygonSpec.from_points([(-1, 0), (0, 0), (0, 1), (1, 1)], rho=0.05)
    vio = [x for x in validate_polygon(spec) if x.condition == "i"]
    assert vio and "graph" in vio[0].detail


def test_too_few_vertices_is_input_error():
    with pytest.raises(DomainInputError):
        PolygonSpec.from_points([(0, 0), (1, 0)], rho=0.1)


def test_right_angle_convex_corner():
    spec = PolygonSpec.from_points([(-1, 0), (0, 0), (0, 1)], rho=0.05)
    rep = corner_report(spec, 1)
    assert not rep.concave
    assert rep.omega == pytest.approx(math.pi / 2, abs=1e-12)
    assert rep.lam is None and rep.s_const is None


def test_reflex_corner_3pi2_constants():
    rep = corner_report(REFLEX_3PI2, 1)
    assert rep.concave
    assert rep.omega == pytest.approx(1.5 * math.pi, abs=1e-12)
    assert rep.lam == pytest.approx(1.0 / 3.0, abs=1e-12)
    assert rep.s_const == pytest.approx(0.5, abs=1e-15)
    assert rep.sobolev_threshold == pytest.approx(5.0 / 6.0, abs=1e-12)


def test_reflex_corner_7pi4_sine_branch():
    rep = corner_report(REFLEX_7PI4, 1)
    assert rep.omega == pytest.approx(1.75 * math.pi, abs=1e-12)
    assert rep.s_const == pytest.approx(math.sqrt(2.0) / 4.0, abs=1e-12)
    assert rep.s_const == pytest.approx(0.35355339, abs=1e-7)


def test_concave_lambda_identity():
    for spec in (REFLEX_3PI2, REFLEX_7PI4):
        rep = corner_report(spec, 1)
        assert 0.25 < rep.lam < 0.5
        assert 2.0 * rep.lam * rep.omega == pytest.approx(math.pi, rel=1e-15)
        assert 0.75 <= rep.sobolev_threshold < 1.0


def test_boundary_corner_index_is_range_error():
    with pytest.raises(RangeError):
        corner_report(REFLEX_3PI2, 0)
    with pytest.raises(RangeError):
        corner_report(REFLEX_3PI2, 2)


def test_degenerate_corner_raises():
    spec = PolygonSpec.from_points([(-1, 0), (0, 1e-15), (1, 0)], rho=0.05)
    with pytest.raises(DegenerateCornerError):
        corner_report(spec, 1)


@given(st.floats(-50, 50), st.floats(-50, 50))
def test_corner_report_translation_invariant(dx, dy):
    base = corner_report(REFLEX_7PI4, 1)
    shifted = PolygonSpec.from_points(
        [(x + dx, y + dy) for x, y in REFLEX_7PI4.vertices], rho=0.1)
    rep = corner_report(shifted, 1)
    assert rep.omega == pytest.approx(base.omega, abs=1e-9)
    assert rep.concave == base.concave


def test_exterior_turning_sum_rule():
    spec = sawtooth(3, rho=0.4)
    for j in range(-2, 3):
        rep = corner_report(spec, j)
        turn = exterior_turning(spec, j)
        assert turn == pytest.approx(math.pi - rep.omega, abs=1e-12)
        assert (turn < 0) == rep.concave


def test_contains_far_above_boundary():
    spec = sawtooth(3, rho=0.4)
    assert contains(spec, (0.5, 10.0))


def test_contains_strict_on_edges():
    spec = sawtooth(3, rho=0.4)
    # midpoint of the segment (0,1)-(1,-1) lies exactly on the boundary
    assert not contains(spec, (0.5, 0.0))
    assert contains(spec, (0.5, 1e-9))


def test_contains_range_error_outside_window():
    spec = sawtooth(3, rho=0.4)
    with pytest.raises(RangeError):
        contains(spec, (3.5, 0.0))


@given(st.floats(min_value=1e-9, max_value=100.0),
       st.floats(min_value=-2.9, max_value=2.9),
       st.floats(min_value=-3.0, max_value=12.0))
def test_contains_vertical_ray_property(t, x1, x2):
    spec = sawtooth(3, rho=0.4)
    if contains(spec, (x1, x2)):
        assert contains(spec, (x1, x2 + t))


def test_periodic_separation_certified_on_one_period():
    spec = PolygonSpec.from_points(
        [(0.0, 1.0), (1.0, -1.0), (2.0, 1.0), (3.0, -1.0)], rho=0.4,
        period=(4.0, 0.0))
    assert validate_polygon(spec) == []


def test_periodic_overlap_detected():
    spec = PolygonSpec.from_points(
        [(0.0, 1.0), (1.0, -1.0), (2.0, 1.0)], rho=0.4, period=(0.5, 0.0))
    # translate by one period lands within 3*rho of the window vertices
    assert any(x.condition == "iii" for x in validate_polygon(spec))


def test_ball_inside_epigraph():
    spec = sawtooth(3, rho=0.4)
    assert ball_inside(spec, (0.0, 6.0), 2.0)
    assert not ball_inside(spec, (0.0, 1.5), 2.0)
    with pytest.raises(RangeError):
        ball_inside(spec, (0.0, 50.0), 10.0)


def test_segment_safety_constant_branches():
    assert segment_safety_constant(1.2 * math.pi) == 0.5
    assert segment_safety_constant(1.5 * math.pi) == 0.5
    assert segment_safety_constant(1.75 * math.pi) == pytest.approx(math.sqrt(2) / 4)


def test_load_domain_roundtrip(tmp_path):
    path = tmp_path / "dom.json"
    path.write_text(json.dumps({
        "vertices": [[-1, -1], [0, 0], [1, -1]],
        "rho": 0.1,
        "window": [-1, 1],
    }))
    spec = load_domain(str(path))
    assert spec.window == (-1, 1)
    assert corner_report(spec, 0).omega == pytest.approx(1.5 * math.pi)
    with pytest.raises(DomainInputError):
        load_domain(str(tmp_path / "missing.json"))
