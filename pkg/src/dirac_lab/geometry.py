"""Finite windows of non-degenerate infinite polygons.

The domain is the open epigraph of the piecewise-linear boundary through
the vertex list: x is inside iff some boundary segment covers x_1 and x
lies strictly above it. A window is a finite slice [j_min, j_max] of the
infinite vertex family; an optional periodic generator (period vector +
motif) lets the separation condition be certified for the full infinite
polygon from one period.

Validity conditions on the window:
  (i)   abscissae non-decreasing (strictly, so the boundary is a graph),
  (ii)  consecutive edges linearly independent,
  (iii) pairwise vertex distances > 3*rho.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import DEFAULT_CONFIG
from .errors import (
    DegenerateCornerError,
    DomainInputError,
    InvariantViolationError,
    RangeError,
)

Point = tuple[float, float]


@dataclass(frozen=True)
class PolygonSpec:
    vertices: tuple[Point, ...]
    rho: float
    window: tuple[int, int]
    period: Point | None = None   # translation taking the motif to the next copy

    def __post_init__(self):
        if len(self.vertices) < 3:
            raise DomainInputError("a polygon window needs at least 3 vertices")
        if self.rho <= 0:
            raise DomainInputError("rho must be positive")
        j_min, j_max = self.window
        if j_max - j_min + 1 != len(self.vertices):
            raise DomainInputError("window [j_min, j_max] must match the vertex count")
        if self.period is not None and self.period[0] <= 0:
            raise DomainInputError("periodic generator needs period with positive x-component")

    @classmethod
    def from_points(cls, points: Sequence[Sequence[float]], rho: float,
                    j_min: int = 0, period: Sequence[float] | None = None) -> "PolygonSpec":
        verts = tuple((float(p[0]), float(p[1])) for p in points)
        per = None if period is None else (float(period[0]), float(period[1]))
        return cls(vertices=verts, rho=float(rho),
                   window=(j_min, j_min + len(verts) - 1), period=per)

    def vertex(self, j: int) -> Point:
        """Vertex j, using the periodic generator outside the stored window."""
        j_min, j_max = self.window
        if j_min <= j <= j_max:
            return self.vertices[j - j_min]
        if self.period is None:
            raise RangeError(f"index {j} outside window [{j_min}, {j_max}]")
        n = len(self.vertices)
        k, r = divmod(j - j_min, n)
        base = self.vertices[r]
        return (base[0] + k * self.period[0], base[1] + k * self.period[1])


@dataclass(frozen=True)
class Violation:
    condition: str           # 'i' | 'ii' | 'iii'
    indices: tuple[int, ...]
    detail: str


@dataclass(frozen=True)
class CornerReport:
    index: int
    omega: float
    concave: bool
    lam: float | None              # pi/(2*omega), concave corners only
    s_const: float | None          # segment-inclusion constant, concave only
    sobolev_threshold: float       # (pi + omega) / (2*omega)


def _cross(p: Point, q: Point) -> float:
    return p[0] * q[1] - p[1] * q[0]


def _sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def _norm(p: Point) -> float:
    return math.hypot(p[0], p[1])


def segment_safety_constant(omega: float) -> float:
    """Constant S such that |x-y| <= S|x| keeps the chord inside the sector.

    1/2 on (pi, 3pi/2], |sin(omega)|/2 on (3pi/2, 2pi); returns 1/2 for
    convex openings too (any S works there, the sector is convex).
    """
    if omega <= 1.5 * math.pi:
        return 0.5
    return abs(math.sin(omega)) / 2.0


def validate_polygon(spec: PolygonSpec, *, config=DEFAULT_CONFIG) -> list[Violation]:
    """Check conditions (i)-(iii) on the window; empty list iff all hold.

    With a periodic generator, (iii) is certified for the infinite family
    by checking the motif against every translate that could come within
    3*rho, and (i)/(ii) across the seam between copies.
    """
    v = spec.vertices
    n = len(v)
    out: list[Violation] = []

    for j in range(n - 1):
        if v[j + 1][0] < v[j][0]:
            out.append(Violation("i", (j + spec.window[0],),
                                 f"x1 decreases: {v[j][0]} -> {v[j + 1][0]}"))
        elif v[j + 1][0] == v[j][0]:
            out.append(Violation("i", (j + spec.window[0],),
                                 "equal abscissae: vertical edge, boundary is not a graph"))

    def check_collinear(a: Point, b: Point, c: Point, idx: int):
        e1, e2 = _sub(b, a), _sub(c, b)
        if abs(_cross(e1, e2)) < config.degeneracy_rel_tol * _norm(e1) * _norm(e2):
            out.append(Violation("ii", (idx,), "consecutive edges numerically collinear"))

    for j in range(1, n - 1):
        check_collinear(v[j - 1], v[j], v[j + 1], j + spec.window[0])

    three_rho = 3.0 * spec.rho
    for j in range(n):
        for k in range(j + 1, n):
            d = _norm(_sub(v[j], v[k]))
            if d <= three_rho:
                out.append(Violation("iii", (j + spec.window[0], k + spec.window[0]),
                                     f"distance {d:.6g} <= 3*rho = {three_rho:.6g}"))

    if spec.period is not None:
        px, py = spec.period
        xs = [p[0] for p in v]
        diam = max(_norm(_sub(a, b)) for a in v for b in v)
        copies = int(math.ceil((three_rho + diam) / px)) + 1
        for k in range(1, copies + 1):
            shift = (k * px, k * py)
            for j in range(n):
                for l in range(n):
                    d = _norm(_sub(v[j], (v[l][0] + shift[0], v[l][1] + shift[1])))
                    if d <= three_rho:
                        out.append(Violation(
                            "iii", (j + spec.window[0], l + spec.window[0] + k * n),
                            f"distance to translate {k}: {d:.6g} <= 3*rho"))
        # seam: last motif vertex joins the first vertex of the next copy
        seam_next = (v[0][0] + px, v[0][1] + py)
        if seam_next[0] < v[-1][0]:
            out.append(Violation("i", (spec.window[1],), "x1 decreases across the period seam"))
        elif seam_next[0] == v[-1][0]:
            out.append(Violation("i", (spec.window[1],), "vertical edge across the period seam"))
        check_collinear(v[-2], v[-1], seam_next, spec.window[1])
        seam_after = (v[1][0] + px, v[1][1] + py)
        check_collinear(v[-1], seam_next, seam_after, spec.window[1] + 1)
        _ = xs
    return out


def _boundary_height(spec: PolygonSpec, x1: float) -> float:
    """min over covering segments of the boundary graph at abscissa x1."""
    v = spec.vertices
    best = None
    for j in range(len(v) - 1):
        a, b = v[j], v[j + 1]
        if b[0] <= a[0]:
            continue  # degenerate/vertical pieces carry no graph segment
        if a[0] <= x1 <= b[0]:
            y = a[1] + (b[1] - a[1]) / (b[0] - a[0]) * (x1 - a[0])
            best = y if best is None else min(best, y)
    if best is None:
        raise RangeError(f"x1={x1} not covered by any boundary segment")
    return best


def contains(spec: PolygonSpec, x: Sequence[float]) -> bool:
    """Strict epigraph membership; points on the boundary are outside."""
    x1, x2 = float(x[0]), float(x[1])
    lo, hi = spec.vertices[0][0], spec.vertices[-1][0]
    if not lo <= x1 <= hi:
        raise RangeError(f"x1={x1} outside window x-range [{lo}, {hi}]")
    v = spec.vertices
    for j in range(len(v) - 1):
        a, b = v[j], v[j + 1]
        if b[0] <= a[0]:
            continue
        if a[0] <= x1 <= b[0]:
            y = a[1] + (b[1] - a[1]) / (b[0] - a[0]) * (x1 - a[0])
            if x2 > y:
                return True
    return False


def corner_report(spec: PolygonSpec, j: int, *, config=DEFAULT_CONFIG) -> CornerReport:
    """Angle, convexity and corner constants at interior vertex j.

    Concavity is decided by the cross-product sign (boundary walked with
    increasing x1, interior above) and cross-checked geometrically by a
    midpoint membership test; disagreement raises.
    """
    j_min, j_max = spec.window
    lo = j_min if spec.period is not None else j_min + 1
    hi = j_max if spec.period is not None else j_max - 1
    if not lo <= j <= hi:
        raise RangeError(f"corner index {j} not interior to window [{j_min}, {j_max}]")

    vp, vj, vn = spec.vertex(j - 1), spec.vertex(j), spec.vertex(j + 1)
    e_prev, e_next = _sub(vj, vp), _sub(vn, vj)
    cr = _cross(e_prev, e_next)
    if abs(cr) < config.degeneracy_rel_tol * _norm(e_prev) * _norm(e_next):
        raise DegenerateCornerError(f"corner {j}: consecutive edges numerically collinear")
    concave = cr < 0

    # midpoint of the two unit edge directions from the vertex: inside for
    # convex corners, outside for concave ones
    d1 = _sub(vp, vj)
    d1 = (d1[0] / _norm(d1), d1[1] / _norm(d1))
    d2 = (e_next[0] / _norm(e_next), e_next[1] / _norm(e_next))
    eps = min(_norm(e_prev), _norm(e_next), spec.rho) / 16.0
    mid = (vj[0] + eps * (d1[0] + d2[0]) / 2.0, vj[1] + eps * (d1[1] + d2[1]) / 2.0)
    try:
        inside = contains(spec, mid)
    except RangeError:
        inside = not concave  # window edge cut the probe off; trust the cross product
    if inside == concave:
        raise InvariantViolationError(
            f"corner {j}: cross-product and membership concavity tests disagree")

    cosv = d2[0] * d1[0] + d2[1] * d1[1]
    base = math.acos(max(-1.0, min(1.0, cosv)))
    omega = 2.0 * math.pi - base if concave else base
    if abs(omega - math.pi) < 1e-12:
        raise DegenerateCornerError(f"corner {j}: omega within 1e-12 of pi")

    lam = math.pi / (2.0 * omega) if concave else None
    s_const = segment_safety_constant(omega) if concave else None
    threshold = (math.pi + omega) / (2.0 * omega)
    return CornerReport(index=j, omega=omega, concave=concave, lam=lam,
                        s_const=s_const, sobolev_threshold=threshold)


def concave_corners(spec: PolygonSpec, *, config=DEFAULT_CONFIG) -> list[CornerReport]:
    j_min, j_max = spec.window
    reports = []
    for j in range(j_min + 1, j_max):
        rep = corner_report(spec, j, config=config)
        if rep.concave:
            reports.append(rep)
    return reports


def ball_inside(spec: PolygonSpec, center: Sequence[float], radius: float) -> bool:
    """True iff the closed ball around center lies inside the epigraph.

    Exact for the graph boundary: the center must be inside and its
    distance to every boundary segment meeting the ball's x-extent must
    exceed the radius. Raises RangeError if the ball's x-extent leaves
    the window.
    """
    c = (float(center[0]), float(center[1]))
    lo, hi = spec.vertices[0][0], spec.vertices[-1][0]
    if c[0] - radius < lo or c[0] + radius > hi:
        raise RangeError("ball x-extent leaves the represented window")
    if not contains(spec, c):
        return False
    v = spec.vertices
    for j in range(len(v) - 1):
        a, b = v[j], v[j + 1]
        if b[0] < c[0] - radius or a[0] > c[0] + radius:
            continue
        ab = _sub(b, a)
        denom = ab[0] * ab[0] + ab[1] * ab[1]
        t = 0.0 if denom == 0 else max(0.0, min(1.0, ((c[0] - a[0]) * ab[0] + (c[1] - a[1]) * ab[1]) / denom))
        proj = (a[0] + t * ab[0], a[1] + t * ab[1])
        if _norm(_sub(c, proj)) <= radius:
            return False
    return True


def load_domain(path: str) -> PolygonSpec:
    """Read a domain-spec JSON file.

    Schema: {"vertices": [[x, y], ...], "rho": r,
             "window": [j_min, j_max] (optional, default [0, n-1]),
             "periodic": {"period": [px, py]} (optional)}.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainInputError(f"cannot read domain file {path}: {exc}") from exc
    try:
        vertices = data["vertices"]
        rho = float(data["rho"])
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainInputError(f"domain file {path} missing vertices/rho") from exc
    j_min = int(data.get("window", [0, len(vertices) - 1])[0])
    period = data.get("periodic", {}).get("period") if isinstance(data.get("periodic"), dict) else None
    return PolygonSpec.from_points(vertices, rho, j_min=j_min, period=period)


def exterior_turning(spec: PolygonSpec, j: int) -> float:
    """Signed exterior turning angle at corner j (positive = left turn)."""
    vp, vj, vn = spec.vertex(j - 1), spec.vertex(j), spec.vertex(j + 1)
    p, q = _sub(vj, vp), _sub(vn, vj)
    ang = math.atan2(_cross(p, q), p[0] * q[0] + p[1] * q[1])
    return ang


def sawtooth(n_teeth: int = 3, rho: float = 0.4, amplitude: float = 1.0) -> PolygonSpec:
    """The alternating-height test polygon {(k, amplitude*(-1)^k)}."""
    pts = [(float(k), amplitude * ((-1.0) ** k)) for k in range(-n_teeth, n_teeth + 1)]
    return PolygonSpec.from_points(pts, rho, j_min=-n_teeth)
