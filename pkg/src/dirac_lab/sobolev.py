"""Fractional-regularity diagnostics for the corner modes.

The + mode belongs to H^s exactly for s below (pi + omega)/(2 omega) =
lam + 1/2; the - mode already fails at s = 1/2. The scan classifies each
s by the dyadic-shell behaviour of the Gagliardo double integral. The
chord-inclusion constant S (1/2 up to 3pi/2, |sin omega|/2 beyond)
underpins the near/far split and is checked here by direct sampling.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import DEFAULT_CONFIG
from .errors import DomainInputError, RangeError
from .extensions import ModeCoefficients
from .geometry import segment_safety_constant
from .modes import SingularMode, singular_mode
from .quadrature import (
    SectorDomain,
    SeminormResult,
    gagliardo_cross,
    gagliardo_seminorm,
    integrate_sector,
)

OMEGA_SCAN_LIMIT = 2.0 * math.pi - 1e-2   # openings beyond this are refused


@dataclass(frozen=True)
class ScanRecord:
    s: float
    verdict: str               # 'finite' | 'diverging' | 'inconclusive'
    value_or_growth: float
    depth: int


def _record(s: float, res: SeminormResult) -> ScanRecord:
    if res.diverging:
        return ScanRecord(s=s, verdict="diverging",
                          value_or_growth=float(res.growth_factor or math.inf),
                          depth=res.depth)
    if res.growth_factor is None:
        return ScanRecord(s=s, verdict="inconclusive",
                          value_or_growth=float(res.value), depth=res.depth)
    return ScanRecord(s=s, verdict="finite", value_or_growth=float(np.real(res.value)),
                      depth=res.depth)


def regularity_scan(mode: SingularMode, s_grid: Sequence[float],
                    tol: float | None = None, max_depth: int | None = None,
                    config=DEFAULT_CONFIG) -> list[ScanRecord]:
    """Classify H^s membership of a singular mode over a sorted s grid.

    Each s runs the shell-refined Gagliardo integral; the divergence
    detector turns sustained shell growth into a 'diverging' verdict.
    Openings with 2*pi - omega < 1e-2 are refused (the uniform-gap
    hypothesis; the mode family degenerates toward the full disk).
    """
    if mode.omega > OMEGA_SCAN_LIMIT:
        raise RangeError(
            f"omega={mode.omega:.6g} exceeds the supported scan range "
            f"(2*pi - omega must be >= 1e-2)")
    s_list = [float(s) for s in s_grid]
    if any(not 0.0 < s < 1.0 for s in s_list):
        raise DomainInputError("s grid must lie inside (0, 1)")
    if sorted(s_list) != s_list:
        raise DomainInputError("s grid must be sorted")
    tol = config.tol_4d_rel if tol is None else tol
    depth = config.gagliardo_depth if max_depth is None else max_depth
    dom = SectorDomain(rho=mode.rho, omega=mode.omega)

    def one(s: float) -> ScanRecord:
        res = gagliardo_seminorm(mode.field, dom, s, tol=tol, max_depth=depth)
        return _record(s, res)

    if config.threads > 1 and len(s_list) > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            records = list(pool.map(one, s_list))
    else:
        records = [one(s) for s in s_list]
    return records


def segment_inclusion_check(omega: float, n_samples: int, rng_seed: int,
                            rho: float = 1.0, s_factor: float = 1.0,
                            grid: int = 100) -> int:
    """Count chord-inclusion violations for sampled pairs with
    |x - y| <= s_factor * S(omega) * |x|.

    Pairs are drawn area-uniformly in x, direction-uniformly in y around
    x, and kept only when y lands in the sector. Every kept pair's chord
    is tested on a dense parameter grid; the return value is the number
    of pairs whose chord leaves the sector (0 for s_factor = 1).
    """
    if not math.pi < omega < 2.0 * math.pi:
        raise RangeError("segment inclusion check targets concave openings")
    S = s_factor * segment_safety_constant(omega)
    rng = np.random.default_rng(rng_seed)
    violations = 0
    kept = 0
    ts = np.linspace(0.0, 1.0, grid)
    while kept < n_samples:
        batch = min(20000, 2 * (n_samples - kept) + 1000)
        rx = rho * np.sqrt(rng.random(batch))
        tx = omega * rng.random(batch)
        alpha = 2.0 * math.pi * rng.random(batch)
        tlen = S * rx * rng.random(batch)
        x1 = rx * np.cos(tx)
        x2 = rx * np.sin(tx)
        y1 = x1 + tlen * np.cos(alpha)
        y2 = x2 + tlen * np.sin(alpha)
        ry = np.hypot(y1, y2)
        ty = np.mod(np.arctan2(y2, y1), 2.0 * math.pi)
        ok = (ry < rho) & (ty > 0.0) & (ty < omega) & (tlen > 0.0)
        idx = np.nonzero(ok)[0][: n_samples - kept]
        if idx.size == 0:
            continue
        kept += idx.size
        p1 = x1[idx, None] + ts[None, :] * (y1[idx] - x1[idx])[:, None]
        p2 = x2[idx, None] + ts[None, :] * (y2[idx] - x2[idx])[:, None]
        rr = np.hypot(p1, p2)
        th = np.mod(np.arctan2(p2, p1), 2.0 * math.pi)
        bad = (rr > rho) | (th > omega)
        violations += int(np.any(bad, axis=1).sum())
    return violations


def edge_straddling_pair(omega: float, rho: float = 1.0,
                         inflation: float = 1.05) -> tuple[np.ndarray, np.ndarray]:
    """An explicit pair just past the sharp inclusion threshold.

    The sharp constant is 1 on (pi, 3pi/2] and |sin omega| on
    (3pi/2, 2pi), twice the safety constant; a pair at inflation times
    that distance ratio straddles the excluded wedge. Raises if the
    construction fails to exit the sector (it cannot for inflation > 1).
    """
    if not math.pi < omega < 2.0 * math.pi:
        raise RangeError("needs a concave opening")
    sharp = 2.0 * segment_safety_constant(omega)
    x = np.array([0.9 * rho, 1e-9 * rho])
    d = inflation * sharp * float(np.hypot(*x))
    ang = omega - 1e-6
    e = np.array([math.cos(ang), math.sin(ang)])
    xe = float(x @ e)
    disc = xe * xe - (float(x @ x) - d * d)
    if disc <= 0:
        raise RangeError("no intersection at this inflation")
    t = xe + math.sqrt(disc)
    y = t * e
    ts = np.linspace(0.0, 1.0, 2001)
    p = x[None, :] + ts[:, None] * (y - x)[None, :]
    th = np.mod(np.arctan2(p[:, 1], p[:, 0]), 2.0 * math.pi)
    rr = np.hypot(p[:, 0], p[:, 1])
    if not bool(np.any((th > omega) | (rr > rho * (1 + 1e-12)))):
        raise RangeError("constructed chord failed to exit the sector")
    return x, y


def weighted_l2_norms(coeffs: ModeCoefficients) -> tuple[float, float]:
    """(sum |a_j|^2, sum |a_j|^2/(omega_j - pi)) with |a_j|^2 = |c+|^2 + |c-|^2.

    The second sum is the weighted-space norm whose finiteness singles
    out admissible minus-coefficients when openings accumulate at pi.
    """
    g = 0.0
    gt = 0.0
    for cp, cm, w in zip(coeffs.c_plus, coeffs.c_minus, coeffs.omegas):
        a2 = abs(cp) ** 2 + abs(cm) ** 2
        g += a2
        gt += a2 / (w - math.pi)
    return g, gt


@dataclass(frozen=True)
class CrossTermResult:
    value: float
    bound: float
    norm_a: float
    norm_b: float
    abs_error_estimate: float


def two_corner_cross_term(omega_a: float, omega_b: float, rho: float,
                          separation: float, s: float,
                          tol: float = 1e-8) -> CrossTermResult:
    """Gagliardo cross term of two + modes at corners separation apart.

    Supports are disjoint once separation > 3*rho, every pair distance
    exceeds rho, and the term is bounded by
    4 (||f_a||^2 + ||f_b||^2) * pi * rho^(-2s) / s; the computed value
    and that bound are both returned.
    """
    if separation <= 3.0 * rho:
        raise DomainInputError("corners must be more than 3*rho apart")
    if not 0.0 < s < 1.0:
        raise DomainInputError("s must lie in (0, 1)")
    mode_a = singular_mode(+1, omega_a, rho)
    mode_b = singular_mode(+1, omega_b, rho)
    dom_a = SectorDomain(rho=rho, omega=omega_a)
    dom_b = SectorDomain(rho=rho, omega=omega_b, origin=(separation, 0.0),
                         rotation=math.pi / 7.0)
    cross = gagliardo_cross(mode_a.field, dom_a, mode_b.field, dom_b, s)

    def sq(mode):
        def integrand(r, t):
            v = mode.field(r, t)
            return np.abs(v * v.conj()).sum(axis=0).real
        return integrate_sector(integrand, SectorDomain(rho=rho, omega=mode.omega),
                                tol=tol)

    qa = sq(mode_a)
    qb = sq(mode_b)
    norm_a = float(np.real(qa.value))
    norm_b = float(np.real(qb.value))
    bound = 4.0 * (norm_a + norm_b) * math.pi * rho ** (-2.0 * s) / s
    return CrossTermResult(value=float(np.real(cross.value)), bound=bound,
                           norm_a=norm_a, norm_b=norm_b,
                           abs_error_estimate=cross.abs_error_estimate)
