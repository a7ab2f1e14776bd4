"""Invariant suites behind the `verify` CLI subcommand.

Each check returns (name, passed, measured, tolerance, note); suites
bundle them. These are the fast desk checks; the expensive Gagliardo
scans live behind `sobolev-scan`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonConvergenceError
from .extensions import (
    ExtensionParameter,
    ModeCoefficients,
    g_parametrization,
    green_pairing,
    solve_g,
    tu_membership_residual,
)
from .modes import boundary_condition_residual, singular_mode, spin_orbit_mode
from .quadrature import SectorDomain, integrate_1d, integrate_sector
from .sobolev import segment_inclusion_check, weighted_l2_norms
from .specfun import bessel_first_zero, bessel_j, cutoff_eval
from .spectrum import E_HI, E_LO, sector_lower_bound, transverse_gap


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    tolerance: float
    note: str = ""


def _check(name, measured, tolerance, note="") -> CheckResult:
    return CheckResult(name=name, passed=bool(measured <= tolerance),
                       measured=float(measured), tolerance=float(tolerance), note=note)


def suite_bessel() -> list[CheckResult]:
    out = []
    j01 = bessel_first_zero(0.0)
    out.append(_check("first-zero-square-anchor", abs(j01 ** 2 - 5.78), 0.01,
                      note=f"j01^2 = {j01 ** 2:.6f}"))
    worst = 0.0
    for k in range(4):
        jk = bessel_first_zero(float(k))
        worst = min(worst, jk ** 2 - j01 ** 2 - k ** 2)
    out.append(_check("zero-square-inequality-k<=3", -worst, 0.0,
                      note="j_k1^2 - j_01^2 - k^2 >= 0"))
    grid = np.arange(0.0, 2.01, 0.1)
    zeros = [bessel_first_zero(float(nu)) for nu in grid]
    mono = min(b - a for a, b in zip(zeros[:-1], zeros[1:]))
    out.append(_check("zero-monotonic-in-order", -mono, 0.0))
    half = bessel_j(0.5, 1.0) - math.sqrt(2.0 / math.pi) * math.sin(1.0)
    out.append(_check("half-integer-closed-form", abs(half), 1e-12))
    out.append(_check("self-consistency-J0-at-zero", abs(bessel_j(0.0, j01)), 1e-10))
    return out


def suite_identities() -> list[CheckResult]:
    out = []
    # gap equation across the mass grid
    worst_res = 0.0
    ok_interval = True
    for m in (0.0, 0.5, 1.0, 2.0, 5.0):
        g = transverse_gap(m)
        worst_res = max(worst_res, g.residual)
        ok_interval &= E_LO <= g.E1 < E_HI
    out.append(_check("gap-equation-residual", worst_res, 1e-10))
    out.append(_check("gap-interval", 0.0 if ok_interval else 1.0, 0.0))
    out.append(_check("gap-massless-value",
                      abs(transverse_gap(0.0).E1 - math.pi ** 2 / 16.0), 1e-10))

    # Green pairings at one concave corner
    omega = 1.5 * math.pi
    pl = ModeCoefficients.build([0], [1.0], [0.0], [omega])
    mi = ModeCoefficients.build([0], [0.0], [1.0], [omega])
    pm = green_pairing(pl, mi)
    out.append(_check("pairing-plus-minus", abs(pm.lhs - pm.rhs), 1e-8,
                      note=f"lhs = {pm.lhs:.3e}, rhs = {pm.rhs:.3e}"))
    dg = green_pairing(pl, pl)
    out.append(_check("pairing-diagonal", abs(dg.lhs), 1e-8))

    # mode boundary conditions
    for sign in (+1, -1):
        mode = singular_mode(sign, omega, 1.0)
        res = boundary_condition_residual(mode.field, SectorDomain(1.0, omega))
        out.append(_check(f"mode-boundary-condition-{'p' if sign > 0 else 'm'}",
                          res, 1e-10))

    # spin-orbit eigensystem
    out.extend(spin_orbit_checks(omega))

    # extension calculus on a 2-corner window
    rng = np.random.default_rng(7)
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    U, _ = np.linalg.qr(z)
    param = ExtensionParameter.from_matrix(U, omegas=[1.3 * math.pi, 1.6 * math.pi])
    worst_mem = 0.0
    worst_rhs = 0.0
    worst_rec = 0.0
    for _ in range(8):
        g1 = rng.normal(size=2) + 1j * rng.normal(size=2)
        g2 = rng.normal(size=2) + 1j * rng.normal(size=2)
        b1 = g_parametrization(param, g1)
        b2 = g_parametrization(param, g2)
        c1 = ModeCoefficients.build([0, 1], b1.c_plus, b1.c_minus,
                                    [1.3 * math.pi, 1.6 * math.pi])
        c2 = ModeCoefficients.build([0, 1], b2.c_plus, b2.c_minus,
                                    [1.3 * math.pi, 1.6 * math.pi])
        worst_mem = max(worst_mem,
                        tu_membership_residual(c1, param),
                        tu_membership_residual(c2, param))
        rhs = sum(1.0j * cp * np.conj(cm2) + 1.0j * cm * np.conj(cp2)
                  for cp, cm, cp2, cm2 in zip(c1.c_plus, c1.c_minus,
                                              c2.c_plus, c2.c_minus))
        worst_rhs = max(worst_rhs, abs(rhs))
        worst_rec = max(worst_rec, float(np.linalg.norm(
            solve_g(b1.gamma_plus, b1.gamma_minus) - g1)))
    out.append(_check("tu-membership-of-parametrized-data", worst_mem, 1e-12))
    out.append(_check("green-rhs-vanishes-in-domain", worst_rhs, 1e-12))
    out.append(_check("g-reconstruction", worst_rec, 1e-10))
    return out


def spin_orbit_checks(omega: float) -> list[CheckResult]:
    out = []
    modes = [spin_orbit_mode(k, sgn, omega) for k in range(3) for sgn in (+1, -1)]
    gram = np.zeros((6, 6), dtype=complex)
    for i, mi in enumerate(modes):
        for j, mj in enumerate(modes):
            def integrand(t, mi=mi, mj=mj):
                a = mi.profile(t)
                b = mj.profile(t)
                return (a * b.conj()).sum(axis=0)
            gram[i, j] = integrate_1d(integrand, 0.0, omega, tol=1e-12).value
    out.append(_check("spin-orbit-gram-6x6",
                      float(np.abs(gram - np.eye(6)).max()), 1e-10))

    theta = np.linspace(0.0, omega, 100)
    worst_eig = 0.0
    worst_flip = 0.0
    for m in modes:
        prof = m.profile(theta)
        dprof = m.profile_deriv(theta)
        k_img = 0.5 * prof - 1.0j * np.stack([dprof[0], -dprof[1]])
        worst_eig = max(worst_eig, float(np.abs(k_img - m.eigenvalue() * prof).max()))
        er = np.stack([np.exp(-1.0j * theta) * prof[1],
                       np.exp(1.0j * theta) * prof[0]])
        partner = spin_orbit_mode(m.k, -m.sign, omega)
        target = float(m.sign) * partner.profile(theta)
        worst_flip = max(worst_flip, float(np.abs(-1.0j * er - target).max()))
    out.append(_check("spin-orbit-eigen-relation", worst_eig, 1e-10))
    out.append(_check("spin-orbit-radial-flip", worst_flip, 1e-10))

    taus = sorted({m.eigenvalue() for m in [spin_orbit_mode(k, s, omega)
                                            for k in range(6) for s in (1, -1)]})
    gap = min(b - a for a, b in zip(taus[:-1], taus[1:]))
    out.append(_check("spin-orbit-eigenvalue-gap",
                      math.pi / omega - gap, 1e-12,
                      note=f"min gap {gap:.6f} vs pi/omega {math.pi / omega:.6f}"))
    return out


def suite_bounds() -> list[CheckResult]:
    out = []
    worst = math.inf
    omegas = np.linspace(0.05, 2.0 * math.pi - 0.05, 50)
    for rho in (0.5, 1.0, 2.0):
        for w in omegas:
            worst = min(worst, sector_lower_bound(float(w), rho) - 2.0 / rho)
    out.append(_check("sector-lower-bound-2-over-rho", -worst, 0.0,
                      note="min over 50 omegas x 3 rhos of bound - 2/rho"))

    bad = 0
    for w in (1.25 * math.pi, 1.5 * math.pi, 1.75 * math.pi):
        bad += segment_inclusion_check(w, 10000, rng_seed=11)
    out.append(_check("segment-inclusion-violations", float(bad), 0.0))

    coeffs = ModeCoefficients.build([0, 1], [0.5, 1.0], [0.25j, 0.0],
                                    [math.pi + 0.25, math.pi + 0.5])
    g, gt = weighted_l2_norms(coeffs)
    out.append(_check("weighted-norm-comparison",
                      g / max(w - math.pi for w in coeffs.omegas) - gt, 0.0))

    # mode norm identity: sector quadrature vs radial reduction
    omega = 1.5 * math.pi
    for sign in (+1, -1):
        mode = singular_mode(sign, omega, 1.0)

        def density(r, t, mode=mode):
            v = mode.field(r, t)
            return np.abs(v * v.conj()).sum(axis=0).real
        q2 = integrate_sector(density, SectorDomain(1.0, omega), tol=1e-10)

        def rad(r, mode=mode):
            phi, _ = cutoff_eval(r)
            return np.power(r, 2.0 * mode.sign * mode.lam) * phi * phi
        q1 = integrate_1d(rad, 0.0, 1.0, tol=1e-10)
        out.append(_check(f"mode-norm-identity-{'p' if sign > 0 else 'm'}",
                          abs(np.real(q2.value) - np.real(q1.value)), 1e-8))
    return out


SUITES = {
    "bessel": suite_bessel,
    "identities": suite_identities,
    "bounds": suite_bounds,
}


def run_suite(name: str) -> list[CheckResult]:
    if name == "all":
        results = []
        for key in ("bessel", "identities", "bounds"):
            results.extend(SUITES[key]())
        return results
    if name not in SUITES:
        raise NonConvergenceError(f"unknown suite {name!r}")
    return SUITES[name]()
