"""Boundary calculus of the self-adjoint extensions at finite truncation.

The defect data of a function at the concave corners is a pair of
complex coefficient families (c+_j, c-_j). The boundary maps are

    Gamma+ = { i c+_j },      Gamma- = { c-_j },

an extension is selected by an n x n unitary U (one complex slot per
window corner) through the condition i(1-U) Gamma+ = (1+U) Gamma-, and
every admissible boundary datum comes from a unique vector g via
Gamma+ = (1+U) g, Gamma- = i(1-U) g.

The abstract Green identity has the finite shadow

    <D*psi_a, psi_b> - <psi_a, D*psi_b>
        = sum_j ( i c+_aj conj(c-_bj) + i c-_aj conj(c+_bj) ),

whose left side this module assembles independently by per-corner sector
quadrature of the closed-form mode fields.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import DEFAULT_CONFIG
from .errors import DomainInputError, NonConvergenceError
from .modes import singular_mode
from .quadrature import SectorDomain, integrate_sector


@dataclass(frozen=True)
class ModeCoefficients:
    """Truncated per-corner defect coefficients {c+_j, c-_j}."""

    window: tuple[int, ...]
    c_plus: tuple[complex, ...]
    c_minus: tuple[complex, ...]
    omegas: tuple[float, ...]

    def __post_init__(self):
        n = len(self.window)
        if not (len(self.c_plus) == len(self.c_minus) == len(self.omegas) == n):
            raise DomainInputError("ModeCoefficients: field lengths disagree")
        for w in self.omegas:
            if not math.pi < w < 2.0 * math.pi:
                raise DomainInputError(
                    f"ModeCoefficients: omega={w} outside the concave range (pi, 2*pi)")

    @classmethod
    def build(cls, window: Sequence[int], c_plus: Sequence[complex],
              c_minus: Sequence[complex], omegas: Sequence[float]) -> "ModeCoefficients":
        return cls(window=tuple(int(j) for j in window),
                   c_plus=tuple(complex(c) for c in c_plus),
                   c_minus=tuple(complex(c) for c in c_minus),
                   omegas=tuple(float(w) for w in omegas))

    def size(self) -> int:
        return len(self.window)


@dataclass(frozen=True)
class ExtensionParameter:
    """A unitary over the truncation window; non-unitary input is rejected."""

    matrix: np.ndarray
    unitarity_defect: float
    gtilde_stability_note: str

    @classmethod
    def from_matrix(cls, U, *, omegas: Sequence[float] | None = None,
                    config=DEFAULT_CONFIG) -> "ExtensionParameter":
        U = np.asarray(U, dtype=complex)
        if U.ndim != 2 or U.shape[0] != U.shape[1]:
            raise DomainInputError("U must be a square matrix")
        defect = float(np.linalg.norm(U.conj().T @ U - np.eye(U.shape[0]), ord=2))
        if defect > config.unitary_tol:
            raise DomainInputError(
                f"U fails unitarity: ||U*U - 1|| = {defect:.3e} > {config.unitary_tol:.1e}")
        if omegas:
            gap = min(w - math.pi for w in omegas)
            note = (f"window min(omega - pi) = {gap:.6g} > 0: weighted and plain norms "
                    "are equivalent at this truncation, U-stability of the weighted "
                    "space is vacuous")
        else:
            note = "no window supplied"
        U = U.copy()
        U.setflags(write=False)
        return cls(matrix=U, unitarity_defect=defect, gtilde_stability_note=note)

    def size(self) -> int:
        return self.matrix.shape[0]


def gamma_maps(coeffs: ModeCoefficients) -> tuple[np.ndarray, np.ndarray]:
    """(Gamma+, Gamma-) = (i*c_plus, c_minus) componentwise."""
    cp = np.asarray(coeffs.c_plus, dtype=complex)
    cm = np.asarray(coeffs.c_minus, dtype=complex)
    return 1.0j * cp, cm


@dataclass(frozen=True)
class GreenPairing:
    lhs: complex            # quadrature over the mode fields
    rhs: complex            # coefficient formula
    abs_error_estimate: float


def green_pairing(a: ModeCoefficients, b: ModeCoefficients, rho: float = 1.0,
                  tol: float = 1e-10, mass: float = 0.0) -> GreenPairing:
    """Both sides of the Green identity for two coefficient families.

    The left side is assembled corner by corner as
    <D psi_a, psi_b> - <psi_a, D psi_b> by sector quadrature with the
    closed-form Dirac images; coefficients for corners missing from one
    window count as zero (disjoint supports contribute nothing).
    """
    per_corner: dict[int, list] = {}
    for j, cp, cm, w in zip(a.window, a.c_plus, a.c_minus, a.omegas):
        per_corner[j] = [cp, cm, 0.0 + 0j, 0.0 + 0j, w]
    for j, cp, cm, w in zip(b.window, b.c_plus, b.c_minus, b.omegas):
        if j in per_corner:
            if abs(per_corner[j][4] - w) > 1e-12:
                raise DomainInputError(f"corner {j}: omegas disagree between families")
            per_corner[j][2] = cp
            per_corner[j][3] = cm
        else:
            per_corner[j] = [0.0 + 0j, 0.0 + 0j, cp, cm, w]

    lhs = 0.0 + 0.0j
    err = 0.0
    for j in sorted(per_corner):
        cpa, cma, cpb, cmb, w = per_corner[j]
        if (cpa == 0 and cma == 0) or (cpb == 0 and cmb == 0):
            continue
        plus = singular_mode(+1, w, rho, mass=mass)
        minus = singular_mode(-1, w, rho, mass=mass)
        dom = SectorDomain(rho=rho, omega=w)

        def psi_a(r, t):
            return cpa * plus.field(r, t) + cma * minus.field(r, t)

        def psi_b(r, t):
            return cpb * plus.field(r, t) + cmb * minus.field(r, t)

        def d_psi_a(r, t):
            return cpa * plus.field.dirac(r, t) + cma * minus.field.dirac(r, t)

        def d_psi_b(r, t):
            return cpb * plus.field.dirac(r, t) + cmb * minus.field.dirac(r, t)

        def first(r, t):
            return (d_psi_a(r, t) * psi_b(r, t).conj()).sum(axis=0)

        def second(r, t):
            return (psi_a(r, t) * d_psi_b(r, t).conj()).sum(axis=0)

        q1 = integrate_sector(first, dom, tol=tol)
        q2 = integrate_sector(second, dom, tol=tol)
        if not (q1.converged and q2.converged):
            raise NonConvergenceError(f"green_pairing: quadrature stalled at corner {j}")
        lhs += q1.value - q2.value
        err += q1.abs_error_estimate + q2.abs_error_estimate

    rhs = 0.0 + 0.0j
    for j in sorted(per_corner):
        cpa, cma, cpb, cmb, _ = per_corner[j]
        rhs += 1.0j * cpa * np.conj(cmb) + 1.0j * cma * np.conj(cpb)
    return GreenPairing(lhs=complex(lhs), rhs=complex(rhs), abs_error_estimate=err)


def tu_membership_residual(coeffs: ModeCoefficients,
                           param: ExtensionParameter) -> float:
    """|| i(1-U) Gamma+ - (1+U) Gamma- ||_2; zero means membership in D(T_U)."""
    if coeffs.size() != param.size():
        raise DomainInputError("window sizes of coefficients and U disagree")
    gp, gm = gamma_maps(coeffs)
    U = param.matrix
    eye = np.eye(param.size())
    res = 1.0j * (eye - U) @ gp - (eye + U) @ gm
    return float(np.linalg.norm(res))


@dataclass(frozen=True)
class BoundaryData:
    gamma_plus: np.ndarray
    gamma_minus: np.ndarray
    c_plus: np.ndarray
    c_minus: np.ndarray


def g_parametrization(param: ExtensionParameter, g: Sequence[complex]) -> BoundaryData:
    """Boundary data ((1+U)g, i(1-U)g) and the coefficients it encodes.

    The output always satisfies the T_U membership condition; the inverse
    is g = (Gamma+ - i Gamma-)/2.
    """
    g = np.asarray(g, dtype=complex)
    if g.shape != (param.size(),):
        raise DomainInputError("g has the wrong length for this U")
    U = param.matrix
    eye = np.eye(param.size())
    gp = (eye + U) @ g
    gm = 1.0j * (eye - U) @ g
    return BoundaryData(gamma_plus=gp, gamma_minus=gm,
                        c_plus=-1.0j * gp, c_minus=gm)


def solve_g(gamma_plus: Sequence[complex], gamma_minus: Sequence[complex]) -> np.ndarray:
    """Recover g from admissible boundary data: g = (Gamma+ - i Gamma-)/2."""
    gp = np.asarray(gamma_plus, dtype=complex)
    gm = np.asarray(gamma_minus, dtype=complex)
    return 0.5 * (gp - 1.0j * gm)


def coefficients_from_boundary(data: BoundaryData, window: Sequence[int],
                               omegas: Sequence[float]) -> ModeCoefficients:
    return ModeCoefficients.build(window, data.c_plus, data.c_minus, omegas)
