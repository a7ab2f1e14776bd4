"""Spectral quantities.

* the transverse gap E1(m): unique root of m sin(2 sqrt E) + sqrt E cos(2 sqrt E)
  in [pi^2/16, pi^2/4), setting the strip spectrum edge sqrt(m^2 + E1);
* the transverse eigenmodes on (-1, 1) with u2(+-1) = +-i u1(+-1);
* Rayleigh quotients of the truncated plane-wave Weyl fields, both in
  closed form and recomputed from scratch by 2D quadrature with a
  finite-difference Dirac image;
* radial ground energies (j_{|tau-1/2|,1}/rho)^2 and the sector lower
  bound min_k sqrt(E_{+-tau_k}) >= 2/rho.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import (
    DomainInputError,
    InvariantViolationError,
    NonConvergenceError,
    RangeError,
)
from .quadrature import integrate_1d, integrate_2d
from .specfun import NU_MAX, bessel_first_zero, cutoff_eval

E_LO = math.pi ** 2 / 16.0
E_HI = math.pi ** 2 / 4.0


def gap_function(E: float, m: float) -> float:
    sq = math.sqrt(E)
    return m * math.sin(2.0 * sq) + sq * math.cos(2.0 * sq)


@dataclass(frozen=True)
class GapResult:
    m: float
    E1: float
    threshold: float     # sqrt(m^2 + E1)
    residual: float


def transverse_gap(m: float, residual_tol: float = 1e-10) -> GapResult:
    """Bracketed root of the gap equation on [pi^2/16, pi^2/4).

    The left endpoint is kept exact (g there equals m, and at m = 0 the
    root is the endpoint itself); the open right endpoint is nudged
    inward by 1e-12.
    """
    if m < 0:
        raise DomainInputError("mass must be nonnegative")
    lo, hi = E_LO, E_HI - 1e-12
    g_lo = gap_function(lo, m)
    g_hi = gap_function(hi, m)
    if g_lo == 0.0:
        e1 = lo
    else:
        if g_lo * g_hi > 0:
            raise NonConvergenceError(
                f"gap equation: no sign change on [{lo}, {hi}] for m={m}")
        e1 = float(brentq(gap_function, lo, hi, args=(m,), xtol=1e-14, rtol=8.9e-16))
    resid = abs(gap_function(e1, m))
    if resid > residual_tol:
        raise NonConvergenceError(f"gap residual {resid:.3e} > {residual_tol:.1e}")
    if not E_LO <= e1 < E_HI:
        raise InvariantViolationError(f"E1={e1} escaped [pi^2/16, pi^2/4)")
    return GapResult(m=m, E1=e1, threshold=math.sqrt(m * m + e1), residual=resid)


@dataclass(frozen=True)
class TransverseMode:
    """Eigenmode of -i s1 d_t + m s3 on (-1, 1) with eigenvalue sign * M."""

    m: float
    sign: int
    E1: float
    M: float
    norm_const: float

    def _fg(self, t):
        t = np.asarray(t, dtype=float)
        sq = math.sqrt(self.E1)
        s = np.sin((t + 1.0) * sq)
        c = np.cos((t + 1.0) * sq)
        f = (self.M + self.m) * s + sq * c
        g = (self.m - self.M) * s + sq * c
        return f, g

    def _fg_deriv(self, t):
        t = np.asarray(t, dtype=float)
        sq = math.sqrt(self.E1)
        s = np.sin((t + 1.0) * sq)
        c = np.cos((t + 1.0) * sq)
        fp = sq * ((self.M + self.m) * c - sq * s)
        gp = sq * ((self.m - self.M) * c - sq * s)
        return fp, gp

    def eval(self, t) -> np.ndarray:
        f, g = self._fg(t)
        C = self.norm_const
        if self.sign > 0:
            return np.stack([C * f + 0j, -1.0j * C * g])
        return np.stack([1.0j * C * g, C * f + 0j])

    def deriv(self, t) -> np.ndarray:
        fp, gp = self._fg_deriv(t)
        C = self.norm_const
        if self.sign > 0:
            return np.stack([C * fp + 0j, -1.0j * C * gp])
        return np.stack([1.0j * C * gp, C * fp + 0j])

    def dirac(self, t) -> np.ndarray:
        psi = self.eval(t)
        dpsi = self.deriv(t)
        out = np.empty_like(psi)
        out[0] = -1.0j * dpsi[1] + self.m * psi[0]
        out[1] = -1.0j * dpsi[0] - self.m * psi[1]
        return out


def transverse_eigenmode(m: float, sign, tol: float = 1e-12) -> TransverseMode:
    """Closed-form eigenmode, L2-normalized on (-1, 1) by quadrature."""
    if sign in (1, "+", "plus"):
        sgn = +1
    elif sign in (-1, "-", "minus"):
        sgn = -1
    else:
        raise DomainInputError(f"sign must be +/-, got {sign!r}")
    gap = transverse_gap(m)
    raw = TransverseMode(m=m, sign=sgn, E1=gap.E1, M=gap.threshold, norm_const=1.0)

    def density(t):
        f, g = raw._fg(t)
        return f * f + g * g

    q = integrate_1d(density, -1.0, 1.0, tol=tol)
    if not q.converged:
        raise NonConvergenceError("transverse mode normalization quadrature stalled")
    return TransverseMode(m=m, sign=sgn, E1=gap.E1, M=gap.threshold,
                          norm_const=1.0 / math.sqrt(q.value.real if isinstance(q.value, complex) else q.value))


@dataclass(frozen=True)
class WeylQuotient:
    kind: str
    mu: float
    n: float
    m: float
    analytic: float
    quadrature: float | None


def _phi_integrals(weighted: bool, tol: float = 1e-12) -> tuple[float, float]:
    def num(r):
        return cutoff_eval(r)[1] ** 2 * (r if weighted else 1.0)

    def den(r):
        return cutoff_eval(r)[0] ** 2 * (r if weighted else 1.0)

    qn = integrate_1d(num, 0.0, 1.0, tol=tol)
    qd = integrate_1d(den, 0.0, 1.0, tol=tol)
    if not (qn.converged and qd.converged):
        raise NonConvergenceError("cutoff integral quadrature stalled")
    return float(np.real(qn.value)), float(np.real(qd.value))


def _plane_field(mu: float, m: float, n: float):
    s = 1.0 if mu >= 0 else -1.0
    k = math.sqrt(mu * mu - m * m)
    amp = np.array([math.sqrt(abs(mu) + s * m),
                    1.0j * s * math.sqrt(abs(mu) - s * m)],
                   dtype=complex) / math.sqrt(4.0 * math.pi * abs(mu))

    def psi(x1, x2):
        chi, _ = cutoff_eval(np.hypot(x1, x2) / n)
        phase = np.exp(1.0j * k * np.asarray(x2))
        return amp[:, None] * (phase * chi)[None, :]

    return psi


def _fd_dirac(psi, x1, x2, m: float, h: float):
    def d(axis):
        if axis == 0:
            a, b, c, dd = psi(x1 - 2 * h, x2), psi(x1 - h, x2), psi(x1 + h, x2), psi(x1 + 2 * h, x2)
        else:
            a, b, c, dd = psi(x1, x2 - 2 * h), psi(x1, x2 - h), psi(x1, x2 + h), psi(x1, x2 + 2 * h)
        return (a - 8.0 * b + 8.0 * c - dd) / (12.0 * h)

    d1 = d(0)
    d2 = d(1)
    p = psi(x1, x2)
    out = np.empty_like(p)
    out[0] = -1.0j * d1[1] - d2[1] + m * p[0]
    out[1] = -1.0j * d1[0] + d2[0] - m * p[1]
    return out


def weyl_quotient(kind: str, mu: float, n: float, m: float = 0.0,
                  with_quadrature: bool = True) -> WeylQuotient:
    """Rayleigh quotient ||(D - mu) psi_n||^2 / ||psi_n||^2 of the Weyl field.

    plane: admissible for |mu| >= m; the quotient is
    (int r phi'^2)/(n^2 int r phi^2) and is recomputed from scratch by 2D
    polar quadrature of the truncated plane wave with a finite-difference
    Dirac image. strip: admissible for |mu| >= sqrt(m^2 + E1(m)); the
    cutoff is one-dimensional, giving (int phi'^2)/(n^2 int phi^2).
    """
    if n < 1:
        raise DomainInputError("n must be >= 1")
    if kind == "plane":
        if abs(mu) < m:
            raise DomainInputError(f"mu={mu} lies inside the spectral gap (-{m}, {m})")
        i_num, i_den = _phi_integrals(weighted=True)
        analytic = i_num / (n * n * i_den)
        quad = None
        if with_quadrature:
            psi = _plane_field(mu, m, n)
            k = math.sqrt(mu * mu - m * m)
            h = min(2e-2 / max(k, 1.0), 1e-3 * n)

            def num_int(r, t):
                x1 = r * np.cos(t)
                x2 = r * np.sin(t)
                img = _fd_dirac(psi, x1, x2, m, h) - mu * psi(x1, x2)
                return np.abs(img * img.conj()).sum(axis=0).real * r

            def den_int(r, t):
                x1 = r * np.cos(t)
                x2 = r * np.sin(t)
                p = psi(x1, x2)
                return np.abs(p * p.conj()).sum(axis=0).real * r

            tol = 1e-10 * n
            qn = integrate_2d(num_int, 0.0, n, 0.0, 2.0 * math.pi, tol=tol)
            qd = integrate_2d(den_int, 0.0, n, 0.0, 2.0 * math.pi, tol=tol * n)
            quad = float(np.real(qn.value)) / float(np.real(qd.value))
        return WeylQuotient(kind=kind, mu=mu, n=n, m=m, analytic=analytic, quadrature=quad)

    if kind == "strip":
        M = transverse_gap(m).threshold
        if abs(mu) < M:
            raise DomainInputError(
                f"mu={mu} lies inside the strip gap (-{M:.6g}, {M:.6g})")
        i_num, i_den = _phi_integrals(weighted=False)
        analytic = i_num / (n * n * i_den)
        quad = None
        if with_quadrature:
            s = 1.0 if mu >= 0 else -1.0
            k2 = math.sqrt(mu * mu - M * M)
            plus = transverse_eigenmode(m, +1)
            minus = transverse_eigenmode(m, -1)
            cp = math.sqrt(abs(mu) + s * M)
            cm = math.sqrt(abs(mu) - s * M)

            def psi(x1, x2):
                chi, _ = cutoff_eval(np.abs(np.asarray(x2) - n) / n)
                phase = np.exp(1.0j * k2 * np.asarray(x2)) * chi
                base = cp * plus.eval(x1) + 1.0j * s * cm * minus.eval(x1)
                return base * phase[None, :]

            h = min(2e-2 / max(k2 + math.sqrt(plus.E1), 1.0), 1e-3)

            def num_int(x1, x2):
                img = _fd_dirac(psi, x1, x2, m, h) - mu * psi(x1, x2)
                return np.abs(img * img.conj()).sum(axis=0).real

            def den_int(x1, x2):
                p = psi(x1, x2)
                return np.abs(p * p.conj()).sum(axis=0).real

            tol = 1e-10 * n
            qn = integrate_2d(num_int, -1.0, 1.0, 0.0, 2.0 * n, tol=tol)
            qd = integrate_2d(den_int, -1.0, 1.0, 0.0, 2.0 * n, tol=tol * n)
            quad = float(np.real(qn.value)) / float(np.real(qd.value))
        return WeylQuotient(kind=kind, mu=mu, n=n, m=m, analytic=analytic, quadrature=quad)

    raise DomainInputError(f"kind must be 'plane' or 'strip', got {kind!r}")


def radial_ground_energy(tau: float, rho: float) -> float:
    """(j_{|tau - 1/2|, 1} / rho)^2, the ground energy of the half-line
    operator -d_r^2 + (tau^2 - tau)/r^2 with Dirichlet ends on (0, rho)."""
    if rho <= 0:
        raise DomainInputError("rho must be positive")
    if abs(tau - 0.5) < 1e-12:
        raise DomainInputError("tau = 1/2 is excluded (no Dirichlet realization)")
    nu = abs(tau - 0.5)
    z = bessel_first_zero(nu)
    return (z / rho) ** 2


def sector_lower_bound(omega: float, rho: float, k_max: int = 5) -> float:
    """min over k <= k_max and both signs of sqrt(radial ground energy).

    Asserts the minimum is >= 2/rho; violation raises (it cannot occur:
    j_{nu,1} >= j_{0,1} > 2 for every order nu >= 0).
    """
    if not 0.0 < omega < 2.0 * math.pi:
        raise RangeError("omega must lie in (0, 2*pi)")
    if rho <= 0:
        raise DomainInputError("rho must be positive")
    if k_max < 5:
        raise DomainInputError("k_max must be at least 5")
    nus = []
    for k in range(k_max + 1):
        tau = (2 * k + 1) * math.pi / (2.0 * omega)
        nus.append(abs(tau - 0.5))
        nus.append(tau + 0.5)
    nu_min = min(nus)
    if nu_min > NU_MAX - 20:
        raise RangeError(
            f"opening angle {omega} pushes the minimal Bessel order beyond the "
            f"supported range (nu_min={nu_min:.1f})")
    # monotonicity of nu -> j_{nu,1}: orders above NU_MAX cannot attain the
    # min once some order <= NU_MAX - 20 is present
    zeros = [bessel_first_zero(nu) for nu in nus if nu <= NU_MAX]
    bound = min(zeros) / rho
    if bound < 2.0 / rho:
        raise InvariantViolationError(
            f"sector bound {bound:.6g} < 2/rho = {2.0 / rho:.6g}")
    return bound
