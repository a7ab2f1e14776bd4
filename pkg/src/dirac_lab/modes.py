"""Explicit spinor fields on sectors.

Conventions, all in the sector's local frame {0 < theta < omega}:

* Pauli matrices sigma_1, sigma_2, sigma_3; Dirac expression
  D = -i(sigma_1 d_1 + sigma_2 d_2) + m sigma_3.
* Angular profiles of the two singular corner modes (lam = pi/(2*omega)):

      P+(t) = (2w)^(-1/2) (e^{ i(lam-1/2)t}, e^{-i(lam-1/2)t})
      P-(t) = (2w)^(-1/2) (e^{-i(lam+1/2)t}, e^{ i(lam+1/2)t})

  With these phases the pairings <D phi+, phi-> = <D phi-, phi+> = i/2
  and the Green identity against (Gamma+, Gamma-) hold exactly; the
  closed-form Dirac images are

      D phi_pm = -(i/rho) phi'(r/rho) r^{pm lam - 1/2} P_mp(t) + m s3 phi_pm.

* Spin-orbit eigenfunctions f_k^pm (tau_k = (2k+1)pi/(2w)) keep the -i
  prefactor on f_k^-, which the flip relation -i(sigma.e_r) f^pm = pm f^mp
  requires. P- = i f_0^-.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainInputError
from .quadrature import SectorDomain
from .specfun import cutoff_eval

SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def infinite_mass_bc_matrix(normal: Sequence[float]) -> np.ndarray:
    """The matrix -i sigma_3 (sigma . n) for a unit outward normal n."""
    n1, n2 = float(normal[0]), float(normal[1])
    return np.array([[0.0, -n2 - 1.0j * n1],
                     [-n2 + 1.0j * n1, 0.0]], dtype=complex)


def _as_flat(r, theta):
    r = np.atleast_1d(np.asarray(r, dtype=float))
    t = np.atleast_1d(np.asarray(theta, dtype=float))
    r, t = np.broadcast_arrays(r, t)
    return r, t


@dataclass(frozen=True)
class SpinorField:
    """C^2-valued field in local polar coordinates with its Dirac image.

    ``components(r, theta)`` must accept flat arrays and return a (2, n)
    complex array. The Dirac image uses the closed form when supplied and
    falls back to 5-point central differences in Cartesian coordinates
    (step 1e-4 * rho) otherwise.
    """

    components: Callable
    support: SectorDomain
    mass: float = 0.0
    dirac_closed: Callable | None = None
    grad_norm_sq_closed: Callable | None = None

    def __call__(self, r, theta) -> np.ndarray:
        r, t = _as_flat(r, theta)
        return np.asarray(self.components(r, t))

    def at(self, r: float, theta: float) -> np.ndarray:
        return self(r, theta)[:, 0]

    def dirac(self, r, theta) -> np.ndarray:
        r, t = _as_flat(r, theta)
        if self.dirac_closed is not None:
            return np.asarray(self.dirac_closed(r, t))
        return self._dirac_fd(r, t)

    def _dirac_fd(self, r, t) -> np.ndarray:
        h = 1e-4 * self.support.rho
        x = r * np.cos(t)
        y = r * np.sin(t)

        def ev(xx, yy):
            rr = np.hypot(xx, yy)
            tt = np.mod(np.arctan2(yy, xx), 2.0 * math.pi)
            return np.asarray(self.components(rr, tt))

        def deriv(axis):
            if axis == 0:
                f2m, f1m = ev(x - 2 * h, y), ev(x - h, y)
                f1p, f2p = ev(x + h, y), ev(x + 2 * h, y)
            else:
                f2m, f1m = ev(x, y - 2 * h), ev(x, y - h)
                f1p, f2p = ev(x, y + h), ev(x, y + 2 * h)
            return (f2m - 8.0 * f1m + 8.0 * f1p - f2p) / (12.0 * h)

        d1 = deriv(0)
        d2 = deriv(1)
        psi = ev(x, y)
        out = np.empty_like(psi)
        out[0] = -1.0j * d1[1] - d2[1] + self.mass * psi[0]
        out[1] = -1.0j * d1[0] + d2[0] - self.mass * psi[1]
        return out

    def grad_norm_sq(self, r, theta):
        if self.grad_norm_sq_closed is None:
            raise NotImplementedError("no closed-form gradient for this field")
        r, t = _as_flat(r, theta)
        return np.asarray(self.grad_norm_sq_closed(r, t))


def _angular_plus(omega: float) -> Callable:
    a = math.pi / (2.0 * omega) - 0.5
    c = 1.0 / math.sqrt(2.0 * omega)
    def prof(t):
        e = np.exp(1.0j * a * np.asarray(t))
        return np.stack([c * e, c * np.conj(e)])
    return prof


def _angular_minus(omega: float) -> Callable:
    b = math.pi / (2.0 * omega) + 0.5
    c = 1.0 / math.sqrt(2.0 * omega)
    def prof(t):
        e = np.exp(-1.0j * b * np.asarray(t))
        return np.stack([c * e, c * np.conj(e)])
    return prof


def _normalize_sign(sign) -> int:
    if sign in (1, +1, "+", "plus"):
        return +1
    if sign in (-1, "-", "minus"):
        return -1
    raise DomainInputError(f"sign must be +/-, got {sign!r}")


@dataclass(frozen=True)
class SingularMode:
    sign: int
    omega: float
    rho: float
    lam: float
    mass: float
    field: SpinorField

    def __call__(self, r, theta):
        return self.field(r, theta)


def singular_mode(sign, omega: float, rho: float, mass: float = 0.0) -> SingularMode:
    """The corner defect mode r^{pm lam - 1/2} phi(r/rho) P_pm(theta).

    Only concave openings admit these modes; omega outside (pi, 2*pi)
    raises.
    """
    s = _normalize_sign(sign)
    if not math.pi < omega < 2.0 * math.pi:
        raise DomainInputError("singular modes exist only for omega in (pi, 2*pi)")
    if rho <= 0:
        raise DomainInputError("rho must be positive")
    lam = math.pi / (2.0 * omega)
    expo = s * lam - 0.5
    own = _angular_plus(omega) if s > 0 else _angular_minus(omega)
    other = _angular_minus(omega) if s > 0 else _angular_plus(omega)
    dom = SectorDomain(rho=rho, omega=omega)

    def comps(r, t):
        phi, _ = cutoff_eval(np.asarray(r) / rho)
        rad = np.power(np.asarray(r), expo) * phi
        return rad[None, :] * own(t)

    def dirac(r, t):
        r = np.asarray(r)
        phi, dphi = cutoff_eval(r / rho)
        rad = np.power(r, expo) * dphi / rho
        out = (-1.0j) * rad[None, :] * other(t)
        if mass != 0.0:
            psi = np.power(r, expo) * phi
            prof = own(t)
            out = out + mass * np.stack([psi * prof[0], -psi * prof[1]])
        return out

    field = SpinorField(components=comps, support=dom, mass=mass, dirac_closed=dirac)
    return SingularMode(sign=s, omega=omega, rho=rho, lam=lam, mass=mass, field=field)


@dataclass(frozen=True)
class SpinOrbitMode:
    k: int
    sign: int
    omega: float
    tau: float

    def profile(self, theta) -> np.ndarray:
        t = np.atleast_1d(np.asarray(theta, dtype=float))
        c = 1.0 / math.sqrt(2.0 * self.omega)
        if self.sign > 0:
            e = np.exp(1.0j * (self.tau - 0.5) * t)
            return np.stack([c * e, c * np.conj(e)])
        e = np.exp(-1.0j * (self.tau + 0.5) * t)
        return np.stack([-1.0j * c * e, -1.0j * c * np.conj(e)])

    def profile_deriv(self, theta) -> np.ndarray:
        t = np.atleast_1d(np.asarray(theta, dtype=float))
        c = 1.0 / math.sqrt(2.0 * self.omega)
        if self.sign > 0:
            a = self.tau - 0.5
            e = np.exp(1.0j * a * t)
            return np.stack([1.0j * a * c * e, -1.0j * a * c * np.conj(e)])
        b = self.tau + 0.5
        e = np.exp(-1.0j * b * t)
        return np.stack([(-1.0j) * (-1.0j * b) * c * e,
                         (-1.0j) * (1.0j * b) * c * np.conj(e)])

    def eigenvalue(self) -> float:
        return self.sign * self.tau


def spin_orbit_mode(k: int, sign, omega: float) -> SpinOrbitMode:
    """Eigenfunction f_k^pm of the spin-orbit operator (1/2) - i s3 d_theta."""
    s = _normalize_sign(sign)
    if k < 0:
        raise DomainInputError("k must be a nonnegative integer")
    if not 0.0 < omega <= 2.0 * math.pi:
        raise DomainInputError("omega must lie in (0, 2*pi]")
    tau = (2 * k + 1) * math.pi / (2.0 * omega)
    return SpinOrbitMode(k=k, sign=s, omega=omega, tau=tau)


def _fd_derivative(u: Callable, r: np.ndarray) -> np.ndarray:
    h = 1e-6 * np.maximum(r, 1e-3)
    return (np.asarray(u(r - 2 * h)) - 8.0 * np.asarray(u(r - h))
            + 8.0 * np.asarray(u(r + h)) - np.asarray(u(r + 2 * h))) / (12.0 * h)


def dirac_apply_polar(u_plus: Callable, u_minus: Callable, k: int, omega: float,
                      du_plus: Callable | None = None,
                      du_minus: Callable | None = None):
    """Radial images ((-d_r - tau/r) u-, (d_r - tau/r) u+) for mode index k.

    Derivatives use the supplied closed forms when given, else 5-point
    central differences. Evaluation at r = 0 raises.
    """
    tau = (2 * k + 1) * math.pi / (2.0 * omega)

    def checked(r):
        r = np.atleast_1d(np.asarray(r, dtype=float))
        if np.any(r <= 0):
            raise DomainInputError("radial Dirac expressions are singular at r = 0")
        return r

    def g_plus(r):
        r = checked(r)
        du = du_minus(r) if du_minus is not None else _fd_derivative(u_minus, r)
        return -np.asarray(du) - tau / r * np.asarray(u_minus(r))

    def g_minus(r):
        r = checked(r)
        du = du_plus(r) if du_plus is not None else _fd_derivative(u_plus, r)
        return np.asarray(du) - tau / r * np.asarray(u_plus(r))

    return g_plus, g_minus


def boundary_condition_residual(field: SpinorField, dom: SectorDomain,
                                n_samples: int = 200) -> float:
    """max over sampled edge points of |-i s3 (sigma.n) psi - psi| / max(1, |psi|).

    The two straight edges of the sector are sampled at midpoints of a
    uniform radial grid; outward normals in the local frame are (0,-1) at
    theta = 0 and (-sin w, cos w) at theta = w.
    """
    r = dom.rho * (np.arange(n_samples) + 0.5) / n_samples
    worst = 0.0
    edges = [(0.0, (0.0, -1.0)),
             (dom.omega, (-math.sin(dom.omega), math.cos(dom.omega)))]
    for theta_e, normal in edges:
        psi = field(r, np.full_like(r, theta_e))
        bc = infinite_mass_bc_matrix(normal)
        bpsi = bc @ psi
        num = np.sqrt(np.abs((bpsi - psi) * (bpsi - psi).conj()).sum(axis=0).real)
        den = np.maximum(1.0, np.sqrt(np.abs(psi * psi.conj()).sum(axis=0).real))
        worst = max(worst, float((num / den).max()))
    return worst


def dirac_l2_pairing(field_a: SpinorField, field_b: SpinorField,
                     dom: SectorDomain, tol: float = 1e-10):
    """<D field_a, field_b> over the sector (math convention: conjugate
    on the second argument)."""
    from .quadrature import integrate_sector

    def integrand(r, t):
        return (field_a.dirac(r, t) * field_b(r, t).conj()).sum(axis=0)

    return integrate_sector(integrand, dom, tol=tol)


def radial_bump(center: float, halfwidth: float):
    """Smooth compactly supported profile u(r) = phi(|r - c|/h) with its
    derivative; support is [c - h, c + h]."""
    if halfwidth <= 0:
        raise DomainInputError("halfwidth must be positive")

    def u(r):
        return cutoff_eval(np.abs(np.asarray(r) - center) / halfwidth)[0]

    def du(r):
        r = np.asarray(r)
        _, d = cutoff_eval(np.abs(r - center) / halfwidth)
        return d * np.sign(r - center) / halfwidth

    return u, du


@dataclass(frozen=True)
class SuperpositionTerm:
    k: int
    sign: int
    amplitude: complex
    u: Callable
    du: Callable


def spin_orbit_superposition(omega: float, rho: float,
                             terms: Sequence[SuperpositionTerm],
                             mass: float = 0.0) -> SpinorField:
    """Field (1/sqrt r) sum_i a_i u_i(r) f_{k_i}^{s_i}(theta).

    With radial profiles supported away from both r = 0 and r = rho this
    lies in the operator domain: the spin-orbit profiles encode the edge
    boundary conditions exactly and the support kills arc and vertex
    terms. Dirac image and |grad|^2 are closed-form.
    """
    dom = SectorDomain(rho=rho, omega=omega)
    modes = [spin_orbit_mode(t.k, t.sign, omega) for t in terms]
    taus = [m.tau for m in modes]

    def comps(r, t):
        rs = np.sqrt(np.asarray(r, dtype=float))
        acc = np.zeros((2, rs.size), dtype=complex)
        for term, m in zip(terms, modes):
            acc += term.amplitude * (np.asarray(term.u(r)) / rs)[None, :] * m.profile(t)
        return acc

    def dirac(r, t):
        r = np.asarray(r, dtype=float)
        rs = np.sqrt(r)
        acc = np.zeros((2, r.size), dtype=complex)
        for term, m, tau in zip(terms, modes, taus):
            u = np.asarray(term.u(r))
            du = np.asarray(term.du(r))
            if term.sign > 0:
                radial = du - tau / r * u
                partner = spin_orbit_mode(term.k, -1, omega)
            else:
                radial = -du - tau / r * u
                partner = spin_orbit_mode(term.k, +1, omega)
            acc += term.amplitude * (radial / rs)[None, :] * partner.profile(t)
        if mass != 0.0:
            psi = comps(r, t)
            acc = acc + mass * np.stack([psi[0], -psi[1]])
        return acc

    def grad_sq(r, t):
        r = np.asarray(r, dtype=float)
        rs = np.sqrt(r)
        d_r = np.zeros((2, r.size), dtype=complex)
        d_t = np.zeros((2, r.size), dtype=complex)
        for term, m in zip(terms, modes):
            u = np.asarray(term.u(r))
            du = np.asarray(term.du(r))
            d_r += term.amplitude * ((du - 0.5 * u / r) / rs)[None, :] * m.profile(t)
            d_t += term.amplitude * (u / rs)[None, :] * m.profile_deriv(t)
        g = np.abs(d_r * d_r.conj()).sum(axis=0).real
        g += np.abs(d_t * d_t.conj()).sum(axis=0).real / (r * r)
        return g

    return SpinorField(components=comps, support=dom, mass=mass,
                       dirac_closed=dirac, grad_norm_sq_closed=grad_sq)
