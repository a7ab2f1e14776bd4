"""Special functions: the smooth radial cut-off and Bessel-J machinery.

The cut-off is the logistic profile

    phi(r) = 1                                  for r <= 1/2,
    phi(r) = sigmoid((r - 3/4) / ((r-1/2)(r-1)))  for 1/2 < r < 1,
    phi(r) = 0                                  for r >= 1.

On (1/2, 1) the denominator is negative, so the exponent runs from +inf
at 1/2+ to -inf at 1-; the limits 1 and 0 are exact after clamping the
exponent to +-700 (exp would overflow beyond that).

Bessel evaluation is delegated to scipy's jv; first zeros are located by
a sign-change scan started at x = nu (J_nu > 0 on (0, j_{nu,1}) and
j_{nu,1} > nu) and polished with brentq.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np
from scipy.optimize import brentq
from scipy.special import jv

from .errors import NonConvergenceError, RangeError

_EXP_CLAMP = 700.0

# supported evaluation box; beyond it accuracy/bracketing is unverified
NU_MAX = 150.0
X_MAX = 500.0


def cutoff_eval(r):
    """Value and derivative of the cut-off profile at r >= 0.

    Accepts scalars or arrays; returns (phi, dphi) of matching shape.
    Total function: the r -> 1/2+ and r -> 1- overflow of the exponent is
    clamped so the limit values 1 and 0 are returned exactly.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise RangeError("cutoff_eval requires r >= 0")
    scalar = r.ndim == 0
    r = np.atleast_1d(r)

    phi = np.where(r <= 0.5, 1.0, 0.0)
    dphi = np.zeros_like(r)
    mid = (r > 0.5) & (r < 1.0)
    if np.any(mid):
        rm = r[mid]
        den = (rm - 0.5) * (rm - 1.0)           # negative on (1/2, 1)
        g = (rm - 0.75) / den
        gc = np.clip(g, -_EXP_CLAMP, _EXP_CLAMP)
        sig = 1.0 / (1.0 + np.exp(-gc))
        # beyond the clamp the true value is past the last representable
        # double on that side; return the limit exactly
        sig = np.where(g <= -_EXP_CLAMP, 0.0, np.where(g >= _EXP_CLAMP, 1.0, sig))
        # d/dr of (r-3/4)/((r-1/2)(r-1)); numerator -(r^2 - 3r/2 + 5/8) < 0
        gprime = -(rm * rm - 1.5 * rm + 0.625) / (den * den)
        phi[mid] = sig
        dphi[mid] = sig * (1.0 - sig) * gprime
    if scalar:
        return float(phi[0]), float(dphi[0])
    return phi, dphi


def cutoff(r):
    """Cut-off value only."""
    return cutoff_eval(r)[0]


def cutoff_derivative(r):
    """Cut-off derivative only (zero outside (1/2, 1))."""
    return cutoff_eval(r)[1]


class Cutoff:
    """The fixed smooth cut-off, evaluable as phi(r) and phi'(r)."""

    def __call__(self, r):
        return cutoff(r)

    def derivative(self, r):
        return cutoff_derivative(r)


def bessel_j(nu: float, x) -> float | np.ndarray:
    """J_nu(x) for nu in [0, NU_MAX], x in [0, X_MAX]."""
    if not 0.0 <= nu <= NU_MAX:
        raise RangeError(f"bessel_j: nu={nu} outside [0, {NU_MAX}]")
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0) or np.any(xa > X_MAX):
        raise RangeError(f"bessel_j: x outside [0, {X_MAX}]")
    out = jv(nu, xa)
    return float(out) if np.ndim(x) == 0 else out


def bessel_first_zero(nu: float, residual_tol: float = 1e-10) -> float:
    """Smallest x > 0 with J_nu(x) = 0.

    Sign-change scan from x = nu upward (step ~ nu^(1/3) for large order),
    then brentq; the |J_nu| residual at the root is verified against
    ``residual_tol``.
    """
    if not 0.0 <= nu <= NU_MAX:
        raise RangeError(f"bessel_first_zero: nu={nu} outside [0, {NU_MAX}]")
    x = max(nu, 1e-6) + 1e-3
    step = max(0.1, 0.2 * nu ** (1.0 / 3.0))
    f0 = jv(nu, x)
    # j_{nu,1} <= nu + 1.86 nu^(1/3) + O(nu^(-1/3)); 30 is a generous cap
    limit = nu + max(30.0, 4.0 * nu ** (1.0 / 3.0) + 5.0)
    while x < limit:
        x1 = x + step
        f1 = jv(nu, x1)
        if f0 > 0.0 and f1 <= 0.0:
            root = brentq(lambda t: jv(nu, t), x, x1, xtol=1e-13, rtol=8.9e-16)
            resid = abs(jv(nu, root))
            if resid > residual_tol:
                raise NonConvergenceError(
                    f"bessel_first_zero(nu={nu}): residual {resid:.3e} > {residual_tol:.1e}"
                )
            return float(root)
        x, f0 = x1, f1
    raise NonConvergenceError(
        f"bessel_first_zero(nu={nu}): no sign change found on ({nu}, {limit}]"
    )


@dataclass(frozen=True)
class BesselZeroTable:
    """Immutable nu -> j_{nu,1} cache, built eagerly for a given nu grid."""

    zeros: Mapping[float, float] = field(default_factory=dict)

    @classmethod
    def build(cls, nus: Iterable[float]) -> "BesselZeroTable":
        table = {float(nu): bessel_first_zero(float(nu)) for nu in nus}
        return cls(zeros=table)

    def __getitem__(self, nu: float) -> float:
        return self.zeros[float(nu)]

    def __len__(self) -> int:
        return len(self.zeros)
