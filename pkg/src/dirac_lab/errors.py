"""Exception types shared across the package.

The CLI maps these onto exit codes: input errors -> 1, invariant
violations -> 2, numerical non-convergence -> 3.
"""


class DiracLabError(Exception):
    pass


class DomainInputError(DiracLabError, ValueError):
    """Malformed or out-of-contract input (bad domain file, too few vertices, ...)."""


class RangeError(DiracLabError, ValueError):
    """Argument outside the supported parameter box."""


class DegenerateCornerError(DiracLabError, ValueError):
    """Consecutive edges numerically collinear (omega too close to pi)."""


class InvariantViolationError(DiracLabError, RuntimeError):
    """A mathematical invariant that must hold was violated numerically."""


class NonConvergenceError(DiracLabError, RuntimeError):
    """An iterative numerical procedure failed to reach its tolerance."""
