"""Desk-scale numerics for the 2D infinite-mass Dirac operator on
polygonal domains: corner geometry, singular corner modes, spin-orbit
eigensystems, spectral-gap equations, fractional Sobolev scans, and the
boundary calculus of self-adjoint extensions."""

from .config import DEFAULT_CONFIG, ToleranceConfig
from .errors import (
    DegenerateCornerError,
    DiracLabError,
    DomainInputError,
    InvariantViolationError,
    NonConvergenceError,
    RangeError,
)
from .extensions import (
    BoundaryData,
    ExtensionParameter,
    GreenPairing,
    ModeCoefficients,
    g_parametrization,
    gamma_maps,
    green_pairing,
    solve_g,
    tu_membership_residual,
)
from .geometry import (
    CornerReport,
    PolygonSpec,
    Violation,
    ball_inside,
    concave_corners,
    contains,
    corner_report,
    load_domain,
    sawtooth,
    segment_safety_constant,
    validate_polygon,
)
from .modes import (
    SingularMode,
    SpinOrbitMode,
    SpinorField,
    SuperpositionTerm,
    boundary_condition_residual,
    dirac_apply_polar,
    infinite_mass_bc_matrix,
    radial_bump,
    singular_mode,
    spin_orbit_mode,
    spin_orbit_superposition,
)
from .quadrature import (
    QuadratureResult,
    SectorDomain,
    SeminormResult,
    gagliardo_cross,
    gagliardo_seminorm,
    integrate_1d,
    integrate_2d,
    integrate_sector,
)
from .sobolev import (
    CrossTermResult,
    ScanRecord,
    edge_straddling_pair,
    regularity_scan,
    segment_inclusion_check,
    two_corner_cross_term,
    weighted_l2_norms,
)
from .specfun import (
    BesselZeroTable,
    Cutoff,
    bessel_first_zero,
    bessel_j,
    cutoff,
    cutoff_derivative,
    cutoff_eval,
)
from .spectrum import (
    GapResult,
    TransverseMode,
    WeylQuotient,
    gap_function,
    radial_ground_energy,
    sector_lower_bound,
    transverse_eigenmode,
    transverse_gap,
    weyl_quotient,
)

__version__ = "0.1.0"
