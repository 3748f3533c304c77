"""Blow-up thresholds for the periodic b-family of shallow-water equations.

The package computes the local-in-space blow-up threshold of the family,
both through closed-form analytic bounds and through numerical solution of
the underlying weighted variational problem, and validates the pointwise
blow-up criterion and lifespan bound with a pseudo-spectral simulator.
"""

from ._backend import backend_name
from .errors import (
    BetaOutOfRange,
    BFamilyError,
    BOutOfRange,
    DegreeSingular,
    DivisionNearZero,
    GridTooSmall,
    LinearSolveFailure,
    NoConvergence,
    NotCoercive,
)
from .estimates import (
    ALPHA,
    DeltaB,
    EstimateResult,
    delta_b,
    estimate1,
    estimate2,
    estimate3,
    thresholds,
)
from .kernel import (
    BETA_MAX,
    SpectralMultiplier,
    WeightProfile,
    convolve_dp,
    convolve_p,
    eval_dp,
    eval_p,
    eval_w,
)
from .legendre import LegendreDegree, degree_upsilon, legendre_p, legendre_ratio
from .sim import (
    BlowupReport,
    ConservedQuantities,
    CriterionPoint,
    SimConfig,
    TorusField,
    Trajectory,
    check_criterion,
    conserved_quantities,
    integrate,
    lifespan_bound,
    rhs,
    step,
)
from .threshold import (
    STATUS_FINITE,
    STATUS_INFINITE,
    STATUS_UNDETERMINED,
    BetaBResult,
    SweepRow,
    compute_beta_b,
    f_discriminant,
    sweep,
)
from .variational import (
    ConvolutionBoundReport,
    ELSolution,
    JResult,
    check_convolution_bound,
    compute_j,
    compute_j_bvp,
    compute_j_direct,
    solve_euler_lagrange,
)

__version__ = "0.1.0"

__all__ = [
    "ALPHA",
    "BETA_MAX",
    "BFamilyError",
    "BOutOfRange",
    "BetaBResult",
    "BetaOutOfRange",
    "BlowupReport",
    "ConservedQuantities",
    "ConvolutionBoundReport",
    "CriterionPoint",
    "DegreeSingular",
    "DeltaB",
    "DivisionNearZero",
    "ELSolution",
    "EstimateResult",
    "GridTooSmall",
    "JResult",
    "LegendreDegree",
    "LinearSolveFailure",
    "NoConvergence",
    "NotCoercive",
    "STATUS_FINITE",
    "STATUS_INFINITE",
    "STATUS_UNDETERMINED",
    "SimConfig",
    "SpectralMultiplier",
    "SweepRow",
    "TorusField",
    "Trajectory",
    "WeightProfile",
    "backend_name",
    "check_convolution_bound",
    "check_criterion",
    "compute_beta_b",
    "compute_j",
    "compute_j_bvp",
    "compute_j_direct",
    "conserved_quantities",
    "convolve_dp",
    "convolve_p",
    "degree_upsilon",
    "delta_b",
    "estimate1",
    "estimate2",
    "estimate3",
    "eval_dp",
    "eval_p",
    "eval_w",
    "f_discriminant",
    "integrate",
    "legendre_p",
    "legendre_ratio",
    "lifespan_bound",
    "rhs",
    "solve_euler_lagrange",
    "step",
    "sweep",
    "thresholds",
]
