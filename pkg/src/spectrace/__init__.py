"""Root tracking for half-line Schrodinger operators with complex potentials.

The characteristic function of -d^2/dx^2 + V on [0, inf) with a Dirichlet
condition at 0 is entire in the spectral parameter lambda (kappa = -lambda^2);
its zeros are eigenvalues (Re lambda > 0), antibound states and resonances
(Re lambda < 0), or spectral singularities (Re lambda = 0). This package
evaluates that function for piecewise-constant and sampled potentials, finds
all of its zeros in a rectangle by argument-principle counting, continues
them along paths in a coupling parameter, and detects the collisions where
trajectories branch.
"""

from .continuation import (
    CouplingModel,
    EventLog,
    PathSpec,
    ScanEvent,
    ScanSample,
    SpectralClass,
    TraceConfig,
    TraceEvent,
    TracePoint,
    Trajectory,
    branch_collision,
    classify,
    kappa_rate,
    scan_real_well,
    trace,
)
from .counting import (
    BoundsReport,
    WellCounts,
    antibound_count_exact,
    bounds_report,
    eigenvalue_count_exact,
    frank_constant,
    tan_theta_root,
    well_counts,
)
from .errors import (
    BoundaryZero,
    ConfigError,
    DegenerateModel,
    DerivativeVanished,
    FreeOperatorOnPath,
    GridMismatch,
    NoConvergence,
    NotARoot,
    NotSimple,
    SeedNotRoot,
    SpectraceError,
    StepCollapse,
    Unresolved,
    ZeroLambda,
)
from .rootfind import FoundRoot, Region, RootConfig, newton_refine, seed_roots, winding_count
from .shooting import SampledPotential, integrate_phi, miss_sampled, norm_integral_sampled
from .stepwell import StepPotential, char_fn, miss_piecewise, norm_integral_step, transfer_step

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # stepwell
    "StepPotential", "char_fn", "miss_piecewise", "norm_integral_step", "transfer_step",
    # shooting
    "SampledPotential", "integrate_phi", "miss_sampled", "norm_integral_sampled",
    # rootfind
    "Region", "RootConfig", "FoundRoot", "newton_refine", "winding_count", "seed_roots",
    # continuation
    "SpectralClass", "classify", "CouplingModel", "PathSpec", "TraceConfig",
    "TracePoint", "TraceEvent", "Trajectory", "trace", "branch_collision",
    "kappa_rate", "scan_real_well", "ScanSample", "ScanEvent", "EventLog",
    # counting
    "WellCounts", "BoundsReport", "well_counts", "bounds_report",
    "eigenvalue_count_exact", "antibound_count_exact", "tan_theta_root",
    "frank_constant",
    # errors
    "SpectraceError", "NoConvergence", "DerivativeVanished", "BoundaryZero",
    "Unresolved", "ZeroLambda", "GridMismatch", "SeedNotRoot",
    "FreeOperatorOnPath", "StepCollapse", "NotARoot", "NotSimple",
    "DegenerateModel", "ConfigError",
]
