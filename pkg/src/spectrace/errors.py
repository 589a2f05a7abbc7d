"""Exception taxonomy shared across the package.

Every numerical failure mode has its own class so callers (and the CLI exit
code logic) can branch on kind, not on message text.
"""

from __future__ import annotations

__all__ = [
    "SpectraceError",
    "NoConvergence",
    "DerivativeVanished",
    "BoundaryZero",
    "Unresolved",
    "ZeroLambda",
    "GridMismatch",
    "SeedNotRoot",
    "FreeOperatorOnPath",
    "StepCollapse",
    "NotARoot",
    "NotSimple",
    "DegenerateModel",
    "ConfigError",
]


class SpectraceError(Exception):
    """Base class for all numerical and configuration failures."""


class NoConvergence(SpectraceError):
    """Newton iteration exhausted max_iter without meeting the tolerance."""


class DerivativeVanished(SpectraceError):
    """|f'| underflowed at an iterate; caller must switch to branch handling."""


class BoundaryZero(SpectraceError):
    """A zero of f lies on (or numerically on) a counting rectangle boundary."""


class Unresolved(SpectraceError):
    """Adaptive boundary sampling exceeded its point budget."""


class ZeroLambda(SpectraceError):
    """Norm-integral tail is undefined at lambda = 0 (division by 2*lambda)."""


class GridMismatch(SpectraceError):
    """Integrator step count is not a multiple of the sample grid intervals."""


class SeedNotRoot(SpectraceError):
    """Trace seed did not polish onto a root of the miss function."""


class FreeOperatorOnPath(SpectraceError):
    """The coupling path passes through the point where the potential vanishes."""


class StepCollapse(SpectraceError):
    """Continuation step halving hit its limit without making progress.

    Carries the last good state so callers can report or dump a partial
    trajectory.
    """

    def __init__(self, message: str, *, t: float, z: complex, lam: complex,
                 trajectory=None):
        super().__init__(message)
        self.t = t
        self.z = z
        self.lam = lam
        self.trajectory = trajectory


class NotARoot(SpectraceError):
    """kappa_rate was asked for a point that is not a root of m."""


class NotSimple(SpectraceError):
    """kappa_rate was asked for a non-simple root (|m'| below threshold)."""


class DegenerateModel(SpectraceError):
    """Local quadratic model at a collision is degenerate (higher-order contact)."""


class ConfigError(SpectraceError):
    """CLI/job configuration is invalid; `field` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
