"""Shared fixtures: the reference traces and the depth scan are expensive
enough to build once per session."""

import pytest

from spectrace import (
    CouplingModel,
    PathSpec,
    Region,
    RootConfig,
    StepPotential,
    TraceConfig,
    newton_refine,
    scan_real_well,
    trace,
)

UNIT_INDICATOR = StepPotential(((1.0, 1.0),))


@pytest.fixture(scope="session")
def shallow_well_trace():
    """Antibound of the depth -0.5 well carried along -0.5 -> -0.5+i -> 1+i -> 1."""
    model = CouplingModel(StepPotential(((1.0, -0.5),)), UNIT_INDICATOR)
    path = PathSpec((0j, 1j, 1.5 + 1j, 1.5 + 0j))
    return trace(model, path, -1.65056781, TraceConfig())


@pytest.fixture(scope="session")
def deep_well_model():
    return CouplingModel(StepPotential(((1.0, -10.0),)), UNIT_INDICATOR)


@pytest.fixture(scope="session")
def deep_well_trace(deep_well_model):
    """Eigenvalue of the depth -10 well under 0 -> 5i -> 20+5i coupling."""
    seed = newton_refine(deep_well_model.analytic_fn(0j), 2.15, RootConfig())
    return trace(deep_well_model, PathSpec((0j, 5j, 20 + 5j)), seed, TraceConfig())


@pytest.fixture(scope="session")
def depth_scan():
    """Unit-well depth sweep from -0.5 to -65 used by several criteria."""
    region = Region(complex(-6, -6), complex(6, 6))
    return scan_real_well(-0.5, -65.0, 130, region, TraceConfig())
