"""Root continuation along coupling paths, collisions, and the depth scan."""

import math

import pytest

from spectrace import (
    CouplingModel,
    PathSpec,
    Region,
    RootConfig,
    SampledPotential,
    SpectralClass,
    StepPotential,
    TraceConfig,
    branch_collision,
    classify,
    kappa_rate,
    newton_refine,
    scan_real_well,
    seed_roots,
    tan_theta_root,
    trace,
)
from spectrace.errors import (
    DegenerateModel,
    FreeOperatorOnPath,
    NotARoot,
    NotSimple,
    SeedNotRoot,
    StepCollapse,
)
from spectrace.stepwell import miss_piecewise

UNIT = StepPotential(((1.0, 1.0),))
ZERO = StepPotential(((1.0, 0.0),))
RCFG = RootConfig()

# first collision depth of the unit well and the double point it happens at
V_STAR = -(tan_theta_root(1) ** 2 + 1.0)
LAM_STAR = -1.0


@pytest.fixture(scope="module")
def unit_family():
    """V = z on [0, 1]."""
    return CouplingModel(ZERO, UNIT)


@pytest.fixture(scope="module")
def collision_trace(unit_family):
    """Antibound of the depth -22 well carried shallow-ward through the
    collision at V_STAR with a widened detection threshold."""
    seed = newton_refine(unit_family.analytic_fn(-22.0 + 0j), -1.86611866, RCFG)
    path = PathSpec((-22.0 + 0j, -0.5 + 0j), steps_per_edge=200)
    return trace(unit_family, path, seed,
                 TraceConfig(collision_threshold=0.02))


class TestClassify:
    def test_quadrants(self):
        assert classify(1.0) is SpectralClass.EIGENVALUE
        assert classify(1.0 + 5.0j) is SpectralClass.EIGENVALUE
        assert classify(-1.0) is SpectralClass.ANTIBOUND
        assert classify(-1.0 + 1.0j) is SpectralClass.RESONANCE
        assert classify(-1.0 - 1.0j) is SpectralClass.RESONANCE

    def test_band_edges(self):
        assert classify(0.0) is SpectralClass.SPECTRAL_SINGULARITY
        assert classify(5e-9) is SpectralClass.SPECTRAL_SINGULARITY
        assert classify(-5e-9 + 1.0j) is SpectralClass.SPECTRAL_SINGULARITY
        assert classify(2e-8) is SpectralClass.EIGENVALUE
        assert classify(-2e-8) is SpectralClass.ANTIBOUND
        assert classify(complex(-2e-8, 5e-9)) is SpectralClass.ANTIBOUND
        assert classify(complex(-2e-8, 2e-8)) is SpectralClass.RESONANCE
        assert classify(0.5, band=1.0) is SpectralClass.SPECTRAL_SINGULARITY

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            classify(complex(math.nan, 0.0))
        with pytest.raises(ValueError):
            classify(complex(math.inf, 0.0))


class TestCouplingModel:
    def test_kind_mismatch(self):
        with pytest.raises(ValueError):
            CouplingModel(ZERO, SampledPotential.from_step(UNIT, 11))

    def test_sampled_grid_mismatch(self):
        with pytest.raises(ValueError):
            CouplingModel(SampledPotential.from_step(ZERO, 101),
                          SampledPotential.from_step(UNIT, 51))

    def test_bad_rk_steps(self):
        with pytest.raises(ValueError):
            CouplingModel(ZERO, UNIT, rk_steps=0)

    def test_potential_at_merges_breakpoints(self):
        v0 = StepPotential(((0.5, -2.0), (0.5, -1.0)))
        model = CouplingModel(v0, UNIT)
        pot = model.potential_at(2.0j)
        assert pot.segments == ((0.5, -2.0 + 2.0j), (0.5, -1.0 + 2.0j))

    def test_support_mismatch(self):
        model = CouplingModel(StepPotential(((2.0, -1.0),)), UNIT)
        with pytest.raises(ValueError):
            model.potential_at(0.0)

    def test_miss_matches_direct_evaluation(self, unit_family):
        z, lam = -3.0 + 0.7j, 1.2 - 0.4j
        m, mp = unit_family.miss(z, lam)
        md, mpd = miss_piecewise(unit_family.potential_at(z), lam)
        assert m == md and mp == mpd

    def test_dm_dz_matches_finite_difference(self, unit_family):
        z, lam = -5.0 + 0.3j, 0.8 + 0.6j
        h = 1e-6
        fd = (unit_family.miss(z + h, lam)[0]
              - unit_family.miss(z - h, lam)[0]) / (2 * h)
        exact = unit_family.dm_dz(z, lam)
        assert abs(exact - fd) < 1e-6 * (1.0 + abs(exact))

    def test_dm_dz_sampled(self):
        model = CouplingModel(SampledPotential.from_step(ZERO, 51),
                              SampledPotential.from_step(UNIT, 51),
                              rk_steps=200)
        z, lam = -4.0 + 0j, 1.1 + 0.2j
        h = 1e-6
        fd = (model.miss(z + h, lam)[0] - model.miss(z - h, lam)[0]) / (2 * h)
        exact = model.dm_dz(z, lam)
        assert abs(exact - fd) < 1e-6 * (1.0 + abs(exact))

    def test_rk_step_defaults(self):
        a = CouplingModel(SampledPotential.from_step(ZERO, 101),
                          SampledPotential.from_step(UNIT, 101))
        assert a.steps == 1000
        b = CouplingModel(SampledPotential.from_step(ZERO, 7),
                          SampledPotential.from_step(UNIT, 7))
        assert b.steps % 6 == 0 and b.steps >= 1000
        c = CouplingModel(SampledPotential.from_step(ZERO, 101),
                          SampledPotential.from_step(UNIT, 101), rk_steps=400)
        assert c.steps == 400


class TestPathSpec:
    def test_geometry(self):
        p = PathSpec((0j, 1j, 1 + 1j))
        assert p.n_edges == 2
        assert p.z_at(0.0) == 0j
        assert p.z_at(0.25) == 0.5j
        assert p.z_at(0.5) == 1j
        assert p.z_at(1.0) == 1 + 1j
        # t clamps to the path
        assert p.z_at(-0.3) == 0j
        assert p.z_at(1.7) == 1 + 1j

    def test_point_path(self):
        p = PathSpec((0.5 + 0.5j,))
        assert p.n_edges == 0
        assert p.z_at(0.7) == 0.5 + 0.5j

    def test_validation(self):
        with pytest.raises(ValueError):
            PathSpec(())
        with pytest.raises(ValueError):
            PathSpec((0j, complex(math.inf, 0)))
        with pytest.raises(ValueError):
            PathSpec((1j, 1j))
        with pytest.raises(ValueError):
            PathSpec((0j, 1j), steps_per_edge=0)

    def test_json_round_trip(self):
        p = PathSpec((0j, 1j, 1.5 + 1j), steps_per_edge=77)
        q = PathSpec.from_json(p.to_json())
        assert q.vertices == p.vertices
        assert q.steps_per_edge == 77


class TestReferenceTraces:
    def test_shallow_rectangle_final(self, shallow_well_trace):
        fin = shallow_well_trace.final
        assert fin.t == 1.0
        assert abs(fin.kappa - complex(4.02995187, -9.35784001)) < 1e-6
        assert fin.cls is SpectralClass.RESONANCE

    def test_shallow_rectangle_single_class_change(self, shallow_well_trace):
        evs = shallow_well_trace.events
        assert [e.kind for e in evs] == ["ClassChange"]
        assert evs[0].detail["from"] == "Antibound"
        assert evs[0].detail["to"] == "Resonance"
        assert evs[0].t < 1e-4
        assert shallow_well_trace.points[0].cls is SpectralClass.ANTIBOUND

    def test_trajectory_invariants(self, shallow_well_trace):
        pts = shallow_well_trace.points
        assert pts[0].t == 0.0
        assert all(a.t < b.t for a, b in zip(pts, pts[1:]))
        for p in pts:
            assert p.kappa == -p.lam * p.lam
            assert p.cls is classify(p.lam)

    def test_points_stay_on_the_root_set(self, shallow_well_trace):
        model = CouplingModel(StepPotential(((1.0, -0.5),)), UNIT)
        for p in shallow_well_trace.points[::10]:
            m, _ = model.miss(p.z, p.lam)
            assert abs(m) < 1e-9

    def test_deep_rectangle(self, deep_well_trace):
        fin = deep_well_trace.final
        assert abs(fin.kappa - complex(17.39128151, 0.82067130)) < 1e-6
        assert deep_well_trace.events == []
        assert all(p.cls is SpectralClass.EIGENVALUE
                   for p in deep_well_trace.points)


class TestContinuumCrossing:
    def test_imaginary_coupling_chain(self):
        # the weakest antibound of the -22 well crosses the continuum under
        # imaginary coupling: first off the real axis, then into Re > 0
        model = CouplingModel(StepPotential(((1.0, -22.0),)), UNIT)
        seed = newton_refine(model.analytic_fn(0j), -0.10899442, RCFG)
        traj = trace(model, PathSpec((0j, 250j), steps_per_edge=200), seed,
                     TraceConfig())
        changes = [(e.detail["from"], e.detail["to"]) for e in traj.events
                   if e.kind == "ClassChange"]
        assert changes == [("Antibound", "Resonance"),
                           ("Resonance", "Eigenvalue")]
        assert traj.events[0].t < 1e-4
        assert abs(traj.events[1].t - 0.003734) < 1e-4
        assert traj.final.cls is SpectralClass.EIGENVALUE
        assert traj.final.t == 1.0

    def test_real_deepening_through_threshold(self, unit_family):
        # the antibound reaches lambda = 0 where the well depth passes
        # -(pi/2)^2 and re-emerges as the first eigenvalue
        seed = newton_refine(unit_family.analytic_fn(-0.5 + 0j),
                             -1.65056781, RCFG)
        path = PathSpec((-0.5 + 0j, -6.0 + 0j), steps_per_edge=200)
        traj = trace(unit_family, path, seed, TraceConfig())
        changes = [e for e in traj.events if e.kind == "ClassChange"]
        assert [(e.detail["from"], e.detail["to"]) for e in changes] \
            == [("Antibound", "Eigenvalue")]
        z_cross = path.z_at(changes[0].t)
        assert abs(z_cross - (-(math.pi / 2) ** 2)) < 1e-3
        assert traj.final.cls is SpectralClass.EIGENVALUE


class TestCollision:
    def test_collision_event(self, collision_trace):
        evs = [e for e in collision_trace.events if e.kind == "Collision"]
        assert len(evs) == 1
        d = evs[0].detail
        assert abs(d["re_z"] - V_STAR) < 1e-9
        assert abs(d["im_z"]) < 1e-9
        assert abs(complex(d["re_lambda"], d["im_lambda"]) - LAM_STAR) < 1e-9
        assert len(d["branches"]) == 2

    def test_branch_change_logged(self, collision_trace):
        evs = collision_trace.events
        kinds = [e.kind for e in evs]
        assert kinds == ["Collision", "ClassChange"]
        assert evs[1].detail["at_collision"] is True
        assert evs[1].detail["from"] == "Antibound"
        assert evs[1].detail["to"] == "Resonance"
        assert evs[0].t < evs[1].t
        assert collision_trace.final.cls is SpectralClass.RESONANCE

    def test_deepening_glides_across(self, unit_family, collision_trace):
        # carried back down, the resonance re-lands on the real axis; the
        # default threshold steps across the double point without stalling
        seed = collision_trace.final.lam
        path = PathSpec((-0.5 + 0j, -22.0 + 0j), steps_per_edge=200)
        traj = trace(unit_family, path, seed, TraceConfig())
        assert [e.kind for e in traj.events] == ["ClassChange"]
        assert traj.events[0].detail["from"] == "Resonance"
        assert traj.events[0].detail["to"] == "Antibound"
        assert abs(traj.final.lam - (-0.10899442)) < 1e-6

    def test_off_path_collision_stalls(self, unit_family):
        # an imaginary offset moves the double point off the path; the local
        # polish walks to it, fails the on-path check, and the trace stops
        # honestly at the stall
        seed = newton_refine(unit_family.analytic_fn(-0.5 + 1e-3j),
                             complex(-2.65547206, -4.09932796), RCFG)
        path = PathSpec((-0.5 + 1e-3j, V_STAR + 1e-3j, -22.0 + 1e-3j),
                        steps_per_edge=200)
        with pytest.raises(StepCollapse) as info:
            trace(unit_family, path, seed, TraceConfig(collision_threshold=0.02))
        exc = info.value
        assert 0.4 < exc.t < 0.6
        assert abs(exc.lam - LAM_STAR) < 0.2
        assert len(exc.trajectory.points) > 100


class TestTraceErrors:
    def test_seed_not_root(self, unit_family):
        with pytest.raises(SeedNotRoot):
            trace(unit_family, PathSpec((-22.0 + 0j, -21.5 + 0j)),
                  1e3 + 0j, TraceConfig())

    def test_free_operator_point_on_path(self):
        model = CouplingModel(StepPotential(((1.0, -0.5),)), UNIT)
        with pytest.raises(FreeOperatorOnPath):
            trace(model, PathSpec((0j, 1.0 + 0j)), -1.65056781, TraceConfig())

    def test_free_operator_everywhere(self):
        model = CouplingModel(ZERO, StepPotential(((1.0, 0.0),)))
        with pytest.raises(FreeOperatorOnPath):
            trace(model, PathSpec((1j, 2j)), 1.0, TraceConfig())

    def test_divergence_stops_the_trace(self):
        model = CouplingModel(StepPotential(((1.0, -10.0),)), UNIT)
        seed = newton_refine(model.analytic_fn(0j), 2.15, RCFG)
        traj = trace(model, PathSpec((0j, -90.0 + 0j), steps_per_edge=200),
                     seed, TraceConfig(divergence_radius=3.0))
        assert traj.events[-1].kind == "Diverged"
        assert traj.final.t < 1.0
        assert abs(traj.final.lam) <= 3.0


class TestBranchCollision:
    def test_deeper_step_splits_on_the_real_axis(self, unit_family):
        b1, b2 = branch_collision(unit_family, V_STAR, LAM_STAR, -1e-4)
        assert abs(b1.imag) < 1e-8 and abs(b2.imag) < 1e-8
        assert b1.real > LAM_STAR > b2.real or b2.real > LAM_STAR > b1.real
        assert 1e-3 < abs(b1 - b2) < 1e-1

    def test_shallower_step_splits_into_conjugates(self, unit_family):
        b1, b2 = branch_collision(unit_family, V_STAR, LAM_STAR, 1e-4)
        assert abs(b1 - b2.conjugate()) < 1e-10
        assert abs(b1.real - LAM_STAR) < 1e-9
        assert abs(b1.imag) > 1e-3

    def test_branches_match_actual_roots(self, unit_family):
        dz = -1e-4
        branches = branch_collision(unit_family, V_STAR, LAM_STAR, dz)
        fn = unit_family.analytic_fn(V_STAR + dz)
        found = seed_roots(fn, Region(complex(-1.02, -0.02),
                                      complex(-0.98, 0.02)), RCFG)
        assert len(found) == 2
        for b in branches:
            assert min(abs(b - r.lam) for r in found) < 5e-4

    def test_not_a_root(self, unit_family):
        with pytest.raises(NotARoot):
            branch_collision(unit_family, V_STAR, -1.3, 1e-4)

    def test_degenerate_without_coupling(self):
        model = CouplingModel(StepPotential(((1.0, -22.0),)), ZERO)
        lam = newton_refine(model.analytic_fn(0j), -1.86611866, RCFG)
        with pytest.raises(DegenerateModel):
            branch_collision(model, 0.0, lam, 1e-4)


class TestKappaRate:
    def test_matches_finite_difference(self, unit_family):
        lam = newton_refine(unit_family.analytic_fn(-22.0 + 0j),
                            -1.86611866, RCFG)
        rate = kappa_rate(unit_family, -22.0, lam)
        h = 1e-5
        lam_p = newton_refine(unit_family.analytic_fn(-22.0 + h), lam, RCFG)
        lam_m = newton_refine(unit_family.analytic_fn(-22.0 - h), lam, RCFG)
        fd = (-lam_p * lam_p + lam_m * lam_m) / (2 * h)
        assert abs(rate - fd) < 1e-6 * (1.0 + abs(rate))

    def test_nonnegative_perturbation_moves_kappa_up(self):
        model = CouplingModel(StepPotential(((1.0, -10.0),)), UNIT)
        lam = newton_refine(model.analytic_fn(0j), 2.15, RCFG)
        rate = kappa_rate(model, 0.0, lam)
        assert abs(rate.imag) < 1e-10
        assert rate.real > 0.0

    def test_zero_perturbation_zero_rate(self):
        model = CouplingModel(StepPotential(((1.0, -22.0),)), ZERO)
        lam = newton_refine(model.analytic_fn(0j), -1.86611866, RCFG)
        assert kappa_rate(model, 0.0, lam) == 0.0

    def test_not_a_root(self, unit_family):
        with pytest.raises(NotARoot):
            kappa_rate(unit_family, -22.0, 1.0)

    def test_not_simple_at_the_collision(self, unit_family):
        with pytest.raises(NotSimple):
            kappa_rate(unit_family, V_STAR, LAM_STAR)


class TestScan:
    def test_samples(self, depth_scan):
        assert len(depth_scan.samples) == 130
        assert depth_scan.samples[0].v == -0.5
        assert depth_scan.samples[-1].v == -65.0
        for s in depth_scan.samples:
            assert len(s.tracks) == len(s.roots)
            assert len(set(s.tracks)) == len(s.tracks)
            assert s.roots
            for r in s.roots:
                assert r.residual < 1e-9 or not r.converged

    def test_collision_events(self, depth_scan):
        cols = sorted((e for e in depth_scan.events if e.kind == "Collision"),
                      key=lambda e: -e.v)
        assert len(cols) == 2
        want = [-(tan_theta_root(1) ** 2 + 1.0), -(tan_theta_root(2) ** 2 + 1.0)]
        for ev, v_want in zip(cols, want):
            assert abs(ev.v - v_want) < 1e-6
            assert abs(ev.detail["re_lambda"] + 1.0) < 1e-5
            assert abs(ev.detail["im_lambda"]) < 1e-5
            assert abs(ev.detail["re_kappa"] + 1.0) < 1e-5

    def test_zero_crossing_events(self, depth_scan):
        xs = sorted((e for e in depth_scan.events if e.kind == "ZeroCrossing"),
                    key=lambda e: -e.v)
        want = [-((2 * n + 1) * math.pi / 2) ** 2 for n in range(3)]
        assert len(xs) == 3
        for ev, v_want in zip(xs, want):
            assert abs(ev.v - v_want) < 1e-5
            assert abs(ev.detail["re_lambda"]) < 5e-3
            assert abs(ev.detail["re_kappa"]) < 1e-5

    def test_quiet_range_has_no_events(self):
        log = scan_real_well(-3.0, -5.0, 5, Region(complex(-4, -4),
                                                   complex(4, 4)))
        assert log.events == []
        assert len(log.samples) == 5

    def test_errors(self):
        region = Region(complex(-4, -4), complex(4, 4))
        with pytest.raises(FreeOperatorOnPath):
            scan_real_well(-1.0, 1.0, 5, region)
        with pytest.raises(ValueError):
            scan_real_well(-1.0, -1.0, 5, region)
        with pytest.raises(ValueError):
            scan_real_well(-1.0, -2.0, 1, region)


class TestSymmetries:
    def test_conjugation_equivariance(self):
        model = CouplingModel(StepPotential(((1.0, -0.5),)), UNIT)
        path = PathSpec((0j, 1j, 1.5 + 1j, 1.5 + 0j))
        conj = PathSpec(tuple(v.conjugate() for v in path.vertices))
        a = trace(model, path, -1.65056781, TraceConfig())
        b = trace(model, conj, -1.65056781, TraceConfig())
        assert abs(b.final.lam - a.final.lam.conjugate()) < 1e-12

    def test_path_reversal_returns_home(self, deep_well_model, deep_well_trace):
        back = trace(deep_well_model, PathSpec((20 + 5j, 5j, 0j)),
                     deep_well_trace.final.lam, TraceConfig())
        assert abs(back.final.lam - deep_well_trace.points[0].lam) < 1e-9

    def test_point_path_single_point(self, deep_well_model):
        seed = newton_refine(deep_well_model.analytic_fn(0j), 2.15, RCFG)
        traj = trace(deep_well_model, PathSpec((0j,)), seed, TraceConfig())
        assert len(traj.points) == 1
        assert traj.points[0].cls is SpectralClass.EIGENVALUE
        assert traj.events == []

    def test_sampled_family_matches_step_family(self):
        step = CouplingModel(StepPotential(((1.0, -0.5),)), UNIT)
        sampled = CouplingModel(
            SampledPotential.from_step(StepPotential(((1.0, -0.5),)), 101),
            SampledPotential.from_step(UNIT, 101), rk_steps=400)
        seed = newton_refine(step.analytic_fn(0j), -1.65056781, RCFG)
        path = PathSpec((0j, 1j), steps_per_edge=10)
        a = trace(step, path, seed, TraceConfig())
        b = trace(sampled, path, seed, TraceConfig())
        assert abs(a.final.lam - b.final.lam) < 1e-9
