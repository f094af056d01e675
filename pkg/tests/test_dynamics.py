import math

import numpy as np
import pytest

from gskit import bautin, dynamics
from gskit.core import Params, State
from gskit.equilibria import equilibria, hopf_F
from gskit.errors import DomainError


def test_integrate_constant_at_equilibrium():
    a = Params(0.05, 0.02)
    eq = equilibria(a)
    p = State(float(eq.p_mp.u), float(eq.p_mp.v))
    traj = dynamics.integrate(p, a, 100.0)
    assert np.max(np.abs(traj.u - p.u)) < 1e-10
    assert np.max(np.abs(traj.v - p.v)) < 1e-10


def test_integrate_to_trivial_attractor():
    traj = dynamics.integrate(State(0.9, 0.1), Params(0.07, 0.02), 4000.0)
    assert traj.final.u == pytest.approx(1.0, abs=1e-9)
    assert traj.final.v == pytest.approx(0.0, abs=1e-12)


def test_integrate_rejects_negative_start():
    with pytest.raises(DomainError):
        dynamics.integrate(State(-0.5, 0.1), Params(0.05, 0.02), 1.0)


def test_settings_validation():
    with pytest.raises(DomainError):
        dynamics.IntegratorSettings(rel_tol=-1.0)
    with pytest.raises(DomainError):
        dynamics.IntegratorSettings(scheme="rk4")


def test_census_empty_outside_fold_region():
    assert dynamics.limit_cycle_census(Params(0.07, 0.02)) == []


def test_census_stable_cycle_below_hopf_supercritical():
    k = 0.02
    a = Params(k, float(hopf_F(k)) - 2e-5)
    cycles = dynamics.limit_cycle_census(a)
    assert len(cycles) == 1
    c = cycles[0]
    assert 0.0 < c.nontrivial_multiplier < 1.0
    assert c.stable
    assert c.period > 0


def test_census_unstable_cycle_above_hopf_subcritical():
    k = 0.05
    a = Params(k, float(hopf_F(k)) + 3e-4)
    cycles = dynamics.limit_cycle_census(a)
    assert len(cycles) == 1
    assert cycles[0].nontrivial_multiplier > 1.0
    assert not cycles[0].stable


def test_census_two_cycles_in_wedge():
    k = 0.034
    a = Params(k, float(hopf_F(k)) - 2e-6)
    cycles = dynamics.limit_cycle_census(a)
    assert len(cycles) == 2
    inner, outer = cycles
    assert inner.radius < outer.radius
    assert inner.stable and not outer.stable


def test_census_matches_polar_normal_form_counts():
    # map each probe point to the polar form (beta1, beta2) = (mu, L1/sqrt(L2))
    # and compare census size and stability ordering
    k = 0.034
    Fh = float(hopf_F(k))
    l2 = bautin.l2_kuz(Params(k, Fh))
    # probes sit inside each region of both the true system and the
    # truncated polar form (their fold curves differ at finite distance
    # from the organizing point)
    for dF, expected in ((+2e-5, 1), (-2e-6, 2), (-5e-4, 0)):
        a = Params(k, Fh + dF)
        census = dynamics.limit_cycle_census(a, n_scan=200)
        m = bautin.mu(a)
        l1 = bautin._l1_extended(a)
        polar = bautin.bautin_polar_census(m, l1 / math.sqrt(l2))
        assert len(census) == expected, (dF, census)
        assert len(polar) == expected, (dF, polar)
        if expected:
            assert [c.stable for c in census] == \
                [s == "stable" for _, s in polar]


def test_floquet_agrees_with_return_map_slope():
    k = 0.05
    a = Params(k, float(hopf_F(k)) + 3e-4)
    frame = dynamics.section_frame(a)
    cycles = dynamics.limit_cycle_census(a)
    c = cycles[0]
    r = c.radius
    dr = 1e-7 * max(1.0, r)
    tight = dynamics.IntegratorSettings(rel_tol=1e-12, abs_tol=1e-15)
    g1, _ = dynamics.return_map(a, r + dr, frame, tight)
    g0, _ = dynamics.return_map(a, r - dr, frame, tight)
    slope = (g1 - g0) / (2 * dr)
    assert slope == pytest.approx(c.nontrivial_multiplier, rel=1e-5)


def test_classify_region_signatures():
    assert dynamics.classify_region(Params(0.07, 0.02)).id == "outside"
    lab = dynamics.classify_region(Params(0.055, 0.055))
    assert lab.id == "4"
    lab = dynamics.classify_region(Params(0.05, 0.02))
    assert lab.id == "1"
    k = 0.02
    lab = dynamics.classify_region(Params(k, float(hopf_F(k)) - 2e-5))
    assert lab.id == "5" and lab.cycles == 1


def test_classify_region_boundary_tags():
    from gskit.equilibria import saddle_node_F
    k = 0.04
    Fsn = float(saddle_node_F(k)[1])
    lab = dynamics.classify_region(Params(k, Fsn))
    assert "SN" in lab.boundary
    lab = dynamics.classify_region(Params(k, float(hopf_F(k))))
    assert "H+" in lab.boundary


def test_classify_region_locally_constant():
    base = Params(0.05, 0.03)
    lab1 = dynamics.classify_region(base)
    lab2 = dynamics.classify_region(Params(0.05 + 1e-6, 0.03 + 1e-6))
    assert lab1.id == lab2.id


def test_probe_region_agrees_with_census_classifier():
    pts = [(0.07, 0.02), (0.055, 0.055), (0.05, 0.02), (0.06, 0.055),
           (0.03, 0.02), (0.045, 0.045)]
    for k, F in pts:
        full = dynamics.classify_region(Params(k, F))
        fast = dynamics.probe_region(Params(k, F))
        assert full.id == fast.id, (k, F, full, fast)


def test_infinity_points():
    pts = dynamics.infinity_fixed_points(Params(0.04, 0.02))
    assert len(pts) == 2
    degenerate = [p for p in pts if p.degenerate_saddle]
    assert len(degenerate) == 1
    assert degenerate[0].direction == "u=0, v=+inf"
    assert degenerate[0].eigenvalues == (-1.0, 0.0)


def test_manifold_from_infinity_reaches_finite_attractor():
    for k, F in ((0.07, 0.02), (0.05, 0.03)):
        entry, attractor = dynamics.manifold_from_infinity(Params(k, F))
        assert entry is not None
        assert entry.v > entry.u          # enters steeply from large v
        assert attractor in ("p0", "p_mp")


def test_compactified_portrait_report():
    data = dynamics.compactified_portrait(Params(0.07, 0.02))
    assert len(data.infinity_points) == 2
    assert data.manifold_attractor == "p0"
    assert len(data.equilibria_reports) == 1   # only the trivial point


def test_render_portrait_deterministic():
    a = Params(0.07, 0.02)
    spec = dynamics.PortraitSpec(seeds_per_side=3, t_end=400.0)
    svg1, csv1, meta1 = dynamics.render_portrait(a, spec)
    svg2, csv2, meta2 = dynamics.render_portrait(a, spec)
    assert svg1 == svg2
    assert csv1 == csv2
    assert meta1 == meta2
    assert svg1.startswith("<svg ")
    assert "circle" in svg1


def test_render_portrait_two_nested_cycles():
    k = 0.034
    a = Params(k, float(hopf_F(k)) - 2e-6)
    spec = dynamics.PortraitSpec(seeds_per_side=2, t_end=200.0,
                                 window=((0.0, 0.0), (1.05, 0.4)))
    svg, _, meta = dynamics.render_portrait(a, spec)
    assert len(meta["cycles"]) == 2
    stable_stroke = svg.count('stroke="#1a5fb4"')
    unstable_stroke = svg.count('stroke="#a51d2d"')
    assert stable_stroke == 1 and unstable_stroke == 1


def test_render_portrait_single_attractor_outside():
    a = Params(0.07, 0.02)
    svg, _, meta = dynamics.render_portrait(
        a, dynamics.PortraitSpec(seeds_per_side=2, t_end=300.0))
    assert meta["cycles"] == []
    assert len(meta["equilibria"]) == 1
