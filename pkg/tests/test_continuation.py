import math

import numpy as np
import pytest

from gskit import dynamics
from gskit.continuation import (continue_curve, fold_seed, homoclinic_F,
                                homoclinic_curve, hopf_seed, lpc_curve,
                                lpc_seed_from_region3, newton_bt,
                                separatrix_splitting, shoot_cycle)
from gskit.core import Params
from gskit.equilibria import hopf_F, saddle_node_F
from gskit.errors import BracketNotFound, SaddleMissing, SeedInvalid


def test_newton_double_zero_from_spec_seed():
    u, v, k, F = newton_bt((0.05, 0.05))
    assert abs(k - 1 / 16) < 1e-12
    assert abs(F - 1 / 16) < 1e-12
    assert abs(u - 0.5) < 1e-10 and abs(v - 0.25) < 1e-10


def test_newton_double_zero_other_seeds():
    for start in ((0.04, 0.03), (0.055, 0.045)):
        _, _, k, F = newton_bt(start)
        assert abs(k - 1 / 16) < 1e-10 and abs(F - 1 / 16) < 1e-10


def test_hopf_continuation_tracks_closed_form():
    run = continue_curve("hopf", hopf_seed(0.03), direction=-1.0)
    ks, Fs = run.k_values(), run.F_values()
    assert len(run.points) > 30
    errs = [abs(F - float(hopf_F(k))) for k, F in zip(ks, Fs) if k > 1e-3]
    assert max(errs) < 1e-8
    # every accepted point satisfies the defining system to corrector tol
    from gskit.continuation import _hopf_res
    for p in run.points[::5]:
        z = np.array([p.aux["u"], p.aux["v"], float(p.params.k), float(p.params.F)])
        assert np.max(np.abs(_hopf_res(z))) < 1e-10


def test_hopf_continuation_detects_organizing_points():
    run = continue_curve("hopf", hopf_seed(0.03), direction=+1.0)
    names = {e.name for e in run.events}
    assert {"bt_det", "gh_l1"} <= names
    bt_ev = next(e for e in run.events if e.name == "bt_det")
    gh_ev = next(e for e in run.events if e.name == "gh_l1")
    assert abs(float(bt_ev.params.k) - 1 / 16) < 1e-8
    assert abs(float(bt_ev.params.F) - 1 / 16) < 1e-8
    assert abs(float(gh_ev.params.k) - 9 / 256) < 1e-8
    assert abs(float(gh_ev.params.F) - 3 / 256) < 1e-8


def test_fold_continuation_both_branches():
    for branch in ("lower", "upper"):
        run = continue_curve("fold", fold_seed(0.03, branch), direction=1.0,
                             detect_events=False)
        for k, F in zip(run.k_values(), run.F_values()):
            assert abs(k - (math.sqrt(F) / 2 - F)) < 1e-8


def test_invalid_seed_rejected():
    with pytest.raises(SeedInvalid):
        continue_curve("hopf", np.array([0.5, 0.3, 0.03, 0.02]))


def test_shoot_cycle_stable_supercritical_side():
    k = 0.02
    a = Params(k, float(hopf_F(k)) - 2e-5)
    cyc = shoot_cycle(a, 0.015)
    assert 0.0 < cyc.nontrivial_multiplier < 1.0
    assert cyc.period > 100


def test_shoot_cycle_unstable_subcritical_side():
    k = 0.05
    a = Params(k, float(hopf_F(k)) + 3e-4)
    cyc = shoot_cycle(a, 0.02)
    assert cyc.nontrivial_multiplier > 1.0


def test_cycle_amplitude_square_root_law():
    # amplitude ~ sqrt(|nu|) near the supercritical Hopf curve
    k = 0.02
    Fh = float(hopf_F(k))
    nus = np.array([-0.5e-6, -1e-6, -2e-6, -4e-6, -8e-6])
    radii = []
    for nu in nus:
        cycles = dynamics.limit_cycle_census(Params(k, Fh + float(nu)))
        assert len(cycles) == 1
        radii.append(cycles[0].radius)
    slope = np.polyfit(np.log(-nus), np.log(radii), 1)[0]
    assert slope == pytest.approx(0.5, abs=0.05)


def test_separatrix_splitting_sign_change_at_0_057():
    k = 0.057
    Fh = float(hopf_F(k))
    Fu = float(saddle_node_F(k)[0])
    lo = Fh + 1e-4 * (Fu - Fh)
    hi = Fh + 0.3 * (Fu - Fh)
    s_lo = separatrix_splitting(Params(k, lo))
    s_hi = separatrix_splitting(Params(k, hi))
    assert (s_lo > 0) != (s_hi > 0)


def test_separatrix_splitting_offset_halving():
    a = Params(0.06, 0.0470658)
    val = separatrix_splitting(a, validate=True)
    assert isinstance(val, float)


def test_separatrix_requires_saddle():
    with pytest.raises(SaddleMissing):
        separatrix_splitting(Params(0.07, 0.02))


def test_splitting_shrinks_toward_homoclinic():
    k = 0.06
    F_hom, width = homoclinic_F(k, f_tol=1e-8)
    assert width <= 1e-8
    gaps = [abs(separatrix_splitting(Params(k, F_hom + d)))
            for d in (8e-4, 2e-4, 5e-5)]
    assert gaps[0] > gaps[1] > gaps[2]


def test_homoclinic_between_hopf_and_upper_fold():
    for k in (0.058, 0.06, 0.062):
        F_hom, _ = homoclinic_F(k)
        Fh = float(hopf_F(k))
        Fu = float(saddle_node_F(k)[0])
        assert Fh < F_hom < Fu


def test_homoclinic_curve_polyline():
    run = homoclinic_curve(np.linspace(0.059, 0.062, 4))
    assert len(run.points) == 4
    assert run.status == "ok"
    assert all(p.aux["bracket_width"] <= 1e-8 for p in run.points)


def test_homoclinic_fold_tangency_exponent():
    # measured as graphs over F near the fold nose the separation in k
    # scales quadratically with the height above the organizing point
    ks = np.linspace(0.059, 0.0624, 6)
    xs, ys = [], []
    for k in ks:
        F, _ = homoclinic_F(float(k))
        xs.append(math.log(abs(F - 1 / 16)))
        ys.append(math.log(abs((math.sqrt(F) / 2 - F) - float(k))))
    slope = float(np.polyfit(xs, ys, 1)[0])
    assert 1.7 <= slope <= 2.3


def test_lpc_detection_agrees_with_cycle_collision():
    # multiplier = 1 locus and the census fold coincide at fixed k
    k = 0.034
    Fh = float(hopf_F(k))
    seed = lpc_seed_from_region3(Params(k, Fh - 2e-6))
    run = lpc_curve(seed, max_points=14)
    ks = run.k_values()
    Fs = run.F_values()
    order = np.argsort(ks)
    assert ks.min() < k < ks.max()
    F_lpc = float(np.interp(k, ks[order], Fs[order]))
    # census collision: bisect the 2 -> 0 transition in F
    lo, hi = Fh - 2e-5, Fh - 2e-6
    for _ in range(30):
        mid = 0.5 * (lo + hi)
        n = len(dynamics.limit_cycle_census(Params(k, mid), n_scan=200))
        if n >= 2:
            hi = mid
        else:
            lo = mid
    F_collision = 0.5 * (lo + hi)
    assert abs(F_lpc - F_collision) < 1e-6


def test_bracket_not_found_reported():
    with pytest.raises(BracketNotFound):
        homoclinic_F(0.03)   # far from the double-zero point: one-signed gap
