"""Acceptance battery: the project's exit criteria as runnable checks.

Each criterion function returns a CriterionResult with named sub-checks;
`run_battery` executes all ten and is what both `gskit repro` and the
acceptance test module drive.  Tolerances are pinned here, not in callers.

Three sub-checks are mathematically unattainable as stated and are expected
to fail; they are kept verbatim rather than weakened (see the repository
README for the analysis):

* criterion 1 expects b20(0) = +1/16 and s = -1, but the projected
  quadratic expansion forces b20(0) = -1/16 and hence s = +1 (the exact
  finite differences in the test suite confirm this independently);
* criterion 4 expects a negative (mu, l1) determinant, which under the
  documented orientation conventions evaluates to +9*sqrt(2)/2;
* criterion 8 expects the homoclinic curve between the Hopf curve and the
  lower fold branch, but with repelling newborn cycles near the double-zero
  point the curve lies above the Hopf curve, and the criterion's literal
  axis pairing measures the fold tangency as exponent ~0.5; the geometric
  exponent (fold distance in k against height in F) is the one near 2.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import bautin, bt, continuation, dynamics
from .core import Params, State, jacobian, vector_field
from .equilibria import equilibria, hopf_F, saddle_node_F
from .errors import GSKitError, NoReturn


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: list
    elapsed: float
    expected_failures: tuple = ()

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def passed_excluding_known(self) -> bool:
        return all(c.ok for c in self.checks if c.name not in self.expected_failures)


@dataclass
class BatteryContext:
    """Shared expensive artifacts reused across criteria."""
    hopf_runs: dict = field(default_factory=dict)
    fold_runs: dict = field(default_factory=dict)
    lpc_run: object = None
    homoclinic_run: object = None
    t_curve_cache: dict = field(default_factory=dict)


def _c(number, title, checks, t0, expected=()):
    return CriterionResult(number=number, title=title, checks=checks,
                           elapsed=time.time() - t0, expected_failures=expected)


# ---------------------------------------------------------------------------

def criterion_1(ctx: BatteryContext) -> CriterionResult:
    """Exact checkpoints in rational arithmetic, zero tolerance."""
    t0 = time.time()
    checks = []
    f_bt = vector_field(bt.BT_POINT, bt.BT_PARAMS)
    jac = jacobian(bt.BT_POINT, bt.BT_PARAMS)
    tr = jac[0][0] + jac[1][1]
    det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0]
    checks.append(Check("double_zero_point",
                        f_bt == (0, 0) and tr == 0 and det == 0,
                        f"field {f_bt}, trace {tr}, det {det}"))
    rep = bt.bt_nondegeneracy()
    checks.append(Check("a20", rep.a20 == Fraction(-1, 2), f"a20(0) = {rep.a20}"))
    checks.append(Check("b20", rep.b20 == Fraction(1, 16), f"b20(0) = {rep.b20}"))
    checks.append(Check("b11", rep.b11 == 0, f"b11(0) = {rep.b11}"))
    checks.append(Check("s", rep.s == -1, f"s = {rep.s}"))
    checks.append(Check("transversality_det",
                        rep.transversality_det == Fraction(-1, 512),
                        f"det = {rep.transversality_det}"))
    loc = bautin.gh_locate()
    checks.append(Check("resultant",
                        loc["matches_expected"],
                        f"sign {loc['sign']}, roots {loc['roots']}"))
    gh = loc["gh"]
    checks.append(Check("gh_params",
                        gh is not None and gh["k"] == Fraction(9, 256)
                        and gh["F"] == Fraction(3, 256),
                        f"(k, F) = ({gh['k']}, {gh['F']})"))
    checks.append(Check("gh_point",
                        gh["point"] == State(Fraction(1, 4), Fraction(3, 16)),
                        f"p = {gh['point']}"))
    return _c(1, "exact checkpoints", checks, t0, expected=("b20", "s"))


def criterion_2(ctx: BatteryContext) -> CriterionResult:
    """Closed-form consistency at 1000 random samples, 1e-13."""
    t0 = time.time()
    rng = np.random.default_rng(20260810)
    checks = []
    worst_sn = 0.0
    for k in rng.uniform(1e-4, 1 / 16, 1000):
        for F in saddle_node_F(float(k)):
            worst_sn = max(worst_sn, abs(4 * (F + k) ** 2 - F))
    checks.append(Check("fold_branch_relation", worst_sn <= 1e-13,
                        f"max |4(F+k)^2 - F| = {worst_sn:.3e}"))
    worst_line = worst_hyp = 0.0
    n_ok = 0
    while n_ok < 1000:
        k = float(rng.uniform(1e-3, 0.08))
        F = float(rng.uniform(1e-3, 0.25))
        try:
            a = Params(k, F)
        except GSKitError:
            continue
        eq = equilibria(a)
        if eq.kind != "pair":
            continue
        n_ok += 1
        g = a.gamma
        for pt in (eq.p_mp, eq.p_pm):
            worst_line = max(worst_line, abs(pt.u + g * pt.v - 1))
            worst_hyp = max(worst_hyp, abs(pt.u * pt.v - (F + k)))
    checks.append(Check("equilibrium_line", worst_line <= 1e-13,
                        f"max |u + gamma v - 1| = {worst_line:.3e}"))
    checks.append(Check("equilibrium_hyperbola", worst_hyp <= 1e-13,
                        f"max |u v - (F+k)| = {worst_hyp:.3e}"))
    ok = True
    for k, F in ((Fraction(3, 100), Fraction(7, 250)), (Fraction(1, 16), Fraction(1, 16))):
        jac = jacobian(State(Fraction(1), Fraction(0)), Params(k, F))
        ok = ok and jac[0][1] == 0 and jac[1][0] == 0
        ok = ok and jac[0][0] == -F and jac[1][1] == -(F + k)
    checks.append(Check("trivial_point_eigenvalues", ok,
                        "Jacobian at (1,0) is diag(-F, -(F+k)) exactly"))
    return _c(2, "closed-form consistency", checks, t0)


def criterion_3(ctx: BatteryContext) -> CriterionResult:
    """Newton convergence to the double-zero point; Hopf curve checkpoints."""
    t0 = time.time()
    checks = []
    u, v, k, F = continuation.newton_bt((0.05, 0.05))
    err = max(abs(k - 1 / 16), abs(F - 1 / 16))
    checks.append(Check("newton_double_zero", err <= 1e-10,
                        f"|params - (1/16,1/16)| = {err:.2e}, point ({u:.12f}, {v:.12f})"))
    h1 = hopf_F(Fraction(1, 16))
    h2 = hopf_F(Fraction(9, 256))
    checks.append(Check("hopf_F_at_1_16", abs(float(h1 - Fraction(1, 16))) <= 1e-13,
                        f"hopf_F(1/16) = {h1}"))
    checks.append(Check("hopf_F_at_9_256", abs(float(h2 - Fraction(3, 256))) <= 1e-13,
                        f"hopf_F(9/256) = {h2}"))
    return _c(3, "Hopf detection", checks, t0)


def criterion_4(ctx: BatteryContext) -> CriterionResult:
    """Lyapunov sign law, unique zero, l2 sign, parameter-map determinant."""
    t0 = time.time()
    checks = []
    neg = {}
    pos = {}
    for k in (0.01, 0.02, 0.03):
        a = Params(k, float(hopf_F(k)))
        neg[k] = (bautin.l1_clw(a), bautin.l1_kuz(a))
    for k in (0.04, 0.05, 0.06):
        a = Params(k, float(hopf_F(k)))
        pos[k] = (bautin.l1_clw(a), bautin.l1_kuz(a))
    checks.append(Check("l1_negative_side",
                        all(v[0] < 0 and v[1] < 0 for v in neg.values()),
                        str({k: (f"{v[0]:.3e}", f"{v[1]:.3e}") for k, v in neg.items()})))
    checks.append(Check("l1_positive_side",
                        all(v[0] > 0 and v[1] > 0 for v in pos.values()),
                        str({k: (f"{v[0]:.3e}", f"{v[1]:.3e}") for k, v in pos.items()})))

    def l1_on_curve(k):
        return bautin.l1_kuz(Params(k, float(hopf_F(k))))

    lo, hi = 0.03, 0.04
    flo = l1_on_curve(lo)
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        fm = l1_on_curve(mid)
        if (flo < 0) == (fm < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    checks.append(Check("l1_zero_at_gh", abs(root - 9 / 256) <= 1e-9,
                        f"zero at k = {root!r}, |k - 9/256| = {abs(root - 9/256):.2e}"))
    signs = [l1_on_curve(k) < 0 for k in np.linspace(0.01, 0.0624, 50)]
    flips = sum(1 for i in range(1, 50) if signs[i] != signs[i - 1])
    checks.append(Check("l1_single_sign_change", flips == 1, f"{flips} sign flips"))
    c1, c2 = bautin.l2_gh_exact()
    l2f = bautin.l2_kuz(bautin.GH_PARAMS)
    checks.append(Check("l2_positive",
                        c2.re.sign() > 0 and c1.re.is_zero() and l2f > 0,
                        f"exact Re c2 = {c2.re.a}, float l2 = {l2f:.6e}"))
    det = bautin.param_map_transversality()
    checks.append(Check("param_map_nonzero", abs(det) > 1e-6, f"det = {det:.6f}"))
    checks.append(Check("param_map_sign_negative", det < 0,
                        f"det = {det:.6f} (+9*sqrt(2)/2 under our conventions)"))
    return _c(4, "Lyapunov sign law", checks, t0,
              expected=("param_map_sign_negative",))


def criterion_5(ctx: BatteryContext) -> CriterionResult:
    """Continuation against closed forms; organizing points detected."""
    t0 = time.time()
    checks = []
    up = ctx.hopf_runs.get("up") or continuation.continue_curve(
        "hopf", continuation.hopf_seed(0.03), direction=+1.0)
    down = ctx.hopf_runs.get("down") or continuation.continue_curve(
        "hopf", continuation.hopf_seed(0.03), direction=-1.0)
    ctx.hopf_runs.update({"up": up, "down": down})
    pts = [(k, F) for run in (up, down)
           for k, F in zip(run.k_values(), run.F_values())
           if 1e-3 <= k <= 0.0615]
    pts = pts[:: max(1, len(pts) // 100)]
    err_h = max(abs(F - float(hopf_F(k))) for k, F in pts)
    checks.append(Check("hopf_vs_closed_form",
                        err_h <= 1e-8 and len(pts) >= 100,
                        f"max err {err_h:.2e} over {len(pts)} abscissae"))
    folds = []
    for branch, direction in (("lower", 1.0), ("lower", -1.0), ("upper", 1.0)):
        key = (branch, direction)
        run = ctx.fold_runs.get(key) or continuation.continue_curve(
            "fold", continuation.fold_seed(0.03, branch), direction=direction,
            detect_events=False)
        ctx.fold_runs[key] = run
        folds.append(run)
    fpts = [(k, F) for run in folds
            for k, F in zip(run.k_values(), run.F_values()) if F > 1e-6]
    fpts = fpts[:: max(1, len(fpts) // 100)]
    err_f = max(abs(k - (math.sqrt(F) / 2 - F)) for k, F in fpts)
    checks.append(Check("fold_vs_closed_form",
                        err_f <= 1e-8 and len(fpts) >= 100,
                        f"max err {err_f:.2e} over {len(fpts)} abscissae"))
    bt_ev = [e for e in up.events if e.name == "bt_det"]
    gh_ev = [e for e in up.events if e.name == "gh_l1"]
    bt_err = (max(abs(float(bt_ev[0].params.k) - 1 / 16),
                  abs(float(bt_ev[0].params.F) - 1 / 16)) if bt_ev else float("inf"))
    gh_err = (max(abs(float(gh_ev[0].params.k) - 9 / 256),
                  abs(float(gh_ev[0].params.F) - 3 / 256)) if gh_ev else float("inf"))
    checks.append(Check("bt_detected", bt_err <= 1e-8, f"err {bt_err:.2e}"))
    checks.append(Check("gh_detected", gh_err <= 1e-8, f"err {gh_err:.2e}"))
    return _c(5, "continuation vs closed form", checks, t0)


def _locate_t_curve_F(ctx: BatteryContext, k: float) -> tuple:
    """(F_below_T, F_two_cycles, F_above) bracketing the fold-of-cycles at k."""
    if k in ctx.t_curve_cache:
        return ctx.t_curve_cache[k]
    Fh = float(hopf_F(k))

    def ncycles(F):
        try:
            return len(dynamics.limit_cycle_census(Params(k, F), n_scan=200))
        except NoReturn:
            return -1

    lo_off, hi_off = None, 1e-6
    off = 2e-6
    while off < 3e-4:
        if ncycles(Fh - off) != 2:
            lo_off = off
            break
        hi_off = off
        off *= 1.7
    if lo_off is None:
        raise GSKitError(f"no lower edge of the two-cycle band found at k={k}")
    for _ in range(20):
        mid = 0.5 * (lo_off + hi_off)
        if ncycles(Fh - mid) == 2:
            hi_off = mid
        else:
            lo_off = mid
    out = (Fh - lo_off, Fh - 0.5 * hi_off, Fh)
    ctx.t_curve_cache[k] = out
    return out


def criterion_6(ctx: BatteryContext) -> CriterionResult:
    """Two coexisting cycles in the wedge between H- and T."""
    t0 = time.time()
    checks = []
    k = 0.034
    F_below, F_mid, Fh = _locate_t_curve_F(ctx, k)
    cycles = dynamics.limit_cycle_census(Params(k, F_mid))
    ok_count = len(cycles) == 2
    ok_stab = (ok_count and cycles[0].nontrivial_multiplier < 1.0
               and cycles[1].nontrivial_multiplier > 1.0
               and cycles[0].radius < cycles[1].radius)
    detail = [(round(c.radius, 6), round(c.nontrivial_multiplier, 6)) for c in cycles]
    checks.append(Check("two_cycles", ok_count, f"census at (k={k}, F={F_mid!r}): {detail}"))
    checks.append(Check("inner_stable_outer_unstable", ok_stab, str(detail)))
    return _c(6, "two coexisting cycles", checks, t0)


def _lpc_toward_gh(ctx: BatteryContext):
    """Fold-of-cycles polyline continued toward the generalized Hopf point."""
    if ctx.lpc_run is not None:
        return ctx.lpc_run
    k_seed = 0.0345
    _, F_mid, _ = _locate_t_curve_F(ctx, k_seed)
    seed = continuation.lpc_seed_from_region3(Params(k_seed, F_mid))
    run = continuation.lpc_curve(seed, max_points=60,
                                 k_bounds=(5e-3, 9 / 256 - 5e-5))
    if run.k_values()[-1] < k_seed:
        run = continuation.lpc_curve(seed, max_points=60,
                                     k_bounds=(5e-3, 9 / 256 - 5e-5),
                                     direction=-1.0)
    ctx.lpc_run = run
    return run


def criterion_7(ctx: BatteryContext) -> CriterionResult:
    """Fold-of-cycles curve tangent to the Hopf curve at GH; census step 2."""
    t0 = time.time()
    checks = []
    run = _lpc_toward_gh(ctx)
    kgh = 9 / 256
    h = 1e-7
    slope_h = (float(hopf_F(kgh + h)) - float(hopf_F(kgh - h))) / (2 * h)
    # limit tangent at GH: fit the wedge offset F_T - F_h = b dk + c dk^2
    # through the endpoint (the curve terminates at GH by definition)
    xs, ys = [], []
    for p in run.points:
        dk = float(p.params.k) - kgh
        if abs(dk) < 5e-3:
            xs.append(dk)
            ys.append(float(p.params.F) - float(hopf_F(float(p.params.k))))
    A = np.array([[x, x * x] for x in xs])
    b, c = np.linalg.lstsq(A, np.array(ys), rcond=None)[0]
    angle = abs(b) / (1 + slope_h * slope_h)
    k_near = max(float(p.params.k) for p in run.points)
    checks.append(Check("tangent_to_hopf_at_gh", angle < 1e-3,
                        f"limit-tangent deviation {angle:.2e} rad "
                        f"(fit b={b:.2e}, curvature c={c:.3f}, nearest k={k_near!r})"))
    k_cross = 0.034
    F_below, F_mid2, Fh2 = _locate_t_curve_F(ctx, k_cross)
    n_above = len(dynamics.limit_cycle_census(Params(k_cross, F_mid2), n_scan=200))
    n_below = len(dynamics.limit_cycle_census(Params(k_cross, F_below - 2e-6), n_scan=200))
    checks.append(Check("census_changes_by_two", n_above - n_below == 2,
                        f"{n_above} cycles above T, {n_below} below"))
    return _c(7, "fold-of-cycles tangency", checks, t0)


def criterion_8(ctx: BatteryContext) -> CriterionResult:
    """Homoclinic curve: bracketing, ordering, fold tangency exponent."""
    t0 = time.time()
    checks = []
    k_grid = np.linspace(0.058, 0.0624, 8)
    run = ctx.homoclinic_run or continuation.homoclinic_curve(k_grid, f_tol=1e-8)
    ctx.homoclinic_run = run
    ok_brackets = (len(run.points) == len(k_grid)
                   and all(p.aux["bracket_width"] <= 1e-8 for p in run.points))
    checks.append(Check("bisection_to_1e-8", ok_brackets,
                        f"{len(run.points)} points, status {run.status}"))
    orderings = []
    literal_ok = True
    for p in run.points:
        k, F = float(p.params.k), float(p.params.F)
        Fh = float(hopf_F(k))
        Fu, Fl = (float(x) for x in saddle_node_F(k))
        orderings.append((k, Fl, Fh, F, Fu))
        literal_ok = literal_ok and (Fl < F < Fh)
    checks.append(Check("ordering_between_hopf_and_lower_fold", literal_ok,
                        "computed ordering is F_sn_lower < F_hopf < F_hom < F_sn_upper; "
                        + "; ".join(f"k={o[0]:.4f}: Fl={o[1]:.6f} Fh={o[2]:.6f} "
                                    f"Fhom={o[3]:.6f} Fu={o[4]:.6f}" for o in orderings[-2:])))
    # geometric tangency: fold distance measured in k at matched F heights
    xs, ys = [], []
    for p in run.points:
        k, F = float(p.params.k), float(p.params.F)
        k_sn = math.sqrt(F) / 2 - F
        xs.append(math.log(abs(F - 1 / 16)))
        ys.append(math.log(abs(k_sn - k)))
    slope = float(np.polyfit(xs, ys, 1)[0])
    checks.append(Check("fold_tangency_exponent", 1.7 <= slope <= 2.3,
                        f"log-log slope {slope:.3f} of |k_hom(F)-k_sn(F)| vs |F-1/16|"))
    xs2 = [math.log(abs(float(p.params.k) - 1 / 16)) for p in run.points]
    ys2 = [math.log(abs(float(p.params.F) - float(saddle_node_F(float(p.params.k))[1])))
           for p in run.points]
    slope2 = float(np.polyfit(xs2, ys2, 1)[0])
    checks.append(Check("literal_axis_exponent", 1.7 <= slope2 <= 2.3,
                        f"|F_hom(k)-F_sn_lower(k)| vs |k-1/16| slope {slope2:.3f} "
                        f"(the square-root graph pairing)"))
    return _c(8, "homoclinic curve", checks, t0,
              expected=("ordering_between_hopf_and_lower_fold",
                        "literal_axis_exponent"))


def criterion_9(ctx: BatteryContext) -> CriterionResult:
    """Integrator quality: order, fixed points, quadrant invariance."""
    t0 = time.time()
    checks = []
    a = Params(0.046, 0.026)
    p0 = State(0.6, 0.25)
    ref = dynamics.integrate(p0, a, 40.0,
                             dynamics.IntegratorSettings(rel_tol=1e-13, abs_tol=1e-15),
                             record=False).final
    errs = []
    for h in (0.2, 0.1):
        end = dynamics.integrate(p0, a, 40.0, dynamics.DEFAULT_SETTINGS,
                                 record=False, fixed_step=h).final
        errs.append(math.hypot(end.u - ref.u, end.v - ref.v))
    order = math.log2(errs[0] / errs[1])
    checks.append(Check("convergence_order", order >= 4.5,
                        f"order {order:.2f} (errors {errs[0]:.2e}, {errs[1]:.2e})"))
    worst = 0.0
    for kk, FF in ((0.04, 0.02), (0.05, 0.025), (0.06, 0.045)):
        eq = equilibria(Params(kk, FF))
        for pt in eq.all_points():
            p = State(float(pt.u), float(pt.v))
            end = dynamics.integrate(p, Params(kk, FF), 50.0, record=False).final
            worst = max(worst, math.hypot(end.u - p.u, end.v - p.v))
    checks.append(Check("equilibria_fixed", worst <= 1e-9,
                        f"max drift {worst:.2e} over 50 time units"))
    rng = np.random.default_rng(7)
    min_u = min_v = 0.0
    for _ in range(1000):
        kk = float(rng.uniform(0.01, 0.09))
        FF = float(rng.uniform(0.005, 0.12))
        u0 = float(rng.uniform(0.0, 1.2))
        v0 = float(rng.uniform(0.0, 0.8))
        traj = dynamics.integrate(State(u0, v0), Params(kk, FF), 200.0)
        min_u = min(min_u, float(traj.u.min()))
        min_v = min(min_v, float(traj.v.min()))
    atol = dynamics.DEFAULT_SETTINGS.abs_tol
    checks.append(Check("quadrant_invariance",
                        min_u >= -atol and min_v >= -atol,
                        f"min u {min_u:.2e}, min v {min_v:.2e} over 1000 trajectories"))
    return _c(9, "integrator quality", checks, t0)


def criterion_10(ctx: BatteryContext, *, grid: int = 200) -> CriterionResult:
    """Global map: region layout and adjacency on a 200x200 grid plus the
    documented zoom insets for the thin two-cycle and one-stable-cycle bands."""
    t0 = time.time()
    checks = []
    from .mapping import adjacency, region_map

    labels, _ = region_map((1e-9, 0.07), (1e-9, 0.07), grid, grid)
    present = {lab for row in labels for lab in row}
    adj = adjacency(labels, min_pairs=2)
    required = {frozenset(p) for p in
                (("outside", "4"), ("outside", "1"), ("4", "2"), ("2", "1"))}
    missing = {tuple(sorted(p)) for p in required if p not in adj}
    checks.append(Check("macro_adjacency", not missing,
                        f"labels {sorted(present)}; missing edges {sorted(missing)}"))
    checks.append(Check("no_outside_wedge_contact",
                        frozenset(("outside", "3")) not in adj,
                        "the two-cycle wedge never touches the fold boundary"))
    # column signatures near the double-zero point, bottom to top:
    # outside | 1 | 2 | 4 (| outside when the upper fold branch is in window)
    col_ok = 0
    ncols = 0
    karr = np.linspace(1e-9, 0.07, grid)
    for j, k in enumerate(karr):
        if not (0.058 <= k <= 0.0615):
            continue
        ncols += 1
        col = [labels[i][j] for i in range(grid) if labels[i][j] != "x"]
        seq = [lab for lab, prev in zip(col, [None] + col[:-1]) if lab != prev]
        if seq[:4] == ["outside", "1", "2", "4"] and set(seq[4:]) <= {"outside"}:
            col_ok += 1
    checks.append(Check("bt_column_signature", ncols > 0 and col_ok >= 0.8 * ncols,
                        f"{col_ok}/{ncols} columns show outside|1|2|4|(outside)"))
    # zoom inset: the two-cycle wedge between H- and T near the generalized
    # Hopf point is a few 1e-6 wide in F, far below the macro cell size, and
    # the Hopf line's slope dwarfs it, so the strip follows the curve
    cols_ok = 0
    strip_labels = set()
    for k0 in np.linspace(0.0336, 0.0344, 5):
        Fh = float(hopf_F(k0))
        col = []
        for dF in np.linspace(-1.0e-5, 4e-6, 22):
            lab = dynamics.classify_region(
                Params(k0, Fh + dF),
                dynamics.IntegratorSettings(rel_tol=1e-10, abs_tol=1e-13),
                census_kwargs={"n_scan": 120}).id
            col.append(lab)
        strip_labels.update(col)
        # cells landing on the Hopf line itself are nonhyperbolic; drop them
        filtered = [lab for lab in col if lab != "x"]
        seq = [lab for lab, prev in zip(filtered, [None] + filtered[:-1])
               if lab != prev]
        if seq == ["1", "3", "2"]:
            cols_ok += 1
    checks.append(Check("gh_wedge_inset", cols_ok >= 4,
                        f"strip labels {sorted(strip_labels)}, {cols_ok}/5 "
                        f"curve-following columns show 1|3|2"))
    # zoom inset: the thin stable-cycle band (region 5) below H- at small k
    k5 = 0.02
    Fh5 = float(hopf_F(k5))
    zoom5, _ = region_map((k5 - 1e-4, k5 + 1e-4), (Fh5 - 1.5e-4, Fh5 + 2e-5), 5, 24,
                          fast=False)
    z5 = {lab for row in zoom5 for lab in row}
    checks.append(Check("region5_inset", "5" in z5 and "4" in z5,
                        f"inset labels {sorted(z5)}"))
    return _c(10, "global map", checks, t0)


ALL_CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                criterion_6, criterion_7, criterion_8, criterion_9, criterion_10)


def run_battery(numbers=None, *, grid: int = 200) -> list:
    ctx = BatteryContext()
    out = []
    for fn in ALL_CRITERIA:
        num = int(fn.__name__.split("_")[1])
        if numbers and num not in numbers:
            continue
        if num == 10:
            out.append(criterion_10(ctx, grid=grid))
        else:
            out.append(fn(ctx))
    return out


def format_battery(results) -> str:
    lines = []
    width = max(len(r.title) for r in results)
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        lines.append(f"criterion {r.number:>2}  {r.title:<{width}}  {mark}  "
                     f"({r.elapsed:.1f}s)")
        for c in r.checks:
            cm = "ok  " if c.ok else ("EXPECTED-FAIL" if c.name in r.expected_failures
                                      else "FAIL")
            lines.append(f"    [{cm}] {c.name}: {c.detail}")
    n_pass = sum(r.passed for r in results)
    lines.append(f"{n_pass}/{len(results)} criteria fully green")
    return "\n".join(lines)
