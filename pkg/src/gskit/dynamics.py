"""Trajectories, Poincare return maps, limit-cycle census, parameter-region
classification and Poincare-compactified portraits.

The Poincare section used throughout is the ray anchored at the focus-type
equilibrium, directed away from the saddle and perpendicular to the real
part of the leading eigenvector; every closed orbit around the focus meets
it transversally.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import Params, State, jacobian, vector_field
from .equilibria import classify, discriminants, equilibria
from .errors import DomainError, NoReturn, StepUnderflow

TRIVIAL_POINT = State(1.0, 0.0)


@dataclass(frozen=True)
class IntegratorSettings:
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_step: float = 0.0          # 0 disables the cap
    scheme: str = "dp54"           # embedded explicit 5(4) pair

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise DomainError("tolerances must be positive")
        if self.scheme != "dp54":
            raise DomainError(f"unknown scheme {self.scheme!r}")


DEFAULT_SETTINGS = IntegratorSettings()
TIGHT_SETTINGS = IntegratorSettings(rel_tol=1e-11, abs_tol=1e-14)


@dataclass
class Trajectory:
    t: np.ndarray
    u: np.ndarray
    v: np.ndarray
    status: int

    @property
    def final(self) -> State:
        return State(float(self.u[-1]), float(self.v[-1]))


@dataclass(frozen=True)
class CycleRepr:
    """Periodic orbit: section point, period, nontrivial Floquet multiplier,
    section ray direction, and the radius along the ray."""

    section_point: State
    period: float
    nontrivial_multiplier: float
    section_normal: tuple
    radius: float

    @property
    def stable(self) -> bool:
        return 0.0 < self.nontrivial_multiplier < 1.0


def integrate(p0: State, a: Params, t_end: float,
              settings: IntegratorSettings = DEFAULT_SETTINGS, *,
              record: bool = True, enforce_quadrant: bool = True,
              time_sign: float = 1.0, max_steps: int = 20_000_000,
              fixed_step: float = 0.0) -> Trajectory:
    """Adaptive trajectory of the kinetics from p0 over [0, t_end]."""
    if enforce_quadrant and not p0.in_first_quadrant(settings.abs_tol):
        raise DomainError(f"initial state {p0} outside the first quadrant")
    status, t, x, y, ts, xs, ys = kernels.integrate(
        kernels.FIELD_PLANE, float(p0.u), float(p0.v), float(a.k), float(a.F),
        float(t_end), settings.rel_tol, settings.abs_tol, settings.max_step,
        max_steps, time_sign, enforce_quadrant, record, fixed_step)
    if status == kernels.UNDERFLOW:
        raise StepUnderflow(f"step size underflow at t={t}")
    if not record:
        ts, xs, ys = [0.0, t], [p0.u, x], [p0.v, y]
    return Trajectory(t=np.asarray(ts), u=np.asarray(xs), v=np.asarray(ys),
                      status=status)


# ---------------------------------------------------------------------------
# Poincare section machinery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SectionFrame:
    center: State          # focus-type equilibrium
    direction: tuple       # unit ray direction
    orientation: int       # sign of d x f on the outgoing side
    r_max: float           # ray stays in the admissible window up to here
    saddle: State | None


def section_frame(a: Params, *, window: float = 2.5) -> SectionFrame:
    """Section ray through the focus-type point, perpendicular to the real
    part of its leading eigenvector and pointing away from the saddle."""
    eq = equilibria(a)
    if eq.p_mp is None:
        raise DomainError(f"no focus-type equilibrium at {a}")
    c = State(float(eq.p_mp.u), float(eq.p_mp.v))
    jac = np.array(jacobian(c, a), dtype=float)
    w, vecs = np.linalg.eig(jac)
    lead = int(np.argmax(w.real))
    wr = np.real(vecs[:, lead])
    d = np.array([-wr[1], wr[0]])
    n = np.linalg.norm(d)
    if n == 0:
        d = np.array([1.0, 0.0])
    else:
        d /= n
    away = np.array([c.u - float(eq.p_pm.u), c.v - float(eq.p_pm.v)])
    if eq.kind == "pair" and float(d @ away) < 0:
        d = -d
    elif eq.kind != "pair" and d[0] < 0:
        d = -d
    # rotation direction of the flow just off the section
    probe = (c.u + 1e-6 * d[0], c.v + 1e-6 * d[1])
    f = vector_field(probe, a)
    orient = 1 if (d[0] * f[1] - d[1] * f[0]) > 0 else -1
    # cap the ray at the quadrant boundary / sanity window
    r_cap = window
    for comp, dcomp in ((c.u, d[0]), (c.v, d[1])):
        if dcomp < 0:
            r_cap = min(r_cap, -comp / dcomp)
    saddle = eq.p_pm if eq.kind == "pair" else None
    return SectionFrame(center=c, direction=(float(d[0]), float(d[1])),
                        orientation=orient, r_max=float(r_cap), saddle=saddle)


def return_map(a: Params, r: float, frame: SectionFrame,
               settings: IntegratorSettings = DEFAULT_SETTINGS, *,
               t_max: float = 2e5, count: int = 1) -> tuple:
    """Return radius and time after `count` full revolutions from radius r.

    Raises NoReturn when the trajectory stops crossing the section.
    """
    c, d = frame.center, frame.direction
    x0 = c.u + r * d[0]
    y0 = c.v + r * d[1]
    status, hits = kernels.ray_crossings(
        x0, y0, float(a.k), float(a.F), c.u, c.v, d[0], d[1],
        frame.orientation, count, t_max, settings.rel_tol, settings.abs_tol,
        settings.max_step, 1e-12, 1e-9, 1.0, True)
    if len(hits) < count:
        raise NoReturn(f"no return from r={r} at {a} (status {status}, "
                       f"{len(hits)} crossings)")
    t, s, _, _ = hits[count - 1]
    return s, t


def crossing_radii(a: Params, x0: float, y0: float, frame: SectionFrame,
                   settings: IntegratorSettings = DEFAULT_SETTINGS, *,
                   n: int = 200, t_max: float = 4e5,
                   time_sign: float = 1.0) -> list:
    """Successive section radii of the orbit through (x0, y0)."""
    c, d = frame.center, frame.direction
    orient = frame.orientation if time_sign > 0 else -frame.orientation
    _, hits = kernels.ray_crossings(
        x0, y0, float(a.k), float(a.F), c.u, c.v, d[0], d[1],
        orient, n, t_max, settings.rel_tol, settings.abs_tol,
        settings.max_step, 1e-12, 1e-9, time_sign, time_sign > 0)
    return [h[1] for h in hits]


# ---------------------------------------------------------------------------
# Limit-cycle census
# ---------------------------------------------------------------------------

def _refine_root(g, lo, hi, glo, ghi, tol=1e-12, max_iter=80):
    """Brent-style bisection/secant hybrid on a bracketed root."""
    a_, b_, fa, fb = lo, hi, glo, ghi
    for _ in range(max_iter):
        if b_ - a_ < tol * max(1.0, abs(b_)):
            break
        # secant candidate, guarded to the bracket interior
        if fb != fa:
            m = b_ - fb * (b_ - a_) / (fb - fa)
            if not (a_ + 0.1 * (b_ - a_) < m < b_ - 0.1 * (b_ - a_)):
                m = 0.5 * (a_ + b_)
        else:
            m = 0.5 * (a_ + b_)
        fm = g(m)
        if fm == 0.0:
            return m
        if (fa < 0) == (fm < 0):
            a_, fa = m, fm
        else:
            b_, fb = m, fm
    return 0.5 * (a_ + b_)


def cycle_at_radius(a: Params, r: float, frame: SectionFrame,
                    settings: IntegratorSettings = DEFAULT_SETTINGS) -> CycleRepr:
    """Package the cycle through radius r: period and Floquet data.

    The nontrivial multiplier is det of the monodromy matrix over one
    period (the trivial multiplier along the flow is exactly 1).
    """
    c, d = frame.center, frame.direction
    _, period = return_map(a, r, frame, settings)
    x0, y0 = c.u + r * d[0], c.v + r * d[1]
    status, _, _, m11, m12, m21, m22 = kernels.monodromy(
        x0, y0, float(a.k), float(a.F), period,
        settings.rel_tol, settings.abs_tol, settings.max_step)
    if status != kernels.OK:
        raise StepUnderflow("variational integration failed")
    mult = m11 * m22 - m12 * m21
    return CycleRepr(section_point=State(x0, y0), period=period,
                     nontrivial_multiplier=float(mult),
                     section_normal=d, radius=float(r))


def limit_cycle_census(a: Params,
                       settings: IntegratorSettings = DEFAULT_SETTINGS, *,
                       n_scan: int = 400, r_min_frac: float = 1e-4,
                       r_max: float | None = None,
                       frame: SectionFrame | None = None) -> list:
    """All limit cycles around the focus-type point, ordered by amplitude.

    Scans the return-map displacement along the section ray, brackets sign
    changes (rescanning finer near non-crossing minima so near-tangent cycle
    pairs are resolved), refines each root and attaches Floquet data.
    Returns an empty list when no nontrivial equilibria exist.
    """
    d = discriminants(a)
    if d.delta <= 0:
        return []
    frame = frame or section_frame(a)
    cap = frame.r_max * 0.98
    if r_max is not None:
        cap = min(cap, r_max)
    r_lo = max(cap * r_min_frac, 1e-8)

    def g(r):
        return return_map(a, r, frame, settings)[0] - r

    rs = np.linspace(r_lo, cap, n_scan)
    vals = np.full(n_scan, np.nan)
    fail_at = None
    for i, r in enumerate(rs):
        try:
            vals[i] = g(r)
        except NoReturn:
            fail_at = i
            break
    n_ok = fail_at if fail_at is not None else n_scan
    roots = []
    for i in range(1, n_ok):
        a_, b_ = rs[i - 1], rs[i]
        fa, fb = vals[i - 1], vals[i]
        if fa == 0.0:
            roots.append(a_)
        elif fa * fb < 0:
            roots.append(_refine_root(g, a_, b_, fa, fb))
    # near-tangent pair hiding between grid points: rescan around interior
    # minima of |g| that do not change sign
    if n_ok >= 3:
        absv = np.abs(vals[:n_ok])
        for i in range(1, n_ok - 1):
            if (absv[i] < absv[i - 1] and absv[i] < absv[i + 1]
                    and vals[i - 1] * vals[i] > 0 and vals[i] * vals[i + 1] > 0):
                sub = np.linspace(rs[i - 1], rs[i + 1], 33)
                prev_r, prev_v = sub[0], g(sub[0])
                for r in sub[1:]:
                    try:
                        cur = g(r)
                    except NoReturn:
                        break
                    if prev_v * cur < 0:
                        roots.append(_refine_root(g, prev_r, r, prev_v, cur))
                    prev_r, prev_v = r, cur
    roots.sort()
    dedup = []
    for r in roots:
        if not dedup or abs(r - dedup[-1]) > 1e-6 * max(1.0, r):
            dedup.append(r)
    return [cycle_at_radius(a, r, frame, settings) for r in dedup]


# ---------------------------------------------------------------------------
# Region classification
# ---------------------------------------------------------------------------

REGION_SIGNATURES = {
    # label: (focus-type point unstable?, cycle stability letters in->out)
    "1": (True, ""),
    "2": (False, "u"),
    "3": (True, "su"),
    "4": (False, ""),
    "5": (True, "s"),
}


@dataclass(frozen=True)
class RegionLabel:
    id: str                      # 'outside', '1'..'5', or 'x' (unrecognized)
    boundary: tuple = ()         # subset of ('SN', 'H+', 'H-', 'T', 'P')
    cycles: int = 0
    focus_label: str = ""


def _signature_id(unstable: bool, stability: str) -> str:
    for label, sig in REGION_SIGNATURES.items():
        if sig == (unstable, stability):
            return label
    return "x"


def classify_region(a: Params,
                    settings: IntegratorSettings = DEFAULT_SETTINGS, *,
                    curves: dict | None = None, boundary_tol: float = 1e-10,
                    curve_tol: float = 1e-4, census_kwargs: dict | None = None
                    ) -> RegionLabel:
    """Label the parameter point by equilibria, focus stability and census.

    The signature table is REGION_SIGNATURES: regions 1-5 are
    (unstable, no cycle), (stable, one repelling cycle), (unstable, stable
    inner + repelling outer), (stable, no cycle), (unstable, one stable
    cycle).  `curves` may carry polylines {'T': [(k,F)...], 'P': [...]} for
    boundary tagging; the fold and Hopf boundaries are tagged from closed
    forms.
    """
    d = discriminants(a)
    tags = []
    if abs(float(d.delta)) <= boundary_tol:
        tags.append("SN")
        return RegionLabel(id="outside" if d.delta < 0 else "SN-degenerate",
                           boundary=tuple(tags))
    if d.delta < 0:
        return RegionLabel(id="outside", boundary=tuple(tags))
    eq = equilibria(a)
    rep = classify(eq.p_mp, a)
    if abs(float(rep.trace)) <= boundary_tol:
        tags.append("H-" if float(a.k) < 9 / 256 else "H+")
    cycles = limit_cycle_census(a, settings, **(census_kwargs or {}))
    stability = "".join("s" if c.stable else "u" for c in cycles)
    unstable = float(rep.trace) > 0
    if curves:
        kf = (float(a.k), float(a.F))
        for tag in ("T", "P"):
            poly = curves.get(tag)
            if poly and _near_polyline(kf, poly, curve_tol):
                tags.append(tag)
    return RegionLabel(id=_signature_id(unstable, stability),
                       boundary=tuple(tags), cycles=len(cycles),
                       focus_label=rep.label)


def _near_polyline(pt, poly, tol) -> bool:
    px, py = pt
    return any((px - q[0]) ** 2 + (py - q[1]) ** 2 <= tol * tol for q in poly)


def probe_region(a: Params, settings: IntegratorSettings | None = None, *,
                 t_max: float = 2e5, max_rev: int = 400) -> RegionLabel:
    """Fast decision-tree classifier used by the parameter-plane map.

    Replaces the full census with one or two attractor probes (forward from
    the focus side, backward across a detected cycle); validated against
    classify_region on sampled cells.
    """
    settings = settings or IntegratorSettings(rel_tol=1e-8, abs_tol=1e-11)
    d = discriminants(a)
    if d.delta <= 0:
        return RegionLabel(id="outside")
    eq = equilibria(a)
    rep = classify(eq.p_mp, a)
    unstable = float(rep.trace) > 0
    frame = section_frame(a)
    scale = max(1e-4, 0.02 * frame.r_max)

    def probe(r0, sign_time):
        radii = crossing_radii(a, frame.center.u + r0 * frame.direction[0],
                               frame.center.v + r0 * frame.direction[1],
                               frame, settings, n=max_rev, t_max=t_max,
                               time_sign=sign_time)
        return _attractor_kind(radii, frame.r_max)

    if unstable:
        kind, r_star = probe(scale, 1.0)
        if kind == "escape":
            return RegionLabel(id="1", focus_label=rep.label)
        if kind == "cycle":
            kind2, _ = probe(min(r_star * 1.25, frame.r_max * 0.9), -1.0)
            if kind2 == "cycle":
                return RegionLabel(id="3", cycles=2, focus_label=rep.label)
            return RegionLabel(id="5", cycles=1, focus_label=rep.label)
        return RegionLabel(id="x", focus_label=rep.label)
    kind, _ = probe(scale, -1.0)
    if kind == "cycle":
        return RegionLabel(id="2", cycles=1, focus_label=rep.label)
    if kind == "escape":
        return RegionLabel(id="4", focus_label=rep.label)
    return RegionLabel(id="x", focus_label=rep.label)


def _attractor_kind(radii: list, r_cap: float) -> tuple:
    """Classify a radius sequence: converged to a cycle, fell into the
    focus, or left the rotation region."""
    if len(radii) < 3:
        return "escape", 0.0
    for i in range(2, len(radii)):
        r0, r1, r2 = radii[i - 2], radii[i - 1], radii[i]
        if r2 < 1e-7:
            return "focus", 0.0
        if abs(r2 - r1) < 1e-7 * max(1.0, r2) and abs(r1 - r0) < 1e-7 * max(1.0, r1):
            return "cycle", r2
    tail = radii[-1]
    if tail > 0.9 * r_cap:
        return "escape", tail
    # drifting slowly: treat a contracting tail as a cycle estimate
    if abs(radii[-1] - radii[-2]) < 1e-5 * max(1.0, radii[-1]):
        return "cycle", radii[-1]
    if radii[-1] < 1e-6:
        return "focus", 0.0
    return "escape", tail


# ---------------------------------------------------------------------------
# Poincare compactification
# ---------------------------------------------------------------------------

def to_chart_u(u: float, v: float) -> tuple:
    """(z, w) = (v/u, 1/u); valid for u > 0."""
    return v / u, 1.0 / u


def from_chart_u(z: float, w: float) -> tuple:
    return 1.0 / w, z / w


def to_chart_v(u: float, v: float) -> tuple:
    """(q, w) = (u/v, 1/v); valid for v > 0."""
    return u / v, 1.0 / v


def from_chart_v(q: float, w: float) -> tuple:
    return q / w, 1.0 / w


@dataclass(frozen=True)
class InfinityPoint:
    direction: str
    chart: str
    eigenvalues: tuple
    degenerate_saddle: bool


@dataclass
class PortraitData:
    params: Params
    equilibria_reports: list
    infinity_points: tuple
    manifold_entry: State | None
    manifold_attractor: str | None


def infinity_fixed_points(a: Params) -> tuple:
    """The two fixed directions at infinity for every parameter value.

    In the v-direction chart, (q, w) = (0, 0) has eigenvalues (-1, 0): a
    semi-hyperbolic (degenerate) saddle whose center-unstable branch enters
    the finite plane.  In the u-direction chart the origin is fully
    degenerate (nilpotent)."""
    return (
        InfinityPoint(direction="u=0, v=+inf", chart="v", eigenvalues=(-1.0, 0.0),
                      degenerate_saddle=True),
        InfinityPoint(direction="u=+inf, v=0", chart="u", eigenvalues=(0.0, 0.0),
                      degenerate_saddle=False),
    )


def manifold_from_infinity(a: Params, *, offset: float = 1e-6,
                           w_resume: float = 0.02,
                           settings: IntegratorSettings = DEFAULT_SETTINGS,
                           t_chart: float = 1e6, t_plane: float = 5e4) -> tuple:
    """Follow the center-unstable branch of the degenerate saddle at
    (u=0, v=+inf) into the finite plane.

    Returns (entry_state, attractor_tag); the attractor tag names the finite
    limit set reached ('p0', 'p_mp', or 'none').

    The branch leaves the fixed point along the center eigendirection (the
    `offset` point (0, offset) relaxes onto it immediately, the transverse
    eigenvalue being -1), but between w = offset and w ~ 1e-2 the drift
    w' ~ (F+k) w^3 makes the chart system impossibly stiff for an explicit
    scheme.  The flow is monotone in w on that stretch, so integration
    resumes on the same branch at w_resume using the manifold expansion
    q = F w^3 - F (3F + 2k) w^5 + O(w^7) (relative truncation ~ w^4, and the
    transverse direction contracts it further)."""
    k, F = float(a.k), float(a.F)
    w0 = max(float(offset), w_resume)
    q0 = F * w0 ** 3 - F * (3 * F + 2 * k) * w0 ** 5
    status, t, q, w, *_ = kernels.integrate(
        kernels.FIELD_CHART_V, q0, w0, k, F, t_chart,
        settings.rel_tol, settings.abs_tol, 0.0, 50_000_000, 1.0, False, False,
        0.0, 0.75, 0.75)
    if status != kernels.BOX_EXIT:
        return None, "none"
    u, v = from_chart_v(q, w)
    entry = State(float(u), float(v))
    traj = integrate(entry, a, t_plane, settings, record=False)
    end = traj.final
    eq = equilibria(a)
    cands = [("p0", TRIVIAL_POINT)]
    if eq.p_mp is not None:
        cands.append(("p_mp", eq.p_mp))
    for name, pt in cands:
        if math.hypot(end.u - float(pt.u), end.v - float(pt.v)) < 1e-3:
            return entry, name
    return entry, "none"


def compactified_portrait(a: Params, *,
                          settings: IntegratorSettings = DEFAULT_SETTINGS
                          ) -> PortraitData:
    eq = equilibria(a)
    reports = [(pt, classify(pt, a)) for pt in eq.all_points()]
    entry, attractor = manifold_from_infinity(a, settings=settings)
    return PortraitData(params=a, equilibria_reports=reports,
                        infinity_points=infinity_fixed_points(a),
                        manifold_entry=entry, manifold_attractor=attractor)


# ---------------------------------------------------------------------------
# Portrait rendering
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PortraitSpec:
    width: int = 1000
    height: int = 1000
    window: tuple = ((0.0, 0.0), (1.05, 0.65))
    seeds_per_side: int = 5
    t_end: float = 3000.0
    max_samples: int = 4000

EQ_COLORS = {
    "saddle": "#cc0000",
    "stable-node": "#2e7d32",
    "stable-spiral": "#2e7d32",
    "unstable-node": "#e69500",
    "unstable-spiral": "#e69500",
}


def render_portrait(a: Params, spec: PortraitSpec = PortraitSpec(), *,
                    settings: IntegratorSettings | None = None,
                    with_cycles: bool = True) -> tuple:
    """Deterministic phase portrait: (svg_text, csv_text, metadata).

    Fixed seed grid, arrowheads at a fixed arc fraction, equilibria colored
    by class (the saddle as a red dot), detected cycles overlaid as closed
    curves.  Identical inputs give byte-identical output.
    """
    from .svgplot import SvgCanvas

    settings = settings or IntegratorSettings(rel_tol=1e-8, abs_tol=1e-11)
    (x0, y0), (x1, y1) = spec.window
    canvas = SvgCanvas(spec.width, spec.height, spec.window)
    csv_lines = ["trajectory,t,u,v"]
    n = spec.seeds_per_side
    seeds = []
    for i in range(n):
        for j in range(n):
            seeds.append(State(x0 + (x1 - x0) * (i + 0.5) / n,
                               y0 + (y1 - y0) * (j + 0.5) / n))
    for idx, s0 in enumerate(seeds):
        traj = integrate(s0, a, spec.t_end, settings, record=True)
        u, v, t = traj.u, traj.v, traj.t
        if len(u) > spec.max_samples:
            step = len(u) // spec.max_samples + 1
            u, v, t = u[::step], v[::step], t[::step]
        canvas.polyline(u, v, color="#9bbcd9", width=0.8)
        mid = len(u) // 3
        if mid + 1 < len(u):
            canvas.arrow(float(u[mid]), float(v[mid]),
                         float(u[mid + 1] - u[mid]), float(v[mid + 1] - v[mid]),
                         color="#9bbcd9")
        for tt, uu, vv in zip(t, u, v):
            csv_lines.append(f"{idx},{tt!r},{uu!r},{vv!r}")
    cycles = []
    if with_cycles:
        try:
            cycles = limit_cycle_census(a, settings)
        except Exception:
            cycles = []
        for c in cycles:
            traj = integrate(c.section_point, a, c.period,
                             IntegratorSettings(rel_tol=1e-10, abs_tol=1e-13),
                             record=True)
            color = "#1a5fb4" if c.stable else "#a51d2d"
            canvas.polyline(traj.u, traj.v, color=color, width=2.0, closed=True)
    eq = equilibria(a)
    meta_eq = []
    for pt in eq.all_points():
        rep = classify(pt, a)
        color = EQ_COLORS.get(rep.label, "#555555")
        canvas.circle(float(pt.u), float(pt.v), 5.0, color)
        meta_eq.append({"u": float(pt.u), "v": float(pt.v), "class": rep.label})
    meta = {
        "schema": 1,
        "k": float(a.k),
        "F": float(a.F),
        "equilibria": meta_eq,
        "cycles": [{"radius": c.radius, "period": c.period,
                    "multiplier": c.nontrivial_multiplier,
                    "stable": c.stable} for c in cycles],
        "window": [[x0, y0], [x1, y1]],
    }
    return canvas.render(), "\n".join(csv_lines) + "\n", meta
