"""Pure-Python integration kernels (reference implementation).

Dormand-Prince 5(4) with FSAL, Hairer's quartic dense output, a first-quadrant
step guard, ray-crossing event location and variational (monodromy)
propagation, specialized to the Gray-Scott kinetics and its two
compactification charts.  gskit.kernels selects these only when the compiled
twin in gskit._speedups is unavailable (or GSKIT_BACKEND=pure).

Shared status codes: 0 ok, 1 max_steps exhausted, 2 step underflow,
4 left the stop box.
"""
from __future__ import annotations

import math

BACKEND_NAME = "pure"

OK = 0
MAX_STEPS = 1
UNDERFLOW = 2
BOX_EXIT = 4

# Dormand-Prince 5(4) tableau
_C2, _C3, _C4, _C5 = 0.2, 0.3, 0.8, 8.0 / 9.0
_A21 = 0.2
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
_A61, _A62, _A63, _A64, _A65 = (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0,
                                49.0 / 176.0, -5103.0 / 18656.0)
_B1, _B3, _B4, _B5, _B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
_E1, _E3, _E4, _E5, _E6, _E7 = (71.0 / 57600.0, -71.0 / 16695.0, 71.0 / 1920.0,
                                -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)
# dense-output weights (Hairer, Norsett, Wanner DOPRI5)
_D1 = -12715105075.0 / 11282082432.0
_D3 = 87487479700.0 / 32700410799.0
_D4 = -10690763975.0 / 1880347072.0
_D5 = 701980252875.0 / 199316789632.0
_D6 = -1453857185.0 / 822651844.0
_D7 = 69997945.0 / 29380423.0

FIELD_PLANE = 0
FIELD_CHART_U = 1   # u = 1/w, v = z/w; state (z, w), time rescaled by w^2
FIELD_CHART_V = 2   # u = q/w, v = 1/w; state (q, w), time rescaled by w^2


def field_eval(fid: int, sgn: float, x: float, y: float, k: float, F: float):
    if fid == FIELD_PLANE:
        uvv = x * y * y
        return sgn * (-uvv + F * (1.0 - x)), sgn * (uvv - (F + k) * y)
    if fid == FIELD_CHART_U:
        z, w = x, y
        return (sgn * (z * z * (1.0 + z) - k * z * w * w - F * z * w * w * w),
                sgn * (z * z * w - F * w ** 4 + F * w ** 3))
    if fid == FIELD_CHART_V:
        q, w = x, y
        return (sgn * (-q * (1.0 + q) + k * q * w * w + F * w ** 3),
                sgn * (-q * w + (F + k) * w ** 3))
    raise ValueError(f"unknown field id {fid}")


def _jac_plane(sgn, u, v, k, F):
    return (sgn * (-(F + v * v)), sgn * (-2.0 * u * v),
            sgn * (v * v), sgn * (2.0 * u * v - (F + k)))


def _initial_step(fid, sgn, x, y, k, F, rtol, atol, max_step):
    fx, fy = field_eval(fid, sgn, x, y, k, F)
    sc_x = atol + rtol * abs(x)
    sc_y = atol + rtol * abs(y)
    d0 = math.sqrt(0.5 * ((x / sc_x) ** 2 + (y / sc_y) ** 2))
    d1 = math.sqrt(0.5 * ((fx / sc_x) ** 2 + (fy / sc_y) ** 2))
    h = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    return min(h, max_step)


class _Stepper:
    """One DP54 integration; exposes dense output for the last step."""

    __slots__ = ("fid", "sgn", "k", "F", "rtol", "atol", "max_step",
                 "quadrant_guard", "fixed_step", "t", "x", "y", "h",
                 "k1x", "k1y", "hold", "r1x", "r2x", "r3x", "r4x", "r5x",
                 "r1y", "r2y", "r3y", "r4y", "r5y", "told")

    def __init__(self, fid, sgn, x0, y0, k, F, rtol, atol, max_step,
                 quadrant_guard, fixed_step=0.0, first_step=0.0):
        self.fid = fid
        self.sgn = sgn
        self.k = k
        self.F = F
        self.rtol = rtol
        self.atol = atol
        self.max_step = max_step if max_step > 0 else math.inf
        self.quadrant_guard = quadrant_guard
        self.fixed_step = fixed_step
        self.t = 0.0
        self.x = x0
        self.y = y0
        self.k1x, self.k1y = field_eval(fid, sgn, x0, y0, k, F)
        if fixed_step > 0.0:
            self.h = fixed_step
        elif first_step > 0.0:
            self.h = min(first_step, self.max_step)
        else:
            self.h = _initial_step(fid, sgn, x0, y0, k, F, rtol, atol, self.max_step)
        self.hold = 0.0
        self.told = 0.0

    def advance(self, t_limit: float) -> int:
        """Take one accepted step, not passing t_limit.  Returns status."""
        fid, sgn, k, F = self.fid, self.sgn, self.k, self.F
        rtol, atol = self.rtol, self.atol
        fixed = self.fixed_step > 0.0
        rejected = 0
        while True:
            h = self.h
            if not fixed:
                h = min(h, self.max_step)
            if self.t + h >= t_limit:
                h = t_limit - self.t
            if h <= 1e-15 * max(1.0, abs(self.t)):
                return UNDERFLOW
            x, y = self.x, self.y
            k1x, k1y = self.k1x, self.k1y
            k2x, k2y = field_eval(fid, sgn, x + h * _A21 * k1x, y + h * _A21 * k1y, k, F)
            k3x, k3y = field_eval(fid, sgn, x + h * (_A31 * k1x + _A32 * k2x),
                                  y + h * (_A31 * k1y + _A32 * k2y), k, F)
            k4x, k4y = field_eval(fid, sgn, x + h * (_A41 * k1x + _A42 * k2x + _A43 * k3x),
                                  y + h * (_A41 * k1y + _A42 * k2y + _A43 * k3y), k, F)
            k5x, k5y = field_eval(fid, sgn,
                                  x + h * (_A51 * k1x + _A52 * k2x + _A53 * k3x + _A54 * k4x),
                                  y + h * (_A51 * k1y + _A52 * k2y + _A53 * k3y + _A54 * k4y),
                                  k, F)
            k6x, k6y = field_eval(fid, sgn,
                                  x + h * (_A61 * k1x + _A62 * k2x + _A63 * k3x
                                           + _A64 * k4x + _A65 * k5x),
                                  y + h * (_A61 * k1y + _A62 * k2y + _A63 * k3y
                                           + _A64 * k4y + _A65 * k5y), k, F)
            xn = x + h * (_B1 * k1x + _B3 * k3x + _B4 * k4x + _B5 * k5x + _B6 * k6x)
            yn = y + h * (_B1 * k1y + _B3 * k3y + _B4 * k4y + _B5 * k5y + _B6 * k6y)
            k7x, k7y = field_eval(fid, sgn, xn, yn, k, F)
            if fixed:
                err = 0.0
            else:
                ex = h * (_E1 * k1x + _E3 * k3x + _E4 * k4x + _E5 * k5x + _E6 * k6x + _E7 * k7x)
                ey = h * (_E1 * k1y + _E3 * k3y + _E4 * k4y + _E5 * k5y + _E6 * k6y + _E7 * k7y)
                sx = atol + rtol * max(abs(x), abs(xn))
                sy = atol + rtol * max(abs(y), abs(yn))
                err = math.sqrt(0.5 * ((ex / sx) ** 2 + (ey / sy) ** 2))
            guard_bad = (self.quadrant_guard and self.fid == FIELD_PLANE
                         and (xn < -self.atol or yn < -self.atol))
            if (err <= 1.0 and not guard_bad) or fixed:
                if self.quadrant_guard and self.fid == FIELD_PLANE:
                    # snap within-tolerance undershoot onto the invariant axes
                    snapped = False
                    if -self.atol <= xn < 0.0:
                        xn, snapped = 0.0, True
                    if -self.atol <= yn < 0.0:
                        yn, snapped = 0.0, True
                    if snapped:
                        k7x, k7y = field_eval(fid, sgn, xn, yn, k, F)
                # dense-output coefficients for this step
                dx = xn - x
                bsx = h * k1x - dx
                self.r1x, self.r2x, self.r3x = x, dx, bsx
                self.r4x = dx - h * k7x - bsx
                self.r5x = h * (_D1 * k1x + _D3 * k3x + _D4 * k4x + _D5 * k5x
                                + _D6 * k6x + _D7 * k7x)
                dy = yn - y
                bsy = h * k1y - dy
                self.r1y, self.r2y, self.r3y = y, dy, bsy
                self.r4y = dy - h * k7y - bsy
                self.r5y = h * (_D1 * k1y + _D3 * k3y + _D4 * k4y + _D5 * k5y
                                + _D6 * k6y + _D7 * k7y)
                self.told = self.t
                self.hold = h
                self.t += h
                self.x, self.y = xn, yn
                self.k1x, self.k1y = k7x, k7y
                if not fixed:
                    fac = 0.9 * err ** -0.2 if err > 1e-30 else 5.0
                    if rejected:
                        fac = min(fac, 1.0)
                    self.h = h * min(5.0, max(0.2, fac))
                return OK
            rejected = 1
            fac = 0.9 * err ** -0.2 if err > 1e-30 else 0.5
            if guard_bad:
                fac = min(fac, 0.5)
            self.h = h * min(0.9, max(0.1, fac))

    def dense(self, theta: float):
        """State at told + theta*hold inside the last accepted step."""
        th1 = 1.0 - theta
        x = self.r1x + theta * (self.r2x + th1 * (self.r3x + theta * (self.r4x + th1 * self.r5x)))
        y = self.r1y + theta * (self.r2y + th1 * (self.r3y + theta * (self.r4y + th1 * self.r5y)))
        return x, y


def integrate(fid, x0, y0, k, F, t_end, rtol, atol, max_step, max_steps,
              time_sign, quadrant_guard, record, fixed_step=0.0,
              box_x=0.0, box_y=0.0, first_step=0.0):
    """Integrate to t_end (> 0; time_sign=-1 runs the reversed field).

    Returns (status, t_reached, x, y, ts, xs, ys); the sample lists are
    populated only when record is true.
    """
    st = _Stepper(fid, float(time_sign), x0, y0, k, F, rtol, atol, max_step,
                  quadrant_guard, fixed_step, first_step)
    ts, xs, ys = [], [], []
    if record:
        ts.append(0.0)
        xs.append(x0)
        ys.append(y0)
    steps = 0
    while st.t < t_end:
        status = st.advance(t_end)
        if status != OK:
            return status, st.t, st.x, st.y, ts, xs, ys
        if record:
            ts.append(st.t)
            xs.append(st.x)
            ys.append(st.y)
        if box_x > 0.0 and (st.x > box_x or st.y > box_y):
            return BOX_EXIT, st.t, st.x, st.y, ts, xs, ys
        steps += 1
        if steps >= max_steps:
            return MAX_STEPS, st.t, st.x, st.y, ts, xs, ys
    return OK, st.t, st.x, st.y, ts, xs, ys


def ray_crossings(x0, y0, k, F, cx, cy, dx, dy, orient, max_crossings,
                  t_max, rtol, atol, max_step, s_min, t_min, time_sign,
                  quadrant_guard, max_steps=20_000_000):
    """Crossings of the ray {(cx,cy) + s (dx,dy) : s > s_min}.

    Integrates the plane field (reversed when time_sign=-1) and locates sign
    changes of g = dx*(y-cy) - dy*(x-cx) with the dense interpolant.  orient
    filters by crossing direction: +1 keeps g increasing, -1 decreasing,
    0 both.  Returns (status, hits) with hits a list of (t, s, x, y);
    status OK means max_crossings were found.
    """
    st = _Stepper(FIELD_PLANE, float(time_sign), x0, y0, k, F, rtol, atol,
                  max_step, quadrant_guard)
    hits = []

    def g_of(x, y):
        return dx * (y - cy) - dy * (x - cx)

    g_prev = g_of(x0, y0)
    steps = 0
    while st.t < t_max:
        status = st.advance(t_max)
        if status != OK:
            return status, hits
        g_now = g_of(st.x, st.y)
        if (g_prev < 0.0 <= g_now) or (g_prev > 0.0 >= g_now) or g_prev == 0.0:
            # subdivide the step; the interpolant may hold several roots
            nsub = 16
            th_prev = 0.0
            gp = g_prev
            for i in range(1, nsub + 1):
                th = i / nsub
                xx, yy = st.dense(th)
                gn = g_of(xx, yy)
                if (gp < 0.0 <= gn) or (gp > 0.0 >= gn):
                    lo, hi, glo = th_prev, th, gp
                    for _ in range(60):
                        mid = 0.5 * (lo + hi)
                        xm, ym = st.dense(mid)
                        gm = g_of(xm, ym)
                        if (glo < 0.0) == (gm < 0.0):
                            lo, glo = mid, gm
                        else:
                            hi = mid
                    thr = 0.5 * (lo + hi)
                    xh, yh = st.dense(thr)
                    th_t = st.told + thr * st.hold
                    s = (xh - cx) * dx + (yh - cy) * dy
                    fx, fy = field_eval(FIELD_PLANE, st.sgn, xh, yh, k, F)
                    gdot = dx * fy - dy * fx
                    if (s > s_min and th_t >= t_min
                            and (orient == 0 or (gdot > 0) == (orient > 0))):
                        hits.append((th_t, s, xh, yh))
                        if len(hits) >= max_crossings:
                            return OK, hits
                th_prev, gp = th, gn
        g_prev = g_now
        steps += 1
        if steps >= max_steps:
            return MAX_STEPS, hits
    return MAX_STEPS, hits


def monodromy(x0, y0, k, F, t_total, rtol, atol, max_step, time_sign=1.0,
              max_steps=20_000_000):
    """Propagate the state and the 2x2 variational matrix over [0, t_total].

    Returns (status, x, y, m11, m12, m21, m22); the matrix maps initial
    displacements to final displacements (monodromy when the orbit is
    periodic with period t_total).
    """
    sgn = float(time_sign)
    y = [x0, y0, 1.0, 0.0, 0.0, 1.0]

    def rhs(s):
        u, v = s[0], s[1]
        fu, fv = field_eval(FIELD_PLANE, sgn, u, v, k, F)
        j11, j12, j21, j22 = _jac_plane(sgn, u, v, k, F)
        return [fu, fv,
                j11 * s[2] + j12 * s[4], j11 * s[3] + j12 * s[5],
                j21 * s[2] + j22 * s[4], j21 * s[3] + j22 * s[5]]

    t = 0.0
    f1 = rhs(y)
    h = min(_initial_step(FIELD_PLANE, sgn, x0, y0, k, F, rtol, atol,
                          max_step if max_step > 0 else math.inf), 1e-2)
    hmax = max_step if max_step > 0 else math.inf
    steps = 0
    a = ((_A21,), (_A31, _A32), (_A41, _A42, _A43), (_A51, _A52, _A53, _A54),
         (_A61, _A62, _A63, _A64, _A65))
    b = (_B1, 0.0, _B3, _B4, _B5, _B6)
    e = (_E1, 0.0, _E3, _E4, _E5, _E6, _E7)
    while t < t_total:
        h = min(h, hmax, t_total - t)
        if h <= 1e-15 * max(1.0, t):
            return UNDERFLOW, y[0], y[1], y[2], y[3], y[4], y[5]
        ks = [f1]
        for row in a:
            yy = [y[i] + h * sum(row[j] * ks[j][i] for j in range(len(row)))
                  for i in range(6)]
            ks.append(rhs(yy))
        yn = [y[i] + h * sum(b[j] * ks[j][i] for j in range(6)) for i in range(6)]
        k7 = rhs(yn)
        ks.append(k7)
        err = 0.0
        for i in range(6):
            ei = h * sum(e[j] * ks[j][i] for j in range(7))
            sc = atol + rtol * max(abs(y[i]), abs(yn[i]))
            err += (ei / sc) ** 2
        err = math.sqrt(err / 6.0)
        if err <= 1.0:
            t += h
            y = yn
            f1 = k7
            h *= min(5.0, max(0.2, 0.9 * err ** -0.2 if err > 1e-30 else 5.0))
        else:
            h *= min(0.9, max(0.1, 0.9 * err ** -0.2))
        steps += 1
        if steps >= max_steps:
            return MAX_STEPS, y[0], y[1], y[2], y[3], y[4], y[5]
    return OK, y[0], y[1], y[2], y[3], y[4], y[5]
