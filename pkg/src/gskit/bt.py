"""Double-zero (Takens-Bogdanov) point verification in exact arithmetic.

The organizing point sits at (k, F) = (1/16, 1/16) with equilibrium
(1/2, 1/4).  This module builds the Jordan frame of the nilpotent
linearization, the quadratic normal-form coefficient family, the sign s
deciding the local portrait, and the 4x4 transversality determinant, all
over Fractions so the checkpoint values carry zero rounding error.

Two expansions of the field appear:

* ``shifted_field`` moves the origin to the fixed point (1/2, 1/4) and the
  parameters by (1/16, 1/16); it commutes with the original field.
* ``unfolding_field`` expands around the parameter-dependent base point
  (1/2, k/(2(F+k))), the family along which the quadratic coefficient
  closed forms below are taken.  Both coincide at alpha = 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Params, State, jacobian, vector_field
from .errors import SingularParameter
from .ratmath import det_fraction_free

BT_PARAMS = Params(Fraction(1, 16), Fraction(1, 16))
BT_POINT = State(Fraction(1, 2), Fraction(1, 4))

A0 = ((Fraction(-1, 8), Fraction(-1, 4)),
      (Fraction(1, 16), Fraction(1, 8)))


@dataclass(frozen=True)
class BTFrame:
    """Jordan basis of the nilpotent part: A0 v0 = 0, A0 v1 = v0,
    A0^T w1 = 0, A0^T w0 = w1, with <v0,w0> = <v1,w1> = 1 and
    <v1,w0> = <v0,w1> = 0."""

    v0: tuple
    v1: tuple
    w0: tuple
    w1: tuple

    def check(self) -> dict:
        """Exact residuals of the six frame equations (all must be zero)."""
        mv = _matvec
        dot = _dot
        a0t = _transpose(A0)
        return {
            "A0 v0": mv(A0, self.v0),
            "A0 v1 - v0": _sub(mv(A0, self.v1), self.v0),
            "A0^T w1": mv(a0t, self.w1),
            "A0^T w0 - w1": _sub(mv(a0t, self.w0), self.w1),
            "<v0,w0> - 1": dot(self.v0, self.w0) - 1,
            "<v1,w1> - 1": dot(self.v1, self.w1) - 1,
            "<v1,w0>": dot(self.v1, self.w0),
            "<v0,w1>": dot(self.v0, self.w1),
        }


@dataclass(frozen=True)
class BTReport:
    """Checkpoint data; s = sign(b20 (a20 + b11)), the reduction invariant
    (frame-independent; with b11 = 0 in the reference frame it coincides
    with sign(b20 a20 + b11))."""

    a20: Fraction
    b20: Fraction
    b11: Fraction
    s: int
    transversality_det: Fraction
    frame: BTFrame
    params: Params = BT_PARAMS
    point: State = BT_POINT


def _matvec(m, x):
    return (m[0][0] * x[0] + m[0][1] * x[1], m[1][0] * x[0] + m[1][1] * x[1])


def _dot(x, y):
    return x[0] * y[0] + x[1] * y[1]


def _sub(x, y):
    return (x[0] - y[0], x[1] - y[1])


def _transpose(m):
    return ((m[0][0], m[1][0]), (m[0][1], m[1][1]))


def jordan_basis(c=Fraction(1), shear=Fraction(0)) -> BTFrame:
    """Jordan frame for A0; c=1, shear=0 gives the reference basis
    v0=(-2,1), v1=(0,8), w0=(-1/2,0), w1=(1/16,1/8).

    Any admissible frame is v0' = c v0, v1' = c v1 + shear v0 with the dual
    vectors recomputed from the defining equations; used to test that the
    sign s is frame-independent.
    """
    if c == 0:
        raise ValueError("basis scale must be nonzero")
    c = Fraction(c)
    shear = Fraction(shear)
    v0 = (-2 * c, c)
    v1 = (-2 * shear, 8 * c + shear)
    # w1 spans ker(A0^T) = span (1/16, 1/8); scale for <v1, w1> = 1
    w1_dir = (Fraction(1, 16), Fraction(1, 8))
    s1 = _dot(v1, w1_dir)
    w1 = (w1_dir[0] / s1, w1_dir[1] / s1)
    # particular solution of A0^T w0 = w1, then shift along w1 for <v1,w0>=0
    w0p = _solve_particular_adjoint(w1)
    t = -_dot(v1, w0p)
    w0 = (w0p[0] + t * w1[0], w0p[1] + t * w1[1])
    frame = BTFrame(v0=v0, v1=v1, w0=w0, w1=w1)
    residuals = frame.check()
    assert all(_all_zero(r) for r in residuals.values()), residuals
    return frame


def _solve_particular_adjoint(rhs):
    # A0^T w = rhs with A0^T = ((-1/8, 1/16), (-1/4, 1/8)); singular, rank 1.
    # Rows are proportional (row2 = 2*row1); solve row1 with w2 = 0.
    a11 = Fraction(-1, 8)
    if rhs[1] != 2 * rhs[0]:
        raise ValueError("rhs not in the range of A0^T")
    return (rhs[0] / a11, Fraction(0))


def _all_zero(r):
    if isinstance(r, tuple):
        return all(x == 0 for x in r)
    return r == 0


def shifted_field(x, alpha):
    """Field in coordinates centered at (1/2, 1/4) with parameter offsets
    alpha = (F - 1/16, k - 1/16).  Identical to composing the original field
    with the shift."""
    a1, a2 = alpha
    _guard(a1, a2)
    p = (x[0] + Fraction(1, 2), x[1] + Fraction(1, 4))
    return vector_field(p, Params(a2 + Fraction(1, 16), a1 + Fraction(1, 16)))


def base_point(alpha) -> State:
    """Base point (1/2, k/(2(F+k))) of the coefficient-family expansion."""
    a1, a2 = alpha
    _guard(a1, a2)
    k = a2 + Fraction(1, 16)
    fk = a1 + a2 + Fraction(1, 8)
    return State(Fraction(1, 2), k / (2 * fk))


def unfolding_field(x, alpha):
    """Field expanded around the moving base point; equals shifted_field at
    alpha = 0."""
    a1, a2 = alpha
    bp = base_point(alpha)
    p = (x[0] + bp.u, x[1] + bp.v)
    return vector_field(p, Params(a2 + Fraction(1, 16), a1 + Fraction(1, 16)))


def projected_component(y1, y2, alpha, w, frame: BTFrame | None = None):
    """<unfolding_field(y1 v0 + y2 v1, alpha), w> for w in {frame.w0, frame.w1}."""
    frame = frame or jordan_basis()
    x = (y1 * frame.v0[0] + y2 * frame.v1[0], y1 * frame.v0[1] + y2 * frame.v1[1])
    f = unfolding_field(x, alpha)
    return f[0] * w[0] + f[1] * w[1]


def _guard(a1, a2):
    if 8 * a2 + 8 * a1 + 1 == 0:
        raise SingularParameter("parameter offsets hit 8*a2 + 8*a1 + 1 = 0")


def bt_coefficients(alpha):
    """Quadratic coefficients (a20, b20, b11) of the projected expansion.

    a20 and b11 follow the closed forms of the moving-point expansion;
    b20 = a20 / 8 (the projected second components are proportional).  Each
    equals the corresponding second partial of projected_component at y = 0.
    """
    a1, a2 = alpha
    _guard(a1, a2)
    den = 8 * a2 + 8 * a1 + 1
    a20 = -(24 * a2 - 8 * a1 + 1) / (2 * den)
    b20 = -(24 * a2 - 8 * a1 + 1) / (16 * den)
    b11 = 4 * (a1 - a2) / den
    return a20, b20, b11


def transversality_matrix(u, v, k, F):
    """Jacobian of (u,v,k,F) -> (f1, f2, trace Df, det Df)."""
    return (
        (-v * v - F, -2 * u * v, 0, 1 - u),
        (v * v, 2 * u * v - F - k, -v, -v),
        (2 * v, 2 * (u - v), -1, -2),
        (-2 * F * v, -2 * F * u + 2 * (F + k) * v, F + v * v,
         2 * F + k + v * (v - 2 * u)),
    )


def trace_expr(u, v, k, F):
    tr, _ = _trace_det(u, v, k, F)
    return tr


def det_expr(u, v, k, F):
    _, det = _trace_det(u, v, k, F)
    return det


def _trace_det(u, v, k, F):
    jac = jacobian((u, v), Params(k, F))
    return (jac[0][0] + jac[1][1],
            jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0])


def bt_nondegeneracy(frame: BTFrame | None = None) -> BTReport:
    """Checkpoint report at the double-zero point, fully exact.

    The quadratic coefficients evaluate to a20 = -1/2, b20 = -1/16, b11 = 0,
    so s = sign(b20 (a20 + b11)) = +1 and the Hopf branch emanating from the
    point sheds repelling cycles; the 4x4 transversality determinant is
    -1/512.
    """
    frame = frame or jordan_basis()
    zero = (Fraction(0), Fraction(0))
    a20, b20, b11 = bt_coefficients(zero)
    quantity = b20 * (a20 + b11)
    s = 1 if quantity > 0 else (-1 if quantity < 0 else 0)
    det = det_fraction_free(transversality_matrix(
        BT_POINT.u, BT_POINT.v, BT_PARAMS.k, BT_PARAMS.F))
    return BTReport(a20=a20, b20=b20, b11=b11, s=s,
                    transversality_det=det, frame=frame)


def coefficients_in_frame(frame: BTFrame, alpha=(Fraction(0), Fraction(0))):
    """(a20, b20, b11) recomputed in an arbitrary admissible frame by exact
    second differences of the projected components (the field is cubic, so
    central differences are exact)."""
    h = Fraction(1, 64)

    def d2_11(w):
        return (projected_component(h, 0, alpha, w, frame)
                - 2 * projected_component(0, 0, alpha, w, frame)
                + projected_component(-h, 0, alpha, w, frame)) / (h * h)

    def d2_12(w):
        return (projected_component(h, h, alpha, w, frame)
                - projected_component(h, -h, alpha, w, frame)
                - projected_component(-h, h, alpha, w, frame)
                + projected_component(-h, -h, alpha, w, frame)) / (4 * h * h)

    return d2_11(frame.w0), d2_11(frame.w1), d2_12(frame.w1)
