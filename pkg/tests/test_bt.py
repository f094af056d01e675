from fractions import Fraction as Fr

import numpy as np
import pytest

from gskit.bt import (A0, BT_PARAMS, BT_POINT, base_point, bt_coefficients,
                      bt_nondegeneracy, coefficients_in_frame, jordan_basis,
                      projected_component, shifted_field, transversality_matrix,
                      unfolding_field)
from gskit.core import Params, vector_field
from gskit.errors import SingularParameter
from gskit.ratmath import det_fraction_free


def test_shifted_field_zero_at_origin():
    assert shifted_field((Fr(0), Fr(0)), (Fr(0), Fr(0))) == (0, 0)


def test_shifted_field_composition_oracle():
    rng = np.random.default_rng(21)
    for _ in range(200):
        x = (float(rng.uniform(-0.2, 0.2)), float(rng.uniform(-0.1, 0.1)))
        alpha = (float(rng.uniform(-0.03, 0.03)), float(rng.uniform(-0.03, 0.03)))
        direct = shifted_field(x, alpha)
        composed = vector_field((x[0] + 0.5, x[1] + 0.25),
                                Params(alpha[1] + 1 / 16, alpha[0] + 1 / 16))
        assert direct[0] == pytest.approx(composed[0], abs=1e-14)
        assert direct[1] == pytest.approx(composed[1], abs=1e-14)


def test_shifted_field_singular_guard():
    with pytest.raises(SingularParameter):
        shifted_field((0.0, 0.0), (Fr(-1, 16), Fr(-1, 16)))


def test_linearization_at_origin_is_a0():
    # exact second-order stencil around 0 recovers the Jacobian of the shift
    h = Fr(1, 128)
    for j, e in enumerate(((h, Fr(0)), (Fr(0), h))):
        up = shifted_field(e, (Fr(0), Fr(0)))
        dn = shifted_field((-e[0], -e[1]), (Fr(0), Fr(0)))
        col = ((up[0] - dn[0]) / (2 * h), (up[1] - dn[1]) / (2 * h))
        assert col == (A0[0][j], A0[1][j])


def test_jordan_basis_reference_and_invariants():
    frame = jordan_basis()
    assert frame.v0 == (-2, 1)
    assert frame.v1 == (0, 8)
    assert frame.w0 == (Fr(-1, 2), 0)
    assert frame.w1 == (Fr(1, 16), Fr(1, 8))
    for name, residual in frame.check().items():
        if isinstance(residual, tuple):
            assert residual == (0, 0), name
        else:
            assert residual == 0, name


def test_a0_maps_v1_to_v0():
    frame = jordan_basis()
    img = (A0[0][0] * frame.v1[0] + A0[0][1] * frame.v1[1],
           A0[1][0] * frame.v1[0] + A0[1][1] * frame.v1[1])
    assert img == frame.v0


def test_alternative_frames_satisfy_invariants():
    for c, d in ((2, 0), (Fr(1, 3), 0), (-4, Fr(1, 2)), (1, -3)):
        frame = jordan_basis(c, d)
        for name, residual in frame.check().items():
            if isinstance(residual, tuple):
                assert residual == (0, 0), (c, d, name)
            else:
                assert residual == 0, (c, d, name)


def test_bt_coefficients_at_zero():
    a20, b20, b11 = bt_coefficients((Fr(0), Fr(0)))
    assert a20 == Fr(-1, 2)
    assert b20 == Fr(-1, 16)
    assert b11 == 0


def test_bt_coefficients_diagonal_cancellation():
    for t in (Fr(1, 100), Fr(-1, 200)):
        a20, b20, b11 = bt_coefficients((t, t))
        assert a20 == Fr(-1, 2)
        assert b20 == Fr(-1, 16)
        assert b11 == 0


def test_bt_coefficients_offdiagonal_value():
    a20, b20, b11 = bt_coefficients((Fr(1, 100), Fr(0)))
    assert b11 == Fr(4, 100) / Fr(108, 100)
    assert a20 == -Fr(23, 25) / (2 * Fr(27, 25))
    assert b20 == a20 / 8


def test_bt_coefficients_match_exact_projected_differences():
    # the closed forms are the second partials of the projected moving-point
    # expansion; the field is cubic so the stencil below is exact
    frame = jordan_basis()
    for alpha in ((Fr(0), Fr(0)), (Fr(1, 100), Fr(0)), (Fr(-1, 150), Fr(1, 200)),
                  (Fr(1, 64), Fr(1, 64))):
        a20c, b20c, b11c = bt_coefficients(alpha)
        a20n, b20n, b11n = coefficients_in_frame(frame, alpha)
        assert (a20c, b20c, b11c) == (a20n, b20n, b11n)


def test_bt_coefficients_match_float_finite_differences():
    rng = np.random.default_rng(22)
    frame = jordan_basis()
    h = 1e-4
    for _ in range(50):
        alpha = (float(rng.uniform(-0.01, 0.01)), float(rng.uniform(-0.01, 0.01)))
        a20c, b20c, b11c = bt_coefficients(alpha)

        def d2(w):
            return (projected_component(h, 0.0, alpha, w, frame)
                    - 2 * projected_component(0.0, 0.0, alpha, w, frame)
                    + projected_component(-h, 0.0, alpha, w, frame)) / (h * h)

        def d11(w):
            return (projected_component(h, h, alpha, w, frame)
                    - projected_component(h, -h, alpha, w, frame)
                    - projected_component(-h, h, alpha, w, frame)
                    + projected_component(-h, -h, alpha, w, frame)) / (4 * h * h)

        w0 = tuple(float(x) for x in frame.w0)
        w1 = tuple(float(x) for x in frame.w1)
        assert d2(w0) == pytest.approx(float(a20c), abs=1e-7)
        assert d2(w1) == pytest.approx(float(b20c), abs=1e-7)
        assert d11(w1) == pytest.approx(float(b11c), abs=1e-7)


def test_unfolding_field_matches_shift_at_zero():
    rng = np.random.default_rng(23)
    for _ in range(20):
        x = (Fr(rng.integers(-20, 20)) / 100, Fr(rng.integers(-20, 20)) / 100)
        assert unfolding_field(x, (Fr(0), Fr(0))) == shifted_field(x, (Fr(0), Fr(0)))
    bp = base_point((Fr(0), Fr(0)))
    assert (bp.u, bp.v) == (Fr(1, 2), Fr(1, 4))


def test_nondegeneracy_report():
    rep = bt_nondegeneracy()
    assert rep.a20 + rep.b11 == Fr(-1, 2)
    assert rep.b20 == Fr(-1, 16)
    assert rep.s == 1
    assert rep.transversality_det == Fr(-1, 512)
    assert rep.params == BT_PARAMS and rep.point == BT_POINT


def test_s_invariant_under_admissible_frames():
    for c, d in ((1, 0), (2, 0), (Fr(-1, 2), Fr(1, 4)), (3, -1)):
        frame = jordan_basis(c, d)
        a20, b20, b11 = coefficients_in_frame(frame)
        q = b20 * (a20 + b11)
        assert q > 0, (c, d, a20, b20, b11)


def test_transversality_matrix_entries_at_double_zero():
    m = transversality_matrix(Fr(1, 2), Fr(1, 4), Fr(1, 16), Fr(1, 16))
    expected = (
        (Fr(-1, 8), Fr(-1, 4), 0, Fr(1, 2)),
        (Fr(1, 16), Fr(1, 8), Fr(-1, 4), Fr(-1, 4)),
        (Fr(1, 2), Fr(1, 2), -1, -2),
        (Fr(-1, 32), 0, Fr(1, 8), 0),
    )
    assert m == expected
    assert det_fraction_free(m) == Fr(-1, 512)


def test_transversality_matrix_is_jacobian_of_extended_map():
    # finite differences of (f1, f2, trace, det) with respect to (u, v, k, F)
    rng = np.random.default_rng(24)

    def extended(u, v, k, F):
        f1, f2 = vector_field((u, v), Params(k, F))
        tr = -(F + v * v) - (F + k) + 2 * u * v
        det = (-(F + v * v)) * (-(F + k) + 2 * u * v) + 2 * u * v * v * v
        return np.array([f1, f2, tr, det])

    h = 1e-6
    for _ in range(20):
        z = np.array([rng.uniform(0.2, 0.8), rng.uniform(0.05, 0.4),
                      rng.uniform(0.01, 0.1), rng.uniform(0.01, 0.1)])
        analytic = np.array(transversality_matrix(*z), float)
        for j in range(4):
            zp, zm = z.copy(), z.copy()
            zp[j] += h
            zm[j] -= h
            col = (extended(*zp) - extended(*zm)) / (2 * h)
            assert np.allclose(analytic[:, j], col, rtol=1e-6, atol=1e-6)
