from fractions import Fraction as Fr

import numpy as np
import pytest

from gskit.core import Params, State, jacobian, jet, trace_det, vector_field
from gskit.errors import DomainError


def test_trivial_equilibrium():
    for params in (Params(0.01, 0.01), Params(Fr(7, 100), Fr(2, 100))):
        assert vector_field(State(1, 0), params) == (0, 0)


def test_double_zero_equilibrium_exact():
    a = Params(Fr(1, 16), Fr(1, 16))
    assert vector_field(State(Fr(1, 2), Fr(1, 4)), a) == (0, 0)


def test_field_direct_evaluation():
    f = vector_field(State(1.0, 1.0), Params(0.06, 0.04))
    assert f[0] == pytest.approx(-1.0, abs=1e-15)
    assert f[1] == pytest.approx(0.9, abs=1e-15)


def test_params_validation():
    with pytest.raises(DomainError):
        Params(-0.01, 0.02)
    with pytest.raises(DomainError):
        Params(0.01, 0.0)
    assert Params(Fr(1, 16), Fr(1, 16)).gamma == 2


def test_jacobian_at_trivial_point():
    a = Params(Fr(3, 50), Fr(1, 25))
    jac = jacobian(State(Fr(1), Fr(0)), a)
    assert jac == ((-a.F, 0), (0, -(a.F + a.k)))


def test_jacobian_at_double_zero_point():
    jac = jacobian(State(Fr(1, 2), Fr(1, 4)), Params(Fr(1, 16), Fr(1, 16)))
    assert jac == ((Fr(-1, 8), Fr(-1, 4)), (Fr(1, 16), Fr(1, 8)))


def _fd_jacobian(p, a, h=1e-6):
    out = np.empty((2, 2))
    for j in range(2):
        up = [p.u, p.v]
        dn = [p.u, p.v]
        up[j] += h
        dn[j] -= h
        fu = vector_field(tuple(up), a)
        fd = vector_field(tuple(dn), a)
        out[:, j] = [(fu[i] - fd[i]) / (2 * h) for i in range(2)]
    return out


def test_jacobian_matches_finite_differences():
    rng = np.random.default_rng(3)
    for _ in range(40):
        a = Params(float(rng.uniform(0.005, 0.1)), float(rng.uniform(0.005, 0.2)))
        p = State(float(rng.uniform(0, 1.2)), float(rng.uniform(0, 0.8)))
        exact = np.array(jacobian(p, a))
        approx = _fd_jacobian(p, a)
        assert np.allclose(exact, approx, rtol=1e-8, atol=1e-8)


def test_bilinear_form_matches_finite_differences():
    rng = np.random.default_rng(4)
    a = Params(0.04, 0.06)
    h = 1e-5
    for _ in range(10):
        p = State(float(rng.uniform(0, 1)), float(rng.uniform(0, 1)))
        jt = jet(p, a)
        x = rng.normal(size=2)
        y = rng.normal(size=2)
        # directional second difference of f along x, y
        def f(q):
            return np.array(vector_field(q, a))
        base = (p.u, p.v)
        num = (f((base[0] + h * (x[0] + y[0]), base[1] + h * (x[1] + y[1])))
               - f((base[0] + h * x[0], base[1] + h * x[1]))
               - f((base[0] + h * y[0], base[1] + h * y[1]))
               + f(base)) / (h * h)
        assert np.allclose(np.array(jt.B(x, y)), num, rtol=1e-4, atol=1e-4)


def test_trilinear_form_state_independent():
    rng = np.random.default_rng(5)
    a = Params(0.03, 0.02)
    ref = jet(State(0.3, 0.2), a).c_tensor
    for _ in range(100):
        p = State(float(rng.uniform(0, 2)), float(rng.uniform(0, 2)))
        assert jet(p, a).c_tensor == ref


def test_trilinear_form_values():
    jt = jet(State(Fr(1, 2), Fr(1, 4)), Params(Fr(1, 16), Fr(1, 16)))
    # only u,v,v permutations survive; f1_uvv = -2 so C1(e_u, e_v, e_v) = -2
    assert jt.C((1, 0), (0, 1), (0, 1)) == (-2, 2)
    assert jt.C((0, 1), (1, 0), (0, 1)) == (-2, 2)
    assert jt.C((0, 1), (0, 1), (0, 1)) == (0, 0)


def test_jet_trace_det_closed_forms_at_equilibria():
    from gskit.equilibria import equilibria
    rng = np.random.default_rng(6)
    n = 0
    while n < 100:
        k = float(rng.uniform(0.005, 0.06))
        F = float(rng.uniform(0.005, 0.08))
        a = Params(k, F)
        eq = equilibria(a)
        if eq.kind != "pair":
            continue
        n += 1
        for pt in (eq.p_mp, eq.p_pm):
            tr, det = trace_det(jet(pt, a).jacobian)
            v = pt.v
            assert abs(det - (v * v - F) * (F + k)) <= 1e-13
            assert abs(tr - (k - v * v)) <= 1e-13
            f = vector_field(pt, a)
            assert max(abs(f[0]), abs(f[1])) < 1e-12
