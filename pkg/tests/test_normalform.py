import numpy as np
import pytest

from gskit.normalform import Series, poincare_normal_form
from gskit.ratmath import FieldComplex, Sqrt2


def _closed_c1(coeffs, omega):
    g20 = 2 * coeffs.get((2, 0), 0j)
    g11 = coeffs.get((1, 1), 0j)
    g02 = 2 * coeffs.get((0, 2), 0j)
    g21 = 2 * coeffs.get((2, 1), 0j)
    return (1j * g20 * g11 / (2 * omega) - 1j * abs(g11) ** 2 / omega
            - 1j * abs(g02) ** 2 / (6 * omega) + g21 / 2)


def test_engine_matches_closed_formula_on_synthetic_systems():
    rng = np.random.default_rng(41)
    for _ in range(10):
        omega = float(rng.uniform(0.2, 3.0))
        coeffs = {(2, 0): complex(*rng.normal(size=2)),
                  (1, 1): complex(*rng.normal(size=2)),
                  (0, 2): complex(*rng.normal(size=2)),
                  (2, 1): complex(*rng.normal(size=2)),
                  (3, 0): complex(*rng.normal(size=2)),
                  (1, 2): complex(*rng.normal(size=2)),
                  (0, 3): complex(*rng.normal(size=2))}
        c1, c2, _ = poincare_normal_form(
            coeffs, complex(0, omega), complex(1.0),
            lambda c: abs(c) < 1e-13)
        assert c1 == pytest.approx(_closed_c1(coeffs, omega), rel=1e-10)


def test_engine_removes_all_nonresonant_terms():
    coeffs = {(2, 0): 1 + 2j, (1, 1): 0.5 - 1j, (0, 2): -0.3 + 0.7j}
    c1, c2, rhs = poincare_normal_form(coeffs, complex(0, 1.3), complex(1.0),
                                       lambda c: abs(c) < 1e-13)
    leftover = {m: v for m, v in rhs.terms.items()
                if m not in ((1, 0), (2, 1), (3, 2)) and abs(v) > 1e-12}
    assert not leftover


def test_engine_pure_cubic_identity():
    # z' = i z + c z^2 zbar is already resonant: engine must return c exactly
    c = -0.25 + 0.6j
    c1, c2, _ = poincare_normal_form({(2, 1): c}, complex(0, 1.0), complex(1.0),
                                     lambda x: abs(x) < 1e-15)
    assert c1 == pytest.approx(c, rel=1e-14)
    assert abs(c2) < 1e-14


def test_engine_exact_field_arithmetic():
    # quadratic-only input over Q(sqrt 2, i): results stay in the field
    om = Sqrt2(0, 1)             # sqrt(2)
    i_om = FieldComplex(0, om)
    one = FieldComplex(1)
    half = FieldComplex(Sqrt2(1, 0) / 2)
    coeffs = {(2, 0): half, (1, 1): FieldComplex(1, Sqrt2(0, 1)),
              (0, 2): FieldComplex(Sqrt2(0, 1), 1)}
    c1, c2, _ = poincare_normal_form(coeffs, i_om, one, lambda c: c.is_zero())
    g20 = complex(coeffs[(2, 0)]) * 2
    g11 = complex(coeffs[(1, 1)])
    g02 = complex(coeffs[(0, 2)]) * 2
    w = float(om)
    expected = (1j * g20 * g11 / (2 * w) - 1j * abs(g11) ** 2 / w
                - 1j * abs(g02) ** 2 / (6 * w))
    assert complex(c1) == pytest.approx(expected, rel=1e-12)


def test_series_conjugation_and_product():
    a = Series({(1, 0): 1 + 1j, (0, 1): 2 - 1j})
    b = a.conj()
    assert b.terms[(0, 1)] == 1 - 1j
    assert b.terms[(1, 0)] == 2 + 1j
    prod = a.mul(a)
    assert prod.terms[(2, 0)] == (1 + 1j) ** 2
    assert prod.terms[(1, 1)] == 2 * (1 + 1j) * (2 - 1j)
