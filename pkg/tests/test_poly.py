from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import exact_cubics, exact_polys, unimodular, u, x
from waring.poly import (
    CubicForm,
    LinearForm,
    ModeError,
    Poly,
    QQi,
    QuadraticForm,
    check_scalar,
    parse_exact,
)


class TestScalars:
    def test_gaussian_rationals_are_closed(self):
        z = QQi(Fraction(1, 2), 3)
        assert z * z.conjugate() == Fraction(1, 4) + 9
        assert (z / z) == 1
        assert QQi(0, 1) ** 2 == -1

    def test_mixed_mode_rejected(self):
        with pytest.raises(ModeError):
            check_scalar(0.5, True)
        with pytest.raises(ModeError):
            check_scalar(Fraction(1, 2), False)
        with pytest.raises(ModeError):
            x(1) + x(1, exact=False)

    def test_parse_exact(self):
        assert parse_exact("3/6") == Fraction(1, 2)
        assert parse_exact(" 4 ") == 4
        with pytest.raises(ZeroDivisionError):
            parse_exact("1/0")


class TestArithmetic:
    def test_difference_of_squares(self):
        assert (x(1) + x(2)) * (x(1) - x(2)) == x(1) ** 2 - x(2) ** 2

    def test_additive_identity(self):
        p = x(1) * u(2) + x(3)
        assert p + Poly.zero() == p

    def test_multinomial_coefficient(self):
        assert ((x(1) + x(2) + x(3)) ** 3).coeff((1, 1, 1)) == 6

    def test_no_stored_zeros(self):
        p = x(1) - x(1)
        assert p.is_zero() and p.terms == {}
        assert (x(1, False) - x(1, False)).terms == {}

    def test_bidegree(self):
        assert (x(1) ** 2 * u(3)).bidegree() == (2, 1)
        assert (x(1) + u(1) * x(2)).bidegree() is None

    @given(exact_polys(), exact_polys(), exact_polys())
    def test_ring_axioms(self, p, q, r):
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p + q == q + p

    @given(exact_polys(max_deg=2), exact_polys(max_deg=2))
    def test_float_mul_matches_exact(self, p, q):
        exact = (p * q).to_float()
        fl = p.to_float() * q.to_float()
        scale = max(exact.coeff_norm(), 1.0)
        assert (exact - fl).coeff_norm() <= 1e-12 * scale


class TestCalculus:
    def test_diff(self):
        assert (x(1) ** 3).diff("x1") == (x(1) ** 2).scale(3)
        assert (u(1) * x(1)).diff("u1") == x(1)
        assert (x(2) ** 3).diff("x1").is_zero()

    def test_mixed_derivative(self):
        p = x(1) ** 2 * x(2) * x(3) ** 3
        assert p.dx((1, 1, 2)) == (x(1) * x(3)).scale(12)

    def test_substitute_linear(self):
        f = x(1) * x(2) * x(3)
        assert f.substitute_linear([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == f
        assert (x(1) ** 3).substitute_linear([[0, 1, 0], [1, 0, 0], [0, 0, 1]]) == x(2) ** 3
        assert f.substitute_linear([[2, 0, 0], [0, 1, 0], [0, 0, 1]]) == f.scale(2)

    def test_substitute_rejects_u(self):
        with pytest.raises(ValueError):
            (u(1) * x(1)).substitute_linear([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    @given(exact_cubics(), exact_cubics(), unimodular())
    def test_substitution_is_a_homomorphism(self, p, q, m):
        assert (p * q).substitute_linear(m) == p.substitute_linear(m) * q.substitute_linear(m)
        assert (p + q).substitute_linear(m) == p.substitute_linear(m) + q.substitute_linear(m)

    def test_eval(self):
        assert (x(1) * x(2) * x(3)).eval(x=(1, 1, 1)) == 1
        assert (u(3) ** 2).eval(u=(0, 0, 2)) == 4
        assert Poly.zero().eval(x=(1, 2, 3), u=(4, 5, 6)) == 0

    def test_at_u(self):
        p = x(1) * u(1) + x(2) * u(2) ** 2
        assert p.at_u((2, 3, 0)) == x(1).scale(2) + x(2).scale(9)


class TestNormsAndForms:
    def test_coeff_norm(self):
        assert Poly.zero().coeff_norm() == 0
        assert ((x(1) ** 2).scale(3) - (x(2) ** 3).scale(4)).coeff_norm() == 4
        assert (x(1) + x(2) + x(3)).coeff_norm() == 1

    @given(exact_cubics())
    def test_cubic_round_trip(self, f):
        assert CubicForm.from_poly(f).to_poly() == f

    @given(st.lists(st.integers(-9, 9), min_size=6, max_size=6))
    def test_quadratic_round_trip(self, c):
        q = QuadraticForm(tuple(c), True)
        assert QuadraticForm.from_poly(q.to_poly()) == q

    def test_canonical_cubic_order(self):
        f = CubicForm.of(range(1, 11))
        assert f.to_poly().coeff((1, 1, 1)) == 5
        assert f.to_poly().coeff((0, 0, 3)) == 10

    def test_quadratic_matrix(self):
        q = QuadraticForm.of([1, 2, 0, 3, 0, 0])
        m = q.matrix()
        v = np.array([1.0, 2.0, 0.0])
        assert v @ m @ v == pytest.approx(1 + 4 + 12)

    def test_linear_normalization(self):
        a = LinearForm.of([0, -2j, 1], exact=False).normalized()
        assert a.coeffs[0] == 0 and a.coeffs[1] == 1 and abs(abs(a.coeffs[2]) - 0.5) < 1e-15

    def test_dense_forms_reject_wrong_shape(self):
        with pytest.raises(ValueError):
            CubicForm.from_poly(x(1) ** 2)
        with pytest.raises(ValueError):
            CubicForm.of([1, 2, 3])
