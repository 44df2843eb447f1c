import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import exact_cubics, exact_lines, rng, weierstrass, x
from waring.concom import Concomitants
from waring.factor import (
    FactorError,
    binary_cubic_roots,
    divide_linear_exact,
    divides_linear,
    extract_cube,
    extract_square,
    factor_completely_reducible,
    factor_rank2_quadratic,
    factor_square_line,
    relative_residual,
    secant_split,
    tangent_split,
)
from waring.instances import random_lines
from waring.poly import CubicForm, LinearForm, Poly, QuadraticForm
from waring.transvect import bracket

TOL = 1e-9


def fl(p: Poly) -> Poly:
    return p.to_float()


def line(*c, exact=True):
    return LinearForm(c if exact else tuple(complex(v) for v in c), exact)


def cube_res(f, lam, a):
    return relative_residual(fl(f), (a.to_poly() ** 3).scale(lam))


def plane_points(a: LinearForm):
    """Two independent integer points on the line ``a = 0``."""
    e = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    pts = [tuple(int(v) for v in np.cross(a.coeffs, ei)) for ei in e]
    pts = [p for p in pts if any(p)]
    P = pts[0]
    Q = next(q for q in pts[1:] if any(np.cross(P, q)))
    return P, Q


def vanishes_on_line(f: Poly, a: LinearForm) -> bool:
    """Brute force: a binary cubic is zero iff it vanishes at four distinct points."""
    P, Q = plane_points(a)
    pts = [P, Q] + [tuple(p + k * q for p, q in zip(P, Q)) for k in (1, 2)]
    return all(f.eval(x=pt) == 0 for pt in pts)


class TestPowers:
    def test_cube_examples(self):
        f = (x(1) + x(2)) ** 3
        lam, a = extract_cube(f)
        assert cube_res(f, lam, a) < TOL
        assert np.allclose(a.coeffs, (1, 1, 0))
        lam, a = extract_cube((x(3) ** 3).scale(8))
        assert abs(lam - 8) < TOL and np.allclose(a.coeffs, (0, 0, 1))

    def test_cube_of_tangent_hessian(self):
        d = Concomitants(x(1) * (x(1) * x(3) + x(2) ** 2)).delta
        lam, a = extract_cube(d)
        assert abs(lam + 4) < TOL and np.allclose(a.coeffs, (1, 0, 0))

    def test_cube_rejects_non_cube(self):
        with pytest.raises(FactorError):
            extract_cube(x(1) * x(2) * x(3))
        with pytest.raises(FactorError):
            extract_cube(Poly.zero())

    def test_square_examples(self):
        lam, a = extract_square(x(1) ** 2)
        assert abs(lam - 1) < TOL and np.allclose(a.coeffs, (1, 0, 0))
        theta = Concomitants(x(1) ** 2 * x(2)).theta
        lam, a = extract_square(theta.at_u((0, 0, 1)))
        assert abs(lam + 4) < TOL and np.allclose(a.coeffs, (1, 0, 0))
        i = Poly.var("x2", False).scale(1j)
        q = (fl(x(1)) + i) ** 2
        lam, a = extract_square(q)
        assert relative_residual(q, (a.to_poly() ** 2).scale(lam)) < TOL

    @given(exact_lines(), st.integers(1, 5))
    def test_cube_round_trip(self, a, k):
        f = (a.to_poly() ** 3).scale(k)
        lam, b = extract_cube(f)
        assert cube_res(f, lam, b) < TOL
        assert max(abs(v) for v in b.coeffs) == pytest.approx(1)


class TestQuadratics:
    def test_rank2_examples(self):
        for q in (x(1) ** 2 + x(2) ** 2, x(1) * x(2), Concomitants(x(1) ** 3 + x(2) ** 3).theta.at_u((0, 0, 1))):
            b, c = factor_rank2_quadratic(q)
            assert relative_residual(fl(q), b.to_poly() * c.to_poly()) < TOL

    def test_rank2_rejects_other_ranks(self):
        with pytest.raises(FactorError):
            factor_rank2_quadratic(x(1) ** 2)
        with pytest.raises(FactorError):
            factor_rank2_quadratic(x(1) ** 2 + x(2) ** 2 + x(3) ** 2)

    @given(exact_lines(), exact_lines())
    def test_rank2_round_trip(self, b, c):
        if not any(np.cross(b.coeffs, c.coeffs)):
            return
        q = b.to_poly() * c.to_poly()
        b2, c2 = factor_rank2_quadratic(q)
        assert relative_residual(fl(q), b2.to_poly() * c2.to_poly()) < TOL

    def test_tangent_examples(self):
        q = x(1) * x(3) + x(2) ** 2
        b, c = tangent_split(q, line(1, 0, 0))
        assert relative_residual(fl(q), fl(x(1)) * c.to_poly() + b.to_poly() ** 2) < TOL
        with pytest.raises(FactorError):
            tangent_split(x(1) * x(2), line(1, 0, 0))
        with pytest.raises(FactorError):
            tangent_split(q, line(0, 1, 0))

    def test_tangent_constructed(self):
        g = rng(1)
        for _ in range(20):
            a, b, c = random_lines(g, 3)
            q = a.to_poly() * c.to_poly() + b.to_poly() ** 2
            b2, c2 = tangent_split(q, a)
            approx = a.to_poly().to_float() * c2.to_poly() + b2.to_poly() ** 2
            assert relative_residual(fl(q), approx) < TOL
            assert abs(bracket(a.to_float(), b2, c2)) > 1e-9

    def test_secant_examples(self):
        q = x(1) ** 2 + x(2) * x(3)
        a0, b, c = secant_split(q, line(1, 0, 0))
        assert a0 == 1
        assert relative_residual(fl(x(2) * x(3)), b.to_poly() * c.to_poly()) < TOL
        with pytest.raises(FactorError):
            secant_split(q, line(0, 0, 0))

    def test_secant_recovers_a0_exactly(self):
        g = rng(2)
        for k in range(1, 11):
            a, b, c = random_lines(g, 3)
            q = (a.to_poly() ** 2).scale(k) + b.to_poly() * c.to_poly()
            a0, b2, c2 = secant_split(q, a)
            assert a0 == k
            approx = (a.to_poly() ** 2).scale(k).to_float() + b2.to_poly() * c2.to_poly()
            assert relative_residual(fl(q), approx) < TOL


class TestDivisibility:
    def test_examples(self):
        assert divides_linear(x(1) ** 2 * x(2), line(1, 0, 0))
        assert not divides_linear(x(1) ** 2 * x(2), line(0, 0, 1))
        f = (x(1) + x(2) + x(3)) * (x(1) - x(2)) * (x(2) - x(3))
        assert divides_linear(f, line(2, 2, 2))
        assert divides_linear(fl(f), line(1, 1, 1, exact=False))

    def test_zero_line_rejected(self):
        with pytest.raises(ValueError):
            divides_linear(x(1) ** 3, line(0, 0, 0))

    @given(exact_cubics(bound=2), exact_lines(bound=3))
    def test_agrees_with_brute_force(self, f, a):
        assert divides_linear(f, a) == vanishes_on_line(f, a)

    def test_agrees_with_brute_force_on_1000_cases(self):
        g = rng(6)
        for k in range(1000):
            (a,) = random_lines(g, 1, 3)
            q = QuadraticForm(tuple(int(v) for v in g.integers(-3, 4, 6)), True).to_poly()
            # every other case is a multiple of a, the rest are random cubics
            f = a.to_poly() * q if k % 2 else CubicForm(tuple(int(v) for v in g.integers(-3, 4, 10)), True).to_poly()
            assert divides_linear(f, a) == vanishes_on_line(f, a)

    def test_divide_examples(self):
        g = divide_linear_exact(x(1) ** 2 * x(2) + x(1) * x(3) ** 2, line(1, 0, 0))
        assert g.to_poly() == x(1) * x(2) + x(3) ** 2
        assert divide_linear_exact(x(1) * x(2) * x(3), line(0, 1, 0)).to_poly() == x(1) * x(3)
        with pytest.raises(FactorError):
            divide_linear_exact(x(1) ** 3, line(0, 1, 0))

    def test_divide_constructed(self):
        g = rng(3)
        for _ in range(20):
            a, b, c = random_lines(g, 3)
            q = a.to_poly() * c.to_poly() + b.to_poly() ** 2
            assert divide_linear_exact(a.to_poly() * q, a).to_poly() == q


class TestCubicFactoring:
    def test_triple_product(self):
        f = x(1) * x(2) * x(3)
        ls = factor_completely_reducible(f)
        assert ls.certified and ls.residual < TOL
        assert sorted(int(np.argmax(np.abs(l.coeffs))) for l in ls.lines) == [0, 1, 2]

    @pytest.mark.parametrize("q", [1, -2, 5])
    def test_weierstrass_hessian(self, q):
        d = Concomitants(weierstrass(0, q)).delta
        ls = factor_completely_reducible(d)
        assert ls.certified and ls.residual < TOL

    def test_method_example_hessian(self):
        # 2 (x2 - x1)(x1 + i x3)(x1 - i x3)
        x1, x2, x3 = (fl(x(i)) for i in (1, 2, 3))
        f = (x2 - x1) * (x1 + x3.scale(1j)) * (x1 - x3.scale(1j))
        ls = factor_completely_reducible(f.scale(2 + 0j))
        assert ls.certified and ls.residual < TOL and abs(ls.scale) > 0

    def test_round_trip_and_brackets(self):
        g = rng(4)
        for _ in range(20):
            a, b, c = random_lines(g, 3)
            f = a.to_poly() * b.to_poly() * c.to_poly()
            ls = factor_completely_reducible(f, rng=rng(5))
            assert ls.certified and ls.residual < TOL
            assert abs(bracket(*ls.lines)) > 1e-9

    def test_rejects_irreducible(self):
        with pytest.raises(FactorError):
            factor_completely_reducible(x(1) ** 3 + x(2) ** 3 + x(3) ** 3)

    def test_square_line_examples(self):
        for f in (x(1) ** 2 * x(2), (x(1) + x(2)) ** 2 * x(3), Concomitants(x(1) ** 2 * x(3) + x(2) ** 3).delta):
            a, b = factor_square_line(f)
            assert relative_residual(fl(f), a.to_poly() ** 2 * b.to_poly()) < TOL

    def test_square_line_rejects(self):
        with pytest.raises(FactorError):
            factor_square_line(x(1) * x(2) * x(3))


class TestBinaryRoots:
    def _as_set(self, roots):
        return sorted((round(s.real, 9), round(t.real, 9)) for s, t in roots)

    def test_examples(self):
        assert self._as_set(binary_cubic_roots([1, 0, -1, 0])) == [(-1, 1), (0, 1), (1, 1)]
        assert self._as_set(binary_cubic_roots([1, 0, 0, 0])) == [(0, 1)] * 3
        assert self._as_set(binary_cubic_roots([0, 0, 0, 1])) == [(1, 0)] * 3

    def test_errors(self):
        with pytest.raises(ValueError):
            binary_cubic_roots([0, 0, 0, 0])
        with pytest.raises(ValueError):
            binary_cubic_roots([1, 2])

    @given(st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False), min_size=4, max_size=4))
    def test_roots_vanish(self, c):
        if max(abs(v) for v in c) < 1e-3:
            return
        for s, t in binary_cubic_roots(c):
            v = c[0] * s ** 3 + c[1] * s * s * t + c[2] * s * t * t + c[3] * t ** 3
            assert abs(v) <= 1e-6 * max(abs(w) for w in c)
