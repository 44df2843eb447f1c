from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import closed_forms as cf
from conftest import exact_cubics, exact_lines, u, unimodular, weierstrass, x
from waring.concom import (
    WEIGHTS,
    Concomitants,
    concomitants,
    identity_suite,
    quad_concomitants,
    script_ST_closed,
)
from waring.instances import random_lines
from waring.poly import CubicForm, LinearForm, Poly, QuadraticForm
from waring.transvect import bracket

independent_triples = st.tuples(exact_lines(), exact_lines(), exact_lines()).filter(
    lambda t: bracket(*t) != 0
)


def _matches(c: Concomitants, expected: dict):
    for name, want in expected.items():
        assert cf.value(c, name) == want, name


class TestAnchors:
    def test_triple_product(self):
        c = Concomitants(x(1) * x(2) * x(3))
        assert c.delta == x(1) * x(2) * x(3)
        assert c.S == 1 and c.T == 1
        assert c.f6u == u(1) ** 2 * u(2) ** 2 * u(3) ** 2

    def test_binomial(self):
        c = Concomitants(x(1) ** 3 + x(2) ** 3)
        assert c.theta == (u(3) ** 2 * x(1) * x(2)).scale(36)
        assert c.delta.is_zero() and c.S == 0 and c.T == 0
        assert c.f6u == (u(3) ** 6).scale(-27)

    def test_fermat(self):
        c = Concomitants(x(1) ** 3 + x(2) ** 3 + x(3) ** 3)
        assert c.delta == (x(1) * x(2) * x(3)).scale(108)
        assert c.T == -5832
        assert c.s_uuu.scale(2) == (u(1) * u(2) * u(3)).scale(-108)

    def test_cube(self):
        c = Concomitants(x(1) ** 3)
        assert c.theta.is_zero() and c.f6u.is_zero() and c.delta.is_zero()

    @pytest.mark.parametrize("p, q", [(0, 0), (1, 0), (0, 1), (2, -3), (Fraction(1, 3), Fraction(-5, 7))])
    def test_weierstrass(self, p, q):
        c = Concomitants(weierstrass(p, q))
        assert c.S == -48 * p and c.T == 864 * q

    def test_conic_times_line(self):
        assert Concomitants(x(1) * (x(2) ** 2 + x(3) ** 2)).S == 16

    def test_hesse_T_middle_coefficient_is_540(self):
        a, b, c = (l.to_poly() for l in random_lines(np.random.default_rng(3), 3))
        la, lb, lc = random_lines(np.random.default_rng(3), 3)
        abc = bracket(la, lb, lc)
        for s, t in [(1, 1), (2, -1), (Fraction(1, 2), 3)]:
            f = (a ** 3 + b ** 3 + c ** 3).scale(s) + (a * b * c).scale(t)
            con = Concomitants(f)
            assert con.S == cf.hesse_S(s, t, abc)
            assert con.T == cf.hesse_T(s, t, abc, 540)
            assert con.T != cf.hesse_T(s, t, abc, 54)


class TestClosedForms:
    @given(exact_lines(), exact_lines())
    def test_binomial(self, a, b):
        _matches(Concomitants(a.to_poly() ** 3 + b.to_poly() ** 3), cf.binomial(a, b))

    @given(independent_triples)
    def test_fermat(self, abc):
        a, b, c = abc
        f = a.to_poly() ** 3 + b.to_poly() ** 3 + c.to_poly() ** 3
        _matches(Concomitants(f), cf.fermat(a, b, c))

    @given(exact_lines(), exact_lines(), exact_lines(), exact_lines())
    def test_four_cubes(self, a, b, c, d):
        f = sum((l.to_poly() ** 3 for l in (a, b, c, d)), Poly.zero())
        assert Concomitants(f).S == cf.four_cubes_S(a, b, c, d)

    @given(exact_lines(), exact_lines(), exact_lines())
    def test_triple_product(self, a, b, c):
        _matches(Concomitants(a.to_poly() * b.to_poly() * c.to_poly()), cf.triple_product(a, b, c))

    @given(exact_lines(), exact_lines(), exact_lines())
    def test_tangent(self, a, b, c):
        ap, bp, cp = a.to_poly(), b.to_poly(), c.to_poly()
        _matches(Concomitants(ap * (ap * cp + bp * bp)), cf.tangent(a, b, c))

    @given(exact_lines(), exact_lines(), exact_lines())
    def test_cusp(self, a, b, c):
        ap, bp, cp = a.to_poly(), b.to_poly(), c.to_poly()
        _matches(Concomitants(ap * ap * cp + bp ** 3), cf.cusp(a, b, c))


class TestCovariance:
    @given(exact_cubics(bound=3), st.sampled_from([2, -1, Fraction(1, 3)]))
    def test_weights(self, f, lam):
        c, d = Concomitants(f), Concomitants(f.scale(lam))
        for name, w in WEIGHTS.items():
            got, want = d.get(name), c.get(name)
            if isinstance(want, Poly):
                assert got == want.scale(lam ** w), name
            else:
                assert got == want * lam ** w, name

    @given(exact_cubics(bound=3), unimodular())
    def test_unimodular_invariance(self, f, m):
        c, d = Concomitants(f), Concomitants(f.substitute_linear(m))
        assert d.S == c.S and d.T == c.T
        assert d.delta == c.delta.substitute_linear(m)

    @given(exact_cubics(bound=2))
    def test_routes_agree(self, f):
        a, b = Concomitants(f), Concomitants(f, route="transvectant")
        for name in ("theta", "delta", "s_uuu", "t_uuu", "f6u"):
            assert a.get(name) == b.get(name), name

    def test_unknown_route(self):
        with pytest.raises(ValueError):
            Concomitants(x(1) ** 3, route="other")

    def test_rational_input(self):
        f = (x(1) * x(2) * x(3)).scale(Fraction(1, 2))
        c = Concomitants(f)
        assert c.S == Fraction(1, 16) and c.delta == f.scale(Fraction(1, 4))

    def test_bundle(self):
        b = concomitants(CubicForm.from_poly(x(1) * x(2) * x(3)))
        assert b.S == 1 and b.script_S == 1 and b.weights["script_T"] == 18
        assert concomitants(x(1) ** 3).delta.is_zero()


class TestIdentities:
    @given(exact_cubics(bound=4))
    def test_exact(self, f):
        report = identity_suite(f)
        assert report.passed, report.failures()

    def test_zero_form(self):
        assert identity_suite(Poly.zero()).passed

    def test_float_unit_norm(self):
        rng = np.random.default_rng(1)
        for _ in range(10):
            v = rng.normal(size=10) + 1j * rng.normal(size=10)
            v /= np.abs(v).max()
            report = identity_suite(CubicForm.of([complex(c) for c in v], False), u=(2.0, -1.0, 3.0), u0=0.2)
            assert report.passed and report.max_residual <= 1e-8

    @pytest.mark.parametrize("S, T", [(1, 1), (0, 0), (2, -3)])
    def test_script_ST_closed(self, S, T):
        f = weierstrass(Fraction(S, -48), Fraction(T, 864))
        c = Concomitants(f)
        assert (c.script_S, c.script_T) == script_ST_closed(S, T)

    def test_script_ST_closed_examples(self):
        assert script_ST_closed(1, 1) == (1, 1)
        assert script_ST_closed(0, 0) == (0, 0)

    @given(exact_cubics(bound=3))
    def test_equivalences(self, f):
        c = Concomitants(f)
        # script f6u = 0 <=> script delta = 0 <=> S = T = 0
        z = c.script_f6u.is_zero()
        assert z == c.script_delta.is_zero() == (c.S == 0 and c.T == 0)
        # T_uuu = 0 <=> script theta = 0
        assert c.t_uuu.is_zero() == c.script_theta.is_zero()

    @given(exact_lines(), exact_lines(), exact_lines())
    def test_implication_chain(self, a, b, c):
        ap, bp, cp = a.to_poly(), b.to_poly(), c.to_poly()
        for f in (ap ** 3, ap ** 3 + bp ** 3, ap * ap * bp, ap * (ap * cp + bp * bp), ap * ap * cp + bp ** 3):
            k = Concomitants(f)
            if k.theta.is_zero():
                assert k.f6u.is_zero()
            if k.f6u.is_zero():
                assert k.delta.is_zero() == k.s_uuu.is_zero()
            if k.delta.is_zero():
                assert k.script_theta.is_zero() == k.t_uuu.is_zero()
            if k.t_uuu.is_zero():
                assert k.script_f6u.is_zero() == k.script_delta.is_zero() == (k.S == 0 and k.T == 0)


class TestQuadratic:
    def test_reducible(self):
        assert quad_concomitants(x(1) * x(2)).qqq == 0

    def test_full_rank(self):
        assert quad_concomitants(QuadraticForm.of([1, 0, 0, 1, 0, 1])).qqq != 0

    def test_tangent_line(self):
        q = x(1) * x(3) + x(2) ** 2
        k = quad_concomitants(q, LinearForm((1, 0, 0), True))
        assert k.qq_a2 == 0
        assert k.qa_u is not None and k.q_a2_u2 is not None

    def test_square_divides(self):
        # a^2 divides q exactly when J^2[q, a^2, u^2] vanishes
        a = LinearForm((1, 1, 0), True)
        assert quad_concomitants(a.to_poly() ** 2, a).q_a2_u2.is_zero()
        assert not quad_concomitants(x(1) * x(2), a).q_a2_u2.is_zero()
