from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from waring.poly import CubicForm, LinearForm, Poly

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}


def record(n: int, passed: bool, detail: str) -> None:
    ACCEPTANCE[n] = f"criterion {n}: {'PASS' if passed else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])

small_ints = st.integers(-5, 5)


@st.composite
def exact_cubics(draw, bound: int = 5) -> Poly:
    coeffs = draw(st.lists(st.integers(-bound, bound), min_size=10, max_size=10))
    return CubicForm(tuple(coeffs), True).to_poly()


@st.composite
def exact_lines(draw, bound: int = 5) -> LinearForm:
    v = draw(st.tuples(*[st.integers(-bound, bound)] * 3).filter(any))
    return LinearForm(v, True)


@st.composite
def exact_polys(draw, max_terms: int = 5, max_deg: int = 3) -> Poly:
    """Random exact polynomials in the x-block and u-block (not homogeneous)."""
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = draw(st.tuples(*[st.integers(0, max_deg)] * 6))
        terms[e] = draw(st.integers(-4, 4))
    return Poly(terms, True)


@st.composite
def unimodular(draw) -> list[list[int]]:
    """Integer matrix with determinant 1: a product of elementary shears."""
    m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    for _ in range(draw(st.integers(1, 4))):
        i, j = draw(st.sampled_from([(i, j) for i in range(3) for j in range(3) if i != j]))
        k = draw(st.integers(-2, 2))
        m = [[m[r][c] + (k * m[j][c] if r == i else 0) for c in range(3)] for r in range(3)]
    return m


def x(i: int, exact: bool = True) -> Poly:
    return Poly.var(f"x{i}", exact)


def u(i: int, exact: bool = True) -> Poly:
    return Poly.var(f"u{i}", exact)


def cubic(*entries) -> Poly:
    """Exact cubic from ``(coefficient, (e1, e2, e3))`` pairs."""
    out = Poly.zero(True)
    for c, e in entries:
        out = out + Poly({e: c}, True)
    return out


def weierstrass(p, q) -> Poly:
    x1, x2, x3 = x(1), x(2), x(3)
    return x2 * x2 * x3 - x1 ** 3 - (x1 * x3 * x3).scale(p) - (x3 ** 3).scale(q)


def rng(seed: int = 0) -> np.random.Generator:
    return np.random.default_rng(seed)


@pytest.fixture
def xs():
    return x(1), x(2), x(3)


@pytest.fixture
def us():
    return u(1), u(2), u(3)


F = Fraction
