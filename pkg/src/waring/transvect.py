"""Transvectants of ternary forms, brackets, contraction and apolar pairing.

The n-th transvectant ``J^n[f, g, h]`` applies the Cayley operator

    Omega = det( d / dx_i^(j) )      (i = variable, j = copy)

n times to ``f(x') g(x'') h(x''')`` and then identifies the three copies. No
extra constant is attached, so ``J^1[a, b, c]`` of three linear forms is the
determinant of their coefficients.

Expanding ``Omega^n`` once into a sum of products of partial derivatives gives

    J^n[f, g, h] = sum  c_{abc} * D^a f * D^b g * D^c h

with integer weights ``c_{abc}`` over multi-indices ``|a| = |b| = |c| = n``.
:func:`transvectant` evaluates that sum. :class:`TripleTensor` keeps the
three copies as separate variables and applies Omega literally; it is slow and
exists to cross-check the fast route.

The u-variables are inert throughout.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Sequence

from .poly import LinearForm, Poly, CubicForm, exponents, check_scalar

_PERMS = [
    (perm, (-1) ** sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j]))
    for perm in permutations(range(3))
]


@lru_cache(maxsize=None)
def omega_expansion(n: int) -> tuple[tuple[tuple, tuple, tuple, int], ...]:
    """Integer expansion of ``Omega^n`` as ``(alpha, beta, gamma, weight)`` tuples."""
    terms = {((0, 0, 0), (0, 0, 0), (0, 0, 0)): 1}
    for _ in range(n):
        nxt: dict = defaultdict(int)
        for key, w in terms.items():
            for perm, sign in _PERMS:
                k = [list(v) for v in key]
                for copy in range(3):
                    k[copy][perm[copy]] += 1
                nxt[tuple(tuple(v) for v in k)] += w * sign
        terms = {k: v for k, v in nxt.items() if v}
    return tuple((a, b, c, w) for (a, b, c), w in sorted(terms.items()))


@lru_cache(maxsize=None)
def _grouped(n: int):
    # alpha -> beta -> [(gamma, weight)]
    out: dict = {}
    for a, b, c, w in omega_expansion(n):
        out.setdefault(a, {}).setdefault(b, []).append((c, w))
    return out


def transvectant(n: int, f: Poly, g: Poly, h: Poly) -> Poly:
    """``J^n[f, g, h]``; zero or of x-degree ``deg f + deg g + deg h - 3n``."""
    if n < 0:
        raise ValueError("transvectant order must be non-negative")
    if not (f.exact == g.exact == h.exact):
        from .poly import ModeError

        raise ModeError("transvectant arguments must share a scalar mode")
    if n == 0:
        return f * g * h
    dg: dict = {}
    dh: dict = {}
    out = Poly.zero(f.exact)
    for alpha, inner in _grouped(n).items():
        fa = f.dx(alpha)
        if fa.is_zero():
            continue
        acc = Poly.zero(f.exact)
        for beta, tail in inner.items():
            if beta not in dg:
                dg[beta] = g.dx(beta)
            gb = dg[beta]
            if gb.is_zero():
                continue
            hsum = Poly.zero(f.exact)
            for gamma, w in tail:
                if gamma not in dh:
                    dh[gamma] = h.dx(gamma)
                if not dh[gamma].is_zero():
                    hsum = hsum + dh[gamma].scale(w)
            if not hsum.is_zero():
                acc = acc + gb * hsum
        if not acc.is_zero():
            out = out + fa * acc
    return out


def bracket(a: LinearForm, b: LinearForm, c: LinearForm):
    """``[abc]``: determinant of the coefficient rows of three linear forms."""
    (a1, a2, a3), (b1, b2, b3), (c1, c2, c3) = a.coeffs, b.coeffs, c.coeffs
    return a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1) + a3 * (b1 * c2 - b2 * c1)


def bracket_u(a: LinearForm, b: LinearForm) -> Poly:
    """``[abu]`` as a linear form in ``u1, u2, u3``."""
    (a1, a2, a3), (b1, b2, b3) = a.coeffs, b.coeffs
    return Poly.linear((a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1), "u", a.exact)


def contraction(p: Poly) -> Poly:
    """``C_ux[p] = sum_i d^2 p / dx_i du_i``."""
    out = Poly.zero(p.exact)
    for i in (1, 2, 3):
        out = out + p.diff(f"x{i}").diff(f"u{i}")
    return out


def contraction_power(k: int, p: Poly) -> Poly:
    for _ in range(k):
        p = contraction(p)
    return p


def apolar_sub(p: Poly, f: CubicForm | Poly):
    """Pair a cubic in the u-block with a cubic form.

    Each ``u^a`` is replaced by the differential operator ``d^a/dx^a`` and applied
    to ``f``; equivalently ``u^a`` contributes ``a! * coeff(f, x^a)``.
    """
    fp = f.to_poly() if isinstance(f, CubicForm) else f
    if p.exact != fp.exact:
        from .poly import ModeError

        raise ModeError("apolar_sub arguments must share a scalar mode")
    for key in p.terms:
        e = exponents(key)
        if any(e[:3]) or sum(e[3:]) != 3:
            raise ValueError("apolar_sub expects a pure cubic in u1, u2, u3")
    total = 0 if p.exact else 0j
    for key, c in p.terms.items():
        e = exponents(key)[3:]
        weight = factorial(e[0]) * factorial(e[1]) * factorial(e[2])
        total = total + c * fp.coeff(e) * weight
    return total


# ---------------------------------------------------------------------------
# literal Omega process over three copies of the x-block


class TripleTensor:
    """Polynomial in three copies of the x-block plus the shared u-block.

    Monomials are 12-tuples ``(x'1, x'2, x'3, x''1, ..., x'''3, u1, u2, u3)``.
    """

    def __init__(self, terms: dict, exact: bool):
        self.terms = {k: v for k, v in terms.items() if v != 0}
        self.exact = exact

    @classmethod
    def product(cls, f: Poly, g: Poly, h: Poly) -> "TripleTensor":
        out: dict = defaultdict(int)
        for ef, cf in f.items():
            for eg, cg in g.items():
                for eh, ch in h.items():
                    u = tuple(ef[3 + i] + eg[3 + i] + eh[3 + i] for i in range(3))
                    out[ef[:3] + eg[:3] + eh[:3] + u] += cf * cg * ch
        return cls(dict(out), f.exact)

    def _d(self, terms: dict, slot: int) -> dict:
        out: dict = defaultdict(int)
        for k, c in terms.items():
            if k[slot]:
                nk = k[:slot] + (k[slot] - 1,) + k[slot + 1:]
                out[nk] += c * k[slot]
        return out

    def omega(self) -> "TripleTensor":
        out: dict = defaultdict(int)
        for perm, sign in _PERMS:
            terms = self.terms
            for copy in range(3):
                terms = self._d(terms, 3 * copy + perm[copy])
            for k, c in terms.items():
                out[k] += sign * c
        return TripleTensor(dict(out), self.exact)

    def diagonal(self) -> Poly:
        out: dict = defaultdict(int)
        for k, c in self.terms.items():
            x = tuple(k[i] + k[3 + i] + k[6 + i] for i in range(3))
            out[x + k[9:]] += c
        return Poly(dict(out), self.exact)


def transvectant_reference(n: int, f: Poly, g: Poly, h: Poly) -> Poly:
    """Slow literal Omega process; agrees with :func:`transvectant`."""
    t = TripleTensor.product(f, g, h)
    for _ in range(n):
        t = t.omega()
    return t.diagonal()


def line_power(coeffs: Sequence, k: int, exact: bool) -> Poly:
    """``(c1 x1 + c2 x2 + c3 x3)^k`` for numeric coefficients."""
    return Poly.linear([check_scalar(c, exact) for c in coeffs], "x", exact) ** k
