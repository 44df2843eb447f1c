"""Concomitants of ternary quadratic and cubic forms and the identities tying them.

For a cubic ``f`` with Hessian ``D``:

    theta = 1/4    J^2[f, f, u^2]              (2, 2)
    D     = 1/12   J^2[f, f, f]                (3, 0)
    S_uuu = -1/576 J^4[f u, f u, f u]          (0, 3)
    T_uuu = -1/576 J^4[f u, f u, D u]          (0, 3)
    F_6u  = 1/192  J^2[theta, theta, u^2]      (0, 6)
    S, T  = apolar_sub(S_uuu, f), apolar_sub(T_uuu, f)

where ``u`` is the generic line ``u1 x1 + u2 x2 + u3 x3``. The constants are
pinned by the anchors ``D(x1x2x3) = x1x2x3``, ``S = T = 1`` on ``x1x2x3``,
``theta(x1^3 + x2^3) = 36 u3^2 x1 x2`` and ``F_6u(x1^3 + x2^3) = -27 u3^6``.
The script concomitants are the same constructions applied to ``D``.

Every transvectant above is multilinear in its arguments, so each
concomitant is tabulated once on monomial bases (integer weights, built from
the transvectant itself on first use) and then evaluated by a sparse
contraction. ``Concomitants(f, route="transvectant")`` skips the tables and
runs the transvectants directly; the two routes agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from itertools import combinations_with_replacement, permutations
from typing import Sequence

from .poly import (
    CUBIC_MONOMIALS,
    QUADRATIC_MONOMIALS,
    CubicForm,
    LinearForm,
    Poly,
    QuadraticForm,
    check_scalar,
    monomial,
    u_linear,
)
from .transvect import apolar_sub, contraction, contraction_power, transvectant

WEIGHTS = {
    "theta": 2,
    "delta": 3,
    "s_uuu": 3,
    "f6u": 4,
    "S": 4,
    "t_uuu": 5,
    "T": 6,
    "script_theta": 6,
    "script_S": 12,
    "script_delta": 9,
    "script_f6u": 12,
    "script_T": 18,
}

_THETA = Fraction(1, 4)
_DELTA = Fraction(1, 12)
_ST_UUU = Fraction(-1, 576)
_F6U = Fraction(1, 192)


def _scaled(p: Poly, c: Fraction) -> Poly:
    return p.scale(c if p.exact else complex(c))


def _poly(f: CubicForm | Poly) -> Poly:
    return f.to_poly() if isinstance(f, CubicForm) else f


# multilinear tables --------------------------------------------------------

_CUBIC_KEYS = tuple(monomial(m) for m in CUBIC_MONOMIALS)
_THETA_KEYS = tuple(monomial(a, b) for a in QUADRATIC_MONOMIALS for b in QUADRATIC_MONOMIALS)


def _distinct_perms(idx: tuple) -> set:
    return set(permutations(idx))


@lru_cache(maxsize=None)
def _table(kind: str) -> tuple:
    """Sparse entries ``(input keys, output key, integer weight)``.

    ``sym`` tables are summed over sorted key tuples with the permutation
    count folded into the weight (every argument is the same form); ``full``
    tables list each ordered tuple.
    """
    ux = u_linear()
    one = {k: Poly._raw({k: 1}, True) for k in _CUBIC_KEYS + _THETA_KEYS}
    if kind == "theta":
        n, keys, arity, extra, sym = 2, _CUBIC_KEYS, 2, ux * ux, True
    elif kind == "delta":
        n, keys, arity, extra, sym = 2, _CUBIC_KEYS, 3, None, True
    elif kind == "s_uuu":
        n, keys, arity, extra, sym = 4, _CUBIC_KEYS, 3, None, True
    elif kind == "t_uuu":
        n, keys, arity, extra, sym = 4, _CUBIC_KEYS, 3, None, False
    elif kind == "f6u":
        n, keys, arity, extra, sym = 2, _THETA_KEYS, 2, ux * ux, True
    else:
        raise KeyError(kind)
    entries = []
    for idx in combinations_with_replacement(keys, arity):
        if n == 4:
            args = [one[k] * ux for k in idx]
        else:
            args = [one[k] for k in idx]
        if extra is not None:
            args.append(extra)
        val = transvectant(n, *args)
        if val.is_zero():
            continue
        # even-order transvectants are symmetric in their arguments
        perms = _distinct_perms(idx)
        if sym:
            entries += [(idx, k, c * len(perms)) for k, c in val.terms.items()]
        else:
            entries += [(p, k, c) for p in perms for k, c in val.terms.items()]
    return tuple(entries)


def _contract(kind: str, args: Sequence[dict], exact: bool) -> Poly:
    out: dict = {}
    for idx, key, w in _table(kind):
        v = w
        for slot, k in enumerate(idx):
            c = args[slot].get(k)
            if c is None:
                break
            v = v * c
        else:
            out[key] = out.get(key, 0) + v
    if not exact:
        out = {k: complex(v) for k, v in out.items()}
    return Poly._raw({k: v for k, v in out.items() if v != 0}, exact)


def _clear_denominators(f: Poly) -> tuple[Poly, int]:
    """``(d * f, d)`` with ``d * f`` integral when ``f`` has rational coefficients."""
    if not f.exact or not all(isinstance(c, (int, Fraction)) for c in f.terms.values()):
        return f, 1
    d = 1
    for c in f.terms.values():
        if isinstance(c, Fraction):
            d = d * c.denominator // gcd(d, c.denominator)
    if d == 1:
        return f, 1
    return Poly._raw({k: int(c * d) for k, c in f.terms.items()}, True), d


class Concomitants:
    """Lazily evaluated concomitants of one cubic; each field is computed at most once.

    In exact mode with rational input the work is done on an integral
    multiple ``d * f`` with unnormalized transvectants, and constants and
    powers of ``d`` are divided out only in the returned values.
    """

    def __init__(self, f: CubicForm | Poly, route: str = "table"):
        if route not in ("table", "transvectant"):
            raise ValueError(f"unknown route {route!r}")
        self.f = _poly(f)
        self.exact = self.f.exact
        self.route = route
        self._u = u_linear(self.exact)
        self._F, self._d = _clear_denominators(self.f)

    def _direct(self) -> bool:
        return self.route == "transvectant"

    def _out(self, raw: Poly, const: Fraction, weight: int) -> Poly:
        return _scaled(raw, const / Fraction(self._d) ** weight)

    # unnormalized values on the integral multiple

    @cached_property
    def _theta(self) -> Poly:
        F = self._F
        if self._direct():
            return transvectant(2, F, F, self._u ** 2)
        return _contract("theta", [F.terms] * 2, self.exact)

    @cached_property
    def _delta(self) -> Poly:
        F = self._F
        if self._direct():
            return transvectant(2, F, F, F)
        return _contract("delta", [F.terms] * 3, self.exact)

    @cached_property
    def theta(self) -> Poly:
        return self._out(self._theta, _THETA, 2)

    @cached_property
    def delta(self) -> Poly:
        return self._out(self._delta, _DELTA, 3)

    @cached_property
    def s_uuu(self) -> Poly:
        F = self._F
        if self._direct():
            fu = F * self._u
            raw = transvectant(4, fu, fu, fu)
        else:
            raw = _contract("s_uuu", [F.terms] * 3, self.exact)
        return self._out(raw, _ST_UUU, 3)

    @cached_property
    def t_uuu(self) -> Poly:
        F = self._F
        if self._direct():
            fu = F * self._u
            raw = transvectant(4, fu, fu, self._delta * self._u)
        else:
            raw = _contract("t_uuu", [F.terms, F.terms, self._delta.terms], self.exact)
        return self._out(raw, _ST_UUU * _DELTA, 5)

    @cached_property
    def f6u(self) -> Poly:
        th = self._theta
        if self._direct():
            raw = transvectant(2, th, th, self._u ** 2)
        else:
            raw = _contract("f6u", [th.terms] * 2, self.exact)
        return self._out(raw, _F6U * _THETA * _THETA, 4)

    @cached_property
    def S(self):
        return apolar_sub(self.s_uuu, self.f)

    @cached_property
    def T(self):
        return apolar_sub(self.t_uuu, self.f)

    @cached_property
    def hessian(self) -> "Concomitants":
        return Concomitants(self.delta, self.route)

    @property
    def script_theta(self) -> Poly:
        return self.hessian.theta

    @property
    def script_delta(self) -> Poly:
        return self.hessian.delta

    @property
    def script_f6u(self) -> Poly:
        return self.hessian.f6u

    @property
    def script_S(self):
        return self.hessian.S

    @property
    def script_T(self):
        return self.hessian.T

    @property
    def script_s_uuu(self) -> Poly:
        return self.hessian.s_uuu

    @property
    def script_t_uuu(self) -> Poly:
        return self.hessian.t_uuu

    def get(self, name: str):
        return getattr(self, name)


@dataclass(frozen=True)
class ConcomitantBundle:
    """All concomitants of one cubic together with their homogeneity weights."""

    theta: Poly
    delta: CubicForm
    s_uuu: Poly
    t_uuu: Poly
    S: object
    T: object
    f6u: Poly
    script_theta: Poly
    script_delta: CubicForm
    script_f6u: Poly
    script_S: object
    script_T: object
    weights: dict = field(default_factory=lambda: dict(WEIGHTS))


def concomitants(f: CubicForm | Poly) -> ConcomitantBundle:
    c = Concomitants(f)
    return ConcomitantBundle(
        theta=c.theta,
        delta=CubicForm.from_poly(c.delta) if not c.delta.is_zero() else _zero_cubic(c.exact),
        s_uuu=c.s_uuu,
        t_uuu=c.t_uuu,
        S=c.S,
        T=c.T,
        f6u=c.f6u,
        script_theta=c.script_theta,
        script_delta=(
            CubicForm.from_poly(c.script_delta) if not c.script_delta.is_zero() else _zero_cubic(c.exact)
        ),
        script_f6u=c.script_f6u,
        script_S=c.script_S,
        script_T=c.script_T,
    )


def _zero_cubic(exact: bool) -> CubicForm:
    return CubicForm((0,) * 10 if exact else (0j,) * 10, exact)


# individual entry points ---------------------------------------------------


def theta(f) -> Poly:
    return Concomitants(f).theta


def hessian(f) -> Poly:
    return Concomitants(f).delta


def s_uuu(f) -> Poly:
    return Concomitants(f).s_uuu


def t_uuu(f) -> Poly:
    return Concomitants(f).t_uuu


def f6u(f) -> Poly:
    return Concomitants(f).f6u


def invariant_S(f):
    return Concomitants(f).S


def invariant_T(f):
    return Concomitants(f).T


def substitute_concomitant(name: str, g: CubicForm | Poly):
    """The concomitant ``name`` evaluated on ``g`` in place of ``f``."""
    if name not in WEIGHTS:
        raise KeyError(f"unknown concomitant {name!r}")
    return Concomitants(g).get(name)


def script_ST_closed(S, T):
    """Hessian invariants from ``(S, T)``: ``(4T^2 - 3S^3, T(9S^3 - 8T^2))``."""
    return 4 * T * T - 3 * S ** 3, T * (9 * S ** 3 - 8 * T * T)


# identity web --------------------------------------------------------------


@dataclass(frozen=True)
class IdentityResult:
    name: str
    passed: bool
    residual: float


@dataclass(frozen=True)
class IdentityReport:
    results: tuple

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def max_residual(self) -> float:
        return max((r.residual for r in self.results), default=0.0)

    def failures(self) -> list[str]:
        return [r.name for r in self.results if not r.passed]


def _as_poly(v, exact: bool) -> Poly:
    return v if isinstance(v, Poly) else Poly.const(v, exact)


def check_identity(
    name: str, terms: Sequence, exact: bool, tol: float = 1e-8, scale: float | None = None
) -> IdentityResult:
    """Check that ``terms`` sum to zero.

    The residual is ``|sum| / sum(|term|)`` in coefficient sup-norm, so a
    single tolerance applies regardless of the scale of the input. A
    one-term identity has no natural scale and must pass ``scale``.
    """
    polys = [_as_poly(t, exact) for t in terms]
    total = Poly.zero(exact)
    for p in polys:
        total = total + p
    if scale is None:
        scale = sum(p.coeff_norm() for p in polys)
    residual = total.coeff_norm() / scale if scale else 0.0
    passed = total.is_zero() if exact else residual <= tol
    return IdentityResult(name, passed, residual)


def identity_suite(
    f: CubicForm | Poly,
    u: Sequence | None = None,
    u0=None,
    tol: float = 1e-8,
) -> IdentityReport:
    """Evaluate the relations among concomitants of ``f`` and of its Hessian.

    ``u`` and ``u0`` fix the line and weight of the perturbation
    ``g = f - u0 * u_x^3`` used by the shift identities.
    """
    c = Concomitants(f)
    exact = c.exact
    if u is None:
        u = (2, -1, 3)
    if u0 is None:
        u0 = Fraction(1, 5) if exact else 0.2
    u = [check_scalar(v, exact) for v in u]
    u0 = check_scalar(u0, exact)
    one = 1 if exact else 1 + 0j
    f_, S, T = c.f, c.S, c.T
    ux = u_linear(exact)
    h = c.hessian
    cTf = contraction(c.t_uuu * f_)

    line = LinearForm(tuple(u), exact).to_poly()
    g = Concomitants(f_ - line.scale(u0) * line * line)
    S_u, T_u, F_u = c.s_uuu.eval(u=u), c.t_uuu.eval(u=u), c.f6u.eval(u=u)
    sF_u = c.script_f6u.eval(u=u)
    sS, sT = script_ST_closed(S, T)

    checks = {
        "script_theta": [h.theta, cTf.scale(-8 * one), ux * ux * T * 2, c.theta.scale(S)],
        "script_delta": [h.delta, f_.scale(-3 * S * S), c.delta.scale(2 * T)],
        "script_f6u": [
            h.f6u,
            (c.t_uuu * c.s_uuu).scale(-12 * S),
            c.f6u.scale(3 * S * S),
            (c.s_uuu * c.s_uuu).scale(8 * T),
        ],
        "script_S": [h.S, -sS],
        "script_T": [h.T, -sT],
        "script_s_uuu": [h.s_uuu, c.s_uuu.scale(-4 * T), c.t_uuu.scale(3 * S)],
        "script_t_uuu": [h.t_uuu, c.t_uuu.scale(-6 * S * T), c.s_uuu.scale(8 * T * T - 3 * S ** 3)],
        "T_from_contraction": [contraction_power(3, c.t_uuu * f_), -6 * T],
        "S2_from_contraction": [contraction_power(3, c.t_uuu * c.delta), -6 * S * S],
        "t_uuu_from_contraction": [c.t_uuu.scale(12), -contraction_power(2, c.s_uuu * c.theta)],
        "theta_contraction_transvectant": [
            transvectant(2, c.theta, cTf, ux * ux),
            (c.s_uuu * c.t_uuu).scale(-48),
        ],
        "hessian_apolar": [transvectant(3, f_, c.delta, ux ** 3)],
        "shift_S": [g.S, -S, 24 * u0 * S_u],
        "shift_T": [g.T, -T, 36 * u0 * T_u, -216 * u0 * u0 * F_u],
        "shift_script_f6u": [
            72 * u0 * u0 * sF_u,
            -(S * T + 24 * u0 * T * S_u - 36 * u0 * S * T_u) * g.S,
            S * S * g.T,
        ],
    }
    scales = {"hessian_apolar": f_.coeff_norm() * c.delta.coeff_norm()}
    return IdentityReport(
        tuple(check_identity(k, v, exact, tol, scales.get(k)) for k, v in checks.items())
    )


# quadratic forms -----------------------------------------------------------


@dataclass(frozen=True)
class QuadConcomitants:
    """``J^2[q,q,q]`` and ``J^2[q,q,u^2]``; the remaining fields need a line ``a``."""

    qqq: object
    qq_u2: Poly
    qa_u: Poly | None = None
    q_a2_u2: Poly | None = None
    qq_a2: object = None


def quad_concomitants(q: QuadraticForm | Poly, a: LinearForm | None = None) -> QuadConcomitants:
    qp = q.to_poly() if isinstance(q, QuadraticForm) else q
    exact = qp.exact
    ux = u_linear(exact)
    qqq = transvectant(2, qp, qp, qp).coeff()
    qq_u2 = transvectant(2, qp, qp, ux * ux)
    if a is None:
        return QuadConcomitants(qqq, qq_u2)
    ap = a.to_poly()
    return QuadConcomitants(
        qqq,
        qq_u2,
        qa_u=transvectant(1, qp, ap, ux),
        q_a2_u2=transvectant(2, qp, ap * ap, ux * ux),
        qq_a2=transvectant(2, qp, qp, ap * ap).coeff(),
    )
