"""Waring decompositions of ternary cubics with verified certificates.

:func:`decompose` classifies the input and dispatches to one construction
per row of the rank table. Each construction returns terms
``(scalar, line)`` meaning ``scalar * line**3``. The certificate is re-expanded
and rejected unless its relative residual is at most ``policy.epsilon``.

Closed-form families (products of three lines, conic plus secant, Hesse and
Weierstrass normal forms) are exposed separately and stay exact whenever
their formulas are free of radicals.
"""

from __future__ import annotations

import cmath
from math import factorial
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .classify import DEFAULT_POLICY, Label, ZeroTestPolicy, cubic_rank
from .concom import Concomitants
from .factor import (
    RETRIES,
    FactorError,
    default_rng,
    divide_linear_exact,
    extract_cube,
    factor_completely_reducible,
    factor_rank2_quadratic,
    factor_square_line,
    generic_ints,
    relative_residual,
    solve_coefficients,
    tangent_split,
)
from .poly import CUBIC_MONOMIALS, CubicForm, LinearForm, Poly, check_scalar, is_exact_scalar
from .transvect import bracket

OMEGA = complex(-0.5, 3 ** 0.5 / 2)


class DecompositionError(RuntimeError):
    """No certificate within tolerance; carries the class, margins and best residual."""

    def __init__(self, message: str, label=None, margins=None, best_residual=float("inf")):
        super().__init__(message)
        self.label = label
        self.margins = margins or {}
        self.best_residual = best_residual


@dataclass(frozen=True)
class WaringDecomposition:
    """``f = sum(scalar * line**3 for scalar, line in terms)``."""

    terms: tuple
    claimed_rank: int
    class_label: Label | None
    residual: float
    seed_trace: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.terms) != self.claimed_rank:
            raise ValueError("claimed rank must equal the number of terms")

    def expand(self) -> Poly:
        return expand_terms(self.terms)

    def normalized(self) -> "WaringDecomposition":
        """Absorb each scalar into its line with the principal cube root."""
        terms = []
        for s, line in self.terms:
            r = complex(s) ** (1 / 3) if s != 0 else 0j
            terms.append((1 + 0j, line.to_float().scale(r)))
        return WaringDecomposition(
            tuple(terms), self.claimed_rank, self.class_label, self.residual, self.seed_trace
        )


def _terms_exact(terms) -> bool:
    return all(is_exact_scalar(s) and line.exact for s, line in terms)


def expand_terms(terms: Sequence) -> Poly:
    exact = _terms_exact(terms)
    out = Poly.zero(exact)
    for s, line in terms:
        lp = line.to_poly() if exact else line.to_poly().to_float()
        out = out + (lp ** 3).scale(check_scalar(s if exact else complex(s), exact))
    return out


def _fpoly(f) -> Poly:
    return f.to_poly() if isinstance(f, CubicForm) else f


def certificate_residual(f, terms) -> float:
    fp = _fpoly(f)
    exp = expand_terms(terms)
    if fp.exact and exp.exact:
        diff = fp - exp
        if diff.is_zero():
            return 0.0
        fp, exp = fp.to_float(), exp.to_float()
    return relative_residual(fp, exp)


# ---------------------------------------------------------------------------
# building blocks


def _line(v) -> LinearForm:
    return LinearForm(tuple(complex(c) for c in v), False)


def _lin(a: LinearForm, b: LinearForm, ca=1, cb=1) -> LinearForm:
    """``ca * a + cb * b`` in the common scalar mode."""
    exact = a.exact and b.exact and is_exact_scalar(ca) and is_exact_scalar(cb)
    if not exact:
        a, b, ca, cb = a.to_float(), b.to_float(), complex(ca), complex(cb)
    return LinearForm(tuple(ca * x + cb * y for x, y in zip(a.coeffs, b.coeffs)), exact)


def _combo(pairs) -> LinearForm:
    """Sum of ``c * line`` over ``(c, line)`` pairs."""
    out = None
    for c, line in pairs:
        if not (line.exact and is_exact_scalar(c)):
            line, c = line.to_float(), complex(c)
        out = line.scale(c) if out is None else _lin(out, line, 1, c)
    return out


def _div(num, den):
    if isinstance(num, int) and isinstance(den, int):
        return Fraction(num, den)
    return num / den


def square_times_line_terms(a: LinearForm, b: LinearForm, scale=1) -> list:
    """``scale * a**2 * b`` as three cubes: ``6 a^2 b = (a+b)^3 - (a-b)^3 - 2 b^3``."""
    return [
        (_div(scale, 6), _lin(a, b, 1, 1)),
        (_div(-scale, 6), _lin(a, b, 1, -1)),
        (_div(-scale, 3), b),
    ]


def _fit_scalars(fp: Poly, lines: Sequence[LinearForm]):
    cubes = [line.to_poly().to_float() ** 3 for line in lines]
    coeffs, _ = solve_coefficients(fp.to_float(), cubes)
    return [(complex(c), line) for c, line in zip(coeffs, lines)]


_CUBIC_EXP = np.array(CUBIC_MONOMIALS)
_CUBIC_MULT = np.array([6 // (factorial(e[0]) * factorial(e[1]) * factorial(e[2])) for e in _CUBIC_EXP])


def _powers(V: np.ndarray, exps: np.ndarray) -> np.ndarray:
    # V (r, 3), exps (m, 3) -> (m, r) with entry prod_j V[i, j] ** exps[k, j]
    return np.prod(V[None, :, :] ** exps[:, None, :], axis=2)


def _newton_lines(target: np.ndarray, V: np.ndarray, steps: int = 12) -> np.ndarray:
    """Gauss-Newton on ``target = sum_i (V_i . x)^3`` in coefficient space."""
    best = V
    best_res = np.abs(target - (_CUBIC_MULT[:, None] * _powers(V, _CUBIC_EXP)).sum(axis=1)).max()
    for _ in range(steps):
        r = target - (_CUBIC_MULT[:, None] * _powers(V, _CUBIC_EXP)).sum(axis=1)
        J = np.zeros((10, V.size), dtype=complex)
        for j in range(3):
            e = _CUBIC_EXP.copy()
            e[:, j] = np.maximum(e[:, j] - 1, 0)
            J[:, j::3] = (_CUBIC_MULT * _CUBIC_EXP[:, j])[:, None] * _powers(V, e)
        step = np.linalg.lstsq(J, r, rcond=None)[0]
        V = V + step.reshape(V.shape)
        res = np.abs(target - (_CUBIC_MULT[:, None] * _powers(V, _CUBIC_EXP)).sum(axis=1)).max()
        if res < best_res:
            best, best_res = V, res
        if res < 1e-15 * np.abs(target).max() or not np.isfinite(res):
            break
    return best


def _polish(fp: Poly, terms: list) -> list:
    """Refit scalars, then refine lines by Gauss-Newton; keep whichever has the lowest residual."""
    if not terms or _terms_exact(terms) and fp.exact:
        return terms
    candidates = [terms, _fit_scalars(fp, [line for _, line in terms])]
    target = CubicForm.from_poly(fp.to_float()).vector()
    scale = np.abs(target).max()
    roots = [complex(s) ** (1 / 3) for s, _ in terms]
    if scale and all(roots):
        V = np.array([[r * complex(c) for c in line.coeffs] for r, (_, line) in zip(roots, terms)])
        V = _newton_lines(target / scale, V / scale ** (1 / 3)) * scale ** (1 / 3)
        candidates.append(
            [(s, _line(v / r)) for (s, _), v, r in zip(terms, V, roots)]
        )
    return min(candidates, key=lambda t: certificate_residual(fp, t))


# ---------------------------------------------------------------------------
# per-class constructions (no classification; callers ensure the class)


def _terms_cube(fp: Poly, rng, trace: dict) -> list:
    lam, a = extract_cube(fp, rng)
    return [(lam, a)]


def _terms_binomial(fp: Poly, rng, trace: dict, policy: ZeroTestPolicy) -> list:
    ff = fp.to_float()
    ff = ff.scale(1 / ff.coeff_norm())
    theta = Concomitants(ff).theta
    best = None
    attempts = []
    for _ in range(RETRIES):
        u = generic_ints(rng)
        q = theta.at_u([complex(v) for v in u])
        attempts.append(u)
        try:
            a, b = factor_rank2_quadratic(q, policy)
        except FactorError:
            continue
        terms = _fit_scalars(fp, [a, b.normalized()])
        res = certificate_residual(fp, terms)
        if best is None or res < best[0]:
            best = (res, terms)
        if res <= policy.epsilon:
            break
    trace["u_attempts"] = attempts
    if best is None:
        raise FactorError("theta never split into two lines")
    return best[1]


def _terms_square_line(fp: Poly, rng, trace: dict) -> list:
    a, b = factor_square_line(fp, rng)
    return square_times_line_terms(a, b)


def _terms_fermat(fp: Poly, rng, trace: dict, policy: ZeroTestPolicy) -> list:
    delta = Concomitants(fp.to_float()).delta
    lines = factor_completely_reducible(delta, policy, rng)
    return _fit_scalars(fp, list(lines.lines))


def _terms_cusp(fp: Poly, rng, trace: dict) -> list:
    delta = Concomitants(fp.to_float()).delta
    a, b = factor_square_line(delta, rng)
    a, b = a.normalized(), b.normalized()
    ap = a.to_poly()
    a2 = ap * ap
    basis = [a2 * Poly.var(f"x{i}", False) for i in (1, 2, 3)] + [b.to_poly() ** 3]
    coeffs, _ = solve_coefficients(fp.to_float(), basis)
    c = _line(coeffs[:3])
    beta = complex(coeffs[3])
    return square_times_line_terms(a, c) + [(beta, b)]


def tangent_terms(a: LinearForm, b: LinearForm, c: LinearForm) -> list:
    """Five cubes for ``a (a c + b^2)``.

    ``3 a (a c + b^2) = (a - b)^3 + b^3 - a^2 d`` with ``d = a - 3b - 3c``, and
    ``a^2 d`` splits into three cubes.
    """
    d = _combo([(1, a), (-3, b), (-3, c)])
    third = Fraction(1, 3) if (a.exact and b.exact and c.exact) else 1 / 3
    return [(third, _lin(a, b, 1, -1)), (third, b)] + square_times_line_terms(a, d, -third)


def _terms_tangent(fp: Poly, rng, trace: dict, policy: ZeroTestPolicy) -> list:
    ff = fp.to_float()
    delta = Concomitants(ff).delta
    _, a = extract_cube(delta, rng)
    g = divide_linear_exact(ff, a)
    # the class is already known; the certificate residual is the real check
    b, c = tangent_split(g, a, policy, tol=1e-3, check=False)
    return tangent_terms(a, b, c)


def _terms_generic(
    fp: Poly, rng, trace: dict, policy: ZeroTestPolicy, first_u: Sequence | None = None
) -> list:
    """Method of the shifted cube: find ``u`` and ``u0`` making ``f - u0 u^3`` a sum of three cubes."""
    ff = fp.to_float()
    norm = ff.coeff_norm()
    fn = ff.scale(1 / norm)
    c = Concomitants(fn)
    S = c.S
    s_uuu, script_f = c.s_uuu, c.script_f6u
    s_scale, f_scale = s_uuu.coeff_norm(), script_f.coeff_norm()
    attempts = []
    candidates = [list(first_u)] if first_u is not None else []
    best = None
    for i in range(RETRIES + len(candidates)):
        u = candidates[i] if i < len(candidates) else generic_ints(rng)
        uc = [complex(v) for v in u]
        un = max(abs(v) for v in uc)
        uc_n = [v / un for v in uc]
        su = complex(s_uuu.eval(u=uc_n))
        fu = complex(script_f.eval(u=uc_n))
        record = {"u": [_json_num(v) for v in u], "s_uuu": abs(su), "script_f6u": abs(fu)}
        attempts.append(record)
        gate = 1e-6
        if abs(su) <= gate * s_scale or abs(fu) <= gate * f_scale:
            record["rejected"] = "s_uuu" if abs(su) <= gate * s_scale else "script_f6u"
            continue
        u0 = S / (24 * su)
        line = _line(uc_n)
        g = fn - (line.to_poly() ** 3).scale(u0)
        cg = Concomitants(g)
        gn = g.coeff_norm()
        record["shift_S"] = abs(cg.S) / gn ** 4
        record["shift_T"] = abs(cg.T) / gn ** 6
        try:
            inner = _terms_fermat(g, rng, {}, policy)
        except FactorError as exc:
            record["rejected"] = f"fermat: {exc}"
            continue
        terms = _polish(ff, [(s * norm, l) for s, l in inner] + [(u0 * norm, line)])
        res = certificate_residual(ff, terms)
        record["residual"] = res
        if best is None or res < best[0]:
            best = (res, terms, u, u0 * norm)
        if res <= policy.epsilon:
            break
    trace["attempts"] = attempts
    if best is None:
        raise FactorError("no line passed the nondegeneracy gate")
    trace["u"] = [_json_num(v) for v in best[2]]
    trace["u0"] = _json_num(best[3])
    return best[1]


def _json_num(v):
    v = complex(v)
    return [v.real, v.imag]


_BUILDERS = {
    Label.CUBE: lambda fp, rng, tr, pol: _terms_cube(fp, rng, tr),
    Label.BINOMIAL: _terms_binomial,
    Label.SQUARE_LINE: lambda fp, rng, tr, pol: _terms_square_line(fp, rng, tr),
    Label.FERMAT: _terms_fermat,
    Label.CUSP: lambda fp, rng, tr, pol: _terms_cusp(fp, rng, tr),
    Label.TANGENT_CONIC: _terms_tangent,
    Label.GENERIC: _terms_generic,
}


def _finish(fp: Poly, terms: list, label: Label, policy: ZeroTestPolicy, trace: dict, cls=None):
    terms = _polish(fp, terms)
    res = certificate_residual(fp, terms)
    if res > policy.epsilon:
        raise DecompositionError(
            f"{label.value} certificate residual {res:.3g} exceeds {policy.epsilon:g}",
            label,
            cls.margins if cls else {},
            res,
        )
    return WaringDecomposition(tuple(terms), len(terms), label, res, trace)


def decompose(
    f: CubicForm | Poly,
    policy: ZeroTestPolicy = DEFAULT_POLICY,
    seed: int = 0,
    first_u: Sequence | None = None,
) -> WaringDecomposition:
    """Classify ``f`` and build a verified certificate with rank-many cubes.

    ``first_u`` is tried first as the line of the shifted cube for generic forms.
    """
    fp = _fpoly(f)
    cls = cubic_rank(fp, policy)
    trace: dict = {"seed": seed}
    if cls.label is Label.ZERO:
        return WaringDecomposition((), 0, Label.ZERO, 0.0, trace)
    rng = default_rng(seed)
    builder = _BUILDERS[cls.label]
    try:
        if cls.label is Label.GENERIC:
            terms = _terms_generic(fp, rng, trace, policy, first_u)
        else:
            terms = builder(fp, rng, trace, policy)
    except (FactorError, np.linalg.LinAlgError) as exc:
        raise DecompositionError(
            f"{cls.label.value} construction failed: {exc}", cls.label, cls.margins
        ) from exc
    return _finish(fp, terms, cls.label, policy, trace, cls)


def _checked(f, expected: tuple, policy, seed, **kw) -> WaringDecomposition:
    fp = _fpoly(f)
    cls = cubic_rank(fp, policy)
    if cls.label not in expected:
        raise DecompositionError(
            f"input classifies as {cls.label.value}, expected {'/'.join(e.value for e in expected)}",
            cls.label,
            cls.margins,
        )
    return decompose(fp, policy, seed, **kw)


def decompose_rank1(f, policy=DEFAULT_POLICY, seed=0):
    return _checked(f, (Label.CUBE,), policy, seed)


def decompose_rank2(f, policy=DEFAULT_POLICY, seed=0):
    return _checked(f, (Label.BINOMIAL,), policy, seed)


def decompose_rank3_square_line(f, policy=DEFAULT_POLICY, seed=0):
    return _checked(f, (Label.SQUARE_LINE,), policy, seed)


def decompose_rank3_fermat(f, policy=DEFAULT_POLICY, seed=0):
    return _checked(f, (Label.FERMAT,), policy, seed)


def decompose_rank4_generic(f, policy=DEFAULT_POLICY, seed=0, first_u=None):
    return _checked(f, (Label.GENERIC,), policy, seed, first_u=first_u)


def decompose_rank4_cusp(f, policy=DEFAULT_POLICY, seed=0):
    return _checked(f, (Label.CUSP,), policy, seed)


def decompose_rank5_tangent(f, policy=DEFAULT_POLICY, seed=0):
    return _checked(f, (Label.TANGENT_CONIC,), policy, seed)


# ---------------------------------------------------------------------------
# alternative square-times-line certificates


def square_line_alternative(a: LinearForm, b: LinearForm, a0, b0) -> WaringDecomposition:
    """Three cubes for ``a^2 b`` through ``c = a0 a + b0 b``.

    ``g = a^2 b - c^3`` has rank two when ``b0 (4 - 27 a0^2 b0) != 0`` and
    ``g = k+ ((a0 b0 - y) a - 2 b0^2 b)^3 - k- ((a0 b0 + y) a - 2 b0^2 b)^3``
    with ``k+- = (3 a0 b0 +- y) / (16 b0^3 y)`` and ``3 y^2 = -b0 (4 - 27 a0^2 b0)``.
    """
    a0, b0 = complex(a0), complex(b0)
    disc = b0 * (4 - 27 * a0 * a0 * b0)
    if b0 == 0 or disc == 0:
        raise ValueError("need b0 (4 - 27 a0^2 b0) != 0")
    y = cmath.sqrt(-disc / 3)
    a, b = a.to_float(), b.to_float()
    c = _lin(a, b, a0, b0)
    kp = (3 * a0 * b0 + y) / (16 * b0 ** 3 * y)
    km = (3 * a0 * b0 - y) / (16 * b0 ** 3 * y)
    terms = [
        (1 + 0j, c),
        (kp, _lin(a, b, a0 * b0 - y, -2 * b0 * b0)),
        (-km, _lin(a, b, a0 * b0 + y, -2 * b0 * b0)),
    ]
    f = a.to_poly() ** 2 * b.to_poly()
    return WaringDecomposition(
        tuple(terms), 3, Label.SQUARE_LINE, certificate_residual(f, terms), {"a0": a0, "b0": b0}
    )


# ---------------------------------------------------------------------------
# closed-form families


def _bracket_nonzero(a, b, c) -> bool:
    d = bracket(a, b, c)
    if a.exact and b.exact and c.exact:
        return d != 0
    scale = max(a.norm(), 1e-300) * max(b.norm(), 1e-300) * max(c.norm(), 1e-300)
    return abs(d) > 1e-12 * scale


def family_product(a: LinearForm, b: LinearForm, c: LinearForm, a0=1, b0=1, c0=1) -> WaringDecomposition:
    """Four cubes for ``a b c`` with independent lines.

    ``24 a0 b0 c0 a b c = (A + B + C)^3 - (A + B - C)^3 - (B + C - A)^3 - (C + A - B)^3``
    with ``A = a0 a``, ``B = b0 b``, ``C = c0 c``.
    """
    if not _bracket_nonzero(a, b, c):
        raise ValueError("lines must be linearly independent")
    if a0 * b0 * c0 == 0:
        raise ValueError("weights must be nonzero")
    k = _div(1, 24 * a0 * b0 * c0)
    terms = [
        (k, _combo([(a0, a), (b0, b), (c0, c)])),
        (-k, _combo([(a0, a), (b0, b), (-c0, c)])),
        (-k, _combo([(-a0, a), (b0, b), (c0, c)])),
        (-k, _combo([(a0, a), (-b0, b), (c0, c)])),
    ]
    f = a.to_poly() * b.to_poly() * c.to_poly() if a.exact == b.exact == c.exact else None
    res = certificate_residual(f, terms) if f is not None else float("nan")
    return WaringDecomposition(tuple(terms), 4, Label.GENERIC, res, {"weights": [str(a0), str(b0), str(c0)]})


def binomial_from_dependent_product(a: LinearForm, b: LinearForm, c: LinearForm) -> WaringDecomposition:
    """Two cubes for ``a b c`` with dependent, pairwise independent lines.

    With ``a0 a + b0 b + c0 c = 0``:
    ``9 a0 b0 c0 a b c = (1 + 2w)((a0 a - w^2 b0 b)^3 - (a0 a - w b0 b)^3)``.
    """
    M = np.array([[complex(v) for v in l.coeffs] for l in (a, b, c)]).T
    _, sv, vh = np.linalg.svd(M)
    if sv[-1] > 1e-9 * sv[0]:
        raise ValueError("lines must be linearly dependent")
    if sv[1] <= 1e-9 * sv[0]:
        raise ValueError("lines must be pairwise independent")
    a0, b0, c0 = vh[-1].conj()
    if min(abs(a0), abs(b0), abs(c0)) <= 1e-9 * max(abs(a0), abs(b0), abs(c0)):
        raise ValueError("lines must be pairwise independent")
    k = (1 + 2 * OMEGA) / (9 * a0 * b0 * c0)
    af, bf = a.to_float(), b.to_float()
    terms = [
        (k, _lin(af, bf, a0, -OMEGA ** 2 * b0)),
        (-k, _lin(af, bf, a0, -OMEGA * b0)),
    ]
    f = a.to_poly().to_float() * b.to_poly().to_float() * c.to_poly().to_float()
    return WaringDecomposition(tuple(terms), 2, Label.BINOMIAL, certificate_residual(f, terms))


def family_conic_secant(
    a: LinearForm, b: LinearForm, c: LinearForm, a0=4, b0=1, c0=1, sigma=None
) -> WaringDecomposition:
    """Four cubes for ``a (a^2 + b c)`` with independent lines.

    ``24 a0 b0 c0 s f = s (a0 a + b0 b + c0 c)^3 + s (a0 a - b0 b - c0 c)^3
    - a0 (s a - (b0 b - c0 c))^3 - a0 (s a + (b0 b - c0 c))^3`` with
    ``s^2 = a0^2 - 12 b0 c0``; the defaults give ``s = 2``.
    """
    if not _bracket_nonzero(a, b, c):
        raise ValueError("lines must be linearly independent")
    sq = a0 * a0 - 12 * b0 * c0
    if sigma is None:
        sigma = 2 if (a0, b0, c0) == (4, 1, 1) else cmath.sqrt(sq)
    if sigma * sigma != sq and abs(complex(sigma) ** 2 - complex(sq)) > 1e-12 * max(1, abs(sq)):
        raise ValueError("sigma^2 must equal a0^2 - 12 b0 c0")
    if a0 * b0 * c0 * sigma == 0:
        raise ValueError("need a0 b0 c0 sigma != 0")
    den = 24 * a0 * b0 * c0 * sigma
    k1, k2 = _div(sigma, den), _div(-a0, den)
    diff = _combo([(b0, b), (-c0, c)])
    terms = [
        (k1, _combo([(a0, a), (b0, b), (c0, c)])),
        (k1, _combo([(a0, a), (-b0, b), (-c0, c)])),
        (k2, _combo([(sigma, a), (-1, diff)])),
        (k2, _combo([(sigma, a), (1, diff)])),
    ]
    ap = a.to_poly()
    f = ap * (ap * ap + b.to_poly() * c.to_poly())
    return WaringDecomposition(tuple(terms), 4, Label.GENERIC, certificate_residual(f, terms))


def hesse_form(s, t, a: LinearForm, b: LinearForm, c: LinearForm) -> Poly:
    """``s (a^3 + b^3 + c^3) + t a b c``."""
    ap, bp, cp = a.to_poly(), b.to_poly(), c.to_poly()
    exact = ap.exact and is_exact_scalar(s) and is_exact_scalar(t)
    if not exact:
        ap, bp, cp, s, t = ap.to_float(), bp.to_float(), cp.to_float(), complex(s), complex(t)
    return (ap ** 3 + bp ** 3 + cp ** 3).scale(s) + (ap * bp * cp).scale(t)


def family_hesse(s, t, a: LinearForm, b: LinearForm, c: LinearForm) -> WaringDecomposition:
    """Rank-many cubes for the Hesse form ``s (a^3 + b^3 + c^3) + t a b c``.

    Generic branch: ``24 (3s + t)^2 f = A^3 + B^3 + C^3 + t (36 s^2 + 6 s t + t^2) u^3``
    with ``A = (6s + t) a - t (b + c)`` (cyclically) and ``u = a + b + c``; the
    last term vanishes exactly when ``S = 0`` away from ``t = 6s``.
    ``3s + t = 0`` and ``6s - t = 0`` use cube roots of unity.
    """
    if s == 0 and t == 0:
        raise ValueError("need (s, t) != (0, 0)")
    if not _bracket_nonzero(a, b, c):
        raise ValueError("lines must be linearly independent")
    f = hesse_form(s, t, a, b, c)
    w, w2 = OMEGA, OMEGA ** 2
    if 3 * s + t == 0:
        sf = complex(s)
        k = sf / 24
        terms = [
            (27 * k, a.to_float()),
            (-k, _combo([(1, a), (-2, b), (-2, c)])),
            (-k, _combo([(1, a), (-2 * w, b), (-2 * w2, c)])),
            (-k, _combo([(1, a), (-2 * w2, b), (-2 * w, c)])),
        ]
        label = Label.GENERIC
    elif 6 * s - t == 0:
        k = complex(s) / 3
        terms = [
            (k, _combo([(1, a), (1, b), (1, c)])),
            (k, _combo([(1, a), (w, b), (w2, c)])),
            (k, _combo([(1, a), (w2, b), (w, c)])),
        ]
        label = Label.FERMAT
    else:
        k = _div(1, 24 * (3 * s + t) ** 2)
        A = _combo([(6 * s + t, a), (-t, b), (-t, c)])
        B = _combo([(6 * s + t, b), (-t, c), (-t, a)])
        C = _combo([(6 * s + t, c), (-t, a), (-t, b)])
        terms = [(k, A), (k, B), (k, C)]
        last = t * (36 * s * s + 6 * s * t + t * t)
        if last != 0:
            terms.append((last * k, _combo([(1, a), (1, b), (1, c)])))
            label = Label.GENERIC
        else:
            label = Label.FERMAT
    return WaringDecomposition(
        tuple(terms), len(terms), label, certificate_residual(f, terms), {"s": str(s), "t": str(t)}
    )


def weierstrass_form(p, q) -> Poly:
    """``x2^2 x3 - x1^3 - p x1 x3^2 - q x3^3``."""
    exact = is_exact_scalar(p) and is_exact_scalar(q)
    x1, x2, x3 = (Poly.var(f"x{i}", exact) for i in (1, 2, 3))
    if not exact:
        p, q = complex(p), complex(q)
    return x2 * x2 * x3 - x1 ** 3 - (x1 * x3 * x3).scale(p) - (x3 ** 3).scale(q)


def _xline(c1, c2, c3) -> LinearForm:
    return LinearForm((complex(c1), complex(c2), complex(c3)), False)


def family_weierstrass(p, q, a=1, policy: ZeroTestPolicy = DEFAULT_POLICY) -> WaringDecomposition:
    """Rank-many cubes for ``x2^2 x3 - x1^3 - p x1 x3^2 - q x3^3``.

    ``p, q != 0``: ``54 t f = 9 (x2 + t x3)^3 - 9 (x2 - t x3)^3 - t (3 x1 + s x3)^3
    - t (3 x1 - s x3)^3`` with ``t^2 = -3q``, ``s^2 = 3p``.
    ``p = 0``: ``f = -x1^3 + ((x2 + t x3)^3 - (x2 - t x3)^3) / (6 t)``.
    ``q = 0``: split ``f = (x2^2 x3 + a x3^3) - (x1^3 + p x1 x3^2 + a x3^3)`` into two
    binomials; ``a`` moves to 2 (or to 1 from 2) if ``27 a^2 + 4 p^3 = 0``.
    ``p = q = 0`` is a cusp and goes through :func:`decompose`.
    """
    f = weierstrass_form(p, q)
    if p == 0 and q == 0:
        d = decompose(f, policy)
        return WaringDecomposition(d.terms, d.claimed_rank, d.class_label, d.residual, {"branch": "cusp"})
    pc, qc = complex(p), complex(q)
    if p != 0 and q != 0:
        tau, sigma = cmath.sqrt(-3 * qc), cmath.sqrt(3 * pc)
        k = 1 / (54 * tau)
        terms = [
            (9 * k, _xline(0, 1, tau)),
            (-9 * k, _xline(0, 1, -tau)),
            (-tau * k, _xline(3, 0, sigma)),
            (-tau * k, _xline(3, 0, -sigma)),
        ]
        branch, label = "p,q", Label.GENERIC
    elif p == 0:
        tau = cmath.sqrt(-3 * qc)
        terms = [
            (-1 + 0j, _xline(1, 0, 0)),
            (1 / (6 * tau), _xline(0, 1, tau)),
            (-1 / (6 * tau), _xline(0, 1, -tau)),
        ]
        branch, label = "q", Label.FERMAT
    else:
        if 27 * a * a + 4 * pc ** 3 == 0:
            a = 2 if a != 2 else 1
        mu = cmath.sqrt(3 * a)
        nu = cmath.sqrt(3 * (27 * a * a + 4 * pc ** 3))
        den = 432 * pc ** 3 * nu
        terms = [
            (1 / (6 * mu), _xline(0, 1, mu)),
            (-1 / (6 * mu), _xline(0, 1, -mu)),
            (-(nu + 9 * a) / den, _xline(6 * pc, 0, 9 * a - nu)),
            (-(nu - 9 * a) / den, _xline(6 * pc, 0, 9 * a + nu)),
        ]
        branch, label = f"p (a={a})", Label.GENERIC
    return WaringDecomposition(
        tuple(terms), len(terms), label, certificate_residual(f, terms), {"branch": branch}
    )


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class VerificationReport:
    residual: float
    passed: bool
    terms: int
    rank: int
    rank_matches: bool
    label: Label


def verify(
    f: CubicForm | Poly, d: WaringDecomposition | Sequence, policy: ZeroTestPolicy = DEFAULT_POLICY
) -> VerificationReport:
    """Re-expand a certificate against ``f``; also compare its length with the rank."""
    terms = d.terms if isinstance(d, WaringDecomposition) else tuple(d)
    fp = _fpoly(f)
    res = certificate_residual(fp, terms)
    exact = fp.exact and _terms_exact(terms)
    passed = res == 0.0 if exact and policy.exact_for(True) else res <= policy.epsilon
    cls = cubic_rank(fp, policy)
    return VerificationReport(res, passed, len(terms), cls.rank, len(terms) == cls.rank, cls.label)
