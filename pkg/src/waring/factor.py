"""Extraction of powers, splitting of quadratics and factoring of cubics.

All radical-requiring steps work in float mode (exact input is converted).
Dividing by a line and matching coefficients against a fixed basis stay
exact on exact input. Every routine checks its output by re-expansion and
raises :class:`FactorError` when the relative residual exceeds ``tol``.

Generic choices (points, lines, transversals) come from an explicit numpy
``Generator`` drawing small integers in ``[-9, 9]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence

import numpy as np

from .classify import DEFAULT_POLICY, ZeroTestPolicy, is_zero, quadratic_rank
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
from .transvect import transvectant

RETRIES = 32
FACTOR_TOL = 1e-7


class FactorError(ValueError):
    """A factoring step failed its precondition or its residual check."""


@dataclass(frozen=True)
class LineSet:
    """Lines with ``source = scale * prod(lines)``; ``certified`` if each line passed
    the divisibility test."""

    lines: tuple
    certified: bool
    scale: complex = 1.0
    residual: float = 0.0


# ---------------------------------------------------------------------------
# helpers


def default_rng(seed: int | None = 0) -> np.random.Generator:
    return np.random.default_rng(seed)


def generic_ints(rng: np.random.Generator, n: int = 3) -> list[int]:
    """Small random integers in ``[-9, 9]``, not all zero."""
    while True:
        v = [int(x) for x in rng.integers(-9, 10, size=n)]
        if any(v):
            return v


def _poly(f) -> Poly:
    if isinstance(f, Poly):
        return f
    if isinstance(f, LinearForm):
        return f.to_poly()
    return f.to_poly()


def _float(f) -> Poly:
    return _poly(f).to_float()


def _line(v: Sequence) -> LinearForm:
    return LinearForm(tuple(complex(c) for c in v), False)


def _vec(p: Poly, monomials) -> np.ndarray:
    return np.array([complex(p.coeff(m)) for m in monomials], dtype=complex)


def relative_residual(target: Poly, approx: Poly) -> float:
    """``|target - approx| / |target|`` in sup norm (absolute when target is 0)."""
    t, a = target.to_float(), approx.to_float()
    diff = (t - a).coeff_norm()
    n = t.coeff_norm()
    return diff / n if n else diff


def _gradient(p: Poly, point: Sequence) -> np.ndarray:
    return np.array([complex(p.diff(f"x{i}").eval(point)) for i in (1, 2, 3)], dtype=complex)


def _restrict(p: Poly, P: np.ndarray, Q: np.ndarray) -> Poly:
    """``p(s P + t Q)`` as a polynomial in ``x1 = s`` and ``x2 = t``."""
    m = [[complex(P[i]), complex(Q[i]), 0j] for i in range(3)]
    return p.to_float().substitute_linear(m)


def solve_coefficients(target: Poly, basis: Sequence[Poly]):
    """Coefficients ``c`` minimizing ``|target - sum c_i basis_i|``.

    Exact mode solves the consistent system exactly (raising if it is not
    consistent); float mode uses least squares. Returns ``(coeffs, residual)``.
    """
    exact = target.exact and all(b.exact for b in basis)
    keys = sorted(set(target.terms).union(*(b.terms for b in basis)))
    if exact:
        rows = [[b.terms.get(k, 0) for b in basis] for k in keys]
        rhs = [target.terms.get(k, 0) for k in keys]
        coeffs = exact_solve(rows, rhs)
        return coeffs, 0.0
    A = np.array([[complex(b.terms.get(k, 0)) for b in basis] for k in keys], dtype=complex)
    y = np.array([complex(target.terms.get(k, 0)) for k in keys], dtype=complex)
    if not keys:
        return [0j] * len(basis), 0.0
    sol, *_ = np.linalg.lstsq(A, y, rcond=None)
    approx = A @ sol
    n = np.max(np.abs(y)) if y.size else 0.0
    res = float(np.max(np.abs(approx - y)) / n) if n else float(np.max(np.abs(approx - y), initial=0.0))
    return [complex(c) for c in sol], res


def exact_solve(rows: list[list], rhs: list) -> list:
    """Exact solution of a consistent (possibly overdetermined) linear system.

    Free variables are set to zero. Raises :class:`FactorError` when the
    system is inconsistent.
    """
    n = len(rows[0]) if rows else 0
    aug = [[Fraction(v) if isinstance(v, int) else v for v in list(r) + [b]] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(aug)) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        p = aug[r][col]
        aug[r] = [v / p for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col] != 0:
                m = aug[i][col]
                aug[i] = [a - m * b for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    for i in range(r, len(aug)):
        if aug[i][n] != 0:
            raise FactorError("linear system is inconsistent")
    sol = [0] * n
    for i, col in enumerate(pivots):
        v = aug[i][n]
        sol[col] = int(v) if isinstance(v, Fraction) and v.denominator == 1 else v
    return sol


# ---------------------------------------------------------------------------
# powers


def _power_direction(p: Poly, rng: np.random.Generator, samples: int = 6) -> np.ndarray:
    """Direction of ``a`` for ``p = lam * a**k``: every gradient is a multiple of ``a``."""
    pts = [generic_ints(rng) for _ in range(samples)]
    G = np.array([_gradient(p, pt) for pt in pts])
    if not np.any(G):
        raise FactorError("form has no gradient; it is zero")
    _, _, vh = np.linalg.svd(G)
    return vh[0]


def _extract_power(p: Poly, k: int, rng, tol: float):
    pf = p.to_float()
    if pf.is_zero():
        raise FactorError("cannot extract a power from the zero form")
    a = _line(_power_direction(pf, rng)).normalized()
    ak = a.to_poly() ** k
    (lam,), _ = solve_coefficients(pf, [ak])
    res = relative_residual(pf, ak.scale(lam))
    if res > tol:
        raise FactorError(f"form is not a {k}-th power of a line (residual {res:.3g})")
    return lam, a


def extract_cube(c: CubicForm | Poly, rng=None, tol: float = FACTOR_TOL):
    """``(lam, a)`` with ``c = lam * a**3`` and ``a`` normalized."""
    return _extract_power(_poly(c), 3, rng or default_rng(), tol)


def extract_square(q: QuadraticForm | Poly, rng=None, tol: float = FACTOR_TOL):
    """``(lam, a)`` with ``q = lam * a**2`` and ``a`` normalized."""
    return _extract_power(_poly(q), 2, rng or default_rng(), tol)


# ---------------------------------------------------------------------------
# binary forms


def _normalize_root(s: complex, t: complex) -> tuple[complex, complex]:
    if abs(s) <= abs(t):
        return (s / t, 1 + 0j)
    return (1 + 0j, t / s)


def binary_cubic_roots(coeffs: Sequence) -> list[tuple[complex, complex]]:
    """Projective roots ``(s:t)`` of ``c0 s^3 + c1 s^2 t + c2 s t^2 + c3 t^3``.

    Each root is scaled so its larger entry is 1; the root at infinity is
    ``(1:0)``.
    """
    c = [complex(v) for v in coeffs]
    if len(c) != 4:
        raise ValueError("a binary cubic has four coefficients")
    if not any(c):
        raise ValueError("the zero binary cubic has no well-defined roots")
    if abs(c[0]) >= abs(c[3]):
        if c[0] == 0:
            # both end coefficients vanish: s t (c1 s + c2 t)
            rest = (-c[2], c[1]) if (c[1] or c[2]) else (1 + 0j, 0j)
            pairs = [(1 + 0j, 0j), (0j, 1 + 0j), rest]
        else:
            pairs = [(complex(r), 1 + 0j) for r in np.roots(c)]
    else:
        pairs = [(1 + 0j, complex(w)) for w in np.roots(c[::-1])]
    return [_normalize_root(s, t) for s, t in pairs]


def _split_binary_quadratic(A: complex, B: complex, C: complex):
    """Factor ``A y1^2 + B y1 y2 + C y2^2`` as a product of two linear factors.

    Returns ``((p1, q1), (p2, q2))`` with the form equal to
    ``(p1 y1 + q1 y2)(p2 y1 + q2 y2)``.
    """
    if abs(A) >= abs(C):
        if A == 0:
            return (0j, 1 + 0j), (B, C)  # A = C = 0: y2 (B y1 + C y2)
        disc = np.sqrt(complex(B * B - 4 * A * C))
        q = -(B + disc) / 2 if abs(B + disc) >= abs(B - disc) else -(B - disc) / 2
        if q == 0:
            r1 = r2 = 0j
        else:
            r1, r2 = q / A, C / q
        return (1 + 0j, -r1), (A, -A * r2)
    (q1, p1), (q2, p2) = _split_binary_quadratic(C, B, A)
    return (p1, q1), (p2, q2)


# ---------------------------------------------------------------------------
# quadratics


def factor_rank2_quadratic(
    q: QuadraticForm | Poly, policy: ZeroTestPolicy = DEFAULT_POLICY, tol: float = FACTOR_TOL
) -> tuple[LinearForm, LinearForm]:
    """``(b, c)`` with ``q = b * c`` for a quadratic of rank two."""
    qp = _float(q)
    rank = quadratic_rank(qp, ZeroTestPolicy(policy.epsilon, "float"))
    if rank != 2:
        raise FactorError(f"expected a rank 2 quadratic, got rank {rank}")
    M = QuadraticForm.from_poly(qp).matrix()
    _, _, vh = np.linalg.svd(M)
    p1, p2 = vh[0].conj(), vh[1].conj()
    A = p1 @ M @ p1
    B = 2 * (p1 @ M @ p2)
    C = p2 @ M @ p2
    (a1, b1), (a2, b2) = _split_binary_quadratic(A, B, C)
    # y = vh x, so a form in (y1, y2) pulls back through the first two rows
    b = _line(a1 * vh[0] + b1 * vh[1]).normalized()
    c = _line(a2 * vh[0] + b2 * vh[1])
    bc = b.to_poly() * c.to_poly()
    (k,), _ = solve_coefficients(qp, [bc])
    c = c.scale(k)
    res = relative_residual(qp, b.to_poly() * c.to_poly())
    if res > tol:
        raise FactorError(f"rank 2 split failed (residual {res:.3g})")
    return b, c


def _unit(p: Poly) -> Poly:
    n = p.coeff_norm()
    return p.scale(1 / n) if n else p


def _plane_basis(a: LinearForm) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Two points spanning the line ``a = 0`` and a point ``n`` with ``a(n) = 1``."""
    av = np.array([complex(v) for v in a.coeffs], dtype=complex)
    _, _, vh = np.linalg.svd(av.reshape(1, 3))
    P, Q = vh[1].conj(), vh[2].conj()
    n = av.conj() / np.vdot(av, av).real
    return P, Q, n


def tangent_split(
    q: QuadraticForm | Poly,
    a: LinearForm,
    policy: ZeroTestPolicy = DEFAULT_POLICY,
    tol: float = FACTOR_TOL,
    check: bool = True,
) -> tuple[LinearForm, LinearForm]:
    """``(b, c)`` with ``q = a c + b**2`` when the line ``a`` is tangent to the conic ``q``.

    ``check=False`` skips the irreducibility and tangency tests for callers
    that already know them to hold and verify the result downstream.
    """
    qp = _float(q)
    fl = ZeroTestPolicy(policy.epsilon, "float")
    if a.is_zero():
        raise FactorError("tangent line must be nonzero")
    an = _line(a.coeffs).normalized()
    ap = an.to_poly()
    if check:
        if quadratic_rank(qp, fl) != 3:
            raise FactorError("tangent_split needs an irreducible quadratic")
        if not is_zero(transvectant(2, _unit(qp), _unit(qp), ap * ap).coeff(), 2, 1.0, fl):
            raise FactorError("line is not tangent to the conic")
    P, Q, n = _plane_basis(an)
    m = np.array([P, Q, np.zeros(3)]).T
    r = qp.substitute_linear(m.tolist())
    A, B, C = (complex(r.coeff(e)) for e in ((2, 0, 0), (1, 1, 0), (0, 2, 0)))
    if abs(A) >= abs(C):
        beta1 = np.sqrt(A)
        beta2 = B / (2 * beta1)
    else:
        beta2 = np.sqrt(C)
        beta1 = B / (2 * beta2)
    N = np.array([P, Q, n])
    b = _line(np.linalg.solve(N, np.array([beta1, beta2, 0j])))
    rest = qp - b.to_poly() ** 2
    ao = a.to_poly().to_float()
    coeffs, _ = solve_coefficients(rest, [ao * Poly.var(f"x{i}", False) for i in (1, 2, 3)])
    c = _line(coeffs)
    res = relative_residual(qp, ao * c.to_poly() + b.to_poly() ** 2)
    if res > tol:
        raise FactorError(f"tangent split failed (residual {res:.3g})")
    return b, c


def secant_split(
    q: QuadraticForm | Poly,
    a: LinearForm,
    policy: ZeroTestPolicy = DEFAULT_POLICY,
    tol: float = FACTOR_TOL,
):
    """``(a0, b, c)`` with ``q = a0 a**2 + b c`` when ``a`` is not tangent to ``q``.

    ``a0 = J^2[q,q,q] / (3 J^2[q,q,a^2])`` is exact on exact input.
    """
    qp = _poly(q)
    if a.is_zero():
        raise FactorError("secant line must be nonzero")
    fl = ZeroTestPolicy(policy.epsilon, "float")
    if quadratic_rank(qp.to_float(), fl) != 3:
        raise FactorError("secant_split needs an irreducible quadratic")
    ap = a.to_poly()
    if qp.exact != ap.exact:
        qp, ap = qp.to_float(), ap.to_float()
    qqa = transvectant(2, qp, qp, ap * ap).coeff()
    if is_zero(transvectant(2, _unit(qp.to_float()), _unit(qp.to_float()), _unit(ap.to_float()) ** 2).coeff(), 2, 1.0, fl):
        raise FactorError("line is tangent to the conic; use tangent_split")
    qqq = transvectant(2, qp, qp, qp).coeff()
    a0 = Fraction(qqq, 3 * qqa) if isinstance(qqq, int) and isinstance(qqa, int) else qqq / (3 * qqa)
    b, c = factor_rank2_quadratic(qp - ap * ap * a0, policy, tol)
    return a0, b, c


# ---------------------------------------------------------------------------
# lines dividing cubics


def divides_margin(f: CubicForm | Poly, a: LinearForm) -> float:
    """Sup norm of ``J^3[f, a^3, u^3]`` for unit-norm ``f`` and ``a``."""
    fp = _unit(_float(f))
    ap = _line(a.coeffs).normalized().to_poly()
    u = u_linear(False)
    return transvectant(3, fp, ap ** 3, u ** 3).coeff_norm()


def divides_linear(f: CubicForm | Poly, a: LinearForm, policy: ZeroTestPolicy = DEFAULT_POLICY) -> bool:
    """Whether the line ``a`` divides ``f``, via ``J^3[f, a^3, u^3] = 0``."""
    if a.is_zero():
        raise ValueError("divisor line must be nonzero")
    fp, ap = _poly(f), a.to_poly()
    if policy.exact_for(fp.exact and ap.exact):
        if not (fp.exact and ap.exact):
            raise ValueError("exact divisibility test needs exact input")
        return transvectant(3, fp, ap ** 3, u_linear(True) ** 3).is_zero()
    return divides_margin(fp, a) <= policy.epsilon


def divide_linear_exact(f: CubicForm | Poly, a: LinearForm, tol: float = FACTOR_TOL) -> QuadraticForm:
    """``g`` with ``f = a g`` (exact on exact input, least squares otherwise)."""
    fp, ap = _poly(f), a.to_poly()
    if fp.exact != ap.exact:
        fp, ap = fp.to_float(), ap.to_float()
    basis = [ap * Poly({m: 1}, fp.exact) for m in QUADRATIC_MONOMIALS]
    coeffs, _ = solve_coefficients(fp, basis)
    g = QuadraticForm(tuple(check_scalar(c, fp.exact) for c in coeffs), fp.exact)
    res = relative_residual(fp, ap * g.to_poly())
    if res > (0.0 if fp.exact else tol):
        raise FactorError(f"line does not divide the cubic (residual {res:.3g})")
    return g


def factor_square_line(
    f: CubicForm | Poly, rng=None, tol: float = FACTOR_TOL
) -> tuple[LinearForm, LinearForm]:
    """``(a, b)`` with ``f = a**2 b``.

    ``a`` is the square root of the x-part of ``theta`` at a generic line
    (``theta = -4 [abu]^2 a^2``); ``b`` then follows by matching coefficients.
    """
    from .concom import Concomitants

    rng = rng or default_rng()
    fp = _unit(_float(f))
    theta = Concomitants(fp).theta
    best = None
    for _ in range(RETRIES):
        u = [complex(v) for v in generic_ints(rng)]
        q = theta.at_u(u)
        if q.coeff_norm() > 1e-6 * theta.coeff_norm() * max(abs(v) for v in u) ** 2:
            best = q
            break
    if best is None:
        raise FactorError("theta vanishes at every sampled line; not a square times a line")
    _, a = extract_square(best, rng, tol)
    ap = a.to_poly()
    a2 = ap * ap
    full = _float(f)
    coeffs, _ = solve_coefficients(full, [a2 * Poly.var(f"x{i}", False) for i in (1, 2, 3)])
    b = _line(coeffs)
    res = relative_residual(full, a2 * b.to_poly())
    if res > tol:
        raise FactorError(f"not a square times a line (residual {res:.3g})")
    return a, b


def _transversal_roots(fp: Poly, rng) -> list[np.ndarray]:
    P = np.array(generic_ints(rng), dtype=complex)
    Q = np.array(generic_ints(rng), dtype=complex)
    r = _restrict(fp, P, Q)
    coeffs = [r.coeff((3 - k, k, 0)) for k in range(4)]
    if not any(abs(c) > 1e-9 for c in coeffs):
        raise FactorError("transversal lies in the curve")
    return [s * P + t * Q for s, t in binary_cubic_roots(coeffs)]


def factor_completely_reducible(
    f: CubicForm | Poly,
    policy: ZeroTestPolicy = DEFAULT_POLICY,
    rng=None,
    tol: float = FACTOR_TOL,
) -> LineSet:
    """Three lines with ``f = scale * a * b * c`` for a product of three distinct lines.

    Two random transversals meet the three lines in three points each; the
    lines are the joins of matched pairs. The matching with the smallest
    re-expansion residual wins, and the search restarts on fresh transversals
    until the residual is below ``tol``.
    """
    rng = rng or default_rng()
    fp = _unit(_float(f))
    if fp.is_zero():
        raise FactorError("cannot factor the zero form")
    best = (np.inf, None, None)
    for _ in range(RETRIES):
        try:
            X = _transversal_roots(fp, rng)
            Y = _transversal_roots(fp, rng)
        except (FactorError, np.linalg.LinAlgError):
            continue
        for perm in permutations(range(3)):
            lines = []
            for i in range(3):
                v = np.cross(X[i], Y[perm[i]])
                if not np.any(np.abs(v) > 1e-12):
                    break
                lines.append(_line(v).normalized())
            if len(lines) < 3:
                continue
            prod = lines[0].to_poly() * lines[1].to_poly() * lines[2].to_poly()
            (k,), res = solve_coefficients(fp, [prod])
            if res < best[0]:
                best = (res, tuple(lines), k)
        if best[0] <= tol:
            break
    res, lines, k = best
    if lines is None or res > tol:
        raise FactorError(f"not a product of three lines (best residual {res:.3g})")
    full = _float(f)
    prod = lines[0].to_poly() * lines[1].to_poly() * lines[2].to_poly()
    (scale,), _ = solve_coefficients(full, [prod])
    fl = ZeroTestPolicy(policy.epsilon, "float")
    certified = all(divides_linear(fp, a, fl) for a in lines)
    return LineSet(lines, certified, complex(scale), relative_residual(full, prod.scale(scale)))
