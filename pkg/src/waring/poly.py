"""Sparse polynomials in the point variables x1..x3 and line variables u1..u3.

Coefficients live in one of two scalar modes:

* exact: ``int``, :class:`fractions.Fraction` or :class:`QQi` (Gaussian rationals),
* float: ``complex`` (``float`` and ``int`` inputs are promoted).

Mixing the two modes raises :class:`ModeError`. Python ``int`` literals are
accepted as constants in either mode.

Monomials are stored packed into a single integer, 8 bits per exponent, so that
monomial multiplication is integer addition. Use :func:`monomial` and
:func:`exponents` to convert.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, Sequence

VARIABLES = ("x1", "x2", "x3", "u1", "u2", "u3")
_BITS = 8
_MASK = (1 << _BITS) - 1
_SHIFT = {name: _BITS * i for i, name in enumerate(VARIABLES)}

CUBIC_MONOMIALS = (
    (3, 0, 0), (2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 1, 1),
    (1, 0, 2), (0, 3, 0), (0, 2, 1), (0, 1, 2), (0, 0, 3),
)
QUADRATIC_MONOMIALS = ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))
LINEAR_MONOMIALS = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


class ModeError(TypeError):
    """Raised when exact and float scalars meet in one operation."""


# ---------------------------------------------------------------------------
# Gaussian rationals


class QQi:
    """Exact complex number ``re + im*i`` with rational parts.

    Arithmetic results with zero imaginary part collapse to ``Fraction`` (or
    ``int``), so real exact computations never pay for the complex wrapper.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def make(re, im):
        if im == 0:
            return re
        return QQi(re, im)

    @staticmethod
    def _parts(v):
        if isinstance(v, QQi):
            return v.re, v.im
        if isinstance(v, (int, Fraction)):
            return v, 0
        if isinstance(v, (float, complex)):
            raise ModeError("cannot mix exact and float scalars")
        return None

    def __add__(self, other):
        p = QQi._parts(other)
        if p is None:
            return NotImplemented
        return QQi.make(self.re + p[0], self.im + p[1])

    __radd__ = __add__

    def __sub__(self, other):
        p = QQi._parts(other)
        if p is None:
            return NotImplemented
        return QQi.make(self.re - p[0], self.im - p[1])

    def __rsub__(self, other):
        p = QQi._parts(other)
        if p is None:
            return NotImplemented
        return QQi.make(p[0] - self.re, p[1] - self.im)

    def __mul__(self, other):
        p = QQi._parts(other)
        if p is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = p
        return QQi.make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = QQi._parts(other)
        if p is None:
            return NotImplemented
        c, d = p
        den = Fraction(c * c + d * d)
        if den == 0:
            raise ZeroDivisionError("division by exact zero")
        a, b = self.re, self.im
        return QQi.make((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        p = QQi._parts(other)
        if p is None:
            return NotImplemented
        return QQi(p[0], p[1]) / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = 1
        base = self
        while n:
            if n & 1:
                out = base * out
            base = base * base
            n >>= 1
        return out

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __pos__(self):
        return self

    def __abs__(self) -> float:
        return abs(complex(self))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def conjugate(self):
        return QQi.make(self.re, -self.im)

    def __eq__(self, other):
        try:
            p = QQi._parts(other)
        except ModeError:
            return False
        if p is None:
            return NotImplemented
        return self.re == p[0] and self.im == p[1]

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"QQi({self.re}, {self.im})"


def is_exact_scalar(v) -> bool:
    return isinstance(v, (int, Fraction, QQi)) and not isinstance(v, bool)


def is_float_scalar(v) -> bool:
    return isinstance(v, (float, complex)) or (isinstance(v, int) and not isinstance(v, bool))


def check_scalar(v, exact: bool):
    """Validate ``v`` for the given mode and return it in canonical storage form."""
    if exact:
        if not is_exact_scalar(v):
            raise ModeError(f"expected an exact scalar, got {type(v).__name__}")
        return v
    if isinstance(v, (int, float, complex)) and not isinstance(v, bool):
        return complex(v)
    if is_exact_scalar(v):
        raise ModeError(f"expected a float scalar, got {type(v).__name__}")
    raise TypeError(f"not a scalar: {v!r}")


def to_complex(v) -> complex:
    return complex(v)


def parse_exact(text: str):
    """Parse ``"n/d"`` or ``"n"`` into a Fraction (or int)."""
    q = Fraction(text.strip())
    return q.numerator if q.denominator == 1 else q


# ---------------------------------------------------------------------------
# Monomials


def monomial(xexp: Sequence[int] = (0, 0, 0), uexp: Sequence[int] = (0, 0, 0)) -> int:
    """Pack exponent vectors into a monomial key."""
    key = 0
    for i, e in enumerate(tuple(xexp) + tuple(uexp)):
        if e < 0 or e > _MASK:
            raise ValueError(f"exponent out of range: {e}")
        key |= e << (_BITS * i)
    return key


def exponents(key: int) -> tuple[int, ...]:
    """Unpack a monomial key into ``(x1, x2, x3, u1, u2, u3)`` exponents."""
    return tuple((key >> (_BITS * i)) & _MASK for i in range(6))


def _xdeg(key: int) -> int:
    return (key & _MASK) + ((key >> 8) & _MASK) + ((key >> 16) & _MASK)


def _udeg(key: int) -> int:
    return ((key >> 24) & _MASK) + ((key >> 32) & _MASK) + ((key >> 40) & _MASK)


# ---------------------------------------------------------------------------
# Poly


class Poly:
    """Immutable sparse polynomial in ``x1, x2, x3, u1, u2, u3``.

    ``terms`` maps packed monomial keys to nonzero coefficients. Zero
    coefficients are never stored; in float mode only an exact ``0j`` counts as
    zero (use :meth:`prune` for tolerance-based cleanup).
    """

    __slots__ = ("terms", "exact")

    def __init__(self, terms=None, exact: bool = True):
        clean = {}
        if terms:
            for key, c in dict(terms).items():
                if isinstance(key, tuple):
                    key = monomial(key[:3], key[3:]) if len(key) == 6 else monomial(key)
                c = check_scalar(c, exact)
                if c != 0:
                    clean[key] = clean.get(key, 0) + c
            clean = {k: v for k, v in clean.items() if v != 0}
        self.terms = clean
        self.exact = exact

    @classmethod
    def _raw(cls, terms: dict, exact: bool) -> "Poly":
        p = cls.__new__(cls)
        p.terms = terms
        p.exact = exact
        return p

    # construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, exact: bool = True) -> "Poly":
        return cls._raw({}, exact)

    @classmethod
    def const(cls, c, exact: bool = True) -> "Poly":
        c = check_scalar(c, exact)
        return cls._raw({0: c} if c != 0 else {}, exact)

    @classmethod
    def var(cls, name: str, exact: bool = True) -> "Poly":
        return cls._raw({1 << _SHIFT[name]: 1 if exact else 1 + 0j}, exact)

    @classmethod
    def linear(cls, coeffs: Sequence, block: str = "x", exact: bool = True) -> "Poly":
        """``c1*x1 + c2*x2 + c3*x3`` (or the u-block with ``block="u"``)."""
        off = 0 if block == "x" else 3
        terms = {}
        for i, c in enumerate(coeffs):
            c = check_scalar(c, exact)
            if c != 0:
                terms[1 << (_BITS * (i + off))] = c
        return cls._raw(terms, exact)

    # introspection --------------------------------------------------------

    def items(self) -> Iterator[tuple[tuple[int, ...], object]]:
        for key, c in self.terms.items():
            yield exponents(key), c

    def coeff(self, xexp: Sequence[int] = (0, 0, 0), uexp: Sequence[int] = (0, 0, 0)):
        return self.terms.get(monomial(xexp, uexp), 0 if self.exact else 0j)

    def is_zero(self) -> bool:
        return not self.terms

    def bidegree(self) -> tuple[int, int] | None:
        """``(x-degree, u-degree)`` if bihomogeneous, ``None`` otherwise (or for 0)."""
        degs = {(_xdeg(k), _udeg(k)) for k in self.terms}
        if len(degs) != 1:
            return None
        return degs.pop()

    def degrees(self) -> set[tuple[int, int]]:
        return {(_xdeg(k), _udeg(k)) for k in self.terms}

    def coeff_norm(self) -> float:
        """Sup norm of the coefficient vector."""
        if not self.terms:
            return 0.0
        return float(max(abs(c) for c in self.terms.values()))

    def __len__(self):
        return len(self.terms)

    # mode -----------------------------------------------------------------

    def _check(self, other: "Poly"):
        if self.exact != other.exact:
            raise ModeError("cannot mix exact and float polynomials")

    def to_float(self) -> "Poly":
        if not self.exact:
            return self
        return Poly._raw({k: complex(c) for k, c in self.terms.items()}, False)

    def prune(self, tol: float) -> "Poly":
        """Drop coefficients with absolute value ``<= tol``."""
        return Poly._raw({k: c for k, c in self.terms.items() if abs(c) > tol}, self.exact)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Poly):
            if other == 0:
                return self
            other = Poly.const(other, self.exact)
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v = v + c
                if v == 0:
                    del out[k]
                else:
                    out[k] = v
        return Poly._raw(out, self.exact)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({k: -c for k, c in self.terms.items()}, self.exact)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other, self.exact)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        if not (isinstance(c, int) and not isinstance(c, bool)):
            c = check_scalar(c, self.exact)
        if c == 0:
            return Poly._raw({}, self.exact)
        if c == 1:
            return self
        return Poly._raw({k: v * c for k, v in self.terms.items()}, self.exact)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                v = get(k)
                out[k] = ca * cb if v is None else v + ca * cb
        return Poly._raw({k: v for k, v in out.items() if v != 0}, self.exact)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        if isinstance(c, Poly):
            return NotImplemented
        if self.exact:
            if isinstance(c, int) and not isinstance(c, bool):
                c = Fraction(c)
            c = check_scalar(c, True)
            return Poly._raw({k: v / c for k, v in self.terms.items()}, True)
        c = check_scalar(c, False)
        return Poly._raw({k: v / c for k, v in self.terms.items()}, False)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = Poly.const(1, self.exact)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.exact == other.exact and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    # calculus and substitution -------------------------------------------

    def diff(self, var: str, times: int = 1) -> "Poly":
        """Formal partial derivative with respect to ``var`` (e.g. ``"x2"``)."""
        s = _SHIFT[var]
        terms = self.terms
        for _ in range(times):
            step = 1 << s
            out = {}
            for k, c in terms.items():
                e = (k >> s) & _MASK
                if e:
                    out[k - step] = c * e
            terms = out
        return Poly._raw(terms, self.exact)

    def dx(self, alpha: Sequence[int]) -> "Poly":
        """Mixed x-derivative ``d^a1/dx1 d^a2/dx2 d^a3/dx3``."""
        out = {}
        steps = [a << (_BITS * i) for i, a in enumerate(alpha)]
        total = sum(steps)
        for k, c in self.terms.items():
            m = 1
            ok = True
            for i, a in enumerate(alpha):
                if a:
                    e = (k >> (_BITS * i)) & _MASK
                    if e < a:
                        ok = False
                        break
                    m *= factorial(e) // factorial(e - a)
            if ok:
                out[k - total] = c * m
        return Poly._raw(out, self.exact)

    def substitute_linear(self, matrix: Sequence[Sequence]) -> "Poly":
        """Compose with ``x -> L x``, i.e. ``x_i -> sum_j L[i][j] x_j``.

        Only defined for polynomials free of the u-block.
        """
        if any(_udeg(k) for k in self.terms):
            raise ValueError("substitute_linear needs a polynomial with u-degree 0")
        images = [Poly.linear(row, "x", self.exact) for row in matrix]
        cache: dict[tuple[int, int], Poly] = {}

        def power(i, e):
            if (i, e) not in cache:
                cache[(i, e)] = images[i] ** e
            return cache[(i, e)]

        out = Poly.zero(self.exact)
        for key, c in self.terms.items():
            exps = exponents(key)
            term = Poly.const(c, self.exact)
            for i in range(3):
                if exps[i]:
                    term = term * power(i, exps[i])
            out = out + term
        return out

    def eval(self, x: Sequence | None = None, u: Sequence | None = None):
        """Value at the point ``x`` (and line ``u``); missing blocks must be absent."""
        point = list(x) if x is not None else [None] * 3
        point += list(u) if u is not None else [None] * 3
        for v in point:
            if v is not None:
                check_scalar(v, self.exact)
        total = 0 if self.exact else 0j
        for key, c in self.terms.items():
            term = c
            for i in range(6):
                e = (key >> (_BITS * i)) & _MASK
                if e:
                    if point[i] is None:
                        raise ValueError(f"no value supplied for {VARIABLES[i]}")
                    term = term * point[i] ** e
            total = total + term
        return total

    def at_u(self, u: Sequence) -> "Poly":
        """Specialize the u-block to numbers, leaving a polynomial in x."""
        for v in u:
            check_scalar(v, self.exact)
        out: dict = {}
        low = (1 << 24) - 1
        for key, c in self.terms.items():
            term = c
            for i in range(3):
                e = (key >> (_BITS * (i + 3))) & _MASK
                if e:
                    term = term * u[i] ** e
            k = key & low
            out[k] = out.get(k, 0) + term
        return Poly._raw({k: v for k, v in out.items() if v != 0}, self.exact)

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        parts = []
        for key in sorted(self.terms, reverse=True):
            exps = exponents(key)
            mon = "*".join(
                f"{VARIABLES[i]}^{e}" if e > 1 else VARIABLES[i] for i, e in enumerate(exps) if e
            )
            parts.append(f"({self.terms[key]})" + (f"*{mon}" if mon else ""))
        return "Poly(" + " + ".join(parts) + ")"


def u_linear(exact: bool = True) -> Poly:
    """The generic line ``u_x = u1*x1 + u2*x2 + u3*x3``."""
    one = 1 if exact else 1 + 0j
    return Poly._raw({monomial(e, e): one for e in LINEAR_MONOMIALS}, exact)


# ---------------------------------------------------------------------------
# Dense forms


def _mode_of(values: Iterable, exact: bool | None) -> bool:
    values = list(values)
    if exact is None:
        exact = all(is_exact_scalar(v) for v in values)
    return exact


def multinomial(alpha: Sequence[int]) -> int:
    out = factorial(sum(alpha))
    for a in alpha:
        out //= factorial(a)
    return out


@dataclass(frozen=True)
class _DenseForm:
    coeffs: tuple
    exact: bool

    _MONOMIALS = ()

    def __post_init__(self):
        if len(self.coeffs) != len(self._MONOMIALS):
            raise ValueError(f"{type(self).__name__} needs {len(self._MONOMIALS)} coefficients")
        object.__setattr__(self, "coeffs", tuple(check_scalar(c, self.exact) for c in self.coeffs))

    @classmethod
    def of(cls, coeffs: Sequence, exact: bool | None = None):
        """Build from coefficients; the mode is inferred unless given."""
        return cls(tuple(coeffs), _mode_of(coeffs, exact))

    @classmethod
    def from_poly(cls, p: Poly):
        keys = {monomial(m): i for i, m in enumerate(cls._MONOMIALS)}
        zero = 0 if p.exact else 0j
        coeffs = [zero] * len(cls._MONOMIALS)
        for key, c in p.terms.items():
            if key not in keys:
                raise ValueError(f"term {exponents(key)} does not belong to a {cls.__name__}")
            coeffs[keys[key]] = c
        return cls(tuple(coeffs), p.exact)

    def to_poly(self) -> Poly:
        return Poly._raw(
            {monomial(m): c for m, c in zip(self._MONOMIALS, self.coeffs) if c != 0}, self.exact
        )

    def to_float(self):
        return type(self)(tuple(complex(c) for c in self.coeffs), False)

    def vector(self):
        import numpy as np

        return np.array([complex(c) for c in self.coeffs], dtype=complex)

    def norm(self) -> float:
        return float(max(abs(c) for c in self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other):
        return type(self).from_poly(self.to_poly() + other.to_poly())

    def __sub__(self, other):
        return type(self).from_poly(self.to_poly() - other.to_poly())

    def scale(self, c):
        return type(self).from_poly(self.to_poly().scale(c))


@dataclass(frozen=True)
class LinearForm(_DenseForm):
    """``a1*x1 + a2*x2 + a3*x3``."""

    _MONOMIALS = LINEAR_MONOMIALS

    def __neg__(self):
        return LinearForm(tuple(-c for c in self.coeffs), self.exact)

    def __add__(self, other):
        return LinearForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.exact)

    def __sub__(self, other):
        return LinearForm(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.exact)

    def scale(self, c):
        c = c if isinstance(c, int) else check_scalar(c, self.exact)
        return LinearForm(tuple(a * c for a in self.coeffs), self.exact)

    def __rmul__(self, c):
        return self.scale(c)

    def normalized(self) -> "LinearForm":
        """Unit sup-norm, first nonzero coefficient rotated to the positive reals (float)."""
        v = [complex(c) for c in self.coeffs]
        n = max(abs(c) for c in v)
        if n == 0:
            return LinearForm((0j, 0j, 0j), False)
        lead = next(c for c in v if abs(c) > 1e-12 * n)
        phase = lead / abs(lead)
        return LinearForm(tuple(c / (n * phase) for c in v), False)


@dataclass(frozen=True)
class QuadraticForm(_DenseForm):
    """Coefficients in the order x1^2, x1x2, x1x3, x2^2, x2x3, x3^2."""

    _MONOMIALS = QUADRATIC_MONOMIALS

    def matrix(self):
        """Symmetric 3x3 matrix ``M`` with ``q(x) = x^T M x`` (complex numpy array)."""
        import numpy as np

        c = [complex(v) for v in self.coeffs]
        return np.array(
            [
                [c[0], c[1] / 2, c[2] / 2],
                [c[1] / 2, c[3], c[4] / 2],
                [c[2] / 2, c[4] / 2, c[5]],
            ],
            dtype=complex,
        )


@dataclass(frozen=True)
class CubicForm(_DenseForm):
    """Coefficients in the order x1^3, x1^2x2, x1^2x3, x1x2^2, x1x2x3, x1x3^2,
    x2^3, x2^2x3, x2x3^2, x3^3."""

    _MONOMIALS = CUBIC_MONOMIALS


def power_of_line(a: LinearForm, k: int) -> Poly:
    return a.to_poly() ** k
