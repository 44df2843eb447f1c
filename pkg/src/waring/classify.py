"""Zero tests and the rank decision procedures for quadratic and cubic forms."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .concom import WEIGHTS, Concomitants
from .poly import CubicForm, Poly, QuadraticForm, is_exact_scalar, u_linear
from .transvect import transvectant


class Label(str, Enum):
    ZERO = "ZERO"
    CUBE = "CUBE"
    BINOMIAL = "BINOMIAL"
    SQUARE_LINE = "SQUARE_LINE"
    FERMAT = "FERMAT"
    CUSP = "CUSP"
    TANGENT_CONIC = "TANGENT_CONIC"
    GENERIC = "GENERIC"


RANK_OF = {
    Label.ZERO: 0,
    Label.CUBE: 1,
    Label.BINOMIAL: 2,
    Label.SQUARE_LINE: 3,
    Label.FERMAT: 3,
    Label.CUSP: 4,
    Label.GENERIC: 4,
    Label.TANGENT_CONIC: 5,
}

NORMAL_FORMS = {
    Label.ZERO: "0",
    Label.CUBE: "a^3",
    Label.BINOMIAL: "a^3 + b^3",
    Label.SQUARE_LINE: "a^2 b",
    Label.FERMAT: "a^3 + b^3 + c^3",
    Label.CUSP: "a^2 c + b^3",
    Label.TANGENT_CONIC: "a (a c + b^2)",
    Label.GENERIC: "a^3 + b^3 + c^3 + d^3",
}


@dataclass(frozen=True)
class ZeroTestPolicy:
    """``mode`` is ``"exact"``, ``"float"`` or ``None`` (follow the input)."""

    epsilon: float = 1e-8
    mode: str | None = None

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.mode not in (None, "exact", "float"):
            raise ValueError(f"unknown mode {self.mode!r}")

    def exact_for(self, exact_input: bool) -> bool:
        if self.mode is None:
            return exact_input
        return self.mode == "exact"


DEFAULT_POLICY = ZeroTestPolicy()


def magnitude(value) -> float:
    if isinstance(value, Poly):
        return value.coeff_norm()
    if isinstance(value, (CubicForm, QuadraticForm)):
        return value.norm() if not value.is_zero() else 0.0
    return float(abs(value))


def _is_exact_value(value) -> bool:
    if isinstance(value, Poly):
        return value.exact
    if isinstance(value, (CubicForm, QuadraticForm)):
        return value.exact
    return is_exact_scalar(value)


def is_zero(value, weight: int = 0, norm: float = 1.0, policy: ZeroTestPolicy = DEFAULT_POLICY) -> bool:
    """Exact: exact zero. Float: ``|value| <= epsilon * norm**weight`` in sup norm."""
    if policy.exact_for(_is_exact_value(value)):
        if isinstance(value, Poly):
            return value.is_zero()
        if isinstance(value, (CubicForm, QuadraticForm)):
            return value.is_zero()
        return value == 0
    return magnitude(value) <= policy.epsilon * norm ** weight


@dataclass(frozen=True)
class RankClassification:
    rank: int
    label: Label
    margins: dict = field(default_factory=dict)
    normal_form_note: str = ""

    def __post_init__(self):
        if RANK_OF[self.label] != self.rank:
            raise ValueError(f"rank {self.rank} inconsistent with label {self.label.value}")


def _prepare(f: CubicForm | QuadraticForm | Poly, policy: ZeroTestPolicy) -> tuple[Poly, bool]:
    """The form to test and whether tests are exact; float input is scaled to unit norm."""
    p = f.to_poly() if isinstance(f, (CubicForm, QuadraticForm)) else f
    exact = policy.exact_for(p.exact)
    if exact and not p.exact:
        raise ValueError("exact classification needs exact input")
    if not exact:
        p = p.to_float()
        n = p.coeff_norm()
        if n:
            p = p.scale(1 / n + 0j)
    return p, exact


def quadratic_rank(q: QuadraticForm | Poly, policy: ZeroTestPolicy = DEFAULT_POLICY) -> int:
    """0 for zero, 1 for a square, 2 for a product of two independent lines, else 3."""
    p, exact = _prepare(q, policy)
    test = ZeroTestPolicy(policy.epsilon, "exact" if exact else "float")
    if p.is_zero() if exact else p.coeff_norm() == 0:
        return 0
    ux = u_linear(p.exact)
    if is_zero(transvectant(2, p, p, ux * ux), 2, 1.0, test):
        return 1
    if is_zero(transvectant(2, p, p, p).coeff(), 3, 1.0, test):
        return 2
    return 3


class _Tester:
    def __init__(self, c: Concomitants, exact: bool, policy: ZeroTestPolicy):
        self.c = c
        self.policy = ZeroTestPolicy(policy.epsilon, "exact" if exact else "float")
        self.margins: dict = {}

    def zero(self, name: str) -> bool:
        value = self.c.get(name)
        self.margins[name] = magnitude(value)
        return is_zero(value, WEIGHTS[name], 1.0, self.policy)


def cubic_rank(f: CubicForm | Poly, policy: ZeroTestPolicy = DEFAULT_POLICY) -> RankClassification:
    """Waring rank of a ternary cubic from zero tests on its concomitants.

    Rows are tried in order and each is reached only if every earlier test
    failed. ``T_uuu`` stands in for the Hessian's theta and ``S = T = 0`` for
    the Hessian's ``F_6u``; the predicates are equivalent and cheaper.
    ``margins`` holds the sup norm of every tested concomitant of the
    unit-norm form.
    """
    p, exact = _prepare(f, policy)
    margins: dict = {"f": magnitude(p)}
    if p.is_zero() or (not exact and margins["f"] == 0):
        label = Label.ZERO
        return RankClassification(0, label, margins, NORMAL_FORMS[label])
    t = _Tester(Concomitants(p), exact, policy)
    t.margins.update(margins)
    if t.zero("theta"):
        label = Label.CUBE
    elif t.zero("f6u"):
        label = Label.SQUARE_LINE
    elif t.zero("delta"):
        label = Label.BINOMIAL
    elif t.zero("t_uuu"):
        label = Label.TANGENT_CONIC
    else:
        s_zero = t.zero("S")
        t_zero = t.zero("T")
        if s_zero and t_zero:
            label = Label.CUSP
        elif s_zero:
            label = Label.FERMAT
        else:
            label = Label.GENERIC
    return RankClassification(RANK_OF[label], label, t.margins, NORMAL_FORMS[label])


def lower_bound(f: CubicForm | Poly, policy: ZeroTestPolicy = DEFAULT_POLICY) -> int:
    """Largest rank lower bound implied by the nonvanishing of concomitants.

    theta != 0 gives 2; D != 0 gives 3; F_6u = 0 with theta != 0 gives 3;
    S != 0 gives 4; T = 0 with D != 0 gives 4.
    """
    p, exact = _prepare(f, policy)
    if p.is_zero() or (not exact and p.coeff_norm() == 0):
        return 0
    t = _Tester(Concomitants(p), exact, policy)
    theta0, delta0, f6u0 = t.zero("theta"), t.zero("delta"), t.zero("f6u")
    s0, t0 = t.zero("S"), t.zero("T")
    bound = 1
    if not theta0:
        bound = 2
    if not delta0 or (f6u0 and not theta0):
        bound = 3
    if not s0 or (t0 and not delta0):
        bound = 4
    return bound
