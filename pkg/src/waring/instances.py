"""Seeded random instances of each row of the rank table.

Every instance is built from integer lines with entries in ``[-bound, bound]``
and belongs to its class by construction, so the generators serve as ground
truth for classification and decomposition tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classify import Label
from .poly import CubicForm, LinearForm, Poly


@dataclass(frozen=True)
class InstanceConfig:
    bound: int = 5
    perturbation: float = 0.0  # relative size of complex noise; 0 keeps the form exact


def _det(rows) -> int:
    (a1, a2, a3), (b1, b2, b3), (c1, c2, c3) = rows
    return a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1) + a3 * (b1 * c2 - b2 * c1)


def _independent(rng: np.random.Generator, k: int, bound: int) -> list[tuple[int, ...]]:
    """``k <= 3`` integer vectors that are linearly independent."""
    while True:
        rows = [tuple(int(v) for v in rng.integers(-bound, bound + 1, 3)) for _ in range(k)]
        if k == 1 and any(rows[0]):
            return rows
        if k == 2:
            a, b = rows
            cross = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])
            if any(cross):
                return rows
        if k == 3 and _det(rows):
            return rows


def random_lines(rng: np.random.Generator, k: int, bound: int = 5) -> list[LinearForm]:
    return [LinearForm(v, True) for v in _independent(rng, k, bound)]


def _hesse_params(rng: np.random.Generator, bound: int) -> tuple[int, int]:
    """``(s, t)`` with ``t (t^3 - 216 s^3) != 0``, so the Hesse form is generic."""
    while True:
        s, t = (int(v) for v in rng.integers(-bound, bound + 1, 2))
        if t != 0 and t != 6 * s:
            return s, t


def constructed_form(label: Label, rng: np.random.Generator, bound: int = 5) -> Poly:
    """An exact cubic of the given class from random integer lines."""
    if label is Label.ZERO:
        return Poly.zero(True)
    if label is Label.CUBE:
        (a,) = random_lines(rng, 1, bound)
        return a.to_poly() ** 3
    if label in (Label.BINOMIAL, Label.SQUARE_LINE):
        a, b = (l.to_poly() for l in random_lines(rng, 2, bound))
        return a ** 3 + b ** 3 if label is Label.BINOMIAL else a * a * b
    a, b, c = (l.to_poly() for l in random_lines(rng, 3, bound))
    if label is Label.FERMAT:
        return a ** 3 + b ** 3 + c ** 3
    if label is Label.CUSP:
        return a * a * c + b ** 3
    if label is Label.TANGENT_CONIC:
        return a * (a * c + b * b)
    s, t = _hesse_params(rng, bound)
    return (a ** 3 + b ** 3 + c ** 3).scale(s) + (a * b * c).scale(t)


def perturb(f: Poly, rng: np.random.Generator, size: float) -> Poly:
    """Float copy of ``f`` plus complex noise of relative sup norm ``size`` on every monomial."""
    v = CubicForm.from_poly(f.to_float()).vector()
    norm = float(np.abs(v).max()) or 1.0
    noise = rng.uniform(-1, 1, 10) + 1j * rng.uniform(-1, 1, 10)
    return CubicForm.of([complex(c) for c in v + size * norm * noise], False).to_poly()


def instance(label: Label, rng: np.random.Generator, config: InstanceConfig = InstanceConfig()) -> Poly:
    f = constructed_form(label, rng, config.bound)
    if config.perturbation and label is not Label.ZERO:
        f = perturb(f, rng, config.perturbation)
    return f
