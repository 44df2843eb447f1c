"""Recover the middle coefficient m in T = (t^6 + m s^3 t^3 - 5832 s^6) [abc]^6 for Hesse forms.

For each (s, t) with s t != 0 the coefficient is solved exactly from T computed on
s (a^3 + b^3 + c^3) + t a b c over random integer lines; every draw must give the
same rational.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from waring.concom import Concomitants
from waring.decompose import hesse_form
from waring.instances import random_lines
from waring.transvect import bracket


@dataclass(frozen=True)
class Config:
    draws: int = 12
    seed: int = 0


def middle_coefficient(s, t, lines) -> Fraction:
    abc = bracket(*lines)
    T = Concomitants(hesse_form(s, t, *lines)).T
    return Fraction(T / abc ** 6 - t ** 6 + 5832 * s ** 6) / (s ** 3 * t ** 3)


def run(cfg: Config) -> set:
    rng = np.random.default_rng(cfg.seed)
    found = set()
    for _ in range(cfg.draws):
        s, t = (Fraction(int(rng.integers(1, 7)) * int(rng.choice([-1, 1])), int(rng.integers(1, 4))) for _ in range(2))
        m = middle_coefficient(s, t, random_lines(rng, 3))
        print(f"s={s!s:>5} t={t!s:>5}  m={m}")
        found.add(m)
    return found


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--draws", type=int, default=Config.draws)
    ap.add_argument("--seed", type=int, default=Config.seed)
    args = ap.parse_args()
    found = run(Config(args.draws, args.seed))
    print("distinct values:", sorted(found))


if __name__ == "__main__":
    main()
