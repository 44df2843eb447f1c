"""How well does the float zero test separate the rows of the rank table?

For perturbed constructed forms of every class, each concomitant of the
unit-norm form is labelled "should be zero" or "should be nonzero" by an exact
computation on the unperturbed form. The table reports the largest
should-be-zero and smallest should-be-nonzero sup norm per concomitant, then
the number of misclassified instances for a grid of epsilon.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from waring.classify import Label, ZeroTestPolicy, cubic_rank, magnitude
from waring.concom import Concomitants
from waring.instances import constructed_form, perturb

FIELDS = ("theta", "f6u", "delta", "t_uuu", "S", "T")


@dataclass(frozen=True)
class Config:
    per_class: int = 200
    perturbation: float = 1e-12
    seed: int = 600
    epsilons: tuple = (1e-10, 1e-9, 1e-8, 1e-7, 1e-6)


def run(cfg: Config):
    zero_max = dict.fromkeys(FIELDS, 0.0)
    nonzero_min = dict.fromkeys(FIELDS, np.inf)
    errors = {e: {} for e in cfg.epsilons}
    for label in Label:
        if label is Label.ZERO:
            continue
        rng = np.random.default_rng(cfg.seed + list(Label).index(label))
        for _ in range(cfg.per_class):
            exact = Concomitants(constructed_form(label, rng))
            f = perturb(exact.f, rng, cfg.perturbation)
            f = f.scale(1 / f.coeff_norm() + 0j)
            c = Concomitants(f)
            for k in FIELDS:
                m = magnitude(c.get(k))
                if magnitude(exact.get(k)) == 0:
                    zero_max[k] = max(zero_max[k], m)
                else:
                    nonzero_min[k] = min(nonzero_min[k], m)
            for e in cfg.epsilons:
                got = cubic_rank(f, ZeroTestPolicy(mode="float", epsilon=e)).label
                if got is not label:
                    key = f"{label.value}->{got.value}"
                    errors[e][key] = errors[e].get(key, 0) + 1
    return zero_max, nonzero_min, errors


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--per-class", type=int, default=Config.per_class)
    ap.add_argument("--perturbation", type=float, default=Config.perturbation)
    ap.add_argument("--seed", type=int, default=Config.seed)
    args = ap.parse_args()
    zero_max, nonzero_min, errors = run(Config(args.per_class, args.perturbation, args.seed))
    print(f"{'concomitant':<12}{'max zero':>12}{'min nonzero':>14}{'gap':>10}")
    for k in FIELDS:
        gap = nonzero_min[k] / zero_max[k] if zero_max[k] else np.inf
        print(f"{k:<12}{zero_max[k]:>12.1e}{nonzero_min[k]:>14.1e}{gap:>10.1e}")
    print()
    for e, errs in errors.items():
        print(f"epsilon={e:.0e}  misclassified={sum(errs.values())}  {errs}")


if __name__ == "__main__":
    main()
