"""Print the rank table on constructed normal forms: label, rank, lower bound and certificate size."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from waring.classify import NORMAL_FORMS, Label, cubic_rank, lower_bound
from waring.decompose import decompose
from waring.instances import constructed_form


@dataclass(frozen=True)
class Config:
    per_row: int = 5
    seed: int = 0


def run(cfg: Config) -> list[dict]:
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for label in Label:
        for _ in range(cfg.per_row):
            f = constructed_form(label, rng)
            r = cubic_rank(f)
            d = decompose(f, seed=cfg.seed)
            rows.append(
                {
                    "built": label.value,
                    "classified": r.label.value,
                    "rank": r.rank,
                    "lower_bound": lower_bound(f),
                    "terms": len(d.terms),
                    "residual": d.residual,
                }
            )
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--per-row", type=int, default=Config.per_row)
    ap.add_argument("--seed", type=int, default=Config.seed)
    args = ap.parse_args()
    rows = run(Config(args.per_row, args.seed))
    print(f"{'built':<14}{'normal form':<24}{'classified':<14}{'rank':>5}{'bound':>6}{'terms':>6}{'residual':>11}")
    for r in rows:
        form = NORMAL_FORMS[Label(r["built"])]
        print(
            f"{r['built']:<14}{form:<24}{r['classified']:<14}{r['rank']:>5}{r['lower_bound']:>6}"
            f"{r['terms']:>6}{r['residual']:>11.1e}"
        )


if __name__ == "__main__":
    main()
