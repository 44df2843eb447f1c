"""Decompose the standard worked examples and print each certificate as JSON."""

from __future__ import annotations

import argparse
import json

from waring.cli import terms_to_json
from waring.decompose import (
    decompose,
    decompose_rank4_generic,
    family_conic_secant,
    family_hesse,
    family_product,
    family_weierstrass,
)
from waring.poly import LinearForm, Poly

X1, X2, X3 = (Poly.var(f"x{i}", True) for i in (1, 2, 3))
E = [LinearForm(v, True) for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]


def examples() -> dict:
    return {
        "x1 x2 x3 (product family)": family_product(*E),
        "x1^2 x2 - x2^3": decompose(X1 ** 2 * X2 - X2 ** 3),
        "x1 (x2^2 + x3^2) via u = (1,1,0)": decompose_rank4_generic(X1 * (X2 ** 2 + X3 ** 2), first_u=(1, 1, 0)),
        "x1 (x1^2 + x2 x3) (conic secant family)": family_conic_secant(*E),
        "Weierstrass p=0 q=1": family_weierstrass(0, 1),
        "Weierstrass p=1 q=1": family_weierstrass(1, 1),
        "Weierstrass p=1 q=1, first u = (1,0,0)": decompose(
            X2 ** 2 * X3 - X1 ** 3 - X1 * X3 ** 2 - X3 ** 3, first_u=(1, 0, 0)
        ),
        "Hesse s=1 t=1": family_hesse(1, 1, *E),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.parse_args()
    out = {
        name: {"rank": d.claimed_rank, "residual": d.residual, "terms": terms_to_json(d.terms)}
        for name, d in examples().items()
    }
    print(json.dumps(out, indent=1))


if __name__ == "__main__":
    main()
