"""Command-line front end emitting deterministic JSON.

A form file holds the ten coefficients of a cubic in the canonical monomial
order ``x1^3, x1^2x2, x1^2x3, x1x2^2, x1x2x3, x1x3^2, x2^3, x2^2x3, x2x3^2, x3^3``:

    {"mode": "exact", "coefficients": [["1", "0"], ["0", "0"], ...]}

Each entry is ``[re, im]``; exact files use rational strings ``"n/d"``.
Exit codes: 0 success, 1 verification or classification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Any

import numpy as np

from . import __version__
from .classify import Label, ZeroTestPolicy, cubic_rank
from .concom import Concomitants, identity_suite
from .decompose import DecompositionError, WaringDecomposition, decompose, verify
from .instances import constructed_form
from .poly import CUBIC_MONOMIALS, CubicForm, LinearForm, Poly, QQi, is_exact_scalar

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    """Malformed input; the message names the offending file and field."""


# ---------------------------------------------------------------------------
# scalars


def _rational_str(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def encode_scalar(v) -> list:
    """``[re, im]``: rational strings for exact values, floats otherwise."""
    if isinstance(v, QQi):
        return [_rational_str(v.re), _rational_str(v.im)]
    if is_exact_scalar(v):
        return [_rational_str(v), "0"]
    z = complex(v)
    return [z.real, z.imag]


def _parse_part(x, exact: bool, where: str):
    if exact:
        if isinstance(x, bool) or not isinstance(x, (str, int)):
            raise InputError(f"{where}: exact entries must be rational strings like \"n/d\"")
        try:
            q = Fraction(x.strip() if isinstance(x, str) else x)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{where}: bad rational {x!r} ({exc})") from None
        return q
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise InputError(f"{where}: float entries must be numbers")
    return float(x)


def decode_scalar(entry, exact: bool, where: str):
    if not isinstance(entry, list) or len(entry) != 2:
        raise InputError(f"{where}: expected a [re, im] pair")
    re, im = (_parse_part(x, exact, f"{where}[{i}]") for i, x in enumerate(entry))
    if exact:
        if im == 0:
            return re.numerator if re.denominator == 1 else re
        return QQi(re, im)
    return complex(re, im)


# ---------------------------------------------------------------------------
# files


def _load_json(path: str) -> Any:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _file_mode(data: dict, where: str) -> bool:
    mode = data.get("mode", "float")
    if mode not in ("exact", "float"):
        raise InputError(f"{where}: mode must be \"exact\" or \"float\"")
    return mode == "exact"


def parse_form(data: Any, where: str = "form") -> tuple[Poly, bool]:
    """Parse a form-file object into a cubic and its declared exactness."""
    if not isinstance(data, dict):
        raise InputError(f"{where}: expected a JSON object")
    exact = _file_mode(data, where)
    coeffs = data.get("coefficients")
    if not isinstance(coeffs, list) or len(coeffs) != 10:
        raise InputError(f"{where}.coefficients: expected exactly 10 entries")
    values = [decode_scalar(e, exact, f"{where}.coefficients[{i}]") for i, e in enumerate(coeffs)]
    return CubicForm(tuple(values), exact).to_poly(), exact


def load_form(path: str, mode: str | None) -> Poly:
    f, exact = parse_form(_load_json(path), path)
    if mode == "exact" and not exact:
        raise InputError(f"{path}: --mode exact needs an exact form file")
    if mode == "float" and exact:
        f = f.to_float()
    return f


def form_to_json(f: Poly) -> dict:
    return {
        "mode": "exact" if f.exact else "float",
        "coefficients": [encode_scalar(c) for c in CubicForm.from_poly(f).coeffs],
    }


def terms_to_json(terms) -> list:
    return [
        {"scalar": encode_scalar(s), "line": [encode_scalar(c) for c in line.coeffs]}
        for s, line in terms
    ]


def parse_terms(data: Any, where: str) -> list:
    """Terms from a bare certificate ``{"terms": [...]}`` or a full envelope."""
    if isinstance(data, dict) and "decomposition" in data:
        data, where = data["decomposition"], f"{where}.decomposition"
    if not isinstance(data, dict) or not isinstance(data.get("terms"), list):
        raise InputError(f"{where}: expected an object with a \"terms\" list")
    exact = _file_mode(data, where) if "mode" in data else None
    terms = []
    for i, t in enumerate(data["terms"]):
        w = f"{where}.terms[{i}]"
        if not isinstance(t, dict) or "scalar" not in t or "line" not in t:
            raise InputError(f"{w}: expected {{\"scalar\": ..., \"line\": [...]}}")
        if not isinstance(t["line"], list) or len(t["line"]) != 3:
            raise InputError(f"{w}.line: expected 3 entries")
        entries = [t["scalar"], *t["line"]]
        is_exact = exact if exact is not None else all(
            isinstance(e, list) and all(isinstance(x, str) for x in e) for e in entries
        )
        vals = [decode_scalar(e, is_exact, f"{w}") for e in entries]
        terms.append((vals[0], LinearForm(tuple(vals[1:]), is_exact)))
    return terms


# ---------------------------------------------------------------------------
# envelope pieces


def _norm(p) -> float:
    return float(p.coeff_norm()) if isinstance(p, Poly) else float(abs(p))


def invariants_json(f: Poly) -> dict:
    c = Concomitants(f)
    return {
        "S": encode_scalar(c.S),
        "T": encode_scalar(c.T),
        "norms": {
            "theta": _norm(c.theta),
            "delta": _norm(c.delta),
            "f6u": _norm(c.f6u),
            "s_uuu": _norm(c.s_uuu),
            "t_uuu": _norm(c.t_uuu),
        },
    }


def classification_json(f: Poly, policy: ZeroTestPolicy) -> dict:
    cls = cubic_rank(f, policy)
    return {
        "rank": cls.rank,
        "label": cls.label.value,
        "normal_form": cls.normal_form_note,
        "margins": {k: float(v) for k, v in cls.margins.items()},
    }


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, complex) or is_exact_scalar(v) and not isinstance(v, int):
        return encode_scalar(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    return v


def decomposition_json(d: WaringDecomposition) -> dict:
    return {
        "terms": terms_to_json(d.terms),
        "rank": d.claimed_rank,
        "label": d.class_label.value if d.class_label else None,
        "residual": float(d.residual),
        "seed_trace": _jsonable(d.seed_trace),
    }


def envelope(f: Poly, policy: ZeroTestPolicy, seed: int, **sections) -> dict:
    return {
        "version": __version__,
        "policy": {"epsilon": policy.epsilon, "mode": policy.mode, "seed": seed},
        "input": form_to_json(f),
        **sections,
    }


def emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _err(msg: str) -> None:
    sys.stderr.write(f"waring: {msg}\n")


# ---------------------------------------------------------------------------
# commands


def cmd_invariants(args, policy) -> int:
    f = load_form(args.files[0], args.mode)
    emit(envelope(f, policy, args.seed, invariants=invariants_json(f)))
    return EXIT_OK


def cmd_rank(args, policy) -> int:
    f = load_form(args.files[0], args.mode)
    emit(envelope(f, policy, args.seed, classification=classification_json(f, policy)))
    return EXIT_OK


def cmd_decompose(args, policy) -> int:
    f = load_form(args.files[0], args.mode)
    sections = {
        "invariants": invariants_json(f),
        "classification": classification_json(f, policy),
    }
    try:
        d = decompose(f, policy, args.seed)
    except DecompositionError as exc:
        _err(f"{exc}")
        sections["decomposition"] = {"error": str(exc), "residual": exc.best_residual}
        emit(envelope(f, policy, args.seed, **_jsonable(sections)))
        return EXIT_FAIL
    sections["decomposition"] = decomposition_json(d)
    emit(envelope(f, policy, args.seed, **sections))
    return EXIT_OK


def cmd_verify(args, policy) -> int:
    if len(args.files) != 2:
        raise InputError("verify needs a form file and a certificate file")
    f = load_form(args.files[0], args.mode)
    terms = parse_terms(_load_json(args.files[1]), args.files[1])
    rep = verify(f, terms, policy)
    report = {
        "residual": rep.residual,
        "passed": rep.passed,
        "terms": rep.terms,
        "rank": rep.rank,
        "rank_matches": rep.rank_matches,
        "label": rep.label.value,
    }
    if not rep.rank_matches:
        _err(f"certificate has {rep.terms} terms but the rank is {rep.rank}")
    if not rep.passed:
        _err(f"certificate residual {rep.residual:.3g} exceeds {policy.epsilon:g}")
    emit(envelope(f, policy, args.seed, verification=report))
    return EXIT_OK if rep.passed else EXIT_FAIL


def selftest(n: int, seed: int, policy: ZeroTestPolicy) -> dict:
    """Identity suite on ``n`` exact random cubics and ``n`` constructed forms per rank-table row."""
    rng = np.random.default_rng(seed)
    identity_failures = []
    for i in range(n):
        f = CubicForm(tuple(int(v) for v in rng.integers(-5, 6, 10)), True)
        rep = identity_suite(f)
        if not rep.passed:
            identity_failures.append({"form": i, "failed": rep.failures()})
    class_errors = []
    exact = ZeroTestPolicy(policy.epsilon, "exact")
    for label in Label:
        for i in range(n):
            got = cubic_rank(constructed_form(label, rng), exact).label
            if got is not label:
                class_errors.append({"expected": label.value, "got": got.value, "instance": i})
    return {
        "identities": {"forms": n, "failures": identity_failures},
        "classification": {"instances": n * len(Label), "errors": class_errors},
        "passed": not identity_failures and not class_errors,
    }


def cmd_selftest(args, policy) -> int:
    if args.n < 0:
        raise InputError("--n must be non-negative")
    summary = selftest(args.n, args.seed, policy)
    emit({"version": __version__, "seed": args.seed, "n": args.n, **summary})
    if not summary["passed"]:
        _err("self-test failed")
    return EXIT_OK if summary["passed"] else EXIT_FAIL


COMMANDS = {
    "invariants": cmd_invariants,
    "rank": cmd_rank,
    "decompose": cmd_decompose,
    "verify": cmd_verify,
    "selftest": cmd_selftest,
}


def _default_seed() -> int:
    raw = os.environ.get("WARING_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"WARING_SEED must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="waring", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("files", nargs="*", metavar="FILE")
    p.add_argument("--seed", type=int, default=None, help="PRNG seed (default: $WARING_SEED or 0)")
    p.add_argument("--epsilon", type=float, default=1e-8, help="float zero-test tolerance")
    p.add_argument("--mode", choices=("exact", "float"), default=None)
    p.add_argument("--n", type=int, default=100, help="selftest trials")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        if args.seed is None:
            args.seed = _default_seed()
        if args.epsilon <= 0:
            raise InputError("--epsilon must be positive")
        if args.command != "selftest" and not args.files:
            raise InputError(f"{args.command} needs a form file")
        policy = ZeroTestPolicy(args.epsilon, args.mode)
        return COMMANDS[args.command](args, policy)
    except InputError as exc:
        _err(str(exc))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
