"""Command-line front end.

Exit codes: 0 on success (negative verdicts included), 2 for file or
parse errors, 3 for domain errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import io
from .algebra import AmbientMismatch
from .classifier import cuntz_state_conjugate, endo_conjugate, extension_compare
from .extensions import CircleMeasure, ExtensionState, extend_eval
from .gns import SimContext, UnsupportedMeasure, check_relations, oracle_agreement, roots_measure
from .io import FormatError
from .parser import LetterRangeError, ParseError, parse_element
from .product_states import NotInCore, eval_product_state, period, quasi_orbit_rep

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DOMAIN = 3


def fmt_complex(c: complex) -> str:
    c = complex(c)
    return f"({c.real:.12g}, {c.imag:.12g})"


def _fmt_value(v) -> str:
    if isinstance(v, complex):
        return fmt_complex(v)
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt_value(x) for x in v) + "]"
    return str(v)


def _flatten(prefix: str, obj, out: list[str]):
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    else:
        out.append(f"{prefix}: {_fmt_value(obj)}")


def emit(report: dict, as_json: bool, stream=None):
    stream = stream or sys.stdout
    if as_json:
        stream.write(json.dumps(io._jsonable(report), indent=2, sort_keys=False) + "\n")
        return
    lines: list[str] = []
    _flatten("", report, lines)
    stream.write("\n".join(lines) + "\n")


def _verdict_report(v) -> dict:
    d = io.verdict_to_dict(v)
    w = d.get("witness")
    if w is not None:
        if "lambda" in w:
            w["lambda"] = complex(*w["lambda"])
        if "W" in w:
            w["W"] = [[complex(*c) for c in row] for row in w["W"]]
    return d


def cmd_eval_state(args) -> dict:
    f = io.load_sequence(args.seq)
    x = parse_element(args.expr, f.n)
    return {"value": eval_product_state(f, x)}


def cmd_period(args) -> dict:
    return {"period": period(io.load_sequence(args.seq))}


def cmd_quasi_orbit(args) -> dict:
    f = io.load_sequence(args.seq)
    rep = quasi_orbit_rep(f)
    return {
        "period": period(f),
        "lines": {str(j + 1): [complex(c) for c in v] for j, v in enumerate(rep.line_tuple)},
    }


def cmd_extend_eval(args) -> dict:
    f = io.load_sequence(args.seq)
    mu = io.load_measure(args.measure)
    x = parse_element(args.expr, f.n)
    return {"value": extend_eval(ExtensionState(f, mu), x)}


def cmd_compare_extensions(args) -> dict:
    f, g = io.load_sequence(args.seq), io.load_sequence(args.seq2)
    mu, nu = io.load_measure(args.measure), io.load_measure(args.measure2)
    return _verdict_report(extension_compare(f, mu, g, nu))


def cmd_classify_endo(args) -> dict:
    f, g = io.load_sequence(args.seq), io.load_sequence(args.seq2)
    mu, nu = io.load_measure(args.measure), io.load_measure(args.measure2)
    return _verdict_report(endo_conjugate(f, mu, g, nu))


def cmd_classify_cuntz(args) -> dict:
    return _verdict_report(cuntz_state_conjugate(io.load_tuple(args.tuple), io.load_tuple(args.tuple2)))


def cmd_simulate_check(args) -> dict:
    f = io.load_sequence(args.seq)
    mu = io.load_measure(args.measure)
    report: dict = {}
    if mu.atoms:
        atomic = CircleMeasure.mixture([(c, w / (1 - mu.haar_weight)) for c, w in mu.atoms])
        report["relations"] = check_relations(SimContext(f, atomic), args.max_len, args.trials, args.seed)
    if not mu.is_atomic():
        # the Haar part acts through a finite roots-of-unity stand-in
        K = 2 * args.max_len + 1
        report["relations_haar"] = check_relations(
            SimContext(f, roots_measure(K)), args.max_len, args.trials, args.seed
        )
    report["oracle"] = oracle_agreement(f, mu, trials=args.trials, seed=args.seed)
    return report


def _default_seed() -> int:
    try:
        return int(os.environ.get("CUNTZKIT_SEED", "0"))
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cuntzkit", description="Cuntz algebra state and endomorphism workbench")
    ap.add_argument("--json", action="store_true", help="emit JSON instead of key: value lines")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        p.set_defaults(func=func)
        return p

    p = add("eval-state", cmd_eval_state, "evaluate the product state on a degree-0 element")
    p.add_argument("--seq", required=True)
    p.add_argument("--expr", required=True)

    p = add("period", cmd_period, "period of a sequence")
    p.add_argument("--seq", required=True)

    p = add("quasi-orbit", cmd_quasi_orbit, "canonical line tuple of the quasi-orbit")
    p.add_argument("--seq", required=True)

    p = add("extend-eval", cmd_extend_eval, "evaluate an extension on an element of O_n")
    p.add_argument("--seq", required=True)
    p.add_argument("--measure", required=True)
    p.add_argument("--expr", required=True)

    for name, func, help_ in (
        ("compare-extensions", cmd_compare_extensions, "unitary equivalence / disjointness of extensions"),
        ("classify-endo", cmd_classify_endo, "conjugacy of the induced endomorphisms"),
    ):
        p = add(name, func, help_)
        p.add_argument("--seq", required=True)
        p.add_argument("--measure", required=True)
        p.add_argument("--seq2", required=True)
        p.add_argument("--measure2", required=True)

    p = add("classify-cuntz", cmd_classify_cuntz, "conjugacy of generalized Cuntz states")
    p.add_argument("--tuple", required=True)
    p.add_argument("--tuple2", required=True)

    p = add("simulate-check", cmd_simulate_check, "representation identities and oracle agreement")
    p.add_argument("--seq", required=True)
    p.add_argument("--measure", required=True)
    p.add_argument("--max-len", type=int, default=4)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=None)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "seed", 0) is None:
        args.seed = _default_seed()
    try:
        report = args.func(args)
    except (FormatError, ParseError, LetterRangeError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (NotInCore, AmbientMismatch, UnsupportedMeasure, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    emit(report, args.json)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
