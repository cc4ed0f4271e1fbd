"""Command-line front end.

Exit codes: 0 success, 1 usage or input error (including budget overruns),
2 when a check produced a theorem-contradiction diagnostic.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

import numpy as np

from .code import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    Codeword,
    GrmParams,
    enumerate_min_words,
)
from .field import FieldSpec
from .geometry import AffineMap, AffineSpace, Hyperplane, read_points
from .poly import NotVanishingError, format_poly, format_table, parse_poly, parse_table, rp_interpolate, rp_to_table
from .structure import (
    NotACodewordError,
    NotMinimalError,
    check_lemma4,
    check_lemma5,
    classify_min_word,
    lemma5_sweep,
    verify_theorem,
)

DEFAULT_MATRIX = [
    (2, 3, 1), (2, 3, 2), (2, 4, 2), (2, 4, 3), (3, 2, 1), (3, 2, 2),
    (3, 2, 3), (3, 3, 1), (3, 3, 2), (4, 2, 1), (4, 2, 2),
]  # fmt: skip

EXIT_OK, EXIT_USAGE, EXIT_CONTRADICTION = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit 2, which is reserved
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _field(args) -> FieldSpec:
    modulus = tuple(int(c) for c in args.modulus.split(",")) if args.modulus else ()
    if args.p is not None:
        return FieldSpec(args.p, args.n or 1, modulus)
    if args.q is None:
        raise UsageError("give --q, or --p and --n")
    spec = FieldSpec.of_order(args.q)
    return FieldSpec(spec.p, spec.n, modulus) if modulus else spec


def _params(args) -> GrmParams:
    if args.m is None or args.r is None:
        raise UsageError("--m and --r are required")
    return GrmParams(_field(args), args.m, args.r)


def _read_text(value: str) -> str:
    if os.path.isfile(value):
        with open(value) as fh:
            return fh.read()
    return value


def _word(args, field: FieldSpec, m: int) -> Codeword:
    if args.poly is not None:
        return Codeword.from_poly(parse_poly(args.poly, field, m))
    if args.table is not None:
        text = "\n".join(ln for ln in _read_text(args.table).splitlines() if not ln.lstrip().startswith("#"))
        return Codeword(field, m, parse_table(text))
    raise UsageError("give the codeword with --poly TEXT or --table FILE|CODES")


def _emit(report, out: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=False) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)


# -- subcommands -------------------------------------------------------------------


def cmd_verify(args) -> int:
    cells = DEFAULT_MATRIX if args.matrix else None
    if cells is None:
        params_list = [_params(args)]
    else:
        params_list = [GrmParams.of(*c) for c in cells]
    reports, worst = [], EXIT_OK
    rng = np.random.default_rng(args.seed)
    for params in params_list:
        rep = verify_theorem(params, args.mode, args.budget, args.jobs)
        d = rep.to_dict()
        if args.samples:
            d["equivariance"] = _equivariance(params, rng, args.samples, args.budget)
            if d["equivariance"]["failures"]:
                worst = EXIT_CONTRADICTION
        if args.stable:
            d["runtime_ms"] = 0
        reports.append(d)
        status = "ok" if rep.ok else "THEOREM CONTRADICTION"
        print(
            f"{params} t={params.t} s={params.s} w_min={params.w_min}: "
            f"forward {rep.forward_matches}/{rep.forward_count}, "
            f"converse {rep.converse_pass}/{rep.converse_count}, "
            f"lemma5 {rep.lemma5.pairs_checked} pairs / {len(rep.lemma5.violations)} violations, "
            f"lemma4 {rep.lemma4_found}/{rep.lemma4_checked} [{status}]"
        )
        if not rep.ok:
            worst = EXIT_CONTRADICTION
    _emit(reports[0] if cells is None else reports, args.out)
    return worst


def _equivariance(params: GrmParams, rng: np.random.Generator, samples: int, budget: int) -> dict:
    """Classification codimension is preserved by random affine maps."""
    words = enumerate_min_words(params, "orbit", budget)
    space = params.space
    failures = []
    for _ in range(samples):
        w = words[int(rng.integers(len(words)))]
        tau = AffineMap.random(params.field, params.m, rng)
        image = Codeword(params.field, params.m, w.values[tau.perm(space)])
        a, b = classify_min_word(w, params), classify_min_word(image, params)
        if not (a.matches and b.matches and a.ambient.codim == b.ambient.codim):
            failures.append({"table": w.values.tolist(), "matrix": tau.matrix, "translation": tau.translation})
    return {"samples": samples, "failures": failures}


def cmd_classify(args) -> int:
    params = _params(args)
    word = _word(args, params.field, params.m)
    rep = classify_min_word(word, params)
    print(rep.verdict)
    if rep.matches:
        print(f"ambient: {rep.ambient}")
        for comp in rep.components:
            print(f"component: {comp}")
    _emit({"params": params.to_dict(), **rep.to_dict()}, args.out)
    return EXIT_OK if rep.matches else EXIT_CONTRADICTION


def cmd_field_table(args) -> int:
    f = _field(args)
    print(f"{f} modulus {f.serialize()}")
    for name, table in (("+", f.add), ("*", f.mul)):
        print(name)
        for row in table:
            print(" ".join(str(int(v)) for v in row))
    return EXIT_OK


def cmd_min_words(args) -> int:
    params = _params(args)
    words = enumerate_min_words(params, args.mode, args.budget, args.jobs)
    for w in words:
        print(format_poly(w.poly()) if args.format == "poly" else format_table(w.values))
    return EXIT_OK


def cmd_lemma4(args) -> int:
    f = _field(args)
    space = AffineSpace(f, args.m)
    S = [space.index(p) for p in read_points(_read_text(args.points))]
    rep = check_lemma4(space, S, args.t, args.power)
    if rep.hypothesis_holds:
        print(f"hypothesis holds; avoiding hyperplane: {rep.hyperplane}")
    else:
        H, cnt = rep.result.violation
        print(f"hypothesis fails at {H} (meets S in {cnt} points)")
    _emit(rep.to_dict(), args.out)
    return EXIT_CONTRADICTION if rep.contradiction else EXIT_OK


def cmd_lemma5(args) -> int:
    params = _params(args)
    word = _word(args, params.field, params.m)
    if word.weight != params.w_min:
        raise NotMinimalError(f"weight {word.weight} is not the minimum weight {params.w_min}")
    if args.hyperplane:
        rep = check_lemma5(word, params, Hyperplane.parse(params.field, args.hyperplane))
        print(f"{rep.hyperplane}: counts {list(rep.counts)} -> {rep.branch.value}")
        _emit(rep.to_dict(), args.out)
        return EXIT_CONTRADICTION if rep.branch.value == "Violation" else EXIT_OK
    sweep = lemma5_sweep([word], params)
    print(f"pairs checked {sweep.pairs_checked}, violations {len(sweep.violations)}, branches {sweep.branches}")
    _emit({"pairs_checked": sweep.pairs_checked, "branches": sweep.branches, "violations": sweep.violations}, args.out)
    return EXIT_CONTRADICTION if sweep.violations else EXIT_OK


def cmd_eval(args) -> int:
    f = _field(args)
    print(format_table(rp_to_table(parse_poly(args.poly, f, args.m))))
    return EXIT_OK


def cmd_interp(args) -> int:
    f = _field(args)
    print(format_poly(rp_interpolate(f, parse_table(_read_text(args.table)), args.m)))
    return EXIT_OK


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="grmkit", description="Generalized Reed-Muller minimum-weight toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    field_opts = _Parser(add_help=False)
    field_opts.add_argument("--q", type=int, help="field order")
    field_opts.add_argument("--p", type=int, help="characteristic (with --n)")
    field_opts.add_argument("--n", type=int, help="extension degree")
    field_opts.add_argument("--modulus", help="modulus coefficients c0,...,cn (low to high)")

    code_opts = _Parser(add_help=False)
    code_opts.add_argument("--m", type=int, help="number of variables")
    code_opts.add_argument("--r", type=int, help="order")
    code_opts.add_argument("--mode", choices=["exhaustive", "orbit"], default="exhaustive")
    code_opts.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="enumeration budget")
    code_opts.add_argument("--jobs", type=int, default=1, help="worker threads")
    code_opts.add_argument("--out", help="write the JSON report here")

    word_opts = _Parser(add_help=False)
    word_opts.add_argument("--poly", help="codeword as polynomial text")
    word_opts.add_argument("--table", help="codeword table: file or comma-separated codes")

    p = sub.add_parser("verify", parents=[field_opts, code_opts], help="verify one cell or the default matrix")
    p.add_argument("--matrix", action="store_true", help="run the default verification matrix")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=0, help="random affine-equivariance checks per cell")
    p.add_argument("--stable", action="store_true", help="zero runtime_ms for byte-stable reports")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", parents=[field_opts, code_opts, word_opts], help="classify a minimal codeword")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("field-table", parents=[field_opts], help="print addition and multiplication tables")
    p.set_defaults(func=cmd_field_table)

    p = sub.add_parser("min-words", parents=[field_opts, code_opts], help="list minimum-weight codewords")
    p.add_argument("--format", choices=["table", "poly"], default="table")
    p.set_defaults(func=cmd_min_words)

    p = sub.add_parser("lemma4", parents=[field_opts], help="avoiding-hyperplane check on a point set")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--power", type=int, required=True, help="exponent n in |S| = t*q^n")
    p.add_argument("--points", required=True, help="point-set file (or inline text)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_lemma4)

    p = sub.add_parser("lemma5", parents=[field_opts, code_opts, word_opts], help="hyperplane dichotomy check")
    p.add_argument("--hyperplane", help="e.g. [1,0]=0; default sweeps all hyperplanes")
    p.set_defaults(func=cmd_lemma5)

    p = sub.add_parser("eval", parents=[field_opts], help="polynomial text to value table")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--poly", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("interp", parents=[field_opts], help="value table to polynomial text")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--table", required=True)
    p.set_defaults(func=cmd_interp)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotACodewordError as exc:
        print(f"error: not a codeword: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotMinimalError as exc:
        print(f"error: not of minimum weight: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, NotVanishingError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
