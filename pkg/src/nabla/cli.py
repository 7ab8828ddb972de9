"""Command-line front end.

Every command is a thin wrapper over a library call; exit status is 0 for
success (valid, entailed, proof ok), 1 for a negative answer and 2 for usage
or input errors.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path
from typing import Sequence

from .calculus import DerivationSyntaxError, check_derivation, parse_derivation
from .codes import parse_code
from .entail import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    EntailQuery,
    Unsupported,
    check_entailment,
    check_validity,
    evaluate_at,
    format_table,
    parse_sequent,
)
from .models import check_axiom_profile, code_model
from .syntax import ParseError, TermTypeError, parse_formula
from .theory import get_profile

__all__ = ["main", "build_parser"]

OK, NEGATIVE, USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--codes", type=_nonneg, default=2, metavar="K", help="number of indeterminacies (default 2)")
    shared.add_argument("--profile", default="nabla", help="theory profile (nabla, omega, delta, dag, ddag, iota, ...)")
    shared.add_argument("--tsv", action="store_true", help="tab-separated tables")
    shared.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, metavar="N", help="maximum sweep size")

    p = argparse.ArgumentParser(prog="nabla", description="Truth-code logic engine.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    c = sub.add_parser("table", parents=[shared], help="print truth tables")
    c.add_argument("exprs", nargs="+", metavar="EXPR")

    c = sub.add_parser("eval", parents=[shared], help="evaluate under an assignment")
    c.add_argument("expr", metavar="EXPR")
    c.add_argument("--assign", nargs="*", default=[], metavar="ATOM=CODE")

    c = sub.add_parser("valid", parents=[shared], help="check validity")
    c.add_argument("expr", metavar="EXPR")

    c = sub.add_parser("entail", parents=[shared], help="check a sequent 'A, B |- G'")
    c.add_argument("sequent", metavar="SEQUENT")

    c = sub.add_parser("check-proof", parents=[shared], help="check a derivation file")
    c.add_argument("file", metavar="FILE")

    sub.add_parser("case-study", parents=[shared], help="reproduce the medical knowledge base")
    sub.add_parser("nl-demo", parents=[shared], help="reduce and refute the attitude argument")
    sub.add_parser("axioms", parents=[shared], help="check a profile's axioms in the code model")
    return p


def _formula(text: str):
    return parse_formula(text, implicit_atoms=True)


def _assignment(items: Sequence[str]) -> dict:
    out = {}
    for item in items:
        name, sep, code = item.partition("=")
        if not sep or not name:
            raise _UsageError(f"bad assignment {item!r}; expected ATOM=CODE")
        try:
            out[name.strip()] = parse_code(code.strip())
        except ValueError as e:
            raise _UsageError(f"bad code in {item!r}: {e}") from None
    return out


def _profile(name: str):
    try:
        prof = get_profile(name)
    except KeyError as e:
        raise _UsageError(str(e.args[0])) from None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for msg in prof.check():
            print(f"warning: profile {prof.name}: {msg}", file=sys.stderr)
    return prof


def _run(args: argparse.Namespace, out: list[str]) -> int:
    k = args.codes
    cmd = args.command
    if cmd == "table":
        out += format_table([_formula(e) for e in args.exprs], k, args.tsv, labels=args.exprs)
        return OK
    if cmd == "eval":
        try:
            v = evaluate_at(_formula(args.expr), _assignment(args.assign), k)
        except ValueError as e:
            if isinstance(e, ParseError):
                raise
            raise _UsageError(str(e)) from None
        out.append(v.name)
        return OK
    if cmd == "valid":
        v = check_validity(_formula(args.expr), k, budget=args.budget)
        out += v.lines()
        return OK if v.entailed else NEGATIVE
    if cmd == "entail":
        try:
            ante, succ = parse_sequent(args.sequent, _formula)
        except ValueError as e:
            if isinstance(e, ParseError):
                raise
            raise _UsageError(str(e)) from None
        v = check_entailment(EntailQuery(ante, succ, k, budget=args.budget))
        out += v.lines()
        return OK if v.entailed else NEGATIVE
    if cmd == "check-proof":
        prof = _profile(args.profile)
        try:
            text = Path(args.file).read_text(encoding="utf-8")
        except OSError as e:
            raise _UsageError(f"{args.file}: {e.strerror}") from None
        report = check_derivation(parse_derivation(text), prof)
        out.append(str(report))
        return OK if report.ok else NEGATIVE
    if cmd == "case-study":
        from .corpus import case_study_variants, run_case_study

        try:
            rep = run_case_study(k, budget=args.budget)
        except ValueError as e:
            raise _UsageError(str(e)) from None
        out += rep.lines(args.tsv)
        out.append("")
        out += case_study_variants(k).lines()
        return OK if rep.matches_expected else NEGATIVE
    if cmd == "nl-demo":
        from .corpus import nl_reduce_and_refute

        try:
            rep = nl_reduce_and_refute(k, budget=args.budget)
        except ValueError as e:
            raise _UsageError(str(e)) from None
        out += rep.lines()
        return OK if rep.ok else NEGATIVE
    if cmd == "axioms":
        prof = _profile(args.profile)
        rep = check_axiom_profile(code_model(k), prof)
        out.append(f"profile {prof.name} in the code model, k={k}")
        out += [r.describe() for r in rep.results]
        return OK if rep.ok else NEGATIVE
    raise _UsageError(f"unknown command {cmd!r}")  # pragma: no cover


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    out: list[str] = []
    try:
        code = _run(args, out)
    except (_UsageError, ParseError, TermTypeError, DerivationSyntaxError, Unsupported, BudgetExceeded) as e:
        print(f"nabla {args.command}: error: {e}", file=sys.stderr)
        return USAGE
    sys.stdout.write("".join(line + "\n" for line in out))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
