"""Command-line front end.

Exit codes: 0 pass, 1 violation or counterexample, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .algebra import (
    check_identity,
    lower_central_series,
    nilindex,
    right_annihilator,
)
from .basis_change import (
    CASES,
    Lemma31Case,
    lemma31_transform,
    lemma31_with_retry,
    verify_preserved_products,
)
from .families import FAMILIES, FamilySpec, build
from .fileformat import ParseError, dump_algebra, read_algebra, write_algebra
from .invariants import SamplingConfig, characteristic_sequence
from .linalg import to_fraction
from .sampling import THEOREMS, VerifyConfig, verify_theorem

OK, VIOLATION, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return to_fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from None


def _rational_list(text: str) -> tuple[Fraction, ...]:
    return tuple(_rational(p) for p in text.split(",") if p.strip())


def _param(text: str) -> tuple[str, Fraction]:
    name, sep, value = text.partition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    return name.strip(), _rational(value)


def _load(path: str):
    try:
        return read_algebra(path)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_check(args) -> int:
    A = _load(args.file)
    status = OK
    for kind in ("grading", "leibniz-super"):
        rep = check_identity(A, kind)
        print(f"{kind}: {'ok' if rep.holds else 'FAILED'}")
        if not rep.holds:
            print(rep.describe(A))
            status = VIOLATION
    lie = all(check_identity(A, k).holds for k in ("antisymmetry", "jacobi-super"))
    print(f"lie-superalgebra: {'yes' if lie else 'no'}")
    return status


def _describe_subspace(A, sub) -> str:
    even, odd = sub.graded_dims
    vecs = ", ".join(A.format_element(v) for v in sub.basis) or "0"
    return f"dim {sub.dim} ({even}|{odd}): {vecs}"


def cmd_series(args) -> int:
    A = _load(args.file)
    series = lower_central_series(A)
    for k, term in enumerate(series, start=1):
        print(f"L^{k} {_describe_subspace(A, term)}")
    if not series[-1].is_zero():
        print("series stabilises above zero: not nilpotent")
        return VIOLATION
    return OK


def cmd_nilindex(args) -> int:
    A = _load(args.file)
    s = nilindex(A)
    if s is None:
        print("not nilpotent")
        return VIOLATION
    print(s)
    return OK


def cmd_rann(args) -> int:
    A = _load(args.file)
    print(f"R(L) {_describe_subspace(A, right_annihilator(A))}")
    return OK


def cmd_charseq(args) -> int:
    A = _load(args.file)
    if nilindex(A) is None:
        print("not nilpotent: R_x need not be nilpotent", file=sys.stderr)
        return VIOLATION
    cfg = SamplingConfig(sample_count=args.samples, seed=args.seed)
    try:
        print(characteristic_sequence(A, cfg, joint=args.joint))
    except ValueError as exc:
        print(exc, file=sys.stderr)
        return VIOLATION
    return OK


def cmd_build(args) -> int:
    params = dict(args.param or [])
    try:
        spec = FamilySpec(args.family, args.n, args.partition or (), args.m, params=params)
        built = build(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.output:
        write_algebra(built.algebra, args.output)
    else:
        sys.stdout.write(dump_algebra(built.algebra))
    if not built.report.holds:
        print("warning: the table violates the Leibniz superidentity", file=sys.stderr)
        print(built.report.describe(built.algebra), file=sys.stderr)
        return VIOLATION
    return OK


def cmd_change(args) -> int:
    A = _load(args.file)
    case = args.lemma31.replace(".", "").lower()
    if case not in CASES:
        raise UsageError(f"unknown case {args.lemma31!r}; expected one of a.1 a.2 a.3 b.1 b.2 c.1 c.2")
    driver = [Fraction(0)] * A.dim
    if A.n < 2:
        raise UsageError("the normalisation needs at least two even basis vectors")
    driver[0], driver[1] = args.A1, args.A2
    partition = args.partition or None
    if args.a is not None:
        try:
            lc = Lemma31Case(case, args.A1, args.A2, args.a)
            _, B = lemma31_transform(A, lc, partition, args.formula)
        except (ValueError, ZeroDivisionError) as exc:
            print(f"base change failed: {exc}", file=sys.stderr)
            return VIOLATION
        report = verify_preserved_products(A, B, lc.cls, driver)
        tries = 1
    else:
        out = lemma31_with_retry(A, case, args.A1, args.A2, partition, args.formula)
        if out.exhausted:
            print(f"no value of a worked after {out.tries} tries", file=sys.stderr)
            return VIOLATION
        B, report, tries = out.algebra, out.report, out.tries
        print(f"# a = {out.case.a}", file=sys.stderr)
    _emit(dump_algebra(B), args.output)
    print(f"# preserved products: {'ok' if report.holds else 'FAILED'} (tries {tries})",
          file=sys.stderr)
    return OK if report.holds else VIOLATION


def cmd_verify(args) -> int:
    kwargs = dict(theorem=args.theorem, n=args.n, trials=args.trials, seed=args.seed,
                  max_fill=args.max_fill, formula=args.formula)
    if args.partition:
        kwargs["partition"] = args.partition
    if args.pool:
        kwargs["coefficient_pool"] = args.pool
    try:
        cfg = VerifyConfig(**kwargs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = verify_theorem(cfg)
    text = report.render()
    sys.stdout.write(text)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    return OK if report.passed else VIOLATION


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="leibsuper", description="Exact computations with Leibniz superalgebras."
    )
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn, text in (
        ("check", cmd_check, "grading and identity checks"),
        ("series", cmd_series, "descending central series"),
        ("nilindex", cmd_nilindex, "nilindex"),
        ("rann", cmd_rann, "right annihilator"),
    ):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("file")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("charseq", help="characteristic sequence")
    sp.add_argument("file")
    sp.add_argument("--samples", type=int, default=8)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--joint", action="store_true",
                    help="maximise even and odd parts with one element")
    sp.set_defaults(func=cmd_charseq)

    sp = sub.add_parser("build", help="construct a model family member")
    sp.add_argument("--family", required=True, choices=FAMILIES)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int)
    sp.add_argument("--partition", type=_int_list)
    sp.add_argument("--param", type=_param, action="append", metavar="NAME=VALUE")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("change", help="apply an adapted-basis normalisation")
    sp.add_argument("file")
    sp.add_argument("--lemma31", required=True, metavar="CLASS.CASE")
    sp.add_argument("--A1", type=_rational, required=True)
    sp.add_argument("--A2", type=_rational, required=True)
    sp.add_argument("--a", type=_rational, help="auxiliary parameter; searched if omitted")
    sp.add_argument("--partition", type=_int_list)
    sp.add_argument("--formula", choices=("printed", "corrected"), default="printed")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_change)

    sp = sub.add_parser("verify", help="empirical verification runs")
    sp.add_argument("--theorem", required=True, choices=THEOREMS)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--partition", type=_int_list)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--pool", type=_rational_list)
    sp.add_argument("--max-fill", type=int, default=3)
    sp.add_argument("--formula", choices=("printed", "corrected"), default="printed")
    sp.add_argument("--report", metavar="PATH")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
