"""Command-line front end.

Exit codes: 0 when every check passes, 1 when any check fails, 2 on input
errors (unreadable or malformed model files, bad literals, dimension
mismatches). Reports are JSON lines sorted by check name.
"""

from __future__ import annotations

import argparse
import json
import os
import shlex
import sys
from typing import Optional, Sequence

from .algebra import apply_matrix_objects
from .expr import ExprSyntaxError, parse_expr, to_literal
from .modelfile import MAX_SEED, ModelFileError, load_model
from .picard import SkeletalModel, StrictModel
from .report import Report
from .rewrite import INNERMOST, OUTERMOST, normalize_with_witness
from .suite import build_models, check_suite, fuzz_suite
from .theory import parse_matrix

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
DEFAULT_CASES = 10
CASES_ENV = "PICARDLAB_CASES"


class InputError(Exception):
    pass


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value <= MAX_SEED:
        raise argparse.ArgumentTypeError("seed must lie in [0, 2^64)")
    return value


def _count(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def default_cases() -> int:
    raw = os.environ.get(CASES_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_CASES
    try:
        return _count(raw)
    except argparse.ArgumentTypeError as exc:
        raise InputError(f"{CASES_ENV}: {exc}") from None


def parse_objects(text: str, P, count: int) -> list:
    """``"3;5"`` gives two objects; coordinates inside an object are
    comma-separated. An object of the trivial group is written as nothing."""
    if count == 0:
        if text.strip():
            raise InputError("the matrix has no columns, so --objects must be empty")
        return []
    parts = text.split(";")
    if len(parts) != count:
        raise InputError(f"--objects: expected {count} objects, got {len(parts)}")
    objs = []
    for i, part in enumerate(parts):
        part = part.strip()
        try:
            coords = [int(x) for x in part.split(",")] if part else []
        except ValueError:
            raise InputError(f"--objects: object {i + 1}: not a list of integers: {part!r}") from None
        group = P.objects
        if len(coords) != group.ngens:
            raise InputError(f"--objects: object {i + 1}: expected {group.ngens} coordinates for {group}, got {len(coords)}")
        objs.append(P.object(coords))
    return objs


def format_objects(objs) -> str:
    return ";".join(",".join(str(c) for c in x.value.coords) for x in objs)


def _pick_model(mf, which: str):
    if which == "strict":
        return StrictModel(mf.complex)
    sk = mf.skeletal or {}
    return SkeletalModel(mf.complex, sk.get("section"), sk.get("g"))


def _emit(report: Report, timing: bool) -> None:
    sys.stdout.write(report.to_jsonl(timing))
    sys.stdout.flush()


def _finish(report: Report, replay: str) -> int:
    if report.passed:
        return EXIT_PASS
    for r in report.failures():
        print(f"FAIL {r.check}", file=sys.stderr)
    print(f"replay: {replay}", file=sys.stderr)
    return EXIT_FAIL


def cmd_check(args) -> int:
    mf = load_model(args.model)
    seed = args.seed if args.seed is not None else (mf.seed or 0)
    cases = args.cases if args.cases is not None else default_cases()
    report = check_suite(build_models(mf.complex, mf.skeletal, mf.mutation), cases, seed)
    _emit(report, args.timing)
    return _finish(report, f"picardlab check {shlex.quote(args.model)} --seed {seed} --cases {cases}")


def cmd_apply(args) -> int:
    mf = load_model(args.model)
    try:
        cell = parse_matrix(args.matrix)
    except ValueError as exc:
        raise InputError(f"--matrix: {exc}") from None
    P = _pick_model(mf, args.model_kind)
    objs = parse_objects(args.objects, P, cell.cols)
    print(format_objects(apply_matrix_objects(cell, objs, P)))
    return EXIT_PASS


def cmd_normalize(args) -> int:
    mf = load_model(args.model)
    try:
        e = parse_expr(args.expr)
    except ExprSyntaxError as exc:
        raise InputError(f"--expr: {exc}") from None
    P = _pick_model(mf, args.model_kind)
    env = parse_objects(args.objects, P, e.max_index) if args.objects is not None else None
    strategy = INNERMOST if args.strategy == "innermost" else OUTERMOST
    result = normalize_with_witness(e, P if env is not None else None, env or (), strategy)
    out = {"canonical": to_literal(result.canonical), "steps": [str(s) for s in result.witness.steps]}
    if result.arrow is not None:
        a = result.arrow
        out["arrow"] = {"payload": list(a.payload.coords), "source": list(a.src.value.coords), "target": list(a.dst.value.coords)}
    print(json.dumps(out, sort_keys=True))
    return EXIT_PASS


def cmd_fuzz(args) -> int:
    cases = args.cases if args.cases is not None else default_cases()
    report = fuzz_suite(args.seed, cases, only=args.only, jobs=args.jobs)
    _emit(report, args.timing)
    return _finish(report, f"picardlab fuzz --seed {args.seed} --cases {cases}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="picardlab", description="Picard groupoids from two-term complexes.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run the full verification suite on a model file")
    c.add_argument("model")
    c.add_argument("--seed", type=_seed, help="overrides the seed in the model file")
    c.add_argument("--cases", type=_count, help=f"samples per check (default: ${CASES_ENV} or {DEFAULT_CASES})")
    c.add_argument("--timing", action="store_true", help="include per-check timings (not byte-stable)")
    c.set_defaults(func=cmd_check)

    a = sub.add_parser("apply", help="apply an integer matrix to a tuple of objects")
    a.add_argument("model")
    a.add_argument("--matrix", required=True, help='rows by ";", entries by ",", e.g. "0,1;1,0"')
    a.add_argument("--objects", required=True, help='objects by ";", coordinates by ","')
    a.add_argument("--model", dest="model_kind", choices=("strict", "skeletal"), default="strict")
    a.set_defaults(func=cmd_apply)

    n = sub.add_parser("normalize", help="normalize an expression and print its witness")
    n.add_argument("model")
    n.add_argument("--expr", required=True, help="e.g. \"(x2 + -(x1))\"")
    n.add_argument("--objects", help="evaluate the witness on these objects")
    n.add_argument("--model", dest="model_kind", choices=("strict", "skeletal"), default="strict")
    n.add_argument("--strategy", choices=("innermost", "outermost"), default="innermost")
    n.set_defaults(func=cmd_normalize)

    f = sub.add_parser("fuzz", help="run the suites on randomly generated complexes")
    f.add_argument("--seed", type=_seed, default=0)
    f.add_argument("--cases", type=_count, help=f"generated cases (default: ${CASES_ENV} or {DEFAULT_CASES})")
    f.add_argument("--only", type=_count, help="run a single case index (for replay)")
    f.add_argument("--jobs", type=_count, default=1)
    f.add_argument("--timing", action="store_true")
    f.set_defaults(func=cmd_fuzz)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ModelFileError as exc:
        print(f"error: {exc.diagnostic()}", file=sys.stderr)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
