"""Command-line interface.

Exit codes: 0 success, 1 domain error (mismatched alphabets, truncation,
empty surface, ...), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

from .constraints import build_gen_syllabification
from .dot import export_dot
from .errors import DomainError, FormatError
from .fsm import Machine
from .harmony import MarkAlphabet, MarkList, list_compare
from .oracle import check_equivalence, enumerate_language, run_campaign
from .optimize import precompile, trace_derivation
from .product import augmented_product, product
from .regex import compile_constraint_file
from .textformat import format_machine, load_machine

SEED_ENV = "OTFSM_SEED"


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: list[str]
    inputs: dict[str, str] = field(default_factory=dict)
    counts: dict[str, dict[str, int]] = field(default_factory=dict)
    degree: int | None = None
    harmony: list[int] | None = None
    comparisons: int | None = None
    seed: int | None = None
    elapsed_seconds: float = 0.0
    extra: dict = field(default_factory=dict)

    def add_input(self, path: str) -> None:
        self.inputs[path] = hashlib.sha256(Path(path).read_bytes()).hexdigest()

    def add_counts(self, key: str, machine: Machine) -> None:
        self.counts[key] = {"states": machine.num_states, "arcs": len(machine.arcs)}

    def to_json(self, pretty: bool = False) -> str:
        return json.dumps(asdict(self), ensure_ascii=False, indent=2 if pretty else None, sort_keys=True)


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _load(path: str, report: RunReport | None = None) -> Machine:
    if not Path(path).is_file():
        raise UsageError(f"no such file: {path}")
    if report is not None:
        report.add_input(path)
    return load_machine(path)


def _write_machine(machine: Machine, path: str | None) -> None:
    text = format_machine(machine)
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _emit_report(report: RunReport, path: str | None, pretty: bool, to_stdout: bool = True) -> None:
    text = report.to_json(pretty)
    if path:
        Path(path).write_text(text + "\n", encoding="utf-8")
    if to_stdout:
        print(text)


def cmd_compile_constraint(args) -> int:
    alphabet = _load(args.alphabet_from).alphabet if args.alphabet_from else None
    if not Path(args.source).is_file():
        raise UsageError(f"no such file: {args.source}")
    _write_machine(compile_constraint_file(args.source, alphabet), args.output)
    return 0


def cmd_gen_syll(args) -> int:
    segments = args.segments.split()
    vowels = [v for v in args.vowels.split(",") if v]
    _write_machine(build_gen_syllabification(segments, vowels), args.output)
    return 0


def cmd_product(args) -> int:
    report = RunReport(command=["product", *args.machines])
    start = time.perf_counter()
    a, b = (_load(p, report) for p in args.machines)
    result = product(a, b) if args.plain else augmented_product(a, b)
    report.add_counts("result", result)
    report.degree = result.degree
    report.elapsed_seconds = time.perf_counter() - start
    _write_machine(result, args.output)
    if args.report:
        _emit_report(report, args.report, args.pretty, to_stdout=False)
    return 0


def cmd_derive(args) -> int:
    report = RunReport(command=["derive", args.gen, *args.constraints])
    start = time.perf_counter()
    gen = _load(args.gen, report)
    constraints = [_load(p, report) for p in args.constraints]
    if args.precompile and constraints:
        constraints = [precompile(constraints)]
    trace = trace_derivation(gen, constraints)
    report.add_counts("surface", trace.surface)
    report.add_counts("pruned", trace.pruned)
    report.add_counts("result", trace.result)
    report.degree = trace.surface.degree
    report.harmony = list(trace.harmony)
    report.comparisons = trace.annotation.comparisons
    report.elapsed_seconds = time.perf_counter() - start
    if args.output:
        _write_machine(trace.result, args.output)
    _emit_report(report, args.report, args.pretty)
    return 0


def cmd_enumerate(args) -> int:
    machine = _load(args.machine)
    listing = enumerate_language(machine, args.max_len)
    for cand in listing.strings:
        print(" ".join(cand))
    if listing.truncated:
        print(f"warning: language truncated at length {args.max_len}", file=sys.stderr)
    return 0


def cmd_oracle_check(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    start = time.perf_counter()
    if args.random:
        if args.machines:
            raise UsageError("--random takes no machine files")
        reports = run_campaign(args.random, seed)
        summary = RunReport(command=["oracle-check", "--random", str(args.random)], seed=seed)
        mismatches = [r.seed for r in reports if not r.match]
        summary.extra = {"instances": len(reports), "matches": len(reports) - len(mismatches),
                         "mismatched_seeds": mismatches}
        summary.elapsed_seconds = time.perf_counter() - start
        _emit_report(summary, args.json, args.pretty)
        return 0 if not mismatches else 1
    if not args.machines:
        raise UsageError("oracle-check needs a candidate machine (or --random N)")
    report = RunReport(command=["oracle-check", *args.machines], seed=seed)
    gen, *constraints = (_load(p, report) for p in args.machines)
    result = check_equivalence(gen, constraints, args.max_len, seed)
    report.harmony = result.derived_harmony
    report.extra = result.to_dict()
    report.elapsed_seconds = time.perf_counter() - start
    _emit_report(report, args.json, args.pretty)
    return 0 if result.match else 1


def cmd_compare_marks(args) -> int:
    alphabet = MarkAlphabet(tuple(m for m in args.marks.split(",") if m))
    a = MarkList.parse(args.first, alphabet)
    b = MarkList.parse(args.second, alphabet)
    print({1: ">", 0: "=", -1: "<"}[list_compare(a, b)])
    return 0


def cmd_export_dot(args) -> int:
    text = export_dot(_load(args.machine), name=Path(args.machine).stem)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="otfsm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile-constraint", help="compile a .otc constraint expression")
    p.add_argument("source")
    p.add_argument("-o", "--output")
    p.add_argument("--alphabet-from", help="take the alphabet from this machine file")
    p.set_defaults(func=cmd_compile_constraint)

    p = sub.add_parser("gen-syll", help="build the syllabification candidate automaton")
    p.add_argument("segments", help='space-separated segments, e.g. "a l q a l a m u"')
    p.add_argument("--vowels", required=True, help="comma-separated vowel segments")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen_syll)

    p = sub.add_parser("product", help="augmented product of two machines")
    p.add_argument("machines", nargs=2)
    p.add_argument("-o", "--output")
    p.add_argument("--plain", action="store_true", help="plain automaton product (degree 0 only)")
    p.add_argument("--report")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("derive", help="optimal candidates under ranked constraints")
    p.add_argument("gen")
    p.add_argument("constraints", nargs="*")
    p.add_argument("-o", "--output")
    p.add_argument("--report")
    p.add_argument("--precompile", action="store_true", help="fold the hierarchy first")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("enumerate", help="list accepted strings, one per line")
    p.add_argument("machine")
    p.add_argument("--max-len", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("oracle-check", help="cross-check derivation against brute force")
    p.add_argument("machines", nargs="*", help="candidate automaton then constraints")
    p.add_argument("--max-len", type=int, default=12)
    p.add_argument("--seed", type=int)
    p.add_argument("--random", type=int, metavar="N", help="check N random instances instead")
    p.add_argument("--json")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("compare-marks", help="compare two mark lists (prints >, = or <)")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--marks", default="∅,ε", help="comma-separated marks, most harmonic (zero) first")
    p.set_defaults(func=cmd_compare_marks)

    p = sub.add_parser("export-dot", help="render a machine as Graphviz DOT")
    p.add_argument("machine")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "max_len", 1) is not None and getattr(args, "max_len", 1) < 1:
        print("error: --max-len must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (UsageError, FormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
