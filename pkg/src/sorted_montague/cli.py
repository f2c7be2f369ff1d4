"""Command-line entry point: ``check``, ``analyze`` and ``sorts``.

Exit codes: 0 success, 2 usage, I/O or parse failure, 3 validation findings,
4 an anomaly under ``--strict``.
"""

from __future__ import annotations

import argparse
import sys
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, TextIO

from .composer import ComposerOptions, compose, parse_derivation, render_trace
from .errors import (
    CompositionError,
    DerivationSyntaxError,
    ParseError,
    SemanticAnomaly,
    UnknownWord,
)
from .kernel import format_term, format_type
from .lexicon import (
    Lexicon,
    SortInventory,
    check_lexicon,
    classifiers_of,
    parse_sort_inventory,
    topological_sorts,
    validate_inventory,
)
from .logic import canonicalize, dumps_report, reading_report, render

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_ANOMALY = 0, 2, 3, 4


class _Abort(Exception):
    def __init__(self, code: int):
        self.code = code


@dataclass(frozen=True)
class RunConfig:
    inventory_path: str
    lexicon_path: str
    input_path: str
    all_readings: bool = False
    max_chain: int = 2
    max_readings: int = 16
    format: str = "text"
    strict: bool = False
    jobs: int = 1
    ascii: bool = False


def _read(path: str, err: TextIO) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        print(f"{path}: cannot read: {exc}", file=err)
        raise _Abort(EXIT_USAGE) from None


def _load_inventory(path: str, out: TextIO, err: TextIO) -> SortInventory:
    try:
        inv = parse_sort_inventory(_read(path, err))
    except ParseError as exc:
        print(f"{path}:{exc.line}: parse-error: {exc.message}", file=err)
        raise _Abort(EXIT_USAGE) from None
    findings = validate_inventory(inv)
    if findings:
        for f in findings:
            print(f"{path}:{f.line}: {f.kind}: {f.message}", file=out)
        raise _Abort(EXIT_INVALID)
    return inv


def _load_lexicon(path: str, inv: SortInventory, out: TextIO, err: TextIO) -> Lexicon:
    lexicon, findings = check_lexicon(_read(path, err), inv)
    if lexicon is None:
        f = findings[0]
        print(f"{path}:{f.line}: {f.kind}: {f.message}", file=err)
        raise _Abort(EXIT_USAGE)
    if findings:
        for f in findings:
            print(f"{path}:{f.line}: {f.kind}: {f.message}", file=out)
        raise _Abort(EXIT_INVALID)
    return lexicon


def cmd_check(inventory_path: str, lexicon_path: Optional[str] = None,
              out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    """Print every validation finding; 0 when there are none."""
    out, err = out or sys.stdout, err or sys.stderr
    try:
        inv = _load_inventory(inventory_path, out, err)
        if lexicon_path is not None:
            _load_lexicon(lexicon_path, inv, out, err)
    except _Abort as abort:
        return abort.code
    return EXIT_OK


def cmd_sorts(inventory_path: str, noun: Optional[str] = None,
              out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    """List sorts hyperonyms first, or the classifier sorts of one noun."""
    out, err = out or sys.stdout, err or sys.stderr
    try:
        inv = _load_inventory(inventory_path, out, err)
    except _Abort as abort:
        return abort.code
    if noun is not None:
        for name in classifiers_of(inv, noun):
            print(name, file=out)
        return EXIT_OK
    for s in topological_sorts(inv):
        supers = ",".join(inv.hyperonyms(s.name)) or "-"
        print(f"{s.name}\t{s.tier}\t{supers}\t{s.gloss or ''}", file=out)
    return EXIT_OK


# -- analyze ------------------------------------------------------------------


@dataclass(frozen=True)
class _Outcome:
    text: str
    anomaly: bool = False


def _anomaly_record(exc: Exception) -> dict:
    record: dict = {"kind": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, SemanticAnomaly):
        record["expected"] = None if exc.expected is None else format_type(exc.expected)
        record["actual"] = format_type(exc.actual)
        record["tried"] = list(exc.tried)
    path = getattr(exc, "path", None)
    if path is not None:
        record["path"] = list(path)
    return record


def _analyze_line(source: str, lexicon: Lexicon, opts: ComposerOptions,
                  config: RunConfig) -> _Outcome:
    root = parse_derivation(source)
    try:
        readings = compose(root, lexicon, opts)
    except (CompositionError, UnknownWord) as exc:
        if config.format == "json":
            return _Outcome(dumps_report({"anomaly": _anomaly_record(exc)}) + "\n", True)
        return _Outcome(f"{source}\n  anomaly: {exc}\n", True)
    if config.format == "json":
        return _Outcome(dumps_report([reading_report(r, config.ascii) for r in readings]) + "\n")
    lines = [source]
    for r in readings:
        canonical = canonicalize(r.term)
        shown = format_term(canonical) if config.format == "raw" else render(canonical, config.ascii)
        lines.append(f"  {shown}")
        lines.append(f"    cost {r.cost}: {render_trace(r.trace) or '(no coercion)'}")
    return _Outcome("\n".join(lines) + "\n")


def _derivations(stream: Iterable[str]) -> Iterator[tuple[int, str]]:
    for lineno, line in enumerate(stream, 1):
        text = line.strip()
        if text and not text.startswith("#"):
            yield lineno, text


def _work(item, lexicon, opts, config):
    lineno, source = item
    try:
        return lineno, _analyze_line(source, lexicon, opts, config), None
    except DerivationSyntaxError as exc:
        return lineno, None, exc


def _results(items, lexicon, opts, config):
    if config.jobs <= 1:
        for item in items:
            yield _work(item, lexicon, opts, config)
        return
    window = deque()
    with ThreadPoolExecutor(max_workers=config.jobs) as pool:
        for item in items:
            window.append(pool.submit(_work, item, lexicon, opts, config))
            if len(window) >= 4 * config.jobs:
                yield window.popleft().result()
        while window:
            yield window.popleft().result()


def cmd_analyze(config: RunConfig, out: Optional[TextIO] = None,
                err: Optional[TextIO] = None) -> int:
    """Compose every derivation of the input, emitting results in input order."""
    out, err = out or sys.stdout, err or sys.stderr
    try:
        inv = _load_inventory(config.inventory_path, out, err)
        lexicon = _load_lexicon(config.lexicon_path, inv, out, err)
        opts = ComposerOptions(config.max_chain, config.max_readings, config.all_readings)
        handle = open(config.input_path, encoding="utf-8")
    except _Abort as abort:
        return abort.code
    except OSError as exc:
        print(f"{config.input_path}: cannot read: {exc}", file=err)
        return EXIT_USAGE
    failed = anomalous = False
    try:
        with handle:
            for lineno, outcome, error in _results(_derivations(handle), lexicon, opts, config):
                if error is not None:
                    print(f"{config.input_path}:{lineno}: {error}", file=err)
                    failed = True
                    continue
                out.write(outcome.text)
                anomalous |= outcome.anomaly
    except (OSError, UnicodeDecodeError) as exc:
        print(f"{config.input_path}: cannot read: {exc}", file=err)
        return EXIT_USAGE
    if failed:
        return EXIT_USAGE
    if anomalous and config.strict:
        return EXIT_ANOMALY
    return EXIT_OK


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sorted-montague",
        description="Many-sorted semantic composition with lexical coercions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="validate an inventory and a lexicon")
    check.add_argument("--inventory", required=True)
    check.add_argument("--lexicon")

    analyze = sub.add_parser("analyze", help="compose a file of derivations")
    analyze.add_argument("--inventory", required=True)
    analyze.add_argument("--lexicon", required=True)
    analyze.add_argument("--input", required=True)
    analyze.add_argument("--all", action="store_true", help="keep readings above the minimal cost")
    analyze.add_argument("--max-chain", type=_positive, default=2)
    analyze.add_argument("--max-readings", type=_positive, default=16)
    analyze.add_argument("--format", choices=("text", "json", "raw"), default="text")
    analyze.add_argument("--ascii", action="store_true", help="spell connectives as words")
    analyze.add_argument("--strict", action="store_true", help="exit 4 when any line is anomalous")
    analyze.add_argument("--jobs", type=_positive, default=1)

    sorts = sub.add_parser("sorts", help="list the sorts of an inventory")
    sorts.add_argument("--inventory", required=True)
    sorts.add_argument("--noun")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "check":
        return cmd_check(args.inventory, args.lexicon)
    if args.command == "sorts":
        return cmd_sorts(args.inventory, args.noun)
    config = RunConfig(args.inventory, args.lexicon, args.input, args.all, args.max_chain,
                       args.max_readings, args.format, args.strict, args.jobs, args.ascii)
    return cmd_analyze(config)


if __name__ == "__main__":
    sys.exit(main())
