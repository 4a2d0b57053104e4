"""Command-line front end.

Exit codes, shared by all subcommands:

    0  success (stats: all applicable identity checks true)
    2  unparseable or invalid input / invalid generator configuration
    3  an identity check or oracle cross-check failed (bug signal)
    4  codec error (malformed stream, or encoding a non-binary set)
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import codec, oracle, report
from .codec import EncodedTrie
from .core import Symbols, build_trie, strings_of
from .ingest import InputError, load


def _to_digits(symbols: Symbols) -> str:
    return "".join(str(sym) for sym in symbols)


def _emit(document: dict) -> None:
    print(json.dumps(document, indent=2))


def cmd_stats(args) -> int:
    parsed = load(
        args.input,
        source_format=args.format,
        append_sentinel=args.sentinel,
        sigma=args.sigma,
    )
    document = report.stats_report(parsed, include_encoding=args.encoded_size)
    _emit(document)
    return 0 if report.identities_hold(document) else 3


def cmd_encode(args) -> int:
    parsed = load(
        args.input,
        source_format=args.format,
        append_sentinel=args.sentinel,
        sigma=args.sigma,
    )
    trie = build_trie(parsed.string_set)
    encoded = codec.encode(trie)
    Path(args.out).write_bytes(encoded.to_bytes())
    _emit(codec.bound_report(trie).as_dict())
    return 0


def cmd_decode(args) -> int:
    try:
        data = Path(args.input).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc}") from exc
    trie = codec.decode(EncodedTrie.from_bytes(data))
    for string in strings_of(trie):
        print(_to_digits(string))
    return 0


def _write_set(path: Path, string_set) -> None:
    lines = "\n".join(_to_digits(s) for s in string_set)
    path.write_text(lines + "\n")


def cmd_gen(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.linear is not None:
        if args.linear < 2:
            print("gen: --linear requires N >= 2", file=sys.stderr)
            return 2
        path = out_dir / f"linear_{args.linear:04d}.txt"
        _write_set(path, oracle.linear_trie_set(args.linear))
        print(path)
        return 0

    if not 2 <= args.sigma <= 10:
        print("gen: file corpora use digit lines, so sigma must be in 2..10", file=sys.stderr)
        return 2
    if args.count < 1:
        print("gen: --count must be >= 1", file=sys.stderr)
        return 2
    try:
        configs = [
            oracle.GeneratorConfig(args.sigma, args.n_max, args.len_max, args.seed + i)
            for i in range(args.count)
        ]
    except ValueError as exc:
        print(f"gen: {exc}", file=sys.stderr)
        return 2
    for i, cfg in enumerate(configs):
        path = out_dir / f"set_{i:04d}.txt"
        _write_set(path, oracle.generate_prefix_free(cfg))
        print(path)
    return 0


def cmd_verify(args) -> int:
    directory = Path(args.input)
    if not directory.is_dir():
        print(f"verify: {directory} is not a directory", file=sys.stderr)
        return 2
    files = sorted(p for p in directory.iterdir() if p.is_file())
    if not files:
        print(f"verify: no files in {directory}", file=sys.stderr)
        return 2

    rows = []
    parse_errors = 0
    mismatches = 0
    for path in files:
        try:
            parsed = load(
                str(path),
                source_format=args.format,
                append_sentinel=args.sentinel,
                sigma=args.sigma,
            )
        except InputError as exc:
            parse_errors += 1
            print(f"FAIL {path.name}: {exc}")
            rows.append(
                {key: None for key in report.SUMMARY_FIELDS}
                | {"file": path.name, "status": "parse-error"}
            )
            continue
        row, failures = report.cross_check(path.name, parsed)
        rows.append(row)
        if failures:
            mismatches += 1
            for failure in failures:
                print(f"FAIL {path.name}: {failure}")
        else:
            print(f"ok   {path.name}")

    print(
        f"checked {len(files)} files: {len(files) - parse_errors - mismatches} ok, "
        f"{mismatches} mismatched, {parse_errors} unreadable"
    )
    if args.report_dir:
        for written in report.write_summary(rows, Path(args.report_dir)):
            print(f"wrote {written}")
    if mismatches:
        return 3
    if parse_errors:
        return 2
    return 0


def _add_input_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("input", nargs="?", default="-", help="input file, or - for stdin")
    sub.add_argument(
        "--format",
        choices=("bits", "text"),
        default="bits",
        help="bits: lines of 0/1; text: UTF-8 lines, bytes mapped to symbols",
    )
    sub.add_argument(
        "--sentinel",
        action="store_true",
        help="append a fresh terminator symbol to every line (grows sigma by 1)",
    )
    sub.add_argument(
        "--sigma",
        type=int,
        default=None,
        help="force the alphabet size (must cover all symbols in the input)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trie-extent",
        description="Compacted-trie statistics, identity verification, and succinct encoding.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    stats = commands.add_parser("stats", help="print the JSON statistics report")
    _add_input_options(stats)
    stats.add_argument(
        "--encoded-size",
        action="store_true",
        help="also encode (binary sets) and report achieved size vs. bound",
    )
    stats.set_defaults(func=cmd_stats)

    encode = commands.add_parser("encode", help="write a .ctrie file and print the bound report")
    _add_input_options(encode)
    encode.add_argument("--out", required=True, help="output .ctrie path")
    encode.set_defaults(func=cmd_encode)

    decode = commands.add_parser("decode", help="print the strings stored in a .ctrie file")
    decode.add_argument("input", help=".ctrie file")
    decode.set_defaults(func=cmd_decode)

    gen = commands.add_parser("gen", help="write random prefix-free corpora")
    gen.add_argument("--out", required=True, help="output directory")
    gen.add_argument("--sigma", type=int, default=2)
    gen.add_argument("--n-max", type=int, default=64)
    gen.add_argument("--len-max", type=int, default=32)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument(
        "--linear",
        type=int,
        default=None,
        metavar="N",
        help="emit the N-string linear-trie family instead of random sets",
    )
    gen.set_defaults(func=cmd_gen)

    verify = commands.add_parser(
        "verify", help="cross-check every file in a directory against the oracle"
    )
    _add_input_options(verify)
    verify.add_argument(
        "--report-dir",
        default=None,
        help="also write summary.csv and benchmark figures here",
    )
    verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except codec.CodecError as exc:
        print(f"codec error: {exc}", file=sys.stderr)
        return 4


def run() -> None:
    sys.exit(main())
