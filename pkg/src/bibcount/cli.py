"""Command-line entry point: ``bibcount analyze | reproduce | validate``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import report
from .analysis import analyze_ledgers
from .corpus import DOC_TYPES, CorpusFilter, CountryAliasTable, IngestReport, Schema, filter_corpus, parse_records
from .crediting import CountingMethod, accumulate_ledger
from .exceptions import RowError, SchemaError
from .reproduce import load_fixture, reproduce, summary_lines

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_EMPTY = 3
EXIT_MISMATCH = 4


def _doc_types(value: str):
    types = frozenset(t.strip() for t in value.split(",") if t.strip())
    bad = types - set(DOC_TYPES)
    if bad:
        raise argparse.ArgumentTypeError(f"unknown doc types {sorted(bad)}; choose from {DOC_TYPES}")
    return types


def _add_corpus_args(p: argparse.ArgumentParser):
    p.add_argument("--input", "-i", nargs="+", required=True, type=Path, help="record CSV file(s)")
    p.add_argument("--aliases", type=Path, help="alias,canonical CSV (default: shipped table)")
    p.add_argument("--schema", choices=("default", "scopus"), default="default", help="column naming")
    p.add_argument("--year-min", type=int)
    p.add_argument("--year-max", type=int)
    p.add_argument("--doc-types", type=_doc_types, help=f"comma list from {','.join(DOC_TYPES)}")
    p.add_argument(
        "--intl-only",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="keep internationally co-authored records only (default: yes)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bibcount", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="run the full pipeline on a record corpus")
    _add_corpus_args(analyze)
    analyze.add_argument("--threshold", type=float, default=100.0, help="minimum WC paper credit per country")
    analyze.add_argument("--format", choices=report.FORMATS, default="tsv")
    analyze.add_argument("--out-dir", type=Path, default=Path("bibcount-out"))
    analyze.add_argument("--spearman-ties", choices=("ordinal", "average"), default="ordinal")
    analyze.add_argument("--ttest", choices=("pooled", "welch"), default="pooled")

    repro = sub.add_parser("reproduce", help="regenerate the published tables from the embedded fixture")
    repro.add_argument("--fixture", type=Path, help="alternative country-rows TSV")
    repro.add_argument("--summary", type=Path, help="alternative published summary JSON")
    repro.add_argument("--out-dir", type=Path, help="also write the regenerated tables here")
    repro.add_argument("--format", choices=report.FORMATS, default="markdown")

    validate = sub.add_parser("validate", help="check a record file without analysing it")
    _add_corpus_args(validate)
    validate.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _load_corpus(args, ingest: IngestReport):
    aliases = CountryAliasTable.from_path(args.aliases) if args.aliases else CountryAliasTable.default()
    schema = Schema.scopus() if args.schema == "scopus" else Schema()
    records = []
    seen = set()
    for path in args.input:
        with open(path, "rb") as fh:
            part = parse_records(fh, schema, aliases, ingest)
        for r in part:
            if r.id in seen:
                ingest.rejected.append(RowError(0, f"{path}: duplicate id {r.id!r} across inputs"))
                continue
            seen.add(r.id)
            records.append(r)
    criteria = CorpusFilter(
        year_min=args.year_min,
        year_max=args.year_max,
        doc_types=args.doc_types,
        require_country=True,
        require_international=args.intl_only,
    )
    selected, ingest.stages = filter_corpus(records, criteria)
    return selected


def _write(out_dir: Path, name: str, fmt: str, text: str) -> Path:
    path = out_dir / f"{name}.{report.EXTENSIONS[fmt]}"
    path.write_text(text, encoding="utf-8")
    return path


def cmd_analyze(args) -> int:
    ingest = IngestReport()
    selected = _load_corpus(args, ingest)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    ingest_name = "ingest.json" if args.format == "json" else "ingest.txt"
    (args.out_dir / ingest_name).write_text(
        ingest.to_json() if args.format == "json" else ingest.to_text(), encoding="utf-8"
    )
    if not selected:
        print("empty selection: no records survive the corpus filters", file=sys.stderr)
        return EXIT_EMPTY

    wc = accumulate_ledger(selected, CountingMethod.WHOLE)
    wnc = accumulate_ledger(selected, CountingMethod.WHOLE_NORMALIZED)
    try:
        result = analyze_ledgers(wc, wnc, args.threshold, spearman_ties=args.spearman_ties, ttest=args.ttest)
    except ValueError as exc:
        print(f"empty selection: {exc}", file=sys.stderr)
        return EXIT_EMPTY

    fmt = args.format
    written = [
        args.out_dir / ingest_name,
        _write(args.out_dir, "ledgers", fmt, report.write_ledgers([wc, wnc], fmt)),
        _write(args.out_dir, "indicators", fmt, report.write_indicators(result.pairs, fmt)),
        _write(args.out_dir, "comparison", fmt, report.write_comparison(result.tables, fmt)),
        _write(args.out_dir, "inflation_summary", fmt, report.write_summary(result.summary, fmt)),
        _write(args.out_dir, "statistics", fmt, report.write_statistics(result.statistics, fmt)),
    ]
    print(f"{len(selected)} records, {len(result.pairs)} countries at threshold {args.threshold:g}")
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def cmd_reproduce(args) -> int:
    fixture = load_fixture(args.fixture, args.summary)
    result = reproduce(fixture)
    for line in summary_lines(result):
        print(line)
    if args.out_dir:
        args.out_dir.mkdir(parents=True, exist_ok=True)
        fmt = args.format
        _write(args.out_dir, "comparison", fmt, report.write_comparison(result.analysis.tables, fmt))
        _write(args.out_dir, "inflation_summary", fmt, report.write_summary(result.analysis.summary, fmt))
        _write(args.out_dir, "statistics", fmt, report.write_statistics(result.analysis.statistics, fmt))
    if result.ok:
        print(f"all {len(result.checks)} cells within tolerance")
        return EXIT_OK
    print(f"{len(result.failures)} of {len(result.checks)} cells out of tolerance", file=sys.stderr)
    return EXIT_MISMATCH


def cmd_validate(args) -> int:
    ingest = IngestReport()
    _load_corpus(args, ingest)
    print(ingest.to_json() if args.format == "json" else ingest.to_text(), end="")
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "reproduce": cmd_reproduce, "validate": cmd_validate}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_SCHEMA


if __name__ == "__main__":
    sys.exit(main())
