"""Table writers (TSV, Markdown, JSON) and JSON readers.

JSON keeps full precision and round-trips exactly; TSV and Markdown round
half-up for display.
"""

from __future__ import annotations

import dataclasses
import json
from typing import Mapping, Optional, Sequence

from .analysis import IndicatorTests
from .comparison import INDICATOR_LABELS, ComparisonRow, InflationStats, round_half_up
from .crediting import CountingMethod, CreditLedger
from .indicators import INDICATOR_COLUMNS, CountryIndicators, IndicatorPair, indicator_rows
from .stats import CorrelationResult, TTestResult

FORMATS = ("tsv", "markdown", "json")
EXTENSIONS = {"tsv": "tsv", "markdown": "md", "json": "json"}
COMPARISON_COLUMNS = ("country", "value_wc", "value_wnc", "rank_wc", "rank_wnc", "inflation")


def fmt2(x: float) -> str:
    return f"{round_half_up(x, 2):.2f}"


def _fmt_p(p: float) -> str:
    return f"{p:.5f}"


def _dump(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def _tsv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    return "\n".join("\t".join(r) for r in [list(header), *rows]) + "\n"


def _markdown(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(r) + " |" for r in rows]
    return "\n".join(lines) + "\n"


def _render(fmt: str, header, rows) -> str:
    if fmt == "tsv":
        return _tsv(header, rows)
    if fmt == "markdown":
        return _markdown(header, rows)
    raise ValueError(f"unknown format {fmt!r}")


# indicator table


def write_indicators(pairs: Sequence[IndicatorPair], fmt: str) -> str:
    rows = indicator_rows(pairs)
    if fmt == "json":
        return _dump({"columns": list(INDICATOR_COLUMNS), "rows": rows})
    body = [[r["country"], *(fmt2(r[c]) for c in INDICATOR_COLUMNS[1:])] for r in rows]
    return _render(fmt, INDICATOR_COLUMNS, body)


def read_indicators(text: str, c_constant: float = 1.0) -> list[IndicatorPair]:
    pairs = []
    for r in json.loads(text)["rows"]:
        pairs.append(
            IndicatorPair(
                CountryIndicators(r["country"], CountingMethod.WHOLE, r["P_wc"], r["C_wc"], r["cpp_wc"], r["h_wc"], c_constant),
                CountryIndicators(
                    r["country"], CountingMethod.WHOLE_NORMALIZED, r["P_wnc"], r["C_wnc"], r["cpp_wnc"], r["h_wnc"], c_constant
                ),
            )
        )
    return pairs


# comparison tables


def write_comparison(tables: Mapping[str, Sequence[ComparisonRow]], fmt: str) -> str:
    if fmt == "json":
        return _dump({ind: [dataclasses.asdict(r) for r in rows] for ind, rows in tables.items()})

    def body(rows):
        return [
            [r.country, fmt2(r.value_wc), fmt2(r.value_wnc), str(r.rank_wc), str(r.rank_wnc), fmt2(r.inflation)]
            for r in rows
        ]

    if fmt == "markdown":
        return "\n".join(
            f"## {INDICATOR_LABELS[ind]}\n\n" + _markdown(COMPARISON_COLUMNS, body(rows)) for ind, rows in tables.items()
        )
    if fmt == "tsv":
        rows = [[ind, *b] for ind, tbl in tables.items() for b in body(tbl)]
        return _tsv(("indicator", *COMPARISON_COLUMNS), rows)
    raise ValueError(f"unknown format {fmt!r}")


def read_comparison(text: str) -> dict[str, list[ComparisonRow]]:
    return {ind: [ComparisonRow(**r) for r in rows] for ind, rows in json.loads(text).items()}


# inflation summary


def write_summary(summary: Mapping[str, InflationStats], fmt: str) -> str:
    if fmt == "json":
        return _dump({ind: dataclasses.asdict(s) for ind, s in summary.items()})
    header = ("indicator", "lowest", "highest", "average")
    body = [[INDICATOR_LABELS[i], fmt2(s.lowest), fmt2(s.highest), fmt2(s.average)] for i, s in summary.items()]
    return _render(fmt, header, body)


def read_summary(text: str) -> dict[str, InflationStats]:
    return {ind: InflationStats(**s) for ind, s in json.loads(text).items()}


# statistics


def _marker(tests: IndicatorTests) -> str:
    return "**" if tests.significant else ""


def write_statistics(statistics: Mapping[str, Optional[IndicatorTests]], fmt: str) -> str:
    if fmt == "json":
        payload = {
            ind: None
            if t is None
            else {
                "pearson": dataclasses.asdict(t.pearson),
                "spearman": dataclasses.asdict(t.spearman),
                "ttest": dataclasses.asdict(t.ttest),
                "significant": t.significant,
            }
            for ind, t in statistics.items()
        }
        return _dump(payload)
    header = ("indicator", "pearson", "spearman", "t_test", "significant")
    body = []
    for ind, t in statistics.items():
        if t is None:
            body.append([INDICATOR_LABELS[ind], "undefined", "undefined", "undefined", ""])
            continue
        body.append(
            [
                INDICATOR_LABELS[ind],
                f"{t.pearson.coefficient:.3f} ({_fmt_p(t.pearson.p_two_tailed)})",
                f"{t.spearman.coefficient:.3f} ({_fmt_p(t.spearman.p_two_tailed)})",
                f"t = {t.ttest.t:.3f} (p = {_fmt_p(t.ttest.p_two_tailed)}){_marker(t)}",
                "yes" if t.significant else "no",
            ]
        )
    text = _render(fmt, header, body)
    if fmt == "markdown":
        text += "\n** significant difference at p < 0.05\n"
    return text


def read_statistics(text: str) -> dict[str, Optional[IndicatorTests]]:
    out = {}
    for ind, t in json.loads(text).items():
        if t is None:
            out[ind] = None
            continue
        out[ind] = IndicatorTests(
            pearson=CorrelationResult(**t["pearson"]),
            spearman=CorrelationResult(**t["spearman"]),
            ttest=TTestResult(**t["ttest"]),
        )
    return out


# ledgers


def write_ledgers(ledgers: Sequence[CreditLedger], fmt: str) -> str:
    if fmt == "json":
        return _dump(
            [{"method": l.method.value, "records_counted": l.records_counted, "rows": l.to_rows()} for l in ledgers]
        )
    header = ("country", "paper_credit", "citation_credit", "method")
    body = [
        [row["country"], repr(row["paper_credit"]), repr(row["citation_credit"]), row["method"]]
        for ledger in ledgers
        for row in ledger.to_rows()
    ]
    return _render(fmt, header, body)


def read_ledgers(text: str) -> list[CreditLedger]:
    return [
        CreditLedger.from_totals(
            item["method"],
            {r["country"]: (r["paper_credit"], r["citation_credit"]) for r in item["rows"]},
            item["records_counted"],
        )
        for item in json.loads(text)
    ]
