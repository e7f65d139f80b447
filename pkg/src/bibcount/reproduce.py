"""Regenerate the published country tables from their WC/WNC count columns.

Only the per-country paper and citation totals are inputs. CPP, model
h-index, ranks, inflation rates, the inflation summary and the
statistics are recomputed and compared cell by cell with the published
values.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

from .analysis import Analysis, analyze_ledgers
from .comparison import INDICATOR_LABELS, INDICATORS, round_half_up
from .crediting import CountingMethod, CreditLedger

THRESHOLD = 100.0

# published table number per indicator
TABLE_NUMBER = {"paper_count": 1, "citation_count": 2, "cpp": 3, "h_index": 4}

H_TOLERANCE = 0.02
T_TOLERANCE = 0.02
P_TOLERANCE = 0.002
SPEARMAN_TOLERANCE = 0.002
PEARSON_TOLERANCE = {"cpp": 0.002, "h_index": 0.001}
# a published "1" is a display-rounded coefficient
PEARSON_DISPLAYED_ONE = 0.9995


@dataclass
class Fixture:
    rows: list[dict]
    summary: dict

    def totals(self):
        wc = {r["country"]: (r["P_wc"], r["C_wc"]) for r in self.rows}
        wnc = {r["country"]: (r["P_wnc"], r["C_wnc"]) for r in self.rows}
        return wc, wnc

    def ledgers(self) -> tuple[CreditLedger, CreditLedger]:
        wc, wnc = self.totals()
        return (
            CreditLedger.from_totals(CountingMethod.WHOLE, wc),
            CreditLedger.from_totals(CountingMethod.WHOLE_NORMALIZED, wnc),
        )

    def by_country(self) -> dict[str, dict]:
        return {r["country"]: r for r in self.rows}


def _parse_rows(text: str) -> list[dict]:
    rows = []
    for raw in csv.DictReader(io.StringIO(text), delimiter="\t"):
        row = {"country": raw.pop("country")}
        for key, value in raw.items():
            row[key] = int(value) if "rank" in key else float(value)
        rows.append(row)
    return rows


def load_fixture(path: Optional[Path] = None, summary_path: Optional[Path] = None) -> Fixture:
    """Load the published country rows (TSV) and the summary tables (JSON).

    Without arguments the copies shipped with the package are used.
    """
    data = resources.files("bibcount.data")
    rows_text = Path(path).read_text("utf-8") if path else data.joinpath("published_countries.tsv").read_text("utf-8")
    summary_text = (
        Path(summary_path).read_text("utf-8")
        if summary_path
        else data.joinpath("published_summary.json").read_text("utf-8")
    )
    return Fixture(_parse_rows(rows_text), json.loads(summary_text))


@dataclass(frozen=True)
class CellCheck:
    table: str
    cell: str
    expected: object
    actual: object
    rule: str
    ok: bool

    def describe(self) -> str:
        status = "match" if self.ok else "MISMATCH"
        return f"{self.table} {self.cell}: expected {self.expected}, got {self.actual} [{self.rule}] {status}"


@dataclass
class Reproduction:
    analysis: Analysis
    checks: list[CellCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[CellCheck]:
        return [c for c in self.checks if not c.ok]

    def by_table(self, table: str) -> list[CellCheck]:
        return [c for c in self.checks if c.table == table]


def _rounded(table, cell, expected, actual):
    shown = round_half_up(actual, 2)
    return CellCheck(table, cell, expected, shown, "half-up 2dp", shown == expected)


def _within(table, cell, expected, actual, tol):
    return CellCheck(table, cell, expected, round(actual, 6), f"±{tol}", abs(actual - expected) <= tol)


def _exact(table, cell, expected, actual):
    return CellCheck(table, cell, expected, actual, "exact", expected == actual)


def reproduce(fixture: Optional[Fixture] = None) -> Reproduction:
    fixture = fixture or load_fixture()
    wc, wnc = fixture.ledgers()
    analysis = analyze_ledgers(wc, wnc, threshold=THRESHOLD)
    published = fixture.by_country()
    result = Reproduction(analysis)
    checks = result.checks

    included = {p.country for p in analysis.pairs}
    checks.append(_exact("Tables 1-4", "country set", sorted(published), sorted(included)))

    for pair in analysis.pairs:
        row = published.get(pair.country)
        if row is None:
            continue
        c = pair.country
        checks.append(_rounded("Table 3", f"{c} CPP WC", row["t3_cpp_wc"], pair.wc.cpp))
        checks.append(_rounded("Table 3", f"{c} CPP WNC", row["t3_cpp_wnc"], pair.wnc.cpp))
        checks.append(_within("Table 4", f"{c} h WC", row["t4_h_wc"], pair.wc.h_model, H_TOLERANCE))
        checks.append(_within("Table 4", f"{c} h WNC", row["t4_h_wnc"], pair.wnc.h_model, H_TOLERANCE))

    for indicator in INDICATORS:
        n = TABLE_NUMBER[indicator]
        table = f"Table {n}"
        for r in analysis.tables[indicator]:
            row = published.get(r.country)
            if row is None:
                continue
            checks.append(_rounded(table, f"{r.country} inflation", row[f"t{n}_inflation"], r.inflation))
            checks.append(_exact(table, f"{r.country} rank WC", row[f"t{n}_rank_wc"], r.rank_wc))
            checks.append(_exact(table, f"{r.country} rank WNC", row[f"t{n}_rank_wnc"], r.rank_wnc))

    for indicator, expected in fixture.summary["inflation_summary"].items():
        got = analysis.summary[indicator]
        for key in ("lowest", "highest", "average"):
            checks.append(_exact("Table 5", f"{INDICATOR_LABELS[indicator]} {key}", expected[key], getattr(got, key)))

    for indicator, expected in fixture.summary["statistics"].items():
        label = INDICATOR_LABELS[indicator]
        tests = analysis.statistics.get(indicator)
        if tests is None:
            checks.append(CellCheck("Table 6", f"{label}", "defined", "undefined", "exact", False))
            continue
        r = tests.pearson.coefficient
        if indicator in PEARSON_TOLERANCE:
            checks.append(_within("Table 6", f"{label} Pearson", expected["pearson"], r, PEARSON_TOLERANCE[indicator]))
        else:
            checks.append(
                CellCheck(
                    "Table 6", f"{label} Pearson", expected["pearson"], round(r, 6),
                    f">= {PEARSON_DISPLAYED_ONE}", r >= PEARSON_DISPLAYED_ONE,
                )
            )
        checks.append(
            _within("Table 6", f"{label} Spearman", expected["spearman"], tests.spearman.coefficient, SPEARMAN_TOLERANCE)
        )
        checks.append(_within("Table 6", f"{label} t", expected["t"], tests.ttest.t, T_TOLERANCE))
        checks.append(_within("Table 6", f"{label} p", expected["p"], tests.ttest.p_two_tailed, P_TOLERANCE))
        checks.append(_exact("Table 6", f"{label} significant", expected["significant"], tests.significant))
    return result


def summary_lines(result: Reproduction) -> list[str]:
    """One line per regenerated table, plus every failing cell."""
    lines = []
    for n, indicator in enumerate(INDICATORS, start=1):
        checks = result.by_table(f"Table {n}")
        bad = sum(not c.ok for c in checks)
        lines.append(f"Table {n} ({INDICATOR_LABELS[indicator]}): {len(checks) - bad}/{len(checks)} cells match")
    for indicator, s in result.analysis.summary.items():
        cells = [c for c in result.by_table("Table 5") if c.cell.startswith(INDICATOR_LABELS[indicator] + " ")]
        status = "match" if all(c.ok for c in cells) else "MISMATCH"
        lines.append(
            f"Table 5 {INDICATOR_LABELS[indicator].lower()}: "
            f"{s.lowest:.2f} / {s.highest:.2f} / {s.average:.2f} - {status}"
        )
    for indicator, tests in result.analysis.statistics.items():
        label = INDICATOR_LABELS[indicator]
        cells = [c for c in result.by_table("Table 6") if c.cell.startswith(label + " ")]
        status = "match" if cells and all(c.ok for c in cells) else "MISMATCH"
        if tests is None:
            lines.append(f"Table 6 {label}: undefined - {status}")
            continue
        lines.append(
            f"Table 6 {label}: pearson {tests.pearson.coefficient:.3f}, "
            f"spearman {tests.spearman.coefficient:.3f}, "
            f"t = {tests.ttest.t:.3f}, p = {tests.ttest.p_two_tailed:.5f} - {status}"
        )
    for c in result.failures:
        lines.append("  " + c.describe())
    return lines
