"""Pipeline glue: ledgers -> indicators -> comparison tables -> statistics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .comparison import ComparisonRow, InflationStats, build_comparison, inflation_summary
from .crediting import CreditLedger
from .indicators import C_COUNTRY, IndicatorPair, build_indicator_table
from .exceptions import StatisticsError
from .stats import T_TESTS, CorrelationResult, TTestResult, pearson, spearman

ALPHA = 0.05


@dataclass(frozen=True)
class IndicatorTests:
    pearson: CorrelationResult
    spearman: CorrelationResult
    ttest: TTestResult

    @property
    def significant(self) -> bool:
        return self.ttest.significant(ALPHA)


def compare_statistics(
    tables: Mapping[str, Sequence[ComparisonRow]],
    papers_wc: Mapping[str, float],
    spearman_ties: str = "ordinal",
    ttest: str = "pooled",
) -> dict[str, Optional[IndicatorTests]]:
    """Pearson, Spearman and t-test of WC against WNC values per indicator.

    An indicator whose columns make a statistic undefined (a constant
    column, say) maps to None.
    """
    if ttest not in T_TESTS:
        raise ValueError(f"unknown t-test variant {ttest!r}")
    out = {}
    for indicator, rows in tables.items():
        x = [r.value_wc for r in rows]
        y = [r.value_wnc for r in rows]
        tiebreak = [papers_wc[r.country] for r in rows]
        try:
            out[indicator] = IndicatorTests(
                pearson=pearson(x, y),
                spearman=spearman(x, y, ties=spearman_ties, tiebreak=tiebreak),
                ttest=T_TESTS[ttest](x, y),
            )
        except StatisticsError:
            out[indicator] = None
    return out


@dataclass
class Analysis:
    pairs: list[IndicatorPair]
    tables: dict[str, list[ComparisonRow]]
    summary: dict[str, InflationStats]
    statistics: dict[str, Optional[IndicatorTests]]


def analyze_ledgers(
    wc: CreditLedger,
    wnc: CreditLedger,
    threshold: float = 100.0,
    c_constant: float = C_COUNTRY,
    spearman_ties: str = "ordinal",
    ttest: str = "pooled",
) -> Analysis:
    pairs = build_indicator_table(wc, wnc, threshold, c_constant)
    if not pairs:
        raise ValueError(f"no country reaches the threshold of {threshold} whole-counted papers")
    tables = build_comparison(pairs)
    papers_wc = {p.country: p.wc.P for p in pairs}
    # correlations need at least three countries
    statistics = compare_statistics(tables, papers_wc, spearman_ties, ttest) if len(pairs) >= 3 else {}
    return Analysis(pairs, tables, inflation_summary(tables), statistics)
