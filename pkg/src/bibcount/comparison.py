"""Dual-ranked WC/WNC comparison tables and inflation summaries."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from statistics import fmean
from typing import Mapping, Optional, Sequence

from .exceptions import UndefinedIndicatorError
from .indicators import IndicatorPair

INDICATORS = ("paper_count", "citation_count", "cpp", "h_index")
INDICATOR_LABELS = {
    "paper_count": "Paper count",
    "citation_count": "Citation count",
    "cpp": "CPP",
    "h_index": "h-index",
}


def round_half_up(x: float, digits: int = 2) -> float:
    """Round to ``digits`` decimals with ties away from zero, on the shortest repr of ``x``."""
    quantum = Decimal(1).scaleb(-digits)
    return float(Decimal(repr(float(x))).quantize(quantum, rounding=ROUND_HALF_UP))


def rank_countries(
    values: Mapping[str, float],
    other: Optional[Mapping[str, float]] = None,
    papers_wc: Optional[Mapping[str, float]] = None,
) -> dict[str, int]:
    """Ordinal ranks, 1 for the largest value.

    Ties fall through to the other method's value (descending), then whole
    counting paper credit (descending), then the country name.
    """
    other = other or {}
    papers_wc = papers_wc or {}
    order = sorted(
        values,
        key=lambda c: (-values[c], -other.get(c, 0.0), -papers_wc.get(c, 0.0), c),
    )
    return {country: i for i, country in enumerate(order, start=1)}


def inflation_rate(value_wc: float, value_wnc: float) -> float:
    if not value_wnc > 0:
        raise UndefinedIndicatorError(f"inflation undefined for WNC value {value_wnc!r}")
    return value_wc / value_wnc


@dataclass(frozen=True)
class ComparisonRow:
    country: str
    indicator: str
    value_wc: float
    value_wnc: float
    rank_wc: int
    rank_wnc: int
    inflation: float


def build_comparison(pairs: Sequence[IndicatorPair]) -> dict[str, list[ComparisonRow]]:
    """One table per indicator, rows in WC rank order."""
    papers_wc = {p.country: p.wc.P for p in pairs}
    tables = {}
    for indicator in INDICATORS:
        wc = {p.country: p.wc.value(indicator) for p in pairs}
        wnc = {p.country: p.wnc.value(indicator) for p in pairs}
        rank_wc = rank_countries(wc, wnc, papers_wc)
        rank_wnc = rank_countries(wnc, wc, papers_wc)
        rows = [
            ComparisonRow(
                country=c,
                indicator=indicator,
                value_wc=wc[c],
                value_wnc=wnc[c],
                rank_wc=rank_wc[c],
                rank_wnc=rank_wnc[c],
                inflation=inflation_rate(wc[c], wnc[c]),
            )
            for c in wc
        ]
        rows.sort(key=lambda r: r.rank_wc)
        tables[indicator] = rows
    return tables


@dataclass(frozen=True)
class InflationStats:
    lowest: float
    highest: float
    average: float
    # unrounded variants
    lowest_raw: float
    highest_raw: float
    average_raw: float


def inflation_summary(tables: Mapping[str, Sequence[ComparisonRow]], digits: int = 2) -> dict[str, InflationStats]:
    """Lowest, highest and average inflation per indicator.

    ``average`` is the mean of the per-row inflations after each is rounded
    to ``digits`` decimals, which is how published tables are usually
    derived; ``average_raw`` is the mean at full precision.
    """
    summary = {}
    for indicator, rows in tables.items():
        if not rows:
            raise ValueError(f"empty comparison table for {indicator}")
        raw = [r.inflation for r in rows]
        shown = [round_half_up(x, digits) for x in raw]
        summary[indicator] = InflationStats(
            lowest=min(shown),
            highest=max(shown),
            average=round_half_up(fmean(shown), digits),
            lowest_raw=min(raw),
            highest_raw=max(raw),
            average_raw=fmean(raw),
        )
    return summary


def rank_changes(rows: Sequence[ComparisonRow]) -> list[str]:
    return [r.country for r in rows if r.rank_wc != r.rank_wnc]
