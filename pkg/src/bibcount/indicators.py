"""Country indicators: paper count, citation count, CPP and model h-index."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .crediting import CountingMethod, CreditLedger
from .exceptions import ConsistencyError, UndefinedIndicatorError

C_COUNTRY = 1.0
C_JOURNAL = 0.9
_ALLOWED_C = (C_JOURNAL, C_COUNTRY)


def cpp(papers: float, citations: float) -> float:
    """Citations per paper."""
    if not papers > 0:
        raise UndefinedIndicatorError(f"CPP undefined for paper credit {papers!r}")
    if citations < 0:
        raise UndefinedIndicatorError(f"negative citation credit {citations!r}")
    return citations / papers


def gs_h_index(papers: float, cpp_value: float, c: float = C_COUNTRY) -> float:
    """Glänzel-Schubert estimate ``c * P**(1/3) * CPP**(2/3)``.

    ``c`` is 0.9 for journals and 1 for other units such as countries.
    """
    if c not in _ALLOWED_C:
        raise ValueError(f"c must be one of {_ALLOWED_C}, got {c!r}")
    if not papers > 0:
        raise ValueError(f"paper count must be positive, got {papers!r}")
    if cpp_value < 0 or math.isnan(cpp_value):
        raise ValueError(f"CPP must be non-negative, got {cpp_value!r}")
    return c * (papers ** (1.0 / 3.0) * cpp_value ** (2.0 / 3.0))


def empirical_h_index(citations: Iterable[int]) -> int:
    """Largest h such that h of the papers have at least h citations each."""
    ordered = sorted(citations, reverse=True)
    if ordered and ordered[-1] < 0:
        raise ValueError("citation counts must be non-negative")
    h = 0
    for i, c in enumerate(ordered, start=1):
        if c >= i:
            h = i
        else:
            break
    return h


@dataclass(frozen=True)
class CountryIndicators:
    country: str
    method: CountingMethod
    P: float
    C: float
    cpp: float
    h_model: float
    c_constant: float = C_COUNTRY

    @classmethod
    def compute(cls, country, method, papers, citations, c_constant=C_COUNTRY):
        value = cpp(papers, citations)
        return cls(
            country=country,
            method=CountingMethod.parse(method),
            P=papers,
            C=citations,
            cpp=value,
            h_model=gs_h_index(papers, value, c_constant),
            c_constant=c_constant,
        )

    def value(self, indicator: str) -> float:
        return {"paper_count": self.P, "citation_count": self.C, "cpp": self.cpp, "h_index": self.h_model}[
            indicator
        ]


@dataclass(frozen=True)
class IndicatorPair:
    wc: CountryIndicators
    wnc: CountryIndicators

    @property
    def country(self) -> str:
        return self.wc.country


INDICATOR_COLUMNS = ("country", "P_wc", "P_wnc", "C_wc", "C_wnc", "cpp_wc", "cpp_wnc", "h_wc", "h_wnc")


def build_indicator_table(
    wc_ledger: CreditLedger,
    wnc_ledger: CreditLedger,
    threshold: float = 100.0,
    c_constant: float = C_COUNTRY,
) -> list[IndicatorPair]:
    """Paired WC/WNC indicators for every country with WC paper credit >= threshold.

    Rows are ordered by WC paper credit descending, then country name.
    """
    if wc_ledger.method is not CountingMethod.WHOLE:
        raise ValueError("first ledger must use whole counting")
    if wnc_ledger.method is not CountingMethod.WHOLE_NORMALIZED:
        raise ValueError("second ledger must use whole-normalized counting")
    if set(wc_ledger.countries) != set(wnc_ledger.countries):
        diff = sorted(set(wc_ledger.countries) ^ set(wnc_ledger.countries))
        raise ConsistencyError(f"ledgers disagree on the country set: {diff}")

    pairs = []
    for country in wc_ledger.countries:
        p_wc = wc_ledger.paper_credit(country)
        if p_wc < threshold:
            continue
        pairs.append(
            IndicatorPair(
                CountryIndicators.compute(
                    country, CountingMethod.WHOLE, p_wc, wc_ledger.citation_credit(country), c_constant
                ),
                CountryIndicators.compute(
                    country,
                    CountingMethod.WHOLE_NORMALIZED,
                    wnc_ledger.paper_credit(country),
                    wnc_ledger.citation_credit(country),
                    c_constant,
                ),
            )
        )
    pairs.sort(key=lambda p: (-p.wc.P, p.country))
    return pairs


def indicator_rows(pairs: Sequence[IndicatorPair]) -> list[dict]:
    return [
        {
            "country": p.country,
            "P_wc": p.wc.P,
            "P_wnc": p.wnc.P,
            "C_wc": p.wc.C,
            "C_wnc": p.wnc.C,
            "cpp_wc": p.wc.cpp,
            "cpp_wnc": p.wnc.cpp,
            "h_wc": p.wc.h_model,
            "h_wnc": p.wnc.h_model,
        }
        for p in pairs
    ]
