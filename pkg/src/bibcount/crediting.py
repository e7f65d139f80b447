"""Per-country paper and citation credit under whole and whole-normalized counting."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .corpus import BibRecord
from .exceptions import CreditRefusal


class CountingMethod(str, enum.Enum):
    WHOLE = "whole"
    WHOLE_NORMALIZED = "whole_normalized"

    @property
    def short(self) -> str:
        return "wc" if self is CountingMethod.WHOLE else "wnc"

    @classmethod
    def parse(cls, name) -> "CountingMethod":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("-", "_")
        key = {"wc": "whole", "wnc": "whole_normalized", "fractional": "whole_normalized"}.get(key, key)
        if key in UNIMPLEMENTED_METHODS:
            raise NotImplementedError(f"counting method {key!r} is registered but not implemented")
        return cls(key)


# Named in the literature; recognized so they fail loudly instead of as typos.
UNIMPLEMENTED_METHODS = frozenset({"straight", "complete_normalized"})


class ExactSum:
    """Running float sum kept as non-overlapping partials.

    ``value`` is the correctly rounded sum of everything added, so the
    result does not depend on the order in which addends or other
    accumulators are merged in.
    """

    __slots__ = ("_partials",)

    def __init__(self, values: Iterable[float] = ()):
        self._partials: list[float] = []
        for v in values:
            self.add(v)

    def add(self, x: float) -> None:
        partials = self._partials
        i = 0
        for y in partials:
            if abs(x) < abs(y):
                x, y = y, x
            hi = x + y
            lo = y - (hi - x)
            if lo:
                partials[i] = lo
                i += 1
            x = hi
        partials[i:] = [x]

    def merge(self, other: "ExactSum") -> None:
        for p in list(other._partials):
            self.add(p)

    def copy(self) -> "ExactSum":
        new = ExactSum()
        new._partials = list(self._partials)
        return new

    @property
    def value(self) -> float:
        return math.fsum(self._partials)


@dataclass(frozen=True)
class Credit:
    paper: float
    citations: float


@dataclass(frozen=True)
class CreditVector:
    credits: Mapping[str, Credit]
    k: int

    def __getitem__(self, country: str) -> Credit:
        return self.credits[country]

    def __iter__(self):
        return iter(self.credits)

    def __len__(self):
        return len(self.credits)


def _require_countries(record: BibRecord):
    if not record.countries:
        raise CreditRefusal(f"record {record.id!r} has no countries; filter it out before crediting")
    # countries are duplicate-free by construction, but a caller may bypass BibRecord
    return list(dict.fromkeys(record.countries))


def credit_whole(record: BibRecord) -> CreditVector:
    countries = _require_countries(record)
    c = float(record.citations)
    return CreditVector({name: Credit(1.0, c) for name in countries}, len(countries))


def credit_whole_normalized(record: BibRecord) -> CreditVector:
    countries = _require_countries(record)
    k = len(countries)
    # citations / k rather than (1/k) * citations: one rounding instead of two
    credit = Credit(1.0 / k, record.citations / k)
    return CreditVector({name: credit for name in countries}, k)


_CREDITORS = {
    CountingMethod.WHOLE: credit_whole,
    CountingMethod.WHOLE_NORMALIZED: credit_whole_normalized,
}


def credit_record(record: BibRecord, method) -> CreditVector:
    return _CREDITORS[CountingMethod.parse(method)](record)


@dataclass
class CreditLedger:
    method: CountingMethod
    records_counted: int = 0
    _papers: dict[str, ExactSum] = field(default_factory=dict, repr=False)
    _citations: dict[str, ExactSum] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.method = CountingMethod.parse(self.method)

    @classmethod
    def from_totals(cls, method, totals: Mapping[str, tuple[float, float]], records_counted: int = 0):
        """Ledger built from already-aggregated (paper, citation) credit per country."""
        ledger = cls(method, records_counted)
        for country, (p, c) in totals.items():
            if p < 0 or c < 0:
                raise ValueError(f"{country}: credit sums must be non-negative")
            ledger._papers[country] = ExactSum([float(p)])
            ledger._citations[country] = ExactSum([float(c)])
        return ledger

    def add_vector(self, vector: CreditVector) -> None:
        for country, credit in vector.credits.items():
            self._papers.setdefault(country, ExactSum()).add(credit.paper)
            self._citations.setdefault(country, ExactSum()).add(credit.citations)
        self.records_counted += 1

    def add(self, record: BibRecord) -> None:
        self.add_vector(credit_record(record, self.method))

    def merge(self, other: "CreditLedger") -> "CreditLedger":
        """Return a new ledger holding the sums of both."""
        if other.method is not self.method:
            raise ValueError(f"cannot merge {self.method.value} and {other.method.value} ledgers")
        out = CreditLedger(self.method, self.records_counted + other.records_counted)
        for src in (self, other):
            for country, acc in src._papers.items():
                out._papers.setdefault(country, ExactSum()).merge(acc)
            for country, acc in src._citations.items():
                out._citations.setdefault(country, ExactSum()).merge(acc)
        return out

    @property
    def countries(self) -> list[str]:
        return sorted(self._papers)

    def __contains__(self, country) -> bool:
        return country in self._papers

    def __len__(self) -> int:
        return len(self._papers)

    def paper_credit(self, country: str) -> float:
        return self._papers[country].value

    def citation_credit(self, country: str) -> float:
        return self._citations[country].value

    def totals(self) -> dict[str, tuple[float, float]]:
        return {c: (self.paper_credit(c), self.citation_credit(c)) for c in self.countries}

    def total_paper_credit(self) -> float:
        acc = ExactSum()
        for s in self._papers.values():
            acc.merge(s)
        return acc.value

    def total_citation_credit(self) -> float:
        acc = ExactSum()
        for s in self._citations.values():
            acc.merge(s)
        return acc.value

    def to_rows(self) -> list[dict]:
        return [
            {"country": c, "paper_credit": p, "citation_credit": cit, "method": self.method.value}
            for c, (p, cit) in self.totals().items()
        ]


def accumulate_ledger(records: Iterable[BibRecord], method) -> CreditLedger:
    """Sum credit vectors over ``records``.

    Every record that cannot be credited is collected and reported together
    in a single :class:`CreditRefusal` after the pass.
    """
    ledger = CreditLedger(CountingMethod.parse(method))
    refused = []
    for record in records:
        try:
            ledger.add(record)
        except CreditRefusal:
            refused.append(record.id)
    if refused:
        raise CreditRefusal(f"{len(refused)} record(s) without countries: {refused[:10]}")
    return ledger
