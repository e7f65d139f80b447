"""Bibliographic record parsing, country normalization and corpus selection."""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from typing import IO, Iterable, Mapping, Optional

from .exceptions import EncodingError, RowError, SchemaError

DOC_TYPES = ("article", "conference-paper", "review", "other")

# export labels -> enumerated token
_DOC_TYPE_LABELS = {
    "article": "article",
    "conference paper": "conference-paper",
    "conference-paper": "conference-paper",
    "review": "review",
}
_DOC_TYPE_DISPLAY = {
    "article": "Article",
    "conference-paper": "Conference Paper",
    "review": "Review",
    "other": "Other",
}

_TRAILING_PUNCT = ".,;:"


def parse_doc_type(label: str) -> str:
    return _DOC_TYPE_LABELS.get(label.strip().casefold(), "other")


@dataclass(frozen=True)
class BibRecord:
    id: str
    year: int
    doc_type: str = "article"
    raw_affiliations: tuple[str, ...] = ()
    countries: tuple[str, ...] = ()
    citations: int = 0

    def __post_init__(self):
        if not self.id:
            raise ValueError("record id must be non-empty")
        if self.citations < 0:
            raise ValueError(f"record {self.id!r}: negative citations")
        if self.doc_type not in DOC_TYPES:
            raise ValueError(f"record {self.id!r}: unknown doc_type {self.doc_type!r}")
        if any(not c for c in self.countries):
            raise ValueError(f"record {self.id!r}: empty country name")
        if len(set(self.countries)) != len(self.countries):
            raise ValueError(f"record {self.id!r}: duplicate countries {self.countries}")
        # accept lists from callers but keep the record hashable
        object.__setattr__(self, "raw_affiliations", tuple(self.raw_affiliations))
        object.__setattr__(self, "countries", tuple(self.countries))


class CountryAliasTable(Mapping[str, str]):
    """Case-folded alias -> canonical country name.

    Every canonical name is also registered as an alias of itself, so
    normalizing a canonical name is a no-op.
    """

    def __init__(self, aliases: Mapping[str, str]):
        table: dict[str, str] = {}
        for alias, canonical in aliases.items():
            canonical = canonical.strip()
            if not canonical:
                raise ValueError(f"alias {alias!r} maps to an empty country name")
            table[_fold(alias)] = canonical
        for canonical in set(table.values()):
            table[_fold(canonical)] = canonical
        self._table = table

    @classmethod
    def from_csv(cls, stream: IO[str]) -> "CountryAliasTable":
        reader = csv.reader(stream)
        rows = [r for r in reader if r and not r[0].startswith("#")]
        if rows and [c.strip().lower() for c in rows[0][:2]] == ["alias", "canonical"]:
            rows = rows[1:]
        aliases = {}
        for lineno, row in enumerate(rows, start=2):
            if len(row) != 2:
                raise SchemaError(f"alias table row {lineno}: expected 2 columns, got {len(row)}")
            aliases[row[0]] = row[1]
        return cls(aliases)

    @classmethod
    def from_path(cls, path) -> "CountryAliasTable":
        with open(path, encoding="utf-8", newline="") as fh:
            return cls.from_csv(fh)

    @classmethod
    def default(cls) -> "CountryAliasTable":
        text = resources.files("bibcount.data").joinpath("aliases.csv").read_text("utf-8")
        return cls.from_csv(io.StringIO(text))

    def __getitem__(self, key: str) -> str:
        return self._table[key]

    def __iter__(self):
        return iter(self._table)

    def __len__(self) -> int:
        return len(self._table)

    @property
    def canonical_names(self) -> frozenset[str]:
        return frozenset(self._table.values())


def _fold(token: str) -> str:
    return token.strip().rstrip(_TRAILING_PUNCT).strip().casefold()


def normalize_country(token: str, aliases: CountryAliasTable) -> Optional[str]:
    """Map a raw country token to its canonical name, or None when unknown."""
    return aliases.get(_fold(token))


def extract_countries(
    affiliations: Iterable[str],
    aliases: CountryAliasTable,
    unknown: Optional[Counter] = None,
) -> list[str]:
    """Country list from affiliation strings, first-occurrence order, no duplicates.

    The country is read from the last comma-separated segment of each
    affiliation. Segments that do not resolve are tallied in ``unknown``.
    """
    seen: dict[str, None] = {}
    for affiliation in affiliations:
        if not affiliation.strip():
            continue
        segment = affiliation.rsplit(",", 1)[-1].strip()
        country = normalize_country(segment, aliases)
        if country is None:
            if unknown is not None:
                unknown[segment] += 1
            continue
        seen.setdefault(country, None)
    return list(seen)


def is_international(record: BibRecord) -> bool:
    return len(record.countries) >= 2


@dataclass
class Schema:
    """Column names and separators for a delimiter-separated export."""

    id: str = "id"
    year: str = "year"
    type: str = "type"
    affiliations: str = "affiliations"
    countries: str = "countries"
    citations: str = "citations"
    delimiter: str = ","
    cell_separator: str = ";"

    @classmethod
    def scopus(cls) -> "Schema":
        return cls(
            id="EID",
            year="Year",
            type="Document Type",
            affiliations="Affiliations",
            countries="Countries",
            citations="Cited by",
        )


@dataclass
class IngestReport:
    rows_read: int = 0
    rejected: list[RowError] = field(default_factory=list)
    unknown_countries: Counter = field(default_factory=Counter)
    stages: dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "rows_read": self.rows_read,
            "records_parsed": self.rows_read - len(self.rejected),
            "stages": dict(self.stages),
            "unknown_countries": dict(sorted(self.unknown_countries.items())),
            "rejected_rows": [{"line": e.line, "message": e.message} for e in self.rejected],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def to_text(self) -> str:
        lines = [f"rows read: {self.rows_read}", f"rows rejected: {len(self.rejected)}"]
        if self.stages:
            lines.append("selection funnel:")
            lines += [f"  {name}: {count}" for name, count in self.stages.items()]
        if self.unknown_countries:
            lines.append("unknown country tokens:")
            for token, n in sorted(self.unknown_countries.items()):
                lines.append(f"  {token!r}: {n}")
        if self.rejected:
            lines.append("rejected rows:")
            lines += [f"  line {e.line}: {e.message}" for e in self.rejected]
        return "\n".join(lines) + "\n"


def _split_cell(cell: str, sep: str) -> list[str]:
    return [part.strip() for part in cell.split(sep) if part.strip()]


def parse_records(
    stream: IO,
    schema: Optional[Schema] = None,
    aliases: Optional[CountryAliasTable] = None,
    report: Optional[IngestReport] = None,
) -> list[BibRecord]:
    """Parse a delimiter-separated export into records.

    Malformed rows are appended to ``report.rejected`` with their line number
    and skipped. A missing mandatory column raises :class:`SchemaError`.
    When a row carries a non-empty countries cell it takes precedence over
    the affiliations cell.
    """
    schema = schema or Schema()
    aliases = aliases if aliases is not None else CountryAliasTable.default()
    report = report if report is not None else IngestReport()

    text = stream.read()
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise EncodingError(f"input is not valid UTF-8: {exc}") from None
    text = text.removeprefix("\ufeff")

    reader = csv.reader(io.StringIO(text, newline=""), delimiter=schema.delimiter)
    header = next(reader, None)
    if header is None:
        raise SchemaError("input has no header row")
    header = [h.strip() for h in header]
    index = {name: i for i, name in enumerate(header)}
    for col in (schema.id, schema.year, schema.type, schema.citations):
        if col not in index:
            raise SchemaError(f"missing mandatory column {col!r}", column=col)
    if schema.affiliations not in index and schema.countries not in index:
        raise SchemaError(
            f"need an {schema.affiliations!r} or {schema.countries!r} column",
            column=schema.affiliations,
        )

    records = []
    seen_ids: set[str] = set()
    for row in reader:
        if not any(cell.strip() for cell in row):
            continue
        report.rows_read += 1
        line = reader.line_num
        try:
            rec = _parse_row(row, index, schema, aliases, report.unknown_countries, line)
            if rec.id in seen_ids:
                raise RowError(line, f"duplicate id {rec.id!r}")
        except RowError as err:
            report.rejected.append(err)
            continue
        seen_ids.add(rec.id)
        records.append(rec)
    return records


def _parse_row(row, index, schema, aliases, unknown, line) -> BibRecord:
    def cell(col):
        i = index.get(col)
        if i is None or i >= len(row):
            return ""
        return row[i].strip()

    rid = cell(schema.id)
    if not rid:
        raise RowError(line, "empty id")
    try:
        year = int(cell(schema.year))
    except ValueError:
        raise RowError(line, f"unparsable year {cell(schema.year)!r}") from None
    raw_cit = cell(schema.citations)
    try:
        # exports leave "Cited by" blank for uncited papers
        citations = int(raw_cit) if raw_cit else 0
    except ValueError:
        raise RowError(line, f"unparsable citations {raw_cit!r}") from None
    if citations < 0:
        raise RowError(line, "negative citations")

    affiliations = tuple(_split_cell(cell(schema.affiliations), schema.cell_separator))
    curated = _split_cell(cell(schema.countries), schema.cell_separator)
    if curated:
        countries = []
        for token in curated:
            name = normalize_country(token, aliases)
            if name is None:
                unknown[token] += 1
            elif name not in countries:
                countries.append(name)
    else:
        countries = extract_countries(affiliations, aliases, unknown)

    return BibRecord(
        id=rid,
        year=year,
        doc_type=parse_doc_type(cell(schema.type)),
        raw_affiliations=affiliations,
        countries=tuple(countries),
        citations=citations,
    )


def write_records(records: Iterable[BibRecord], stream: IO[str], schema: Optional[Schema] = None):
    """Serialize records in the format :func:`parse_records` reads."""
    schema = schema or Schema()
    writer = csv.writer(stream, delimiter=schema.delimiter, lineterminator="\n")
    writer.writerow(
        [schema.id, schema.year, schema.type, schema.affiliations, schema.countries, schema.citations]
    )
    sep = schema.cell_separator + " "
    for r in records:
        writer.writerow(
            [
                r.id,
                r.year,
                _DOC_TYPE_DISPLAY[r.doc_type],
                sep.join(r.raw_affiliations),
                sep.join(r.countries),
                r.citations,
            ]
        )


@dataclass(frozen=True)
class CorpusFilter:
    year_min: Optional[int] = None
    year_max: Optional[int] = None
    doc_types: Optional[frozenset[str]] = None
    require_country: bool = True
    require_international: bool = True
    min_papers_threshold: float = 100.0

    def __post_init__(self):
        if self.year_min is not None and self.year_max is not None and self.year_min > self.year_max:
            raise ValueError(f"year_min {self.year_min} > year_max {self.year_max}")
        if self.doc_types is not None:
            bad = set(self.doc_types) - set(DOC_TYPES)
            if bad:
                raise ValueError(f"unknown doc types: {sorted(bad)}")
            object.__setattr__(self, "doc_types", frozenset(self.doc_types))
        if self.min_papers_threshold < 0:
            raise ValueError("min_papers_threshold must be non-negative")


STAGES = ("input", "year_window", "doc_type", "has_country", "international")


def filter_corpus(
    records: Iterable[BibRecord], criteria: CorpusFilter
) -> tuple[list[BibRecord], dict[str, int]]:
    """Apply the selection funnel and return survivors with per-stage counts.

    The paper-count threshold is a country-level rule and is not applied here.
    """
    current = list(records)
    counts = {"input": len(current)}

    if criteria.year_min is not None:
        current = [r for r in current if r.year >= criteria.year_min]
    if criteria.year_max is not None:
        current = [r for r in current if r.year <= criteria.year_max]
    counts["year_window"] = len(current)

    if criteria.doc_types is not None:
        current = [r for r in current if r.doc_type in criteria.doc_types]
    counts["doc_type"] = len(current)

    if criteria.require_country:
        current = [r for r in current if r.countries]
    counts["has_country"] = len(current)

    if criteria.require_international:
        current = [r for r in current if is_international(r)]
    counts["international"] = len(current)
    return current, counts
