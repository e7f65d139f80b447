"""Input checks shared by the estimators."""

from __future__ import annotations

from typing import Iterable

from .corpus import BibRecord


def check_records(X: Iterable, *, allow_empty: bool = True) -> list[BibRecord]:
    """Materialize ``X`` as a list of records with unique ids."""
    if isinstance(X, (str, bytes)):
        raise TypeError("expected an iterable of BibRecord, got a string")
    records = list(X)
    bad = [type(r).__name__ for r in records if not isinstance(r, BibRecord)]
    if bad:
        raise TypeError(f"expected BibRecord items, got {sorted(set(bad))}")
    if not allow_empty and not records:
        raise ValueError("empty corpus")
    seen = set()
    for r in records:
        if r.id in seen:
            raise ValueError(f"duplicate record id {r.id!r}")
        seen.add(r.id)
    return records


def check_threshold(value) -> float:
    value = float(value)
    if value < 0:
        raise ValueError(f"threshold must be non-negative, got {value}")
    return value
