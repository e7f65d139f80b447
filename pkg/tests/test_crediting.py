import math
from collections import defaultdict
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bibcount.corpus import BibRecord
from bibcount.crediting import (
    CountingMethod,
    CreditLedger,
    ExactSum,
    accumulate_ledger,
    credit_record,
    credit_whole,
    credit_whole_normalized,
)
from bibcount.exceptions import CreditRefusal

from synth import random_records


def rec(countries, citations, rid="x"):
    return BibRecord(rid, 2000, "article", (), tuple(countries), citations)


def as_tuples(vector):
    return {c: (v.paper, v.citations) for c, v in vector.credits.items()}


def brute_force(records, method):
    """Naive second implementation: exact rational sum of each float addend."""
    papers, cites = defaultdict(Fraction), defaultdict(Fraction)
    for r in records:
        k = len(set(r.countries))
        for c in set(r.countries):
            if method == "whole":
                papers[c] += Fraction(1)
                cites[c] += Fraction(r.citations)
            else:
                papers[c] += Fraction(1.0 / k)
                cites[c] += Fraction(r.citations / k)
    return {c: (float(papers[c]), float(cites[c])) for c in papers}


def test_whole_two_countries():
    assert as_tuples(credit_whole(rec(["France", "Germany"], 10))) == {"France": (1, 10), "Germany": (1, 10)}


def test_whole_single_and_triple():
    assert as_tuples(credit_whole(rec(["Japan"], 0))) == {"Japan": (1, 0)}
    assert as_tuples(credit_whole(rec(["A", "B", "C"], 9))) == {c: (1, 9) for c in "ABC"}


def test_whole_normalized_worked_example():
    # three addresses, two of them French: credit goes by unique country
    from bibcount.corpus import CountryAliasTable, extract_countries

    countries = extract_countries(
        ["Univ A, Paris, France", "Inst B, Lyon, France", "TU C, Berlin, Germany"], CountryAliasTable.default()
    )
    v = credit_whole_normalized(rec(countries, 10))
    assert v.k == 2
    assert as_tuples(v) == {"France": (0.5, 5), "Germany": (0.5, 5)}


def test_whole_normalized_single_and_equal_split():
    assert as_tuples(credit_whole_normalized(rec(["Japan"], 7))) == {"Japan": (1, 7)}
    v = credit_whole_normalized(rec(["A", "B", "C"], 12))
    for c in "ABC":
        assert v[c].paper == pytest.approx(1 / 3, abs=1e-15)
        assert v[c].citations == 4


@pytest.mark.parametrize("fn", [credit_whole, credit_whole_normalized])
def test_refuses_empty_country_list(fn):
    with pytest.raises(CreditRefusal):
        fn(rec([], 3))


@settings(max_examples=200)
@given(st.lists(st.sampled_from("ABCDEFG"), min_size=1, max_size=7, unique=True), st.integers(0, 10_000))
def test_credit_vector_invariants(countries, citations):
    r = rec(countries, citations)
    whole = credit_whole(r)
    frac = credit_whole_normalized(r)
    assert all(v.paper == 1 for v in whole.credits.values())
    assert math.fsum(v.paper for v in frac.credits.values()) == pytest.approx(1, abs=1e-12)
    for v in (*whole.credits.values(), *frac.credits.values()):
        assert v.citations == pytest.approx(v.paper * citations, rel=1e-15, abs=1e-12)


def test_accumulate_hand_sums():
    records = [rec(["A", "B"], 4, "1"), rec(["A"], 2, "2")]
    wnc = accumulate_ledger(records, CountingMethod.WHOLE_NORMALIZED)
    assert wnc.totals() == {"A": (1.5, 4.0), "B": (0.5, 2.0)}
    wc = accumulate_ledger(records, "whole")
    assert wc.totals() == {"A": (2.0, 6.0), "B": (1.0, 4.0)}
    assert wc.records_counted == wnc.records_counted == 2


def test_accumulate_collects_refusals():
    with pytest.raises(CreditRefusal, match="2 record"):
        accumulate_ledger([rec([], 1, "a"), rec(["A"], 1, "b"), rec([], 1, "c")], "whole")


@pytest.mark.parametrize("method", ["whole", "whole_normalized"])
def test_ledger_equals_brute_force_exactly(method):
    records = random_records(1000, seed=5)
    ledger = accumulate_ledger(records, method)
    assert ledger.totals() == brute_force(records, method)


def test_conservation_whole_normalized():
    records = random_records(1000, seed=9)
    ledger = accumulate_ledger(records, CountingMethod.WHOLE_NORMALIZED)
    assert abs(ledger.total_paper_credit() - len(records)) <= 1e-9
    assert abs(ledger.total_citation_credit() - sum(r.citations for r in records)) <= 1e-9


def test_whole_paper_sum_is_country_incidences():
    records = random_records(500, seed=2)
    ledger = accumulate_ledger(records, CountingMethod.WHOLE)
    assert ledger.total_paper_credit() == sum(len(r.countries) for r in records)


def test_domination():
    records = random_records(300, seed=4)
    wc = accumulate_ledger(records, "whole")
    wnc = accumulate_ledger(records, "whole_normalized")
    intl = {c for r in records if len(r.countries) > 1 for c in r.countries}
    for c in wc.countries:
        assert wc.paper_credit(c) >= wnc.paper_credit(c)
        if c in intl:
            assert wc.paper_credit(c) > wnc.paper_credit(c)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 120), st.sampled_from(["whole", "whole_normalized"]))
def test_merge_equals_single_pass(seed, cut, method):
    records = random_records(120, seed=seed)
    whole = accumulate_ledger(records, method)
    merged = accumulate_ledger(records[:cut], method).merge(accumulate_ledger(records[cut:], method))
    assert merged.totals() == whole.totals()
    assert merged.records_counted == whole.records_counted


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_merge_commutative_associative(seed):
    records = random_records(90, seed=seed)
    a, b, c = (accumulate_ledger(records[i : i + 30], "whole_normalized") for i in (0, 30, 60))
    assert a.merge(b).totals() == b.merge(a).totals()
    assert a.merge(b).merge(c).totals() == a.merge(b.merge(c)).totals()


def test_merge_rejects_mixed_methods():
    with pytest.raises(ValueError):
        CreditLedger("whole").merge(CreditLedger("whole_normalized"))


@settings(max_examples=200)
@given(st.lists(st.floats(-1e12, 1e12, allow_nan=False), max_size=50))
def test_exact_sum_is_correctly_rounded(values):
    assert ExactSum(values).value == float(sum(map(Fraction, values), Fraction(0)))


@pytest.mark.parametrize("name", ["straight", "complete-normalized"])
def test_registered_but_unimplemented_methods(name):
    with pytest.raises(NotImplementedError):
        CountingMethod.parse(name)


def test_method_aliases():
    assert CountingMethod.parse("wc") is CountingMethod.WHOLE
    assert CountingMethod.parse("fractional") is CountingMethod.WHOLE_NORMALIZED
    with pytest.raises(ValueError):
        CountingMethod.parse("bogus")


def test_credit_record_dispatch():
    r = rec(["A", "B"], 6)
    assert as_tuples(credit_record(r, "wnc")) == {"A": (0.5, 3), "B": (0.5, 3)}
