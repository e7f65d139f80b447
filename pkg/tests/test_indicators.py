import itertools

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from bibcount.crediting import CountingMethod, CreditLedger, accumulate_ledger
from bibcount.exceptions import ConsistencyError, UndefinedIndicatorError
from bibcount.indicators import build_indicator_table, cpp, empirical_h_index, gs_h_index
from bibcount.reproduce import load_fixture

from synth import random_records


def brute_h(citations):
    n = len(citations)
    return max(h for h in range(n + 1) if sum(c >= h for c in citations) >= h)


def test_cpp_values():
    assert round(cpp(1098, 15503), 2) == 14.12
    assert cpp(1, 0) == 0
    assert round(cpp(82.4, 1650.27), 2) == 20.03


@pytest.mark.parametrize("papers", [0, -1.0])
def test_cpp_undefined(papers):
    with pytest.raises(UndefinedIndicatorError):
        cpp(papers, 10)


def test_gs_h_published_examples():
    assert gs_h_index(1098, 14.12, 1) == pytest.approx(60.27, abs=0.02)
    assert gs_h_index(519.58, 14.02, 1) == pytest.approx(46.74, abs=0.02)
    assert gs_h_index(1, 1, 1) == 1


@pytest.mark.parametrize("args", [(-1, 1, 1), (1, -1, 1), (0, 1, 1), (1, 1, 0.5)])
def test_gs_h_domain(args):
    with pytest.raises(ValueError):
        gs_h_index(*args)


pos = st.floats(1e-3, 1e6, allow_nan=False)


@given(pos, st.floats(0, 1e4))
def test_gs_h_homogeneous_in_c(p, q):
    assert gs_h_index(p, q, 0.9) == 0.9 * gs_h_index(p, q, 1.0)


@given(pos, pos, st.floats(1e-3, 1e4))
def test_gs_h_increasing(p1, p2, q):
    assume(p1 < p2 * (1 - 1e-9))
    assert gs_h_index(p1, q) < gs_h_index(p2, q)
    assert gs_h_index(q, p1) < gs_h_index(q, p2)


def test_empirical_h_examples():
    assert empirical_h_index([10, 8, 5, 4, 3]) == brute_h([10, 8, 5, 4, 3]) == 4
    assert empirical_h_index([]) == 0
    assert empirical_h_index([0, 0, 0]) == 0


@given(st.lists(st.integers(0, 60), max_size=40))
def test_empirical_h_matches_brute_force(citations):
    h = empirical_h_index(citations)
    assert h == brute_h(citations)
    assert h <= min(len(citations), max(citations, default=0))


@given(st.lists(st.integers(0, 30), max_size=7))
def test_empirical_h_permutation_invariant(citations):
    hs = {empirical_h_index(list(p)) for p in itertools.permutations(citations)}
    assert len(hs) <= 1


def test_empirical_h_rejects_negative():
    with pytest.raises(ValueError):
        empirical_h_index([3, -1])


def fixture_ledgers():
    return load_fixture().ledgers()


def test_fixture_threshold_100_selects_22():
    pairs = build_indicator_table(*fixture_ledgers(), threshold=100)
    assert len(pairs) == 22
    assert {p.country for p in pairs} == {r["country"] for r in load_fixture().rows}


def test_fixture_threshold_600():
    pairs = build_indicator_table(*fixture_ledgers(), threshold=600)
    assert [p.country for p in pairs] == ["United States", "China"]


def test_threshold_zero_keeps_all():
    records = random_records(20, seed=1, countries=["X", "Y", "Z"], max_countries=3)
    wc = accumulate_ledger(records, "whole")
    wnc = accumulate_ledger(records, "whole_normalized")
    assert {p.country for p in build_indicator_table(wc, wnc, 0)} == {"X", "Y", "Z"}


def test_threshold_uses_whole_counting():
    # 107 whole-counted papers but 49.28 fractional: kept at 100
    wc = CreditLedger.from_totals("whole", {"Netherlands": (107, 1414)})
    wnc = CreditLedger.from_totals("whole_normalized", {"Netherlands": (49.28, 597.3)})
    assert len(build_indicator_table(wc, wnc, 100)) == 1


def test_inconsistent_ledgers():
    wc = CreditLedger.from_totals("whole", {"A": (1, 1)})
    wnc = CreditLedger.from_totals("whole_normalized", {"B": (1, 1)})
    with pytest.raises(ConsistencyError):
        build_indicator_table(wc, wnc, 0)


def test_ledger_order_checked():
    wc, wnc = fixture_ledgers()
    with pytest.raises(ValueError):
        build_indicator_table(wnc, wc, 0)


def test_indicator_identities_on_synthetic_corpus():
    records = random_records(800, seed=21)
    wc = accumulate_ledger(records, CountingMethod.WHOLE)
    wnc = accumulate_ledger(records, CountingMethod.WHOLE_NORMALIZED)
    for pair in build_indicator_table(wc, wnc, 0):
        for side in (pair.wc, pair.wnc):
            assert abs(side.cpp * side.P - side.C) <= 1e-9 * max(1.0, side.C)
            assert side.h_model == pytest.approx(side.P ** (1 / 3) * side.cpp ** (2 / 3), rel=1e-12)


def test_zero_citations_give_zero_h():
    wc = CreditLedger.from_totals("whole", {"A": (3, 0)})
    wnc = CreditLedger.from_totals("whole_normalized", {"A": (1.5, 0)})
    (pair,) = build_indicator_table(wc, wnc, 0)
    assert pair.wc.h_model == pair.wnc.h_model == 0
