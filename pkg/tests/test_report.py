import pytest

from bibcount import report
from bibcount.analysis import analyze_ledgers
from bibcount.crediting import accumulate_ledger
from bibcount.reproduce import load_fixture

from synth import random_records


@pytest.fixture(scope="module")
def analysis():
    return analyze_ledgers(*load_fixture().ledgers(), threshold=100)


@pytest.fixture(scope="module")
def synthetic():
    records = random_records(500, seed=12)
    wc = accumulate_ledger(records, "whole")
    wnc = accumulate_ledger(records, "whole_normalized")
    return wc, wnc, analyze_ledgers(wc, wnc, threshold=0)


@pytest.mark.parametrize("which", ["fixture", "synthetic"])
def test_json_round_trip(analysis, synthetic, which):
    a = analysis if which == "fixture" else synthetic[2]
    assert report.read_indicators(report.write_indicators(a.pairs, "json")) == a.pairs
    assert report.read_comparison(report.write_comparison(a.tables, "json")) == a.tables
    assert report.read_summary(report.write_summary(a.summary, "json")) == a.summary
    assert report.read_statistics(report.write_statistics(a.statistics, "json")) == a.statistics


def test_ledger_json_round_trip(synthetic):
    wc, wnc, _ = synthetic
    back = report.read_ledgers(report.write_ledgers([wc, wnc], "json"))
    assert [l.totals() for l in back] == [wc.totals(), wnc.totals()]
    assert [l.records_counted for l in back] == [500, 500]


def test_indicator_tsv_column_order(analysis):
    lines = report.write_indicators(analysis.pairs, "tsv").splitlines()
    assert lines[0].split("\t") == ["country", "P_wc", "P_wnc", "C_wc", "C_wnc", "cpp_wc", "cpp_wnc", "h_wc", "h_wnc"]
    assert lines[1].split("\t") == [
        "United States", "1098.00", "519.58", "15503.00", "7283.60", "14.12", "14.02", "60.27", "46.74",
    ]


def test_comparison_tsv_layout(analysis):
    lines = report.write_comparison(analysis.tables, "tsv").splitlines()
    assert lines[0] == "indicator\tcountry\tvalue_wc\tvalue_wnc\trank_wc\trank_wnc\tinflation"
    assert len(lines) == 1 + 4 * 22
    assert "cpp\tSwitzerland\t19.44\t20.03\t1\t1\t0.97" in lines


def test_markdown_outputs(analysis):
    md = report.write_comparison(analysis.tables, "markdown")
    assert md.count("## ") == 4
    assert "| Netherlands | 26.54 | 19.35 | 13 | 16 | 1.37 |" in md
    stats_md = report.write_statistics(analysis.statistics, "markdown")
    assert "t = 2.611 (p = 0.01246)**" in stats_md
    assert "t = 0.092 (p = 0.92744) |" in stats_md


def test_summary_tsv(analysis):
    text = report.write_summary(analysis.summary, "tsv")
    assert "Paper count\t1.97\t2.25\t2.15" in text
    assert "h-index\t1.26\t1.37\t1.30" in text


def test_unknown_format(analysis):
    with pytest.raises(ValueError):
        report.write_summary(analysis.summary, "xml")


def test_writers_deterministic(analysis):
    again = analyze_ledgers(*load_fixture().ledgers(), threshold=100)
    for fmt in report.FORMATS:
        assert report.write_comparison(analysis.tables, fmt) == report.write_comparison(again.tables, fmt)
        assert report.write_statistics(analysis.statistics, fmt) == report.write_statistics(again.statistics, fmt)
