"""Country-level whole vs whole-normalized counting comparison."""

from .analysis import Analysis, analyze_ledgers
from .comparison import build_comparison, inflation_rate, inflation_summary, rank_countries
from .corpus import (
    BibRecord,
    CorpusFilter,
    CountryAliasTable,
    IngestReport,
    Schema,
    extract_countries,
    filter_corpus,
    is_international,
    normalize_country,
    parse_records,
    write_records,
)
from .crediting import (
    CountingMethod,
    CreditLedger,
    accumulate_ledger,
    credit_whole,
    credit_whole_normalized,
)
from .estimators import CorpusSelector, CountingComparison, CreditCounter
from .indicators import build_indicator_table, cpp, empirical_h_index, gs_h_index
from .stats import pearson, spearman, t_test_pooled, t_test_welch, t_two_tailed_p

__version__ = "0.1.0"
