"""scikit-learn style front end.

The estimators take lists of :class:`~bibcount.corpus.BibRecord` as ``X``
and compose with :class:`sklearn.pipeline.Pipeline`::

    pipe = Pipeline([("select", CorpusSelector()), ("compare", CountingComparison())])
    pipe.fit(records)
    pipe[-1].tables_["paper_count"]
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_records, check_threshold
from .analysis import analyze_ledgers
from .corpus import CorpusFilter, filter_corpus
from .crediting import CountingMethod, CreditLedger, accumulate_ledger
from .indicators import C_COUNTRY, INDICATOR_COLUMNS, CountryIndicators
from .exceptions import UndefinedIndicatorError


class CorpusSelector(TransformerMixin, BaseEstimator):
    """Keep the records that pass the year, document-type and country filters.

    Defaults select internationally co-authored records only. ``funnel_``
    holds the per-stage counts of the corpus seen by ``fit``.
    """

    def __init__(
        self,
        year_min=None,
        year_max=None,
        doc_types=None,
        require_country=True,
        require_international=True,
    ):
        self.year_min = year_min
        self.year_max = year_max
        self.doc_types = doc_types
        self.require_country = require_country
        self.require_international = require_international

    def _filter(self):
        return CorpusFilter(
            year_min=self.year_min,
            year_max=self.year_max,
            doc_types=None if self.doc_types is None else frozenset(self.doc_types),
            require_country=self.require_country,
            require_international=self.require_international,
        )

    def fit(self, X, y=None):
        records = check_records(X)
        self.filter_ = self._filter()
        _, self.funnel_ = filter_corpus(records, self.filter_)
        return self

    def transform(self, X):
        check_is_fitted(self, "filter_")
        selected, _ = filter_corpus(check_records(X), self.filter_)
        return selected


class CreditCounter(TransformerMixin, BaseEstimator):
    """Accumulate a per-country credit ledger under one counting method.

    ``transform`` returns the record-by-country paper-credit matrix over the
    countries seen during fitting, in the manner of a feature vectorizer.
    """

    def __init__(self, method="whole"):
        self.method = method

    def fit(self, X, y=None):
        self.method_ = CountingMethod.parse(self.method)
        self.ledger_ = accumulate_ledger(check_records(X), self.method_)
        self.countries_ = np.asarray(self.ledger_.countries, dtype=object)
        return self

    def partial_fit(self, X, y=None):
        """Merge the ledger of another corpus partition into the fitted one."""
        if not hasattr(self, "ledger_"):
            return self.fit(X)
        part = accumulate_ledger(check_records(X), self.method_)
        self.ledger_ = self.ledger_.merge(part)
        self.countries_ = np.asarray(self.ledger_.countries, dtype=object)
        return self

    def transform(self, X):
        check_is_fitted(self, "ledger_")
        records = check_records(X)
        column = {c: j for j, c in enumerate(self.countries_)}
        out = np.zeros((len(records), len(column)))
        for i, record in enumerate(records):
            ledger = CreditLedger(self.method_)
            ledger.add(record)
            for country in ledger.countries:
                j = column.get(country)
                if j is not None:
                    out[i, j] = ledger.paper_credit(country)
        return out

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "countries_")
        return self.countries_.copy()


class CountingComparison(TransformerMixin, BaseEstimator):
    """Compare whole and whole-normalized counting at country level.

    Fitting credits the corpus both ways, keeps the countries whose whole
    counted paper credit reaches ``threshold``, and computes the comparison
    tables, inflation summary and WC-vs-WNC statistics.

    Parameters
    ----------
    threshold : float, default=100
        Minimum whole-counting paper credit for a country to be included.
    c_constant : {1.0, 0.9}, default=1.0
        Constant of the Glänzel-Schubert h-index model.
    spearman_ties : {"ordinal", "average"}, default="ordinal"
    ttest : {"pooled", "welch"}, default="pooled"

    Attributes
    ----------
    wc_ledger_, wnc_ledger_ : CreditLedger
    countries_ : ndarray of str
        Included countries, by descending whole-counting paper credit.
    indicators_ : list of IndicatorPair
    tables_ : dict of indicator -> list of ComparisonRow
    inflation_summary_ : dict of indicator -> InflationStats
    statistics_ : dict of indicator -> IndicatorTests or None
    """

    def __init__(self, threshold=100.0, c_constant=C_COUNTRY, spearman_ties="ordinal", ttest="pooled"):
        self.threshold = threshold
        self.c_constant = c_constant
        self.spearman_ties = spearman_ties
        self.ttest = ttest

    def fit(self, X, y=None):
        records = check_records(X, allow_empty=False)
        wc = accumulate_ledger(records, CountingMethod.WHOLE)
        wnc = accumulate_ledger(records, CountingMethod.WHOLE_NORMALIZED)
        return self.fit_ledgers(wc, wnc)

    def fit_ledgers(self, wc_ledger: CreditLedger, wnc_ledger: CreditLedger):
        """Fit from precomputed ledgers, e.g. merged partition ledgers or published totals."""
        threshold = check_threshold(self.threshold)
        result = analyze_ledgers(
            wc_ledger,
            wnc_ledger,
            threshold=threshold,
            c_constant=self.c_constant,
            spearman_ties=self.spearman_ties,
            ttest=self.ttest,
        )
        self.wc_ledger_ = wc_ledger
        self.wnc_ledger_ = wnc_ledger
        self.indicators_ = result.pairs
        self.tables_ = result.tables
        self.inflation_summary_ = result.summary
        self.statistics_ = result.statistics
        self.countries_ = np.asarray([p.country for p in result.pairs], dtype=object)
        return self

    def transform(self, X):
        """Indicator matrix of corpus ``X`` for the fitted countries.

        Columns follow :meth:`get_feature_names_out`. A country without
        papers in ``X`` gets zero counts and NaN for CPP and h.
        """
        check_is_fitted(self, "countries_")
        records = check_records(X)
        wc = accumulate_ledger(records, CountingMethod.WHOLE)
        wnc = accumulate_ledger(records, CountingMethod.WHOLE_NORMALIZED)
        out = np.full((len(self.countries_), len(INDICATOR_COLUMNS) - 1), np.nan)
        for i, country in enumerate(self.countries_):
            sides = []
            for method, ledger in ((CountingMethod.WHOLE, wc), (CountingMethod.WHOLE_NORMALIZED, wnc)):
                if country not in ledger:
                    sides.append((0.0, 0.0, np.nan, np.nan))
                    continue
                try:
                    ind = CountryIndicators.compute(
                        country, method, ledger.paper_credit(country), ledger.citation_credit(country), self.c_constant
                    )
                except UndefinedIndicatorError:
                    sides.append((0.0, 0.0, np.nan, np.nan))
                    continue
                sides.append((ind.P, ind.C, ind.cpp, ind.h_model))
            (pw, cw, qw, hw), (pn, cn, qn, hn) = sides
            out[i] = (pw, pn, cw, cn, qw, qn, hw, hn)
        return out

    def get_feature_names_out(self, input_features=None):
        return np.asarray(INDICATOR_COLUMNS[1:], dtype=object)
