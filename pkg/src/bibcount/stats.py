"""Correlation and two-sample t-tests with Student-t p-values.

Everything here is pure Python; the inputs are a few dozen countries at
most. The regularized incomplete beta function is evaluated with the
modified Lentz continued fraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import fmean
from typing import Optional, Sequence

from .exceptions import StatisticsError

_EPS = 1e-12
_TINY = 1e-300
_MAX_ITER = 100_000


def log_beta(a: float, b: float) -> float:
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def _beta_cf(x: float, a: float, b: float) -> float:
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise StatisticsError(f"incomplete beta failed to converge for x={x}, a={a}, b={b}")


def betainc(x: float, a: float, b: float) -> float:
    """Regularized incomplete beta I_x(a, b)."""
    if a <= 0 or b <= 0:
        raise StatisticsError("betainc needs a > 0 and b > 0")
    if not 0.0 <= x <= 1.0:
        raise StatisticsError(f"betainc argument {x} outside [0, 1]")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    log_front = a * math.log(x) + b * math.log1p(-x) - log_beta(a, b)
    # the continued fraction converges fast only below the mean of the distribution
    if x < (a + 1.0) / (a + b + 2.0):
        return math.exp(log_front) * _beta_cf(x, a, b) / a
    return 1.0 - math.exp(log_front) * _beta_cf(1.0 - x, b, a) / b


def t_two_tailed_p(t: float, df: float) -> float:
    """P(|T| >= |t|) for Student's t with ``df`` degrees of freedom."""
    if not math.isfinite(t):
        raise StatisticsError(f"t must be finite, got {t!r}")
    if not df > 0:
        raise StatisticsError(f"df must be positive, got {df!r}")
    if t == 0:
        return 1.0
    p = betainc(df / (df + t * t), df / 2.0, 0.5)
    return min(1.0, max(0.0, p))


@dataclass(frozen=True)
class CorrelationResult:
    coefficient: float
    n: int
    p_two_tailed: float
    kind: str


@dataclass(frozen=True)
class TTestResult:
    t: float
    df: float
    p_two_tailed: float
    mean_x: float
    mean_y: float
    pooled_sd: float
    variant: str = "pooled"

    def significant(self, alpha: float = 0.05) -> bool:
        return self.p_two_tailed < alpha


def _check_pair(x, y, minimum=3):
    if len(x) != len(y):
        raise StatisticsError(f"length mismatch: {len(x)} vs {len(y)}")
    if len(x) < minimum:
        raise StatisticsError(f"need at least {minimum} pairs, got {len(x)}")


def _correlation_p(r: float, n: int) -> float:
    if abs(r) >= 1.0:
        return 0.0
    t = r * math.sqrt((n - 2) / (1.0 - r * r))
    return t_two_tailed_p(t, n - 2)


def pearson(x: Sequence[float], y: Sequence[float]) -> CorrelationResult:
    _check_pair(x, y)
    mx, my = fmean(x), fmean(y)
    dx = [v - mx for v in x]
    dy = [v - my for v in y]
    sxx = math.fsum(d * d for d in dx)
    syy = math.fsum(d * d for d in dy)
    if sxx == 0 or syy == 0:
        raise StatisticsError("correlation undefined for a constant vector")
    sxy = math.fsum(a * b for a, b in zip(dx, dy))
    r = sxy / math.sqrt(sxx * syy)
    r = max(-1.0, min(1.0, r))
    return CorrelationResult(r, len(x), _correlation_p(r, len(x)), "pearson")


def ordinal_ranks(
    values: Sequence[float],
    other: Optional[Sequence[float]] = None,
    tiebreak: Optional[Sequence[float]] = None,
) -> list[int]:
    """Ranks 1..n, largest first, ties broken by ``other`` then ``tiebreak`` then position."""
    n = len(values)
    other = other if other is not None else [0.0] * n
    tiebreak = tiebreak if tiebreak is not None else [0.0] * n
    order = sorted(range(n), key=lambda i: (-values[i], -other[i], -tiebreak[i], i))
    ranks = [0] * n
    for r, i in enumerate(order, start=1):
        ranks[i] = r
    return ranks


def average_ranks(values: Sequence[float]) -> list[float]:
    """Ranks 1..n, largest first, tied values share the mean of their positions."""
    order = sorted(range(len(values)), key=lambda i: -values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        mean_rank = (i + j) / 2.0 + 1.0
        for k in range(i, j + 1):
            ranks[order[k]] = mean_rank
        i = j + 1
    return ranks


def spearman(
    x: Sequence[float],
    y: Sequence[float],
    ties: str = "ordinal",
    tiebreak: Optional[Sequence[float]] = None,
) -> CorrelationResult:
    """Spearman rank correlation.

    ``ties="ordinal"`` ranks each vector with the country-table cascade
    (other vector, then ``tiebreak``, then position) so the coefficient
    equals one computed from displayed rank columns. ``ties="average"``
    gives tied values their mean rank.
    """
    _check_pair(x, y)
    if len(set(x)) == 1 or len(set(y)) == 1:
        raise StatisticsError("correlation undefined for a constant vector")
    if ties == "ordinal":
        rx = ordinal_ranks(x, y, tiebreak)
        ry = ordinal_ranks(y, x, tiebreak)
        kind = "spearman_ordinal"
    elif ties == "average":
        rx, ry = average_ranks(x), average_ranks(y)
        kind = "spearman_average_ranks"
    else:
        raise ValueError(f"unknown tie mode {ties!r}")
    r = pearson(rx, ry).coefficient
    return CorrelationResult(r, len(x), _correlation_p(r, len(x)), kind)


def _sample_var(v, mean):
    return math.fsum((a - mean) ** 2 for a in v) / (len(v) - 1)


def t_test_pooled(x: Sequence[float], y: Sequence[float]) -> TTestResult:
    """Student's two-sample t-test with pooled variance."""
    nx, ny = len(x), len(y)
    if nx < 2 or ny < 2:
        raise StatisticsError("each sample needs at least two values")
    mx, my = fmean(x), fmean(y)
    df = nx + ny - 2
    pooled_var = ((nx - 1) * _sample_var(x, mx) + (ny - 1) * _sample_var(y, my)) / df
    if pooled_var == 0:
        if mx != my:
            raise StatisticsError("both samples constant with different means; t is infinite")
        return TTestResult(0.0, df, 1.0, mx, my, 0.0)
    sd = math.sqrt(pooled_var)
    t = (mx - my) / (sd * math.sqrt(1.0 / nx + 1.0 / ny))
    return TTestResult(t, df, t_two_tailed_p(t, df), mx, my, sd)


def t_test_welch(x: Sequence[float], y: Sequence[float]) -> TTestResult:
    """Welch's unequal-variance t-test with Welch-Satterthwaite df."""
    nx, ny = len(x), len(y)
    if nx < 2 or ny < 2:
        raise StatisticsError("each sample needs at least two values")
    mx, my = fmean(x), fmean(y)
    vx, vy = _sample_var(x, mx) / nx, _sample_var(y, my) / ny
    se2 = vx + vy
    if se2 == 0:
        if mx != my:
            raise StatisticsError("both samples constant with different means; t is infinite")
        return TTestResult(0.0, nx + ny - 2, 1.0, mx, my, 0.0, "welch")
    t = (mx - my) / math.sqrt(se2)
    df = se2 * se2 / (vx * vx / (nx - 1) + vy * vy / (ny - 1))
    return TTestResult(t, df, t_two_tailed_p(t, df), mx, my, math.sqrt(se2), "welch")


T_TESTS = {"pooled": t_test_pooled, "welch": t_test_welch}
