"""Welch's t-test, summary statistics, and confusion-matrix metrics.

The p-value kernel (Student-t survival function) is computed from the
regularized incomplete beta function, evaluated with a Lentz-style
continued fraction.  Everything here is a pure function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class SampleSummary:
    n: int
    mean: float
    sd: float  # sample standard deviation, n-1 denominator


@dataclass(frozen=True)
class WelchResult:
    t: float
    df: float  # Welch-Satterthwaite degrees of freedom
    p: float  # two-sided
    drift: bool  # p < alpha


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class ConfusionMetrics:
    accuracy: float
    precision: float
    recall: float
    f1: float
    undefined: frozenset[str]  # metrics whose denominator was zero


def summarize(samples: Sequence[float]) -> SampleSummary:
    """Mean and n-1 standard deviation; requires at least two samples."""
    n = len(samples)
    if n < 2:
        raise ValueError("need at least 2 samples to summarize")
    mean = math.fsum(samples) / n
    var = math.fsum((x - mean) ** 2 for x in samples) / (n - 1)
    return SampleSummary(n=n, mean=mean, sd=math.sqrt(var))


def welch_t_test(a: Sequence[float], b: Sequence[float], alpha: float = 0.05) -> WelchResult:
    """Two-sided Welch's t-test (unequal variances) between two samples.

    Degenerate zero-variance cases: equal means give t=0, p=1; unequal
    means give p=0 with an infinite t.
    """
    sa, sb = summarize(a), summarize(b)
    va, vb = sa.sd**2, sb.sd**2
    qa, qb = va / sa.n, vb / sb.n
    diff = sa.mean - sb.mean
    if qa + qb == 0.0:
        if diff == 0.0:
            return WelchResult(t=0.0, df=float(sa.n + sb.n - 2), p=1.0, drift=False)
        t = math.inf if diff > 0 else -math.inf
        return WelchResult(t=t, df=float(sa.n + sb.n - 2), p=0.0, drift=0.0 < alpha)
    t = diff / math.sqrt(qa + qb)
    df = (qa + qb) ** 2 / (qa**2 / (sa.n - 1) + qb**2 / (sb.n - 1))
    p = 2.0 * student_t_sf(abs(t), df)
    if p > 1.0:
        p = 1.0
    return WelchResult(t=t, df=df, p=p, drift=p < alpha)


def student_t_sf(t: float, df: float) -> float:
    """P(T_df > t) for Student's t distribution with df > 0.

    Uses sf(t) = I_x(df/2, 1/2) / 2 with x = df / (df + t^2) for t >= 0,
    reflected for negative t.
    """
    if df <= 0:
        raise ValueError("degrees of freedom must be positive")
    if t == 0.0:
        return 0.5
    if math.isinf(t):
        return 0.0 if t > 0 else 1.0
    x = df / (df + t * t)
    tail = 0.5 * _reg_inc_beta(0.5 * df, 0.5, x)
    return tail if t > 0 else 1.0 - tail


_CF_MAX_ITER = 300
_CF_TOL = 1e-12


def _reg_inc_beta(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b) by continued fraction."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    # the continued fraction converges fast only for x < (a+1)/(a+b+2)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def _betacf(a: float, b: float, x: float) -> float:
    # modified Lentz's method
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_TOL:
            return h
    raise RuntimeError("incomplete beta continued fraction did not converge")


def confusion_metrics(c: ConfusionCounts) -> ConfusionMetrics:
    """Accuracy/precision/recall/F1; zero denominators yield 0 and a flag."""
    if c.total <= 0:
        raise ValueError("confusion counts must not all be zero")
    undefined = set()
    accuracy = (c.tp + c.tn) / c.total
    if c.tp + c.fp > 0:
        precision = c.tp / (c.tp + c.fp)
    else:
        precision = 0.0
        undefined.add("precision")
    if c.tp + c.fn > 0:
        recall = c.tp / (c.tp + c.fn)
    else:
        recall = 0.0
        undefined.add("recall")
    if precision + recall > 0:
        f1 = 2.0 * precision * recall / (precision + recall)
    else:
        f1 = 0.0
        undefined.add("f1")
    return ConfusionMetrics(
        accuracy=accuracy,
        precision=precision,
        recall=recall,
        f1=f1,
        undefined=frozenset(undefined),
    )
