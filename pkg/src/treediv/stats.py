"""Run-summary statistics and the rank-sum test used to compare strategies."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats as _sps

__all__ = ["SampleSummary", "summarize", "mann_whitney_u"]


@dataclass(frozen=True)
class SampleSummary:
    count: int
    mean: float
    std: float  # sample standard deviation, divisor count-1


def summarize(xs) -> SampleSummary:
    """Mean and sample standard deviation; a single observation has std 0."""
    arr = np.asarray(list(xs), dtype=np.float64)
    if arr.size == 0:
        raise ValueError("cannot summarize an empty sample")
    std = float(arr.std(ddof=1)) if arr.size > 1 else 0.0
    return SampleSummary(count=int(arr.size), mean=float(arr.mean()), std=std)


def mann_whitney_u(xs, ys, alternative: str = "two-sided") -> tuple[float, float]:
    """Wilcoxon-Mann-Whitney rank-sum test of two independent samples.

    Returns (U, p) where U counts pairs (x, y) with x > y, ties at half
    weight, and p comes from the normal approximation with midranks,
    tie-corrected variance and continuity correction. alternative "less"
    asks whether xs tends lower than ys, "greater" the reverse.
    """
    if alternative not in ("less", "greater", "two-sided"):
        raise ValueError(f"unknown alternative {alternative!r}")
    a = np.asarray(list(xs), dtype=np.float64)
    b = np.asarray(list(ys), dtype=np.float64)
    if a.size == 0 or b.size == 0:
        raise ValueError("both samples must be non-empty")
    combined = np.concatenate([a, b])
    if np.ptp(combined) == 0.0:
        # every observation tied: no evidence either way
        return a.size * b.size / 2.0, 1.0
    res = _sps.mannwhitneyu(a, b, alternative=alternative, method="asymptotic")
    return float(res.statistic), min(1.0, float(res.pvalue))
