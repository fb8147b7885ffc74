"""Trajectory-based drift detection for RL environments.

Episodes are compared as integer token sequences with a suite of edit
operation and time-warping measures; drift between two conditions is
decided with Welch's t-test over the resulting sample distributions.
"""

from .measures import (
    ALL_KINDS,
    MeasureKind,
    MeasureValue,
    compute_measure,
    suffix_measures,
)
from .stats import ConfusionCounts, SampleSummary, WelchResult, summarize, welch_t_test

__all__ = [
    "ALL_KINDS",
    "MeasureKind",
    "MeasureValue",
    "compute_measure",
    "suffix_measures",
    "ConfusionCounts",
    "SampleSummary",
    "WelchResult",
    "summarize",
    "welch_t_test",
]

__version__ = "0.1.0"
