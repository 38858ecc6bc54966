"""Core data types shared by every stage of the analysis pipeline.

A :class:`TimeSeries` is an immutable pair of (times, values) arrays.
All detection logic is index based; the time axis is only consulted when
a cutoff has to be reported in physical units, so irregular sampling is
accepted as long as the stamps increase strictly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import (
    MismatchedLengths,
    NonFiniteSample,
    NonMonotonicTime,
    SeriesTooShort,
)

CANDIDATE_STRATEGIES = ("majority_vote", "last_level")
ACF_TRUNCATIONS = ("full", "first_negative")


@dataclass(frozen=True)
class TimeSeries:
    """A validated, immutable simulation record.

    Attributes:
        times: strictly increasing float64 array, read-only.
        values: float64 array of the monitored quantity, read-only.
    """

    times: np.ndarray
    values: np.ndarray

    def __len__(self) -> int:
        return len(self.values)

    @property
    def n(self) -> int:
        return len(self.values)

    def prefix(self, n: int) -> "TimeSeries":
        """Return a view of the first ``n`` samples as a new series."""
        if not 1 <= n <= len(self.values):
            raise SeriesTooShort(n, 1, context="prefix")
        return TimeSeries(times=self.times[:n], values=self.values[:n])

    def slice_from(self, start_index: int) -> "TimeSeries":
        """Return the suffix starting at 1-based ``start_index``."""
        if not 1 <= start_index <= len(self.values):
            raise SeriesTooShort(start_index, 1, context="slice start")
        return TimeSeries(
            times=self.times[start_index - 1:],
            values=self.values[start_index - 1:],
        )


def validate_series(
    values: Sequence[float],
    times: Optional[Sequence[float]] = None,
) -> TimeSeries:
    """Build a :class:`TimeSeries` from raw sequences.

    When ``times`` is omitted, unit-spaced stamps ``1..N`` are synthesized
    so downstream code can always rely on a time axis being present.

    Args:
        values: monitored samples, at least one.
        times: optional physical time stamps, strictly increasing.

    Returns:
        A TimeSeries whose arrays are read-only copies of the input.

    Raises:
        SeriesTooShort: on an empty input.
        MismatchedLengths: when times and values differ in length.
        NonFiniteSample: on NaN or infinity; the 1-based index is reported.
        NonMonotonicTime: when a stamp fails to increase; the 1-based index
            of the first offending stamp is reported.
    """
    vals = np.asarray(values, dtype=np.float64).copy()
    if vals.ndim != 1:
        vals = vals.reshape(-1)
    n = len(vals)
    if n < 1:
        raise SeriesTooShort(n, 1)

    bad = np.flatnonzero(~np.isfinite(vals))
    if bad.size:
        raise NonFiniteSample(int(bad[0]) + 1, what="value")

    if times is None:
        stamps = np.arange(1, n + 1, dtype=np.float64)
    else:
        stamps = np.asarray(times, dtype=np.float64).copy()
        if stamps.ndim != 1:
            stamps = stamps.reshape(-1)
        if len(stamps) != n:
            raise MismatchedLengths(n, len(stamps))
        bad = np.flatnonzero(~np.isfinite(stamps))
        if bad.size:
            raise NonFiniteSample(int(bad[0]) + 1, what="time stamp")
        steps = np.diff(stamps)
        bad = np.flatnonzero(steps <= 0)
        if bad.size:
            # report the stamp that failed to advance
            raise NonMonotonicTime(int(bad[0]) + 2)

    vals.flags.writeable = False
    stamps.flags.writeable = False
    return TimeSeries(times=stamps, values=vals)


@dataclass(frozen=True)
class AnalysisConfig:
    """Knobs for transient detection and the convergence verdict.

    Attributes:
        confidence: two-sided confidence level for the interval test,
            in (0, 1).
        tolerance: half-width threshold the corrected interval must beat,
            and the default spread threshold for candidate validation.
        min_filter_length: coarsest length the filter cascade may reach,
            at least 2.
        candidate_strategy: how per-level cutoff candidates are combined;
            "majority_vote" keeps the most persistent candidate across
            levels, "last_level" keeps the coarsest level's pick.
        acf_truncation: "full" sums every autocorrelation lag,
            "first_negative" stops in front of the first negative lag.
        trend_check_enabled: when False the drift gate is ignored by the
            verdict (its diagnostics are still reported).
        detection_threshold: optional separate spread threshold for
            candidate validation; defaults to ``tolerance``.
    """

    confidence: float = 0.95
    tolerance: float = 1e-3
    min_filter_length: int = 2
    candidate_strategy: str = "majority_vote"
    acf_truncation: str = "full"
    trend_check_enabled: bool = True
    detection_threshold: Optional[float] = None

    def __post_init__(self):
        if not 0.0 < self.confidence < 1.0:
            raise ValueError(f"confidence must lie in (0, 1), got {self.confidence}")
        if not self.tolerance > 0.0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.min_filter_length < 2:
            raise ValueError(
                f"min_filter_length must be at least 2, got {self.min_filter_length}"
            )
        if self.candidate_strategy not in CANDIDATE_STRATEGIES:
            raise ValueError(
                f"candidate_strategy must be one of {CANDIDATE_STRATEGIES}, "
                f"got {self.candidate_strategy!r}"
            )
        if self.acf_truncation not in ACF_TRUNCATIONS:
            raise ValueError(
                f"acf_truncation must be one of {ACF_TRUNCATIONS}, "
                f"got {self.acf_truncation!r}"
            )
        if self.detection_threshold is not None and not self.detection_threshold > 0.0:
            raise ValueError(
                f"detection_threshold must be positive, got {self.detection_threshold}"
            )

    @property
    def spread_threshold(self) -> float:
        """Threshold used to validate candidate minima."""
        if self.detection_threshold is not None:
            return self.detection_threshold
        return self.tolerance
