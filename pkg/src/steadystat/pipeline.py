"""End-to-end assessment: cut the transient, judge the remainder."""

from __future__ import annotations

import math
from typing import NamedTuple

from .core import AnalysisConfig, TimeSeries
from .convergence import ConvergenceReport, assess_segment
from .transient import MIN_DETECTION_SAMPLES, TransientReport, detect_transient


class AssessResult(NamedTuple):
    transient: TransientReport
    convergence: ConvergenceReport


def _trivial_transient(series: TimeSeries, config: AnalysisConfig) -> TransientReport:
    # Too short for detection: keep everything.
    return TransientReport(
        t_cut=float(math.floor(series.times[0])),
        cut_index=1,
        steady_fraction=1.0,
        strategy_used=config.candidate_strategy,
        candidates=[],
        level_selections=[],
    )


def assess(series: TimeSeries, config: AnalysisConfig) -> AssessResult:
    """Detect the transient, then assess convergence of the remainder.

    Series shorter than the detection minimum (8 samples) skip
    detection and are assessed whole.

    Args:
        series: validated series.
        config: analysis knobs.

    Returns:
        AssessResult(transient, convergence); the convergence verdict
        applies to the steady segment cut_index..N.
    """
    if len(series) >= MIN_DETECTION_SAMPLES:
        transient = detect_transient(series, config)
    else:
        transient = _trivial_transient(series, config)

    steady = series.slice_from(transient.cut_index)
    convergence = assess_segment(steady, config)
    return AssessResult(transient=transient, convergence=convergence)
