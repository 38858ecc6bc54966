"""Convergence verdict for the steady segment of a series.

Two independent gates must agree before a mean is declared converged:

* an autocorrelation-corrected Student-t confidence interval whose
  half-width must fall below the tolerance, and
* a drift gate, requiring the accumulated least-squares drift over the
  segment, n * |slope per sample|, to stay within the same tolerance.

The interval correction replaces the raw sample count with the
effective sample size, which also shrinks the degrees of freedom; the
t quantile therefore has to accept non-integer degrees of freedom.  The
uncorrected interval is always reported next to the corrected one so
the cost of correlation stays visible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy import stats as _scipy_stats

from .core import AnalysisConfig, TimeSeries
from .errors import DegenerateDof, DomainError, SegmentTooShort, ZeroVariance
from .autocorr import acf, effective_sample_size

STATUS_CONVERGED = "converged"
STATUS_DRIFTING = "drifting"
STATUS_NOT_CONVERGED = "not_converged"
STATUS_INSUFFICIENT = "insufficient_data"


def t_quantile(q: float, dof: float) -> float:
    """Inverse CDF of Student's t distribution.

    Degrees of freedom may be fractional, as produced by effective
    sample sizes.

    Args:
        q: probability in (0, 1).
        dof: degrees of freedom, > 0.

    Returns:
        The value whose CDF equals q.

    Raises:
        DomainError: q outside (0, 1) or dof <= 0.
    """
    if not 0.0 < q < 1.0:
        raise DomainError(f"quantile probability must lie in (0, 1), got {q}")
    if not dof > 0.0:
        raise DomainError(f"degrees of freedom must be positive, got {dof}")
    return float(_scipy_stats.t.ppf(q, dof))


def _segment_values(segment: Union[TimeSeries, np.ndarray]) -> np.ndarray:
    if isinstance(segment, TimeSeries):
        return segment.values
    return np.asarray(segment, dtype=np.float64)


def confidence_interval(
    segment: Union[TimeSeries, np.ndarray],
    confidence: float,
    n_eff: Optional[float] = None,
) -> tuple[float, float]:
    """Two-sided confidence interval of a segment mean.

    Without ``n_eff`` this is the textbook interval with n - 1 degrees
    of freedom.  With ``n_eff`` both the standard error and the degrees
    of freedom are based on the effective sample size instead.

    Args:
        segment: steady-segment samples, at least 2.
        confidence: two-sided confidence level in (0, 1).
        n_eff: optional effective sample size, must satisfy
            1 < n_eff <= n.

    Returns:
        (mean, half_width).

    Raises:
        SegmentTooShort: fewer than 2 samples.
        DomainError: confidence outside (0, 1), or n_eff > n.
        DegenerateDof: n_eff <= 1 leaves no degrees of freedom.
    """
    x = _segment_values(segment)
    n = len(x)
    if n < 2:
        raise SegmentTooShort(n)
    if not 0.0 < confidence < 1.0:
        raise DomainError(f"confidence must lie in (0, 1), got {confidence}")

    mean = float(np.mean(x))
    sd = float(np.std(x, ddof=1))
    q = 1.0 - (1.0 - confidence) / 2.0

    if n_eff is None:
        half_width = t_quantile(q, n - 1) * sd / math.sqrt(n)
    else:
        if n_eff > n:
            raise DomainError(
                f"effective sample size {n_eff:g} exceeds segment length {n}"
            )
        if n_eff <= 1.0:
            raise DegenerateDof(n_eff)
        half_width = t_quantile(q, n_eff - 1.0) * sd / math.sqrt(n_eff)
    return mean, half_width


@dataclass(frozen=True)
class TrendCheck:
    """Outcome of the drift gate.

    Attributes:
        slope: least-squares slope of value against sample index 1..n.
        accumulated_drift: n * |slope|, the drift across the segment.
        passed: accumulated_drift <= tolerance (boundary passes).
        slope_per_time: diagnostic slope against physical time, when a
            time axis was available.
    """

    slope: float
    accumulated_drift: float
    passed: bool
    slope_per_time: Optional[float] = None


def _ols_slope(y: np.ndarray, x: np.ndarray) -> float:
    """Closed-form least-squares slope of y against x."""
    xc = x - np.mean(x)
    yc = y - np.mean(y)
    return float(np.dot(xc, yc) / np.dot(xc, xc))


def trend_check(
    segment: Union[TimeSeries, np.ndarray],
    tolerance: float,
) -> TrendCheck:
    """Check that the segment's residual drift stays within tolerance.

    The slope is regressed against the sample index so the gate is
    insensitive to the sampling cadence; with a time axis present the
    per-time slope is reported as a diagnostic only.

    Args:
        segment: steady-segment samples, at least 2.
        tolerance: largest admissible accumulated drift, > 0.

    Raises:
        SegmentTooShort: fewer than 2 samples.
        DomainError: non-positive tolerance.
    """
    x = _segment_values(segment)
    n = len(x)
    if n < 2:
        raise SegmentTooShort(n)
    if not tolerance > 0.0:
        raise DomainError(f"tolerance must be positive, got {tolerance}")

    index = np.arange(1, n + 1, dtype=np.float64)
    slope = _ols_slope(x, index)
    drift = n * abs(slope)

    slope_per_time = None
    if isinstance(segment, TimeSeries):
        slope_per_time = _ols_slope(segment.values, segment.times)

    return TrendCheck(
        slope=slope,
        accumulated_drift=drift,
        passed=drift <= tolerance,
        slope_per_time=slope_per_time,
    )


@dataclass(frozen=True)
class ConvergenceReport:
    """Everything the verdict rests on, for one steady segment.

    Attributes:
        mean: steady-segment mean.
        sample_sd: divisor-(n-1) standard deviation.
        n: steady-segment length.
        n_eff: effective sample size, None when not computable.
        sem: plain standard error sd / sqrt(n).
        sem_eff: corrected standard error sd / sqrt(n_eff).
        t_value: t quantile at the corrected degrees of freedom.
        ci_half_width: corrected interval half-width.
        ci_half_width_plain: uncorrected interval half-width.
        slope: per-index drift slope (None when not computable).
        slope_per_time: per-time drift slope diagnostic.
        accumulated_drift: n * |slope|.
        ci_ok: corrected half-width < tolerance.
        trend_ok: accumulated drift <= tolerance.
        converged: ci_ok and (trend_ok or the gate is disabled).
        status: one of converged / drifting / not_converged /
            insufficient_data.
        detail: optional human-readable note.
    """

    mean: float
    sample_sd: Optional[float]
    n: int
    n_eff: Optional[float]
    sem: Optional[float]
    sem_eff: Optional[float]
    t_value: Optional[float]
    ci_half_width: Optional[float]
    ci_half_width_plain: Optional[float]
    slope: Optional[float]
    slope_per_time: Optional[float]
    accumulated_drift: Optional[float]
    ci_ok: bool
    trend_ok: bool
    converged: bool
    status: str
    detail: Optional[str] = None


def _zero_variance_report(x: np.ndarray, config: AnalysisConfig) -> ConvergenceReport:
    # A constant segment is converged by definition: zero interval width,
    # zero drift.
    n = len(x)
    return ConvergenceReport(
        mean=float(x[0]),
        sample_sd=0.0,
        n=n,
        n_eff=float(n),
        sem=0.0,
        sem_eff=0.0,
        t_value=None,
        ci_half_width=0.0,
        ci_half_width_plain=0.0,
        slope=0.0,
        slope_per_time=0.0,
        accumulated_drift=0.0,
        ci_ok=True,
        trend_ok=True,
        converged=True,
        status=STATUS_CONVERGED,
        detail="zero-variance segment",
    )


def _insufficient_report(x: np.ndarray, detail: str) -> ConvergenceReport:
    n = len(x)
    sd = float(np.std(x, ddof=1)) if n >= 2 else None
    sem = sd / math.sqrt(n) if sd is not None else None
    return ConvergenceReport(
        mean=float(np.mean(x)),
        sample_sd=sd,
        n=n,
        n_eff=None,
        sem=sem,
        sem_eff=None,
        t_value=None,
        ci_half_width=None,
        ci_half_width_plain=None,
        slope=None,
        slope_per_time=None,
        accumulated_drift=None,
        ci_ok=False,
        trend_ok=False,
        converged=False,
        status=STATUS_INSUFFICIENT,
        detail=detail,
    )


def assess_segment(segment: TimeSeries, config: AnalysisConfig) -> ConvergenceReport:
    """Run both gates on a steady segment and combine the verdict.

    Zero-variance segments short-circuit to converged.  Segments too
    short for an autocorrelation estimate (fewer than 4 samples) come
    back as insufficient_data rather than raising, so callers watching a
    growing record can keep polling.
    """
    x = segment.values
    n = len(x)

    if n < 2:
        return _insufficient_report(x, "need at least 2 samples")
    if float(np.std(x, ddof=1)) == 0.0:
        return _zero_variance_report(x, config)
    if n < 4:
        return _insufficient_report(
            x, "need at least 4 samples for the correlation correction"
        )

    estimate = acf(x)
    ess = effective_sample_size(estimate, config.acf_truncation)

    q = 1.0 - (1.0 - config.confidence) / 2.0
    sd = math.sqrt(estimate.variance)
    sem = sd / math.sqrt(n)
    mean_plain, hw_plain = confidence_interval(segment, config.confidence)

    trend = trend_check(segment, config.tolerance)

    try:
        mean, half_width = confidence_interval(
            segment, config.confidence, n_eff=ess.n_eff
        )
    except DegenerateDof:
        return ConvergenceReport(
            mean=mean_plain,
            sample_sd=sd,
            n=n,
            n_eff=ess.n_eff,
            sem=sem,
            sem_eff=sd,
            t_value=None,
            ci_half_width=None,
            ci_half_width_plain=hw_plain,
            slope=trend.slope,
            slope_per_time=trend.slope_per_time,
            accumulated_drift=trend.accumulated_drift,
            ci_ok=False,
            trend_ok=trend.passed,
            converged=False,
            status=STATUS_NOT_CONVERGED,
            detail="insufficient independent samples",
        )

    ci_ok = half_width < config.tolerance
    converged = ci_ok and (trend.passed or not config.trend_check_enabled)

    if converged:
        status = STATUS_CONVERGED
    elif ci_ok and config.trend_check_enabled and not trend.passed:
        status = STATUS_DRIFTING
    else:
        status = STATUS_NOT_CONVERGED

    return ConvergenceReport(
        mean=mean,
        sample_sd=sd,
        n=n,
        n_eff=ess.n_eff,
        sem=sem,
        sem_eff=sd / math.sqrt(ess.n_eff),
        t_value=t_quantile(q, ess.n_eff - 1.0),
        ci_half_width=half_width,
        ci_half_width_plain=hw_plain,
        slope=trend.slope,
        slope_per_time=trend.slope_per_time,
        accumulated_drift=trend.accumulated_drift,
        ci_ok=ci_ok,
        trend_ok=trend.passed,
        converged=converged,
        status=status,
        detail=None,
    )
