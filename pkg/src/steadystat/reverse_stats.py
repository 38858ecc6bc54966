"""Reversed cumulative statistics of a time series.

For a series x_1..x_N, entry i of the reversed cumulative mean is the
mean of the suffix x_i..x_N:

    rev_mean_i = (1 / (N - i + 1)) * sum_{j=i..N} x_j

and the matching error estimate is the standard error of that mean,

    rev_sem_i = s_i / sqrt(N - i + 1)

where s_i is the sample standard deviation of the suffix (divisor
N - i, so rev_sem is only defined for i <= N - 1).  Scanning rev_sem
from the left, the curve drops while noisy start-up samples leave the
suffix and rises again once shrinking sample counts dominate, so its
minima mark plausible truncation points.

Monitored quantities often sit on a large mean offset with tiny
fluctuations on top, which makes the textbook sum-of-squares shortcut
(sum x^2 - m * mean^2) useless in float64.  The implementation below
de-offsets the data and then runs a single backward pass that keeps a
running sum and a running sum of squared deviations, updating the
latter incrementally; partial sums are produced with cumulative-sum
array operations, which carry out the same additions in the same order
as an explicit loop.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import TimeSeries
from .errors import SeriesTooShort


@dataclass(frozen=True)
class RmseCurve:
    """Reversed cumulative mean and its standard error.

    Attributes:
        rev_mean: N entries; rev_mean[i-1] is the mean of suffix i..N,
            so the last entry equals the last sample.
        rev_sem: N-1 entries; rev_sem[i-1] is the standard error of
            rev_mean[i-1].  Undefined at the final sample, where no
            deviation can be estimated.
        source_length: N, the length of the series the curve came from.
    """

    rev_mean: np.ndarray
    rev_sem: np.ndarray
    source_length: int


def _reverse_stats_arrays(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Backward-pass suffix means and standard errors for a raw array."""
    n = len(values)
    # Working on offset-free data keeps the squared-deviation update well
    # conditioned even when the signal rides on a huge constant level.
    origin = values[-1]
    shifted = values.astype(np.float64) - origin

    y = shifted[::-1]
    counts = np.arange(1, n + 1, dtype=np.float64)
    sums = np.cumsum(y)
    means = sums / counts

    # Incremental update of the sum of squared deviations: adding sample y_k
    # to a suffix with mean mu_old (new mean mu_new) grows it by
    # (y_k - mu_old) * (y_k - mu_new).  Both factors share a sign, so the
    # running sum stays non-negative up to rounding.
    d_new = y[1:] - means[1:]
    d_old = y[1:] - means[:-1]
    terms = np.concatenate(([0.0], d_old * d_new))
    m2 = np.maximum(np.cumsum(terms), 0.0)

    rev_mean = means[::-1] + origin
    rev_mean[-1] = values[-1]

    m = counts[::-1][:-1]          # suffix sizes N, N-1, ..., 2
    rev_sem = np.sqrt(m2[::-1][:-1] / ((m - 1.0) * m))
    return rev_mean, rev_sem


def reverse_cumulative_stats(series: TimeSeries) -> RmseCurve:
    """Compute the reversed cumulative mean curve and its error curve.

    Args:
        series: validated series with at least 2 samples.

    Returns:
        RmseCurve with N suffix means and N-1 standard errors, computed
        in a single O(N) backward pass.

    Raises:
        SeriesTooShort: when the series has fewer than 2 samples.
    """
    n = len(series.values)
    if n < 2:
        raise SeriesTooShort(n, 2)
    rev_mean, rev_sem = _reverse_stats_arrays(series.values)
    return RmseCurve(rev_mean=rev_mean, rev_sem=rev_sem, source_length=n)
