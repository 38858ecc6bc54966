"""Autocorrelation of a steady segment and the effective sample size.

Correlated samples carry less information than independent ones.  The
lag-k autocorrelation is estimated as

    rho_k = sum_{t=1..N-k} (x_t - mean)(x_{t+k} - mean) / ((N - k) s^2)

with s^2 the usual divisor-(N-1) sample variance, and the effective
sample size follows from the triangular-weighted sum of all lags:

    n_eff = N / (1 + 2 * sum_k ((N - k) / N) * rho_k)

Summing every lag is the defining form; because high-lag estimates are
pure noise, a "first_negative" truncation that stops in front of the
first negative lag is available and is usually what you want on real
records.  The result is clamped to [1, N]; the raw denominator is kept
so the clamp is visible.

Lag sums are evaluated directly for short segments and via FFT
correlation for long ones; both routes agree to float precision and the
direct sum is the reference.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SegmentTooShort, ZeroVariance

# Above this length the FFT route is used for the raw lag sums.
DIRECT_SUM_MAX = 4096


@dataclass(frozen=True)
class AcfEstimate:
    """Autocorrelation estimate of one segment.

    Attributes:
        rho: autocorrelations for lags 0..N-1; rho[0] is 1 by construction.
        n: segment length.
        mean: segment mean.
        variance: divisor-(N-1) sample variance used for normalization.
    """

    rho: np.ndarray
    n: int
    mean: float
    variance: float


def _raw_lag_sums_direct(centered: np.ndarray) -> np.ndarray:
    """sum_t z_t z_{t+k} for k = 0..N-1 by direct summation."""
    return np.correlate(centered, centered, mode="full")[len(centered) - 1:]


def _raw_lag_sums_fft(centered: np.ndarray) -> np.ndarray:
    """Same sums via zero-padded FFT correlation."""
    n = len(centered)
    size = 1
    while size < 2 * n:
        size *= 2
    spectrum = np.fft.rfft(centered, size)
    return np.fft.irfft(spectrum * np.conj(spectrum), size)[:n]


def acf(values: np.ndarray) -> AcfEstimate:
    """Estimate the autocorrelation function of a segment.

    Args:
        values: steady-segment samples, at least 4.

    Returns:
        AcfEstimate with lags 0..N-1.

    Raises:
        SegmentTooShort: fewer than 4 samples.
        ZeroVariance: all samples identical; correlation is undefined.
    """
    x = np.asarray(values, dtype=np.float64)
    n = len(x)
    if n < 4:
        raise SegmentTooShort(n, 4)

    mean = float(np.mean(x))
    centered = x - mean
    variance = float(np.dot(centered, centered) / (n - 1))
    if variance == 0.0:
        raise ZeroVariance(float(x[0]))

    if n <= DIRECT_SUM_MAX:
        raw = _raw_lag_sums_direct(centered)
    else:
        raw = _raw_lag_sums_fft(centered)

    lags = np.arange(n, dtype=np.float64)
    rho = raw / ((n - lags) * variance)
    rho[0] = 1.0
    return AcfEstimate(rho=rho, n=n, mean=mean, variance=variance)


@dataclass(frozen=True)
class EffectiveSampleSize:
    """Effective number of independent samples in a segment.

    Attributes:
        n_eff: N / denominator, clamped to [1, N].
        raw_denominator: the unclamped 1 + 2 * sum term.
        truncation_lag: largest lag included in the sum.
        clamped: True when the clamp changed the value.
        mode: "full" or "first_negative".
    """

    n_eff: float
    raw_denominator: float
    truncation_lag: int
    clamped: bool
    mode: str


def effective_sample_size(
    estimate: AcfEstimate,
    truncation: str = "full",
) -> EffectiveSampleSize:
    """Collapse an autocorrelation estimate into an effective sample size.

    Args:
        estimate: output of :func:`acf`.
        truncation: "full" sums lags 1..N-1; "first_negative" stops just
            before the first negative autocorrelation.

    Returns:
        EffectiveSampleSize; n_eff lies in [1, N].
    """
    if truncation not in ("full", "first_negative"):
        raise ValueError(f"unknown truncation mode {truncation!r}")

    n = estimate.n
    rho_tail = estimate.rho[1:]

    if truncation == "first_negative":
        negative = np.flatnonzero(rho_tail < 0.0)
        k_max = int(negative[0]) if negative.size else len(rho_tail)
    else:
        k_max = len(rho_tail)

    lags = np.arange(1, k_max + 1, dtype=np.float64)
    weights = (n - lags) / n
    denominator = 1.0 + 2.0 * float(np.dot(weights, rho_tail[:k_max]))

    if denominator <= 0.0:
        raw_n_eff = np.inf
    else:
        raw_n_eff = n / denominator

    n_eff = float(min(max(raw_n_eff, 1.0), float(n)))
    return EffectiveSampleSize(
        n_eff=n_eff,
        raw_denominator=denominator,
        truncation_lag=k_max,
        clamped=(n_eff != raw_n_eff),
        mode=truncation,
    )
