"""Deterministic synthetic signals for tests and benchmarks.

Reproducibility is part of the contract: a given (kind, seed, n) must
produce the same bytes on every run and platform.  Uniform draws come
from the PCG64 generator, whose stream is stable across platforms, and
normals are produced from them with the trigonometric Box-Muller
transform (no rejection step, so the draw count per sample is fixed):

    z0 = sqrt(-2 ln(1 - u1)) * cos(2 pi u2)
    z1 = sqrt(-2 ln(1 - u1)) * sin(2 pi u2)

Kinds:
    gaussian: mean + sd * noise.
    gaussian_with_transient: gaussian plus a decaying oscillation
        amplitude * sin(2 pi t / period) * (1 - t / transient_end)
        for t < transient_end; later samples are bitwise identical to
        the plain gaussian kind at the same seed.
    ar1: stationary first-order autoregression with marginal standard
        deviation sd and lag-1 coefficient phi.
    step: mean + transient_amplitude (exactly) until transient_end,
        then mean + sd * noise.
    ramp: gaussian plus a linear drift growing from 0 to
        transient_amplitude across the record.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.signal import lfilter

from .core import TimeSeries, validate_series
from .errors import InvalidSpec

KINDS = ("gaussian", "gaussian_with_transient", "ar1", "step", "ramp")


@dataclass(frozen=True)
class SignalSpec:
    """Recipe for one synthetic record.

    Attributes:
        kind: one of gaussian, gaussian_with_transient, ar1, step, ramp.
        n: number of samples.
        seed: generator seed.
        mean: steady level.
        sd: noise scale (marginal scale for ar1).
        dt: spacing of the time axis; stamps are dt, 2 dt, ..., n dt.
        transient_end: time at which start-up features vanish.
        transient_amplitude: oscillation / step / ramp magnitude.
        transient_period: oscillation period for gaussian_with_transient.
        phi: lag-1 coefficient for ar1, in [0, 1).
    """

    kind: str
    n: int
    seed: int = 0
    mean: float = 0.3
    sd: float = 0.0066
    dt: float = 1.0
    transient_end: float = 200.0
    transient_amplitude: float = 0.05
    transient_period: float = 40.0
    phi: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidSpec(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.n < 1:
            raise InvalidSpec(f"n must be at least 1, got {self.n}")
        if self.sd < 0.0:
            raise InvalidSpec(f"sd must be non-negative, got {self.sd}")
        if self.dt <= 0.0:
            raise InvalidSpec(f"dt must be positive, got {self.dt}")
        if not 0.0 <= self.phi < 1.0:
            raise InvalidSpec(f"phi must lie in [0, 1), got {self.phi}")
        if self.kind in ("gaussian_with_transient", "step") and self.transient_end <= 0.0:
            raise InvalidSpec(
                f"transient_end must be positive, got {self.transient_end}"
            )
        if self.kind == "gaussian_with_transient" and self.transient_period <= 0.0:
            raise InvalidSpec(
                f"transient_period must be positive, got {self.transient_period}"
            )


def standard_normals(n: int, seed: int) -> np.ndarray:
    """n standard normal draws from PCG64 uniforms via Box-Muller."""
    gen = np.random.Generator(np.random.PCG64(seed))
    pairs = (n + 1) // 2
    u1 = gen.random(pairs)
    u2 = gen.random(pairs)
    radius = np.sqrt(-2.0 * np.log1p(-u1))  # 1 - u1 is never 0
    angle = 2.0 * np.pi * u2
    z = np.empty(2 * pairs, dtype=np.float64)
    z[0::2] = radius * np.cos(angle)
    z[1::2] = radius * np.sin(angle)
    return z[:n]


def generate(spec: SignalSpec) -> TimeSeries:
    """Produce the series described by ``spec``.

    Returns:
        TimeSeries with stamps dt, 2 dt, ..., n dt.

    Raises:
        InvalidSpec: via SignalSpec validation.
    """
    n = spec.n
    times = np.arange(1, n + 1, dtype=np.float64) * spec.dt
    noise = standard_normals(n, spec.seed)

    if spec.kind == "gaussian":
        values = spec.mean + spec.sd * noise

    elif spec.kind == "gaussian_with_transient":
        values = spec.mean + spec.sd * noise
        early = times < spec.transient_end
        t_early = times[early]
        wave = np.sin(2.0 * np.pi * t_early / spec.transient_period)
        taper = 1.0 - t_early / spec.transient_end
        values[early] += spec.transient_amplitude * wave * taper

    elif spec.kind == "ar1":
        # Stationary start: innovations scaled so the marginal sd is sd.
        innovation_sd = spec.sd * np.sqrt(1.0 - spec.phi ** 2)
        driven = innovation_sd * noise
        driven[0] = spec.sd * noise[0]
        values = spec.mean + lfilter([1.0], [1.0, -spec.phi], driven)

    elif spec.kind == "step":
        values = spec.mean + spec.sd * noise
        plateau = times < spec.transient_end
        values[plateau] = spec.mean + spec.transient_amplitude

    else:  # ramp
        drift = (
            spec.transient_amplitude * (np.arange(n, dtype=np.float64) / max(n - 1, 1))
        )
        values = spec.mean + spec.sd * noise + drift

    return validate_series(values, times)
