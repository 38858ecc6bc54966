"""Multiscale smoothing by area-preserving fractional binning.

Each pass shrinks a level of length h to

    h' = h / 2        (h even)
    h' = (h + 1) / 2  (h odd)

by treating the samples as unit-width cells laid side by side and
re-binning them into h' cells of width w = h / h'.  An output cell takes
the overlap-weighted average of every input cell it intersects, and the
output time stamps are the same weighted averages of the input stamps,
so a pass never invents values outside the input range and the level
mean is preserved exactly.  For even h the scheme collapses to plain
pairwise averaging; for odd h the middle cells are split fractionally,
e.g. [1, 2, 3] -> [4/3, 8/3].

Stacking passes until a floor length is reached yields a pyramid whose
level 0 is the untouched input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from .core import TimeSeries
from .errors import LevelTooShort, SeriesTooShort


@dataclass(frozen=True)
class FilterLevel:
    """One level of the smoothing pyramid.

    Attributes:
        index: depth in the pyramid, 0 for the raw input.
        times: overlap-averaged time stamps of this level.
        values: overlap-averaged samples of this level.
    """

    index: int
    times: np.ndarray
    values: np.ndarray

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class FilterPyramid:
    """All levels produced from one input series, finest first."""

    levels: List[FilterLevel]

    def __len__(self) -> int:
        return len(self.levels)

    @property
    def lengths(self) -> List[int]:
        return [len(lv) for lv in self.levels]


def _rebin(data: np.ndarray, h_out: int) -> np.ndarray:
    """Average unit-width cells into h_out equal fractional bins."""
    h = len(data)
    width = h / h_out
    # Piecewise-linear antiderivative of the cell step function, evaluated
    # at the fractional bin edges; bin averages are edge differences / width.
    cum = np.concatenate(([0.0], np.cumsum(data)))
    edges = np.arange(h_out + 1, dtype=np.float64) * h / h_out
    whole = np.minimum(edges.astype(np.int64), h)
    frac = edges - whole
    integral = cum[whole] + frac * data[np.minimum(whole, h - 1)]
    return np.diff(integral) / width


def filter_once(level: FilterLevel) -> FilterLevel:
    """Apply one fractional-binning pass to a level.

    Args:
        level: level of length h >= 2.

    Returns:
        The next level, of length h/2 (h even) or (h+1)/2 (h odd).

    Raises:
        LevelTooShort: when the level has fewer than 2 samples.
    """
    h = len(level)
    if h < 2:
        raise LevelTooShort(h)
    h_out = h // 2 if h % 2 == 0 else (h + 1) // 2
    return FilterLevel(
        index=level.index + 1,
        times=_rebin(level.times, h_out),
        values=_rebin(level.values, h_out),
    )


def build_pyramid(series: TimeSeries, min_filter_length: int = 2) -> FilterPyramid:
    """Stack filter passes until the floor length is reached.

    Level 0 reproduces the input exactly; each further level comes from
    one :func:`filter_once` pass, and passes stop once a level is no
    longer than max(min_filter_length, 2).

    Args:
        series: validated input series.
        min_filter_length: coarsest admissible level length.

    Returns:
        FilterPyramid with strictly decreasing level lengths.

    Raises:
        SeriesTooShort: when the input is shorter than the floor length.
    """
    floor = max(int(min_filter_length), 2)
    n = len(series)
    if n < floor:
        raise SeriesTooShort(n, floor)

    level = FilterLevel(index=0, times=series.times.copy(), values=series.values.copy())
    levels = [level]
    while len(levels[-1]) > floor:
        levels.append(filter_once(levels[-1]))
    return FilterPyramid(levels=levels)
