"""Detection of the initial transient of a monitored series.

The detector scans the standard-error curve of the reversed cumulative
mean: start-up samples inflate every suffix that still contains them, so
the curve typically falls until the transient has left the suffix and
rises again once small sample counts dominate.  Its interior local
minima are cutoff candidates.

Noise produces spurious minima, so two safeguards are layered on top:

* a candidate is only kept when the smoothed signal actually moves
  around it, i.e. the spread of the three surrounding samples exceeds a
  threshold; and
* the search is repeated on every level of a smoothing pyramid, and the
  per-level picks are combined across levels.

Two combination strategies are available.  ``majority_vote`` (the
default) maps every level's pick back to the nearest original sample
and keeps the most frequent one, breaking ties toward the earliest
index; this keeps the most persistent minimum position across smoothing
scales and degrades gracefully on featureless input.  ``last_level``
simply trusts the coarsest level that still supports a minima search.

The cutoff time is floored to an integer second and then mapped to the
first original sample at or after it, so reports stay aligned with the
raw record.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np

from .core import AnalysisConfig, TimeSeries
from .errors import CurveTooShort, SeriesTooShort
from .fractional_filter import FilterLevel, build_pyramid
from .reverse_stats import RmseCurve, _reverse_stats_arrays

# A minima search needs three consecutive curve points, hence a level of
# at least MIN_DETECTABLE_LEVEL samples (the curve is one shorter).
MIN_DETECTABLE_LEVEL = 4

# Detection on fewer samples than this is meaningless; convergence
# assessment alone remains available for such series.
MIN_DETECTION_SAMPLES = 8


@dataclass(frozen=True)
class CandidateMinimum:
    """One local minimum of a level's error curve.

    Attributes:
        level_index: pyramid depth the candidate was found at.
        index_in_level: 1-based position inside that level.
        rmse_value: error-curve value at the candidate.
        local_spread: max minus min of the three smoothed samples
            centered on the candidate.
        validated: whether local_spread exceeded the spread threshold.
        mapped_time: time stamp of the candidate in level coordinates.
        selected: whether this candidate became the level's pick.
    """

    level_index: int
    index_in_level: int
    rmse_value: float
    local_spread: float
    validated: bool
    mapped_time: float
    selected: bool = False


@dataclass(frozen=True)
class LevelSelection:
    """The cutoff pick of a single pyramid level."""

    level_index: int
    level_length: int
    index_in_level: int
    t_min: float
    mapped_index: int
    fallback: bool  # True when no validated minimum existed


@dataclass(frozen=True)
class TransientReport:
    """Outcome of transient detection.

    Attributes:
        t_cut: detected end of the transient, floored to a whole time unit.
        cut_index: 1-based index of the first sample at or after t_cut;
            the steady segment is cut_index..N.
        steady_fraction: fraction of samples kept, (N - cut_index + 1) / N.
        strategy_used: which combination strategy produced t_cut.
        candidates: every local minimum examined, grouped by level.
        level_selections: the per-level picks the strategy combined.
    """

    t_cut: float
    cut_index: int
    steady_fraction: float
    strategy_used: str
    candidates: List[CandidateMinimum] = field(default_factory=list)
    level_selections: List[LevelSelection] = field(default_factory=list)


# ---------------------------------------------------------------------------
# Minima search and validation
# ---------------------------------------------------------------------------

def _interior_minima(sem: np.ndarray) -> List[int]:
    """1-based interior local minima of a raw error-curve array."""
    m = len(sem)
    if m < 3:
        raise CurveTooShort(m)
    inner = np.arange(1, m - 1)
    hit = (sem[inner] < sem[inner - 1]) & (sem[inner] <= sem[inner + 1])
    return [int(j) + 1 for j in inner[hit]]


def find_local_minima(curve: RmseCurve) -> List[int]:
    """Interior local minima of an error curve.

    A 1-based position i (with both neighbours on the curve) qualifies
    when the curve strictly drops into it from the left and does not
    drop further to the right:

        rev_sem[i] < rev_sem[i-1]  and  rev_sem[i] <= rev_sem[i+1]

    so the left edge of a flat plateau is kept and the rest discarded.

    Raises:
        CurveTooShort: when the curve has fewer than 3 points.
    """
    return _interior_minima(curve.rev_sem)


def validate_candidates(
    minima: Sequence[int],
    level_values: np.ndarray,
    threshold: float,
) -> List[int]:
    """Keep minima around which the smoothed signal genuinely moves.

    For a candidate at 1-based position i the spread of the smoothed
    samples i-1..i+1 must strictly exceed ``threshold``; candidates in
    flat-noise regions are dropped.

    Args:
        minima: 1-based candidate positions, interior to level_values.
        level_values: smoothed samples of the level the minima came from.
        threshold: minimum spread for a candidate to survive.

    Returns:
        The surviving positions, in the original order.
    """
    kept = []
    for i in minima:
        window = level_values[i - 2:i + 1]
        if float(np.max(window) - np.min(window)) > threshold:
            kept.append(i)
    return kept


def _local_spread(level_values: np.ndarray, i: int) -> float:
    window = level_values[i - 2:i + 1]
    return float(np.max(window) - np.min(window))


# ---------------------------------------------------------------------------
# Per-level selection and cross-level combination
# ---------------------------------------------------------------------------

def _select_on_level(
    level: FilterLevel,
    threshold: float,
) -> tuple[LevelSelection, List[CandidateMinimum]]:
    """Pick the cutoff candidate of one pyramid level.

    Among validated minima the one with the smallest error-curve value
    wins.  When nothing survives validation the curve's global minimum
    is taken instead (earliest position on ties), flagged as a fallback.
    """
    values = level.values
    _, rev_sem = _reverse_stats_arrays(values)

    minima = _interior_minima(rev_sem)
    validated = set(validate_candidates(minima, values, threshold))

    if validated:
        best = min(validated, key=lambda i: (rev_sem[i - 1], i))
        fallback = False
    else:
        best = int(np.argmin(rev_sem)) + 1  # argmin keeps the earliest tie
        fallback = True

    candidates = [
        CandidateMinimum(
            level_index=level.index,
            index_in_level=i,
            rmse_value=float(rev_sem[i - 1]),
            local_spread=_local_spread(values, i),
            validated=i in validated,
            mapped_time=float(level.times[i - 1]),
            selected=(not fallback and i == best),
        )
        for i in minima
    ]

    selection = LevelSelection(
        level_index=level.index,
        level_length=len(values),
        index_in_level=best,
        t_min=float(level.times[best - 1]),
        mapped_index=0,  # filled in by the caller, needs the original axis
        fallback=fallback,
    )
    return selection, candidates


def _nearest_index(times: np.ndarray, t: float) -> int:
    """1-based original index closest in time to t, earliest on ties."""
    return int(np.argmin(np.abs(times - t))) + 1


def detect_transient(series: TimeSeries, config: AnalysisConfig) -> TransientReport:
    """Locate the end of the initial transient of a series.

    Builds the smoothing pyramid, picks a cutoff candidate on every
    level long enough to support a minima search, and combines the picks
    according to ``config.candidate_strategy``.  The winning time stamp
    is floored to a whole time unit and mapped to the first original
    sample at or after it.

    Args:
        series: validated series of at least 8 samples.
        config: detection knobs; the spread threshold defaults to
            ``config.tolerance`` unless ``detection_threshold`` is set.

    Returns:
        TransientReport; its steady segment is never empty.

    Raises:
        SeriesTooShort: when the series has fewer than 8 samples.
    """
    n = len(series)
    if n < MIN_DETECTION_SAMPLES:
        raise SeriesTooShort(n, MIN_DETECTION_SAMPLES, context="detection input")

    threshold = config.spread_threshold
    pyramid = build_pyramid(series, config.min_filter_length)

    selections: List[LevelSelection] = []
    candidates: List[CandidateMinimum] = []
    for level in pyramid.levels:
        if len(level) < MIN_DETECTABLE_LEVEL:
            continue
        selection, found = _select_on_level(level, threshold)
        mapped = _nearest_index(series.times, selection.t_min)
        selections.append(
            LevelSelection(
                level_index=selection.level_index,
                level_length=selection.level_length,
                index_in_level=selection.index_in_level,
                t_min=selection.t_min,
                mapped_index=mapped,
                fallback=selection.fallback,
            )
        )
        candidates.extend(found)

    if config.candidate_strategy == "last_level":
        t_min = selections[-1].t_min
    else:
        counts = Counter(sel.mapped_index for sel in selections)
        top = max(counts.values())
        winner = min(idx for idx, c in counts.items() if c == top)
        t_min = float(series.times[winner - 1])

    t_cut = float(math.floor(t_min))
    cut_index = int(np.searchsorted(series.times, t_cut, side="left")) + 1
    cut_index = min(cut_index, n)

    return TransientReport(
        t_cut=t_cut,
        cut_index=cut_index,
        steady_fraction=(n - cut_index + 1) / n,
        strategy_used=config.candidate_strategy,
        candidates=candidates,
        level_selections=selections,
    )
