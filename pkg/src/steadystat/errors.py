"""Exception types raised by the analysis pipeline.

All indices reported in error messages are 1-based, matching the
positions shown in reports and exported curve files.
"""

from __future__ import annotations

from typing import Optional


class AnalysisError(Exception):
    """Base class for all domain errors raised by this package."""


# ---------------------------------------------------------------------------
# Input validation
# ---------------------------------------------------------------------------

class MismatchedLengths(AnalysisError):
    """Value and time arrays have different lengths."""

    def __init__(self, n_values: int, n_times: int):
        self.n_values = n_values
        self.n_times = n_times
        super().__init__(
            f"got {n_values} values but {n_times} time stamps"
        )


class NonMonotonicTime(AnalysisError):
    """Time axis is not strictly increasing."""

    def __init__(self, index: int):
        # index is the 1-based position of the first offending stamp
        self.index = index
        super().__init__(f"time axis not strictly increasing at index {index}")


class NonFiniteSample(AnalysisError):
    """A value or time stamp is NaN or infinite."""

    def __init__(self, index: int, what: str = "value"):
        self.index = index
        self.what = what
        super().__init__(f"non-finite {what} at index {index}")


class SeriesTooShort(AnalysisError):
    """The series has too few samples for the requested operation."""

    def __init__(self, n: int, required: int, context: str = "series"):
        self.n = n
        self.required = required
        super().__init__(
            f"{context} has {n} samples but at least {required} are required"
        )


# ---------------------------------------------------------------------------
# Curve and filtering
# ---------------------------------------------------------------------------

class LevelTooShort(AnalysisError):
    """A filter level is too short to be reduced further."""

    def __init__(self, length: int):
        self.length = length
        super().__init__(f"cannot reduce a level of length {length}")


class CurveTooShort(AnalysisError):
    """An error curve has too few points for minima detection."""

    def __init__(self, length: int, required: int = 3):
        self.length = length
        self.required = required
        super().__init__(
            f"error curve has {length} points but at least {required} "
            "are needed to search for interior minima"
        )


# ---------------------------------------------------------------------------
# Statistics
# ---------------------------------------------------------------------------

class ZeroVariance(AnalysisError):
    """All samples in a segment are identical."""

    def __init__(self, value: float):
        self.value = value
        super().__init__(f"segment has zero variance (all samples equal {value!r})")


class SegmentTooShort(AnalysisError):
    """A segment has too few samples for interval estimation."""

    def __init__(self, n: int, required: int = 2):
        self.n = n
        self.required = required
        super().__init__(
            f"segment has {n} samples but at least {required} are required"
        )


class DomainError(AnalysisError):
    """An argument lies outside the mathematical domain of an operation."""


class DegenerateDof(AnalysisError):
    """Effective sample size leaves no degrees of freedom."""

    def __init__(self, n_eff: float):
        self.n_eff = n_eff
        super().__init__(
            f"effective sample size {n_eff:g} leaves no degrees of freedom; "
            "not converged - insufficient independent samples"
        )


# ---------------------------------------------------------------------------
# Signal synthesis
# ---------------------------------------------------------------------------

class InvalidSpec(AnalysisError):
    """A signal specification field is out of range."""


# ---------------------------------------------------------------------------
# File ingestion
# ---------------------------------------------------------------------------

class ParseError(AnalysisError):
    """A data file row could not be parsed."""

    def __init__(self, line: int, message: str):
        # line is the 1-based physical line number in the file
        self.line = line
        super().__init__(f"line {line}: {message}")


class MissingColumn(AnalysisError):
    """A requested column does not exist in the input file."""

    def __init__(self, column: str, available: Optional[list] = None):
        self.column = column
        self.available = available
        hint = f" (available: {', '.join(available)})" if available else ""
        super().__init__(f"column {column!r} not found{hint}")
