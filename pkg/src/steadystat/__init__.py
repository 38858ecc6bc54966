"""steadystat: transient detection and steady-state convergence assessment.

Typical use::

    from steadystat import AnalysisConfig, assess, validate_series

    series = validate_series(values, times)
    result = assess(series, AnalysisConfig(confidence=0.99, tolerance=1e-3))
    print(result.transient.t_cut, result.convergence.converged)
"""

from .core import AnalysisConfig, TimeSeries, validate_series
from .errors import (
    AnalysisError,
    CurveTooShort,
    DegenerateDof,
    DomainError,
    InvalidSpec,
    LevelTooShort,
    MismatchedLengths,
    MissingColumn,
    NonFiniteSample,
    NonMonotonicTime,
    ParseError,
    SegmentTooShort,
    SeriesTooShort,
    ZeroVariance,
)
from .reverse_stats import RmseCurve, reverse_cumulative_stats
from .fractional_filter import (
    FilterLevel,
    FilterPyramid,
    build_pyramid,
    filter_once,
)
from .transient import (
    CandidateMinimum,
    LevelSelection,
    TransientReport,
    detect_transient,
    find_local_minima,
    validate_candidates,
)
from .autocorr import AcfEstimate, EffectiveSampleSize, acf, effective_sample_size
from .convergence import (
    ConvergenceReport,
    TrendCheck,
    assess_segment,
    confidence_interval,
    t_quantile,
    trend_check,
)
from .pipeline import AssessResult, assess
from .synth import SignalSpec, generate, standard_normals
from .ingest import IngestResult, read_table
from .report import build_document, export_curves, render_text, to_json

__version__ = "0.1.0"

__all__ = [
    "AnalysisConfig",
    "TimeSeries",
    "validate_series",
    "AnalysisError",
    "CurveTooShort",
    "DegenerateDof",
    "DomainError",
    "InvalidSpec",
    "LevelTooShort",
    "MismatchedLengths",
    "MissingColumn",
    "NonFiniteSample",
    "NonMonotonicTime",
    "ParseError",
    "SegmentTooShort",
    "SeriesTooShort",
    "ZeroVariance",
    "RmseCurve",
    "reverse_cumulative_stats",
    "FilterLevel",
    "FilterPyramid",
    "build_pyramid",
    "filter_once",
    "CandidateMinimum",
    "LevelSelection",
    "TransientReport",
    "detect_transient",
    "find_local_minima",
    "validate_candidates",
    "AcfEstimate",
    "EffectiveSampleSize",
    "acf",
    "effective_sample_size",
    "ConvergenceReport",
    "TrendCheck",
    "assess_segment",
    "confidence_interval",
    "t_quantile",
    "trend_check",
    "AssessResult",
    "assess",
    "SignalSpec",
    "generate",
    "standard_normals",
    "IngestResult",
    "read_table",
    "build_document",
    "export_curves",
    "render_text",
    "to_json",
    "__version__",
]
