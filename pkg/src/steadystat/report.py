"""Stable report document shared by the CLI and the HTTP service.

The JSON document is the machine interface: field order is fixed, no
timestamps or environment data are embedded, and floats are emitted
with full round-trip precision, so re-running the same analysis yields
byte-identical output.
"""

from __future__ import annotations

import csv
import json
import os
from typing import Any, Dict, Optional

from .core import AnalysisConfig, TimeSeries
from .pipeline import AssessResult
from .reverse_stats import _reverse_stats_arrays
from .fractional_filter import build_pyramid

SCHEMA_VERSION = "1"

EXIT_CONVERGED = 0
EXIT_NOT_CONVERGED = 1
EXIT_ERROR = 2


def status_exit_code(status: str) -> int:
    """Process exit code for a verdict status."""
    return EXIT_CONVERGED if status == "converged" else EXIT_NOT_CONVERGED


def _config_section(config: AnalysisConfig) -> Dict[str, Any]:
    return {
        "confidence": config.confidence,
        "tolerance": config.tolerance,
        "min_filter_length": config.min_filter_length,
        "candidate_strategy": config.candidate_strategy,
        "acf_truncation": config.acf_truncation,
        "trend_check_enabled": config.trend_check_enabled,
        "detection_threshold": config.detection_threshold,
    }


def build_document(
    result: AssessResult,
    config: AnalysisConfig,
    samples: int,
    source: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    """Assemble the analysis report document.

    Args:
        result: output of :func:`steadystat.pipeline.assess`.
        config: the configuration the analysis ran with.
        samples: number of samples analyzed.
        source: optional provenance block (path, columns, rows).

    Returns:
        A JSON-serializable dict with deterministic field order.
    """
    tr = result.transient
    cv = result.convergence

    doc: Dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "status": cv.status,
        "input": {
            "samples": samples,
            **(source or {}),
        },
        "config": _config_section(config),
        "transient": {
            "t_cut": tr.t_cut,
            "cut_index": tr.cut_index,
            "steady_fraction": tr.steady_fraction,
            "strategy_used": tr.strategy_used,
            "level_selections": [
                {
                    "level_index": sel.level_index,
                    "level_length": sel.level_length,
                    "index_in_level": sel.index_in_level,
                    "t_min": sel.t_min,
                    "mapped_index": sel.mapped_index,
                    "fallback": sel.fallback,
                }
                for sel in tr.level_selections
            ],
            "candidates": [
                {
                    "level_index": cand.level_index,
                    "index_in_level": cand.index_in_level,
                    "rmse_value": cand.rmse_value,
                    "local_spread": cand.local_spread,
                    "validated": cand.validated,
                    "mapped_time": cand.mapped_time,
                    "selected": cand.selected,
                }
                for cand in tr.candidates
            ],
        },
        "convergence": {
            "mean": cv.mean,
            "sample_sd": cv.sample_sd,
            "n": cv.n,
            "n_eff": cv.n_eff,
            "sem": cv.sem,
            "sem_eff": cv.sem_eff,
            "t_value": cv.t_value,
            "ci_half_width": cv.ci_half_width,
            "ci_half_width_plain": cv.ci_half_width_plain,
            "slope": cv.slope,
            "slope_per_time": cv.slope_per_time,
            "accumulated_drift": cv.accumulated_drift,
            "ci_ok": cv.ci_ok,
            "trend_ok": cv.trend_ok,
            "converged": cv.converged,
            "detail": cv.detail,
        },
    }
    return doc


def to_json(doc: Dict[str, Any]) -> str:
    """Serialize a document deterministically (fixed order, LF ending)."""
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def render_text(doc: Dict[str, Any]) -> str:
    """Human-readable one-screen summary of a document."""
    tr = doc["transient"]
    cv = doc["convergence"]

    def fmt(x, digits=6):
        if x is None:
            return "n/a"
        if isinstance(x, bool):
            return "yes" if x else "no"
        if isinstance(x, float):
            return f"{x:.{digits}g}"
        return str(x)

    lines = [
        f"status              {doc['status']}",
        f"samples             {doc['input']['samples']}",
        "",
        "transient",
        f"  t_cut             {fmt(tr['t_cut'])}",
        f"  cut_index         {tr['cut_index']}",
        f"  steady_fraction   {fmt(tr['steady_fraction'], 4)}",
        f"  strategy          {tr['strategy_used']}",
        "",
        "steady segment",
        f"  mean              {fmt(cv['mean'], 8)}",
        f"  sample_sd         {fmt(cv['sample_sd'], 6)}",
        f"  n                 {cv['n']}",
        f"  n_eff             {fmt(cv['n_eff'], 6)}",
        f"  ci_half_width     {fmt(cv['ci_half_width'], 6)}",
        f"  ci_half_width_raw {fmt(cv['ci_half_width_plain'], 6)}",
        f"  accumulated_drift {fmt(cv['accumulated_drift'], 6)}",
        f"  ci_ok             {fmt(cv['ci_ok'])}",
        f"  trend_ok          {fmt(cv['trend_ok'])}",
        f"  converged         {fmt(cv['converged'])}",
    ]
    if cv.get("detail"):
        lines.append(f"  note              {cv['detail']}")
    return "\n".join(lines) + "\n"


def export_curves(
    series: TimeSeries,
    config: AnalysisConfig,
    result: AssessResult,
    out_dir: str,
) -> None:
    """Write per-level error curves and the candidate table as CSV.

    Produces ``level_<k>.csv`` files (position, time, value, rev_mean,
    rev_sem) for every pyramid level plus ``candidates.csv`` and
    ``selections.csv`` summarizing the detection.
    """
    os.makedirs(out_dir, exist_ok=True)

    if len(series) >= 2:
        pyramid = build_pyramid(series, config.min_filter_length)
        for level in pyramid.levels:
            rev_mean, rev_sem = _reverse_stats_arrays(level.values)
            path = os.path.join(out_dir, f"level_{level.index}.csv")
            with open(path, "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(["position", "time", "value", "rev_mean", "rev_sem"])
                for i in range(len(level)):
                    sem = repr(float(rev_sem[i])) if i < len(rev_sem) else ""
                    writer.writerow(
                        [
                            i + 1,
                            repr(float(level.times[i])),
                            repr(float(level.values[i])),
                            repr(float(rev_mean[i])),
                            sem,
                        ]
                    )

    with open(
        os.path.join(out_dir, "candidates.csv"), "w", newline="", encoding="utf-8"
    ) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            [
                "level_index",
                "index_in_level",
                "mapped_time",
                "rmse_value",
                "local_spread",
                "validated",
                "selected",
            ]
        )
        for cand in result.transient.candidates:
            writer.writerow(
                [
                    cand.level_index,
                    cand.index_in_level,
                    repr(cand.mapped_time),
                    repr(cand.rmse_value),
                    repr(cand.local_spread),
                    cand.validated,
                    cand.selected,
                ]
            )

    with open(
        os.path.join(out_dir, "selections.csv"), "w", newline="", encoding="utf-8"
    ) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            [
                "level_index",
                "level_length",
                "index_in_level",
                "t_min",
                "mapped_index",
                "fallback",
            ]
        )
        for sel in result.transient.level_selections:
            writer.writerow(
                [
                    sel.level_index,
                    sel.level_length,
                    sel.index_in_level,
                    repr(sel.t_min),
                    sel.mapped_index,
                    sel.fallback,
                ]
            )
