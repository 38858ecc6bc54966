"""Command-line front end.

Four subcommands:

* ``analyze``  -- one-shot verdict on a recorded series.
* ``watch``    -- poll a growing file and stop a run as soon as the
  steady mean is trustworthy.
* ``generate`` -- deterministic synthetic fixtures as CSV.
* ``serve``    -- run the HTTP service that exposes the same analysis.

``analyze`` can also delegate the computation to a running service via
``--server``; the printed document is identical either way.

Exit codes: 0 converged, 1 not converged (or watch timed out), 2 usage
or data error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any, Dict, List, Optional, Union

from .core import ACF_TRUNCATIONS, CANDIDATE_STRATEGIES, AnalysisConfig
from .errors import AnalysisError
from .ingest import IngestResult, read_table
from .pipeline import assess
from .report import (
    EXIT_CONVERGED,
    EXIT_ERROR,
    EXIT_NOT_CONVERGED,
    build_document,
    export_curves,
    render_text,
    status_exit_code,
    to_json,
)
from .synth import KINDS, SignalSpec, generate

ColumnRef = Union[None, str, int]


# ----------------------------------------------------------------------
# argument plumbing
# ----------------------------------------------------------------------

def _column(text: str) -> ColumnRef:
    """Interpret a column flag as a 1-based position or a header name."""
    try:
        return int(text)
    except ValueError:
        return text


def _header_flag(text: str) -> Optional[bool]:
    mapping = {"auto": None, "yes": True, "no": False}
    if text not in mapping:
        raise argparse.ArgumentTypeError("expected auto, yes or no")
    return mapping[text]


def _add_ingest_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("input parsing")
    group.add_argument(
        "--time-col",
        type=_column,
        default=None,
        metavar="COL",
        help="time column, header name or 1-based position "
        "(default: first of two columns, or synthesized stamps 1..N)",
    )
    group.add_argument(
        "--value-col",
        type=_column,
        default=None,
        metavar="COL",
        help="value column, header name or 1-based position "
        "(required for files with three or more columns)",
    )
    group.add_argument(
        "--delimiter",
        choices=("auto", "comma", "whitespace"),
        default="auto",
        help="field separator (default: auto-detect from the first data row)",
    )
    group.add_argument(
        "--header",
        type=_header_flag,
        default=None,
        metavar="{auto,yes,no}",
        help="whether the first data row is a header (default: auto)",
    )


def _add_analysis_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("analysis")
    group.add_argument(
        "--confidence",
        type=float,
        default=0.95,
        help="two-sided confidence level (default: 0.95)",
    )
    group.add_argument(
        "--tolerance",
        type=float,
        required=True,
        help="largest acceptable half width of the corrected interval",
    )
    group.add_argument(
        "--strategy",
        choices=CANDIDATE_STRATEGIES,
        default="majority_vote",
        help="how per-level cutoff candidates are combined (default: majority_vote)",
    )
    group.add_argument(
        "--acf-truncation",
        choices=ACF_TRUNCATIONS,
        default="full",
        help="autocorrelation summation rule for the effective sample "
        "size (default: full)",
    )
    group.add_argument(
        "--no-trend-check",
        action="store_true",
        help="ignore the drift gate in the verdict",
    )
    group.add_argument(
        "--min-filter-length",
        type=int,
        default=2,
        help="coarsest length the filter cascade may reach (default: 2)",
    )
    group.add_argument(
        "--detection-threshold",
        type=float,
        default=None,
        help="spread threshold for validating candidate minima "
        "(default: the tolerance)",
    )


def _add_format_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=("json", "text"),
        default="json",
        help="output format (default: json)",
    )


def _config_from_args(args: argparse.Namespace) -> AnalysisConfig:
    return AnalysisConfig(
        confidence=args.confidence,
        tolerance=args.tolerance,
        min_filter_length=args.min_filter_length,
        candidate_strategy=args.strategy,
        acf_truncation=args.acf_truncation,
        trend_check_enabled=not args.no_trend_check,
        detection_threshold=args.detection_threshold,
    )


def _ingest(args: argparse.Namespace) -> IngestResult:
    return read_table(
        args.path,
        time_col=args.time_col,
        value_col=args.value_col,
        delimiter=args.delimiter,
        header=args.header,
    )


def _source_block(args: argparse.Namespace, res: IngestResult) -> Dict[str, Any]:
    return {
        "path": args.path,
        "time_column": res.time_column,
        "value_column": res.value_column,
    }


# ----------------------------------------------------------------------
# analyze
# ----------------------------------------------------------------------

def _local_document(args: argparse.Namespace) -> Dict[str, Any]:
    config = _config_from_args(args)
    res = _ingest(args)
    result = assess(res.series, config)
    doc = build_document(
        result, config, samples=len(res.series), source=_source_block(args, res)
    )
    if getattr(args, "export_curves", None):
        export_curves(res.series, config, result, args.export_curves)
    return doc


def _remote_document(args: argparse.Namespace) -> Dict[str, Any]:
    import httpx

    with open(args.path, "r", encoding="utf-8") as fh:
        content = fh.read()
    payload = {
        "content": content,
        "path": args.path,
        "time_col": args.time_col,
        "value_col": args.value_col,
        "delimiter": args.delimiter,
        "header": args.header,
        "confidence": args.confidence,
        "tolerance": args.tolerance,
        "min_filter_length": args.min_filter_length,
        "strategy": args.strategy,
        "acf_truncation": args.acf_truncation,
        "trend_check": not args.no_trend_check,
        "detection_threshold": args.detection_threshold,
    }
    url = args.server.rstrip("/") + "/analyze"
    resp = httpx.post(url, json=payload, timeout=60.0)
    if resp.status_code != 200:
        raise AnalysisError(f"server rejected the request ({resp.status_code}): {resp.text}")
    return resp.json()


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        if args.server:
            if args.export_curves:
                raise AnalysisError("--export-curves needs a local analysis, not --server")
            doc = _remote_document(args)
        else:
            doc = _local_document(args)
    except (AnalysisError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    if args.format == "json":
        sys.stdout.write(to_json(doc))
    else:
        sys.stdout.write(render_text(doc))
    return status_exit_code(doc["status"])


# ----------------------------------------------------------------------
# watch
# ----------------------------------------------------------------------

def _status_line(doc: Dict[str, Any], fresh: bool) -> Dict[str, Any]:
    cv = doc["convergence"]
    tr = doc["transient"]
    return {
        "event": "status",
        "fresh": fresh,
        "samples": doc["input"]["samples"],
        "status": doc["status"],
        "t_cut": tr["t_cut"],
        "cut_index": tr["cut_index"],
        "steady_n": cv["n"],
        "mean": cv["mean"],
        "ci_half_width": cv["ci_half_width"],
        "n_eff": cv["n_eff"],
        "converged": cv["converged"],
    }


def _emit_watch_line(line: Dict[str, Any], fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(line, allow_nan=False, separators=(",", ":")) + "\n")
    else:
        def num(x):
            return "n/a" if x is None else f"{x:.6g}"

        sys.stdout.write(
            f"samples={line['samples']} status={line['status']} "
            f"t_cut={num(line['t_cut'])} steady_n={line['steady_n']} "
            f"mean={num(line['mean'])} half_width={num(line['ci_half_width'])}\n"
        )
    sys.stdout.flush()


def cmd_watch(args: argparse.Namespace) -> int:
    try:
        config = _config_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    deadline = None
    if args.max_wait is not None:
        deadline = time.monotonic() + args.max_wait

    last_doc: Optional[Dict[str, Any]] = None
    assessed_n: Optional[int] = None
    failed_last_cycle = False

    while True:
        fresh = False
        try:
            res = _ingest(args)
            failed_last_cycle = False
            n = len(res.series)
            grown = assessed_n is None or n - assessed_n >= args.min_new_samples
            rewritten = assessed_n is not None and n < assessed_n
            if grown or rewritten:
                result = assess(res.series, config)
                last_doc = build_document(
                    result, config, samples=n, source=_source_block(args, res)
                )
                assessed_n = n
                fresh = True
        except (AnalysisError, OSError, ValueError) as exc:
            if failed_last_cycle:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_ERROR
            failed_last_cycle = True

        if last_doc is not None:
            _emit_watch_line(_status_line(last_doc, fresh), args.format)
            if fresh and last_doc["status"] == "converged":
                return EXIT_CONVERGED

        if deadline is not None and time.monotonic() >= deadline:
            return EXIT_NOT_CONVERGED
        time.sleep(args.poll_interval)


# ----------------------------------------------------------------------
# generate
# ----------------------------------------------------------------------

def cmd_generate(args: argparse.Namespace) -> int:
    try:
        spec = SignalSpec(
            kind=args.kind,
            n=args.n,
            seed=args.seed,
            mean=args.mean,
            sd=args.sd,
            dt=args.dt,
            transient_end=args.transient_end,
            transient_amplitude=args.transient_amplitude,
            transient_period=args.transient_period,
            phi=args.phi,
        )
        series = generate(spec)
    except AnalysisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    lines = ["time,value"]
    for t, v in zip(series.times.tolist(), series.values.tolist()):
        lines.append(f"{t!r},{v!r}")
    text = "\n".join(lines) + "\n"

    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_ERROR
    else:
        sys.stdout.write(text)
    return 0


# ----------------------------------------------------------------------
# serve
# ----------------------------------------------------------------------

def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return 0


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steadystat",
        description="Transient removal and convergence verdicts for "
        "simulation time series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser(
        "analyze", help="one-shot verdict on a recorded series"
    )
    p_analyze.add_argument("path", help="table of samples (CSV or whitespace)")
    _add_ingest_flags(p_analyze)
    _add_analysis_flags(p_analyze)
    _add_format_flags(p_analyze)
    p_analyze.add_argument(
        "--export-curves",
        metavar="DIR",
        default=None,
        help="write per-level error curves and candidate tables as CSV",
    )
    p_analyze.add_argument(
        "--server",
        metavar="URL",
        default=None,
        help="delegate the analysis to a running service at URL",
    )
    p_analyze.set_defaults(func=cmd_analyze)

    p_watch = sub.add_parser(
        "watch", help="poll a growing file until the verdict is converged"
    )
    p_watch.add_argument("path", help="table of samples, appended to by a solver")
    _add_ingest_flags(p_watch)
    _add_analysis_flags(p_watch)
    _add_format_flags(p_watch)
    p_watch.add_argument(
        "--poll-interval",
        type=float,
        default=1.0,
        help="seconds between file checks (default: 1.0)",
    )
    p_watch.add_argument(
        "--min-new-samples",
        type=int,
        default=16,
        help="growth needed before the file is re-analyzed (default: 16)",
    )
    p_watch.add_argument(
        "--max-wait",
        type=float,
        default=None,
        help="give up (exit 1) after this many seconds (default: wait forever)",
    )
    p_watch.set_defaults(func=cmd_watch)

    p_generate = sub.add_parser(
        "generate", help="write a deterministic synthetic series as CSV"
    )
    p_generate.add_argument("--kind", choices=KINDS, required=True)
    p_generate.add_argument("--n", type=int, required=True, help="number of samples")
    p_generate.add_argument("--seed", type=int, default=0)
    p_generate.add_argument("--mean", type=float, default=0.3, help="steady level")
    p_generate.add_argument("--sd", type=float, default=0.0066, help="noise scale")
    p_generate.add_argument("--dt", type=float, default=1.0, help="time step")
    p_generate.add_argument(
        "--transient-end",
        type=float,
        default=200.0,
        help="time at which start-up features vanish",
    )
    p_generate.add_argument(
        "--transient-amplitude",
        type=float,
        default=0.05,
        help="oscillation / step / ramp magnitude",
    )
    p_generate.add_argument(
        "--transient-period",
        type=float,
        default=40.0,
        help="oscillation period of the start-up feature",
    )
    p_generate.add_argument(
        "--phi", type=float, default=0.0, help="lag-1 coefficient for ar1"
    )
    p_generate.add_argument(
        "--output", metavar="PATH", default=None, help="write here instead of stdout"
    )
    p_generate.set_defaults(func=cmd_generate)

    p_serve = sub.add_parser("serve", help="run the HTTP analysis service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments and dispatch; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if code is not None else 0
    return args.func(args)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
