"""Reading monitor tables from disk.

Accepts comma-separated or whitespace-separated text, skips blank lines
and '#' comments, and understands an optional header row.  Columns are
chosen by header name or 1-based position.  A file carrying only values
gets a synthesized 1..N time axis, matching what the analysis assumes
when no physical time is known.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from .core import TimeSeries, validate_series
from .errors import MissingColumn, ParseError

ColumnRef = Union[int, str, None]


@dataclass(frozen=True)
class IngestResult:
    """A parsed table plus provenance for reporting."""

    series: TimeSeries
    rows: int
    time_column: Optional[str]
    value_column: str
    had_header: bool


def _split(line: str, comma: bool) -> List[str]:
    if comma:
        return [tok.strip() for tok in line.split(",")]
    return line.split()


def _is_float(token: str) -> bool:
    try:
        float(token)
        return True
    except ValueError:
        return False


def _resolve(
    ref: ColumnRef,
    header: Optional[List[str]],
    width: int,
    role: str,
) -> Optional[int]:
    """Map a column reference to a 0-based position."""
    if ref is None:
        return None
    if isinstance(ref, int):
        if not 1 <= ref <= width:
            raise MissingColumn(
                f"{role} position {ref}",
                available=[str(i) for i in range(1, width + 1)],
            )
        return ref - 1
    if header is None:
        raise MissingColumn(ref, available=None)
    if ref not in header:
        raise MissingColumn(ref, available=header)
    return header.index(ref)


def read_table(
    path: str,
    time_col: ColumnRef = None,
    value_col: ColumnRef = None,
    delimiter: str = "auto",
    header: Optional[bool] = None,
) -> IngestResult:
    """Parse a monitor table into a validated series.

    Args:
        path: file to read.
        time_col: header name or 1-based position of the time column;
            None selects it implicitly (two-column files) or synthesizes
            stamps 1..N.
        value_col: header name or 1-based position of the value column;
            None is allowed for one- and two-column files.
        delimiter: "auto", "comma" or "whitespace".
        header: True / False to force, None to detect (a first row whose
            chosen columns do not parse as numbers is taken as a header).

    Raises:
        FileNotFoundError: missing file.
        ParseError: malformed row, reported with its 1-based line number.
        MissingColumn: unknown column name or out-of-range position.
    """
    if delimiter not in ("auto", "comma", "whitespace"):
        raise ValueError(f"unknown delimiter {delimiter!r}")

    raw_rows: List[Tuple[int, str]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            raw_rows.append((lineno, stripped))

    if not raw_rows:
        raise ParseError(1, "file contains no data rows")

    comma = ("," in raw_rows[0][1]) if delimiter == "auto" else (delimiter == "comma")

    first_tokens = _split(raw_rows[0][1], comma)
    width = len(first_tokens)

    if header is None:
        had_header = not all(_is_float(tok) for tok in first_tokens)
    else:
        had_header = header
    header_names = first_tokens if had_header else None
    data_rows = raw_rows[1:] if had_header else raw_rows

    if not data_rows:
        raise ParseError(raw_rows[0][0], "file contains a header but no data rows")

    value_pos = _resolve(value_col, header_names, width, "value column")
    time_pos = _resolve(time_col, header_names, width, "time column")

    if value_pos is None:
        if width == 1:
            value_pos = 0
        elif width == 2:
            value_pos = 1
            if time_pos is None:
                time_pos = 0
        else:
            raise MissingColumn(
                "value column (required for tables with more than 2 columns)",
                available=header_names,
            )

    times: Optional[List[float]] = [] if time_pos is not None else None
    values: List[float] = []
    for lineno, row in data_rows:
        tokens = _split(row, comma)
        if len(tokens) != width:
            raise ParseError(
                lineno, f"expected {width} columns, found {len(tokens)}"
            )
        try:
            values.append(float(tokens[value_pos]))
        except ValueError:
            raise ParseError(
                lineno, f"could not parse value {tokens[value_pos]!r} as a number"
            ) from None
        if times is not None:
            try:
                times.append(float(tokens[time_pos]))
            except ValueError:
                raise ParseError(
                    lineno,
                    f"could not parse time stamp {tokens[time_pos]!r} as a number",
                ) from None

    series = validate_series(values, times)

    def _colname(pos: Optional[int]) -> Optional[str]:
        if pos is None:
            return None
        if header_names is not None:
            return header_names[pos]
        return str(pos + 1)

    return IngestResult(
        series=series,
        rows=len(values),
        time_column=_colname(time_pos),
        value_column=_colname(value_pos) or "1",
        had_header=had_header,
    )
