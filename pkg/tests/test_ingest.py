"""Table ingestion: formats, column selection, error reporting."""

import numpy as np
import pytest

from steadystat.errors import MissingColumn, ParseError
from steadystat.ingest import read_table


def write(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_two_column_csv_with_header(tmp_path):
    rows = "\n".join(f"{i},{0.3 + i * 1e-4}" for i in range(1, 591))
    path = write(tmp_path, "Time,drag\n" + rows + "\n")
    result = read_table(path)
    assert len(result.series) == 590
    assert result.had_header is True
    assert result.time_column == "Time"
    assert result.value_column == "drag"
    assert result.series.times[0] == 1.0
    assert result.series.values[0] == pytest.approx(0.3001)


def test_single_column_synthesizes_stamps(tmp_path):
    path = write(tmp_path, "0.5\n0.6\n0.7\n")
    result = read_table(path)
    assert result.had_header is False
    assert result.time_column is None
    assert result.value_column == "1"
    np.testing.assert_array_equal(result.series.times, [1.0, 2.0, 3.0])
    np.testing.assert_array_equal(result.series.values, [0.5, 0.6, 0.7])


def test_whitespace_delimited_table(tmp_path):
    path = write(tmp_path, "1.0   0.30\n2.0\t0.31\n3.0   0.29\n")
    result = read_table(path)
    assert len(result.series) == 3
    np.testing.assert_array_equal(result.series.times, [1.0, 2.0, 3.0])


def test_comments_and_blank_lines_skipped(tmp_path):
    text = "# solver log\n\n# more prose\n1.0,0.3\n\n2.0,0.4\n# trailing\n"
    result = read_table(write(tmp_path, text))
    assert len(result.series) == 2


def test_malformed_row_reports_physical_line_number(tmp_path):
    lines = ["# header comment"] + [f"{i},0.3" for i in range(1, 20)]
    lines[16] = "16,banana"  # physical line 17 (after the comment line)
    path = write(tmp_path, "\n".join(lines) + "\n")
    with pytest.raises(ParseError) as exc:
        read_table(path)
    assert exc.value.line == 17
    assert "banana" in str(exc.value)


def test_ragged_row_reports_line(tmp_path):
    path = write(tmp_path, "1.0,0.3\n2.0\n")
    with pytest.raises(ParseError) as exc:
        read_table(path)
    assert exc.value.line == 2


def test_selection_by_header_name(tmp_path):
    path = write(tmp_path, "iter,lift,drag\n1,1.1,0.30\n2,1.2,0.31\n")
    result = read_table(path, time_col="iter", value_col="drag")
    assert result.value_column == "drag"
    np.testing.assert_array_equal(result.series.values, [0.30, 0.31])


def test_selection_by_one_based_position(tmp_path):
    path = write(tmp_path, "1 1.1 0.30\n2 1.2 0.31\n")
    result = read_table(path, time_col=1, value_col=3)
    np.testing.assert_array_equal(result.series.values, [0.30, 0.31])
    assert result.time_column == "1"
    assert result.value_column == "3"


def test_three_columns_require_value_selection(tmp_path):
    path = write(tmp_path, "a,b,c\n1,2,3\n")
    with pytest.raises(MissingColumn):
        read_table(path)


def test_unknown_column_name_lists_available(tmp_path):
    path = write(tmp_path, "iter,drag\n1,0.3\n2,0.4\n")
    with pytest.raises(MissingColumn) as exc:
        read_table(path, value_col="lift")
    message = str(exc.value)
    assert "lift" in message
    assert "drag" in message


def test_position_out_of_range(tmp_path):
    path = write(tmp_path, "1,0.3\n2,0.4\n")
    with pytest.raises(MissingColumn):
        read_table(path, value_col=5)


def test_forced_header_flag(tmp_path):
    # numeric first row, but the caller insists it is a header
    path = write(tmp_path, "1,2\n3,4\n")
    result = read_table(path, header=True)
    assert len(result.series) == 1
    assert result.series.values[0] == 4.0

    result = read_table(path, header=False)
    assert len(result.series) == 2


def test_forced_delimiter(tmp_path):
    path = write(tmp_path, "0.1 0.2\n0.3 0.4\n")
    result = read_table(path, delimiter="whitespace")
    assert len(result.series) == 2
    with pytest.raises(ParseError):
        read_table(path, delimiter="comma")


def test_missing_file_raises_oserror(tmp_path):
    with pytest.raises(FileNotFoundError):
        read_table(str(tmp_path / "absent.csv"))


def test_empty_file_rejected(tmp_path):
    with pytest.raises(ParseError):
        read_table(write(tmp_path, "# only comments\n\n"))


def test_header_only_file_rejected(tmp_path):
    with pytest.raises(ParseError):
        read_table(write(tmp_path, "time,value\n"))


def test_unknown_delimiter_argument():
    with pytest.raises(ValueError):
        read_table("whatever.csv", delimiter="tabs")
