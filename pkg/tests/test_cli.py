"""Command-line behavior: exit codes, formats, determinism, watch."""

import json
import subprocess
import sys
import threading
import time

import pytest

from steadystat.cli import main
from steadystat.synth import SignalSpec, generate

GOLDEN_CSV_SHA256 = "fd27ab0881ad562f0ea7ed6041d55a6292749f9d4ecc05375440578b59708be8"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def fixture_csv(tmp_path, **kwargs):
    spec = SignalSpec(**kwargs)
    series = generate(spec)
    path = tmp_path / "fixture.csv"
    lines = ["time,value"]
    for t, v in zip(series.times.tolist(), series.values.tolist()):
        lines.append(f"{t!r},{v!r}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

def test_analyze_converged_exits_zero(tmp_path, capsys):
    path = fixture_csv(
        tmp_path, kind="gaussian_with_transient", n=1000, seed=3,
        transient_amplitude=0.3,
    )
    code, out, _ = run_cli(
        capsys, "analyze", path, "--tolerance", "0.001"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "converged"
    assert doc["schema_version"] == "1"
    assert doc["input"]["samples"] == 1000
    assert 180.0 <= doc["transient"]["t_cut"] <= 230.0


def test_analyze_ramp_is_drifting_exit_one(tmp_path, capsys):
    path = fixture_csv(
        tmp_path, kind="ramp", n=500, seed=0, sd=0.0001, transient_amplitude=0.05
    )
    code, out, _ = run_cli(capsys, "analyze", path, "--tolerance", "0.001")
    assert code == 1
    assert json.loads(out)["status"] == "drifting"


def test_analyze_missing_tolerance_is_usage_error(tmp_path, capsys):
    path = fixture_csv(tmp_path, kind="gaussian", n=100, seed=0)
    code, _, _ = run_cli(capsys, "analyze", path)
    assert code == 2


def test_analyze_missing_file_exits_two(capsys):
    code, _, err = run_cli(
        capsys, "analyze", "/no/such/file.csv", "--tolerance", "0.001"
    )
    assert code == 2
    assert "error" in err


def test_analyze_bad_flag_value_exits_two(tmp_path, capsys):
    path = fixture_csv(tmp_path, kind="gaussian", n=100, seed=0)
    code, _, err = run_cli(
        capsys, "analyze", path, "--tolerance", "-1"
    )
    assert code == 2
    assert "tolerance" in err


def test_analyze_is_byte_deterministic(tmp_path, capsys):
    path = fixture_csv(
        tmp_path, kind="gaussian_with_transient", n=600, seed=11,
        transient_amplitude=0.3,
    )
    argv = ("analyze", path, "--tolerance", "0.001")
    code_a, out_a, _ = run_cli(capsys, *argv)
    code_b, out_b, _ = run_cli(capsys, *argv)
    assert code_a == code_b
    assert out_a == out_b


def test_analyze_text_format(tmp_path, capsys):
    path = fixture_csv(tmp_path, kind="gaussian", n=2000, seed=2)
    code, out, _ = run_cli(
        capsys, "analyze", path, "--tolerance", "0.001", "--format", "text"
    )
    assert code == 0
    assert "status" in out and "converged" in out
    assert "mean" in out
    with pytest.raises(json.JSONDecodeError):
        json.loads(out)


def test_analyze_flag_plumbing_lands_in_config_echo(tmp_path, capsys):
    path = fixture_csv(tmp_path, kind="gaussian", n=300, seed=2)
    code, out, _ = run_cli(
        capsys, "analyze", path,
        "--tolerance", "0.002",
        "--confidence", "0.99",
        "--strategy", "last_level",
        "--acf-truncation", "first_negative",
        "--no-trend-check",
        "--min-filter-length", "4",
        "--detection-threshold", "0.5",
    )
    doc = json.loads(out)
    assert doc["config"] == {
        "confidence": 0.99,
        "tolerance": 0.002,
        "min_filter_length": 4,
        "candidate_strategy": "last_level",
        "acf_truncation": "first_negative",
        "trend_check_enabled": False,
        "detection_threshold": 0.5,
    }
    assert doc["transient"]["strategy_used"] == "last_level"


def test_export_curves_writes_plot_data(tmp_path, capsys):
    path = fixture_csv(
        tmp_path, kind="gaussian_with_transient", n=256, seed=3,
        transient_amplitude=0.3,
    )
    out_dir = tmp_path / "curves"
    code, _, _ = run_cli(
        capsys, "analyze", path, "--tolerance", "0.001",
        "--export-curves", str(out_dir),
    )
    assert code in (0, 1)
    level0 = out_dir / "level_0.csv"
    assert level0.exists()
    assert (out_dir / "candidates.csv").exists()
    assert (out_dir / "selections.csv").exists()

    lines = level0.read_text().splitlines()
    assert lines[0] == "position,time,value,rev_mean,rev_sem"
    assert len(lines) == 257  # header + one row per sample
    # columns of the first data row parse as numbers
    position, t, value, rev_mean, rev_sem = lines[1].split(",")
    assert int(position) == 1
    float(t), float(value), float(rev_mean), float(rev_sem)
    # the last row's rev_sem is undefined and stays empty
    assert lines[-1].endswith(",")

    # a coarser level is present too
    assert (out_dir / "level_1.csv").exists()


# ---------------------------------------------------------------------------
# generate
# ---------------------------------------------------------------------------

def test_generate_writes_deterministic_csv(tmp_path, capsys):
    import hashlib

    argv = ("generate", "--kind", "gaussian", "--n", "64", "--seed", "7")
    code_a, out_a, _ = run_cli(capsys, *argv)
    code_b, out_b, _ = run_cli(capsys, *argv)
    assert code_a == code_b == 0
    assert out_a == out_b
    assert hashlib.sha256(out_a.encode()).hexdigest() == GOLDEN_CSV_SHA256


def test_generate_to_file_round_trips_through_analyze(tmp_path, capsys):
    out = tmp_path / "series.csv"
    code, _, _ = run_cli(
        capsys, "generate", "--kind", "gaussian", "--n", "2000",
        "--seed", "1", "--output", str(out),
    )
    assert code == 0
    code, stdout, _ = run_cli(
        capsys, "analyze", str(out), "--tolerance", "0.001"
    )
    assert code == 0
    assert json.loads(stdout)["input"]["samples"] == 2000


def test_generate_zero_sd_constant_column(capsys):
    code, out, _ = run_cli(
        capsys, "generate", "--kind", "gaussian", "--n", "3", "--sd", "0"
    )
    assert code == 0
    assert out.splitlines() == ["time,value", "1.0,0.3", "2.0,0.3", "3.0,0.3"]


def test_generate_invalid_spec_exits_two(capsys):
    code, _, err = run_cli(
        capsys, "generate", "--kind", "ar1", "--n", "10", "--phi", "1.5"
    )
    assert code == 2
    assert "phi" in err


# ---------------------------------------------------------------------------
# watch
# ---------------------------------------------------------------------------

def test_watch_static_small_file_times_out(tmp_path, capsys):
    path = tmp_path / "static.csv"
    path.write_text("0.1\n0.2\n0.3\n", encoding="utf-8")
    code, out, _ = run_cli(
        capsys, "watch", str(path), "--tolerance", "0.001",
        "--poll-interval", "0.05", "--max-wait", "0.3",
    )
    assert code == 1
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert len(lines) >= 2
    assert all(line["status"] == "insufficient_data" for line in lines)
    assert lines[0]["fresh"] is True
    assert all(line["fresh"] is False for line in lines[1:])


def test_watch_unreadable_path_exits_two(capsys):
    code, _, err = run_cli(
        capsys, "watch", "/no/such/dir/file.csv", "--tolerance", "0.001",
        "--poll-interval", "0.02",
    )
    assert code == 2
    assert "error" in err


def test_watch_converges_on_growing_file(tmp_path, capsys):
    series = generate(
        SignalSpec(kind="gaussian_with_transient", n=900, seed=13,
                   transient_amplitude=0.3)
    )
    path = tmp_path / "grow.csv"
    path.write_text("time,value\n", encoding="utf-8")

    def writer():
        with open(path, "a", encoding="utf-8") as fh:
            for i, (t, v) in enumerate(
                zip(series.times.tolist(), series.values.tolist())
            ):
                fh.write(f"{t!r},{v!r}\n")
                if i % 16 == 0:
                    fh.flush()
                    time.sleep(0.005)
            fh.flush()

    thread = threading.Thread(target=writer)
    thread.start()
    try:
        code = main([
            "watch", str(path), "--tolerance", "0.001",
            "--poll-interval", "0.02", "--min-new-samples", "64",
            "--max-wait", "30",
        ])
    finally:
        thread.join()
    out = capsys.readouterr().out
    assert code == 0
    last = json.loads(out.strip().splitlines()[-1])
    assert last["status"] == "converged"
    assert last["fresh"] is True
    # convergence is only reachable once the start-up oscillation cleared
    assert last["samples"] > 200


def test_watch_text_format(tmp_path, capsys):
    path = tmp_path / "static.csv"
    path.write_text("0.1\n0.2\n0.3\n", encoding="utf-8")
    code, out, _ = run_cli(
        capsys, "watch", str(path), "--tolerance", "0.001",
        "--poll-interval", "0.05", "--max-wait", "0.15", "--format", "text",
    )
    assert code == 1
    assert "status=insufficient_data" in out


# ---------------------------------------------------------------------------
# wiring
# ---------------------------------------------------------------------------

def test_console_script_help():
    proc = subprocess.run(
        [sys.executable, "-m", "steadystat.cli", "--help"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    for sub in ("analyze", "watch", "generate", "serve"):
        assert sub in proc.stdout


def test_no_subcommand_is_usage_error(capsys):
    assert main([]) == 2
