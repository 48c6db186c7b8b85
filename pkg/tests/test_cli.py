import subprocess
import sys
from pathlib import Path

import pytest

from eotransducer.cli import EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK, main

GOLDEN = Path(__file__).parent / "golden"
MODES = ["resonant", "grid", "slice", "bandwidth", "boundary", "oracle-check"]


@pytest.mark.parametrize("mode", MODES)
def test_golden_output(mode, tmp_path):
    out = tmp_path / f"{mode}.csv"
    assert main([mode, "--config", str(GOLDEN / f"{mode}.ini"), "--out", str(out)]) == EXIT_OK
    assert out.read_bytes() == (GOLDEN / f"{mode}.csv").read_bytes()


@pytest.mark.parametrize("mode", MODES)
def test_repeat_runs_identical(mode, tmp_path):
    blobs = []
    for i in range(2):
        out = tmp_path / f"run{i}.csv"
        assert main([mode, "--config", str(GOLDEN / f"{mode}.ini"), "--out", str(out)]) == EXIT_OK
        blobs.append(out.read_bytes())
    assert blobs[0] == blobs[1]


def test_stdout_and_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "eotransducer", "slice", "--config", str(GOLDEN / "slice.ini")],
        capture_output=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "slice.csv").read_bytes()


def test_slice_flag_replaces_config_choice(capsys):
    assert main(["slice", "--config", str(GOLDEN / "slice.ini"), "--gprime", "7"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert any(",PL/TL," in line for line in lines)
    assert all(line.split(",")[2] == "7.0000000000000000e+00" for line in lines[2:])


def test_overrides_reach_the_rows(capsys):
    argv = ["grid", "--config", str(GOLDEN / "grid.ini"), "--eta", "0.2", "--temp", "0.3",
            "--zeta-m", "0.99", "--zeta-a", "0.9"]
    assert main(argv) == EXIT_OK
    rows = capsys.readouterr().out.splitlines()[2:]
    assert all(float(r.split(",")[3]) == pytest.approx(0.2) for r in rows)


@pytest.mark.parametrize("argv", [
    ["grid", "--eta", "1.5"],
    ["grid", "--rdp-tol", "-1"],
    ["grid", "--config", "/nonexistent/cfg.ini"],
    ["bandwidth", "--gprime", "0.5"],
    ["resonant", "--zeta-m", "2"],
])
def test_config_errors_exit_2(argv, capsys):
    assert main(argv) == EXIT_CONFIG
    assert "config error" in capsys.readouterr().err


def test_bad_config_contents(tmp_path, capsys):
    cfg = tmp_path / "bad.ini"
    cfg.write_text("[system]\nwhat = 1\n")
    assert main(["grid", "--config", str(cfg)]) == EXIT_CONFIG
    assert "unknown key" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [[], ["nonsense"], ["grid", "--temp", "warm"]])
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == EXIT_CONFIG


def test_oracle_failure_exits_3(monkeypatch, capsys):
    import eotransducer.sweep as sweep

    real = sweep.random_draw_check

    def broken(draws, seed, tolerance):
        table = real(draws, seed, tolerance)
        table.rows[0]["pass"] = False
        return table

    monkeypatch.setitem(sweep.RUNNERS, "oracle-check", lambda cfg: broken(cfg.draws, cfg.seed, 1e-9))
    assert main(["oracle-check", "--draws", "3"]) == EXIT_NUMERICAL
    assert "disagree" in capsys.readouterr().err


def test_numerical_error_exits_3(monkeypatch, capsys):
    import eotransducer.cli as cli
    from eotransducer.errors import NumericalError

    def fail(cfg):
        raise NumericalError("commutator residual too large")

    monkeypatch.setattr(cli, "run", fail)
    assert main(["grid"]) == EXIT_NUMERICAL
    assert "numerical failure" in capsys.readouterr().err
