import math
import os
import subprocess
import sys

import pytest

from angular_qudits import read_rows
from angular_qudits.cli import parse_config
from angular_qudits.sweep import SweepConfigError


def run_cli(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "angular_qudits", *args],
        capture_output=True, text=True, cwd=cwd,
    )


class TestParseConfig:
    def test_basic_oam(self):
        cfg = parse_config(["--mode", "oam", "--dimension", "5",
                            "--alpha-max", "6.283185", "--steps", "200"])
        assert cfg.dimension == 5
        assert cfg.steps == 200

    def test_path_slits(self):
        cfg = parse_config(["--mode", "path", "--slits", "3", "5",
                            "--alpha-max", "1.2566"])
        assert (cfg.n_signal, cfg.n_idler) == (3, 5)

    def test_even_dimension_is_usage_error(self):
        with pytest.raises(SweepConfigError):
            parse_config(["--mode", "oam", "--dimension", "4"])

    def test_config_file_with_flag_override(self, tmp_path):
        cfg_file = tmp_path / "sweep.cfg"
        cfg_file.write_text(
            "# comment\nmode = oam\ndimension = 5\nsteps = 50\nalpha_max = 3.0\n")
        cfg = parse_config(["--config", str(cfg_file), "--steps", "75"])
        assert cfg.dimension == 5
        assert cfg.steps == 75
        assert cfg.alpha_max == 3.0

    def test_config_file_unknown_key(self, tmp_path):
        cfg_file = tmp_path / "sweep.cfg"
        cfg_file.write_text("mode = oam\nwavelength = 800\n")
        from angular_qudits.cli import _UsageError

        with pytest.raises(_UsageError):
            parse_config(["--config", str(cfg_file)])

    def test_preset_conflicts(self):
        with pytest.raises(SweepConfigError):
            parse_config(["--preset", "fig2", "--dimension", "5"])


class TestCliProcess:
    def test_success_exit_zero(self, tmp_path):
        out = tmp_path / "rows.csv"
        proc = run_cli("--mode", "oam", "--dimension", "3", "--steps", "4",
                       "--output", str(out), "--parallelism", "1")
        assert proc.returncode == 0, proc.stderr
        rows = read_rows(str(out))
        assert len(rows) == 4
        assert abs(rows[-1].concurrence - math.sqrt(4 / 3)) < 1e-6

    def test_usage_error_exit_two(self):
        proc = run_cli("--mode", "oam", "--dimension", "4")
        assert proc.returncode == 2
        assert "error" in proc.stderr.lower()
        proc = run_cli("--mode", "nonsense")
        assert proc.returncode == 2

    def test_io_error_exit_three(self, tmp_path):
        target = tmp_path / "missing_dir" / "rows.csv"
        proc = run_cli("--mode", "oam", "--dimension", "3", "--steps", "3",
                       "--output", str(target), "--parallelism", "1")
        assert proc.returncode == 3

    def test_json_output(self, tmp_path):
        out = tmp_path / "rows.json"
        proc = run_cli("--mode", "path", "--slits", "2", "2", "--steps", "3",
                       "--alpha-max", "3.14159265", "--format", "json",
                       "--output", str(out), "--parallelism", "1")
        assert proc.returncode == 0, proc.stderr
        rows = read_rows(str(out))
        assert len(rows) == 3

    def test_preset_run(self, tmp_path):
        out = tmp_path / "fig2.csv"
        proc = run_cli("--preset", "fig2", "--steps", "3",
                       "--output", str(out), "--parallelism", "2")
        assert proc.returncode == 0, proc.stderr
        rows = read_rows(str(out))
        assert len(rows) == 15

    def test_convergence_failure_exit_four(self, tmp_path):
        # starving the truncation makes the doubling check fail on enough rows
        out = tmp_path / "rows.csv"
        proc = run_cli("--mode", "path", "--slits", "3", "4",
                       "--alpha-min", "0.9", "--alpha-max", "1.5", "--steps", "6",
                       "--truncation", "8", "--output", str(out), "--parallelism", "1")
        assert proc.returncode == 4
        assert out.exists()  # rows are still written

    def test_default_output_name(self, tmp_path):
        proc = run_cli("--mode", "oam", "--dimension", "3", "--steps", "3",
                       "--parallelism", "1", cwd=str(tmp_path))
        assert proc.returncode == 0, proc.stderr
        assert os.path.exists(tmp_path / "sweep_oam.csv")
