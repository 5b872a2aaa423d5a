"""CLI surface: commands, formats, exit codes, determinism."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from sftokens import cli, selfcheck
from sftokens.config import load_config, sweep_configs
from sftokens.errors import ConfigError
from sftokens.kernels import FrameGrid

DATA = Path(__file__).parent / "data"


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestPlan:
    def test_defaults_emit_published_budget(self, capsys):
        code, out, _ = run_cli(capsys, "plan")
        assert code == 0
        doc = json.loads(out)
        assert doc["content_tokens"] == 9248
        assert doc["total_tokens"] == 9249
        assert doc["fits_context"] is True

    def test_slow_only_overflows_with_exit_2(self, capsys):
        code, out, _ = run_cli(
            capsys, "plan", "--set", "n_slow=128", "--set", "arrangement=ISF"
        )
        assert code == 2
        assert json.loads(out)["fits_context"] is False

    def test_missing_config_names_path(self, capsys):
        code, _, err = run_cli(capsys, "plan", "--config", "/no/such/file.cfg")
        assert code == 1
        assert "/no/such/file.cfg" in err

    def test_bundled_stage2_config(self, capsys):
        code, out, _ = run_cli(capsys, "plan", "--config", "table1_stage2.cfg")
        assert code == 0
        assert json.loads(out)["content_tokens"] == 9248

    def test_image_only_stage_plans_image_budget(self, capsys):
        code, out, _ = run_cli(capsys, "plan", "--config", "table1_stage1.cfg")
        assert code == 0
        doc = json.loads(out)
        # Worst case at 1280^2: 80*80 high-res + 576 low-res tokens.
        assert doc["content_tokens"] == 6400 + 576
        assert doc["fits_context"] is True

    def test_text_format_mentions_fit(self, capsys):
        code, out, _ = run_cli(capsys, "plan", "--format", "text")
        assert code == 0
        assert "fits" in out
        assert "\x1b[" not in out

    def test_unknown_key_rejected(self, capsys):
        code, _, err = run_cli(capsys, "plan", "--set", "n_slowish=3")
        assert code == 1
        assert "n_slowish" in err

    def test_image_plan_has_no_csv_form(self, capsys):
        code, _, err = run_cli(
            capsys, "plan", "--config", "table1_stage1.cfg", "--format", "csv"
        )
        assert code == 1
        assert "video" in err


class TestSweep:
    def test_table4_csv(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--config", "table4.cfg")
        assert code == 0
        lines = out.strip().split("\n")
        assert len(lines) == 7
        rounded = [line.split(",")[6] for line in lines[1:]]
        assert rounded == ["7K", "10K", "14K", "28K", "2K", "9K"]
        content = [int(line.split(",")[4]) for line in lines[1:]]
        assert content == [7200, 10800, 14400, 28800, 2048, 9248]

    def test_table5_csv(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--config", "table5.cfg")
        assert code == 0
        rounded = [line.split(",")[6] for line in out.strip().split("\n")[1:]]
        assert rounded == ["28K", "28K", "2K", "2K", "9K"]

    def test_single_config_sweep_matches_plan(self, capsys):
        code, sweep_out, _ = run_cli(capsys, "sweep", "--format", "csv")
        assert code == 0
        code, plan_out, _ = run_cli(capsys, "plan", "--format", "csv")
        assert code == 0
        assert sweep_out == plan_out

    def test_json_rows_keep_order(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--config", "table4.cfg", "--format", "json")
        assert code == 0
        rows = json.loads(out)
        assert [r["content_tokens"] for r in rows] == [7200, 10800, 14400, 28800, 2048, 9248]
        assert rows[0]["label"] == "slow-only-32"

    def test_sweep_grid_expansion(self, tmp_path, capsys):
        cfg = tmp_path / "grid.cfg"
        cfg.write_text(json.dumps({"sweep_grid": {"n_slow": [0, 32, 64]}}))
        code, out, _ = run_cli(capsys, "sweep", "--config", str(cfg))
        assert code == 0
        assert [line.split(",")[0] for line in out.strip().split("\n")[1:]] == ["0", "32", "64"]

    def test_malformed_grid_rejected(self, tmp_path, capsys):
        cfg = tmp_path / "grid.cfg"
        cfg.write_text(json.dumps({"sweep_grid": {"n_slow": []}}))
        code, _, err = run_cli(capsys, "sweep", "--config", str(cfg))
        assert code == 1
        assert "n_slow" in err


class TestArrange:
    MINI = ("--set", "n_total=2", "--set", "n_slow=1", "--set", "grid_rows=2",
            "--set", "grid_cols=2", "--set", "fast_rows=1", "--set", "fast_cols=1")

    def test_gsf_miniature_matches_golden(self, capsys):
        code, out, _ = run_cli(capsys, "arrange", *self.MINI)
        assert code == 0
        assert out == (DATA / "gsf_miniature_layout.txt").read_text()

    def test_isf_miniature(self, capsys):
        code, out, _ = run_cli(capsys, "arrange", *self.MINI, "--set", "arrangement=ISF")
        assert code == 0
        assert out.splitlines() == [
            "TOK slow 0 0 0",
            "SEP - - - -",
            "TOK fast 1 0 0",
            "SEP - - - -",
        ]

    def test_gsf_without_slow_starts_with_separator(self, capsys):
        code, out, _ = run_cli(capsys, "arrange", *self.MINI, "--set", "n_slow=0")
        assert code == 0
        assert out.splitlines()[0] == "SEP - - - -"

    def test_default_grid_comes_from_stage(self, capsys):
        code, out, _ = run_cli(capsys, "arrange", "--set", "n_total=1", "--set", "n_slow=1")
        assert code == 0
        lines = out.strip().split("\n")
        # One frame on the 30x30 stage grid: 225 slow + 1 sep + 16 fast.
        assert len(lines) == 242

    def test_grid_dims_must_come_together(self, capsys):
        code, _, err = run_cli(capsys, "arrange", "--set", "grid_rows=4")
        assert code == 1
        assert "grid_cols" in err

    def test_indivisible_grid_rejected(self, capsys):
        code, _, err = run_cli(
            capsys, "arrange", "--set", "grid_rows=5", "--set", "grid_cols=5",
            "--set", "fast_rows=1", "--set", "fast_cols=1",
        )
        assert code == 1
        assert "stride" in err.lower()


class TestCheck:
    def test_fresh_build_passes(self, capsys):
        code, out, _ = run_cli(capsys, "check")
        assert code == 0
        lines = out.strip().split("\n")
        assert len(lines) == 6
        assert all(line.startswith("ok") for line in lines)

    def test_perturbed_kernel_fails_with_exit_3(self, capsys, monkeypatch):
        def skewed(grid, stride_h, stride_w):
            out = selfcheck.kernels.avg_pool_strided(grid, stride_h, stride_w)
            return FrameGrid(out.values + 1e-3)

        monkeypatch.setitem(selfcheck.DEFAULT_KERNELS, "avg_pool_strided", skewed)
        code, out, _ = run_cli(capsys, "check", "--seed", "42")
        assert code == 3
        fail_lines = [l for l in out.splitlines() if l.startswith("FAIL")]
        assert fail_lines and "avg_pool_strided" in fail_lines[0]
        assert "seed 42" in fail_lines[0]

    def test_seeded_runs_are_byte_identical(self):
        cmd = [sys.executable, "-m", "sftokens", "check", "--seed", "42"]
        first = subprocess.run(cmd, capture_output=True, check=True)
        second = subprocess.run(cmd, capture_output=True, check=True)
        assert first.stdout == second.stdout
        assert first.stdout  # non-empty

    def test_different_seeds_still_pass(self, capsys):
        code, _, _ = run_cli(capsys, "check", "--seed", "7")
        assert code == 0


class TestPlumbing:
    def test_out_writes_file(self, tmp_path, capsys):
        target = tmp_path / "report.json"
        code, out, _ = run_cli(capsys, "plan", "--out", str(target))
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text())["content_tokens"] == 9248

    def test_no_command_prints_help(self, capsys):
        code, _, err = run_cli(capsys)
        assert code == 1
        assert "plan" in err

    def test_bad_flag_exits_1(self, capsys):
        code, _, _ = run_cli(capsys, "plan", "--format", "yaml")
        assert code == 1

    def test_overrides_parse_json_scalars(self):
        doc = load_config(None, ["n_slow=16", "arrangement=ISF"])
        assert doc["n_slow"] == 16
        assert doc["arrangement"] == "ISF"

    def test_override_requires_equals(self):
        with pytest.raises(ConfigError):
            load_config(None, ["n_slow"])

    def test_sweep_labels_default_to_row_index(self):
        doc = {"sweep": [{"n_slow": 0}, {"n_slow": 32}]}
        _, labels = sweep_configs(doc)
        assert labels == ["row0", "row1"]
