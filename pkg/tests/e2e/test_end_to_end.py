"""End-to-end tests for the command-line pipeline."""

import csv
import json

import pytest

from hyperadia.cli import cli


class TestCLIEndToEnd:
    """Test CLI commands end-to-end."""

    def test_out_directory_csv(self, runner, tmp_path):
        out = tmp_path / "results"
        result = runner.invoke(cli, ['table3', '--out', str(out)])
        assert result.exit_code == 0
        assert "Output written to:" in result.output

        with open(out / "table3.csv", newline="") as f:
            rows = list(csv.DictReader(f))
        assert [r["channel"] for r in rows][:2] == ["0,0,0", "0,0,1"]
        assert float(rows[0]["A"]) == pytest.approx(2.8293, abs=5e-4)

        sidecar = json.loads((out / "table3.json").read_text())
        assert sidecar["reference_ok"] is True
        assert sidecar["config"]["lambda_star"] == 10.0
        assert sidecar["potential"]["v0bar"] == pytest.approx(0.789568352, rel=1e-8)
        assert "wall_time_s" in sidecar

    def test_out_directory_json(self, runner, tmp_path):
        result = runner.invoke(cli, ['direct', '--format', 'json', '--out', str(tmp_path)])
        assert result.exit_code == 0
        table = json.loads((tmp_path / "direct.json").read_text())
        assert table["rows"][0]["channel"] == "0,0,0"
        assert (tmp_path / "direct.meta.json").exists()

    def test_quiet_suppresses_notice(self, runner, tmp_path):
        result = runner.invoke(cli, ['--quiet', 'table3', '--out', str(tmp_path)])
        assert result.exit_code == 0
        assert result.stdout == ""

    def test_output_is_deterministic(self, runner, tmp_path):
        first = runner.invoke(cli, ['direct', '--channel', '0,0,1', '--channel', '1,1,0'])
        second = runner.invoke(cli, ['direct', '--channel', '0,0,1', '--channel', '1,1,0'])
        assert first.exit_code == second.exit_code == 0
        assert first.stdout == second.stdout

        for name in ("a", "b"):
            runner.invoke(cli, ['table3', '--out', str(tmp_path / name)])
        assert (tmp_path / "a" / "table3.csv").read_bytes() == (tmp_path / "b" / "table3.csv").read_bytes()

    def test_override_reaches_solver(self, runner):
        result = runner.invoke(
            cli, ['direct', '-f', 'json', '--tol-override', 'adiabatic.scan_points=128']
        )
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["sidecar"]["settings"]["adiabatic"]["scan_points"] == 128
        assert data["sidecar"]["config"]["overrides"] == ["adiabatic.scan_points=128"]

    def test_sweep_then_asym(self, runner):
        sweep = runner.invoke(cli, ['sweep', '--rho-grid', '2:20:3'])
        assert sweep.exit_code == 0
        assert len(sweep.stdout.strip().split("\n")) == 4

        asym = runner.invoke(cli, ['asym', '--channel', '1,0,0', '--rho-grid', '20:200:2'])
        assert asym.exit_code == 0
        header = asym.stdout.split("\n")[0]
        assert header == "channel,rho,v_exact,v_power,rel_err_power,scaled_exact"

    @pytest.mark.slow
    def test_table1_reproduces(self, runner):
        result = runner.invoke(cli, ['table1'])
        assert result.exit_code == 0
        assert result.stdout.count("ritz") == 4
