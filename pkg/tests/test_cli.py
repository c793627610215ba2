import json
import subprocess
import sys

from gsmult.cli import dispatch


def run(argv):
    return dispatch(argv)


class TestExitCodes:
    def test_verify_coeffs_ok(self, capsys):
        assert run(["verify", "coeffs", "--m", "3", "--kmax", "10"]) == 0
        assert "certified" in capsys.readouterr().out

    def test_verify_coeffs_rejects_m1(self, capsys):
        assert run(["verify", "coeffs", "--m", "1", "--kmax", "5"]) == 2

    def test_unknown_flag_rejected(self):
        assert run(["verify", "coeffs", "--m", "3", "--kmax", "5", "--bogus"]) == 2

    def test_missing_subcommand_rejected(self):
        assert run([]) == 2
        assert run(["verify"]) == 2

    def test_failing_check_exits_one(self, capsys):
        # impossible slope tolerance forces the bound check to report failure
        assert run(["gs", "bound", "--theta", "1", "--kmax", "8", "--slope-tol", "-1"]) == 1

    def test_bad_fraction_rejected(self):
        assert run(["wedge", "classify", "--theta", "x/y", "--s", "1", "--m", "2", "--space", "roumieu"]) == 2


class TestTable:
    def test_writes_exact_json(self, tmp_path, capsys):
        out = tmp_path / "table.json"
        assert run(["table", "--m", "2", "--kmax", "4", "--out", str(out)]) == 0
        data = json.loads(out.read_text())
        assert data == {"m": 2, "k_max": 4, "rows": [["1"], ["1", "1"], ["1", "3"], ["1", "6", "3"]]}

    def test_out_dir_prefix(self, tmp_path):
        assert run(["--out-dir", str(tmp_path / "sub"), "table", "--m", "2", "--kmax", "2", "--out", "t.json"]) == 0
        assert (tmp_path / "sub" / "t.json").exists()


class TestVerifyIdentities:
    def test_full_run_with_json(self, tmp_path, capsys):
        report = tmp_path / "identities.json"
        code = run(
            ["verify", "identities", "--m", "3", "--kmax", "20", "--theta", "1", "--jmax", "2", "--json", str(report)]
        )
        assert code == 0
        payload = json.loads(report.read_text())
        names = {entry["name"] for entry in payload}
        assert "evaluation-lower-bound" in names
        assert all(entry["passed"] for entry in payload)

    def test_fractional_theta_skips_lower_bound(self, capsys):
        code = run(["verify", "identities", "--m", "3", "--kmax", "12", "--theta", "2/3"])
        assert code == 0
        assert "skipped" in capsys.readouterr().out

    def test_rejects_theta_below_threshold(self):
        assert run(["verify", "identities", "--m", "2", "--kmax", "12", "--theta", "1/4"]) == 2


class TestWedgeCli:
    def test_classify_prints_verdict(self, capsys):
        assert run(["wedge", "classify", "--theta", "2", "--s", "1", "--m", "2", "--space", "roumieu", "--d", "1"]) == 0
        assert "NotContinuous" in capsys.readouterr().out

    def test_classify_excluded_point(self, capsys):
        code = run(["wedge", "classify", "--theta", "1/2", "--s", "1", "--m", "3", "--space", "beurling"])
        assert code == 0
        out = capsys.readouterr().out
        assert "Unknown" in out and "excluded" in out

    def test_propagator_flag(self, capsys):
        code = run(
            ["wedge", "classify", "--theta", "1", "--s", "2", "--m", "2", "--space", "roumieu", "--propagator"]
        )
        assert code == 0
        assert "NotContinuous" in capsys.readouterr().out

    def test_figure_deterministic_across_threads(self, tmp_path, capsys):
        common = ["wedge", "figure", "--m", "4", "--space", "beurling", "--format", "svg",
                  "--theta-step", "1/4", "--s-step", "1/2"]
        assert run(common + ["--out", str(tmp_path / "a.svg")]) == 0
        assert run(["--threads", "4"] + common + ["--out", str(tmp_path / "b.svg")]) == 0
        assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()


class TestProbeCli:
    def test_run_emits_csv(self, tmp_path, capsys):
        out = tmp_path / "probe.csv"
        code = run(["probe", "run", "--m", "2", "--theta", "2", "--nu", "2", "--kmax", "6", "--csv", str(out)])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "k,x,log_dkg_f,rate"
        assert len(lines) == 7

    def test_run_deterministic_bytes(self, tmp_path, capsys):
        args = ["probe", "run", "--m", "3", "--theta", "1", "--nu", "1", "--kmax", "8"]
        assert run(args + ["--csv", str(tmp_path / "a.csv")]) == 0
        assert run(args + ["--csv", str(tmp_path / "b.csv")]) == 0
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()

    def test_kj_only_restricts_orders(self, tmp_path, capsys):
        out = tmp_path / "kj.csv"
        code = run(["probe", "run", "--m", "2", "--theta", "1", "--nu", "1", "--kmax", "20", "--kj-only", "--csv", str(out)])
        assert code == 0
        ks = [int(line.split(",")[0]) for line in out.read_text().splitlines()[1:]]
        assert ks == [8, 16]

    def test_criterion(self, capsys):
        assert run(["probe", "criterion", "--m", "2", "--theta", "1", "--s", "1/2", "--jmax", "4"]) == 0
        assert run(["probe", "criterion", "--m", "2", "--theta", "1", "--s", "3", "--jmax", "4"]) == 2

    def test_rejects_invalid_exponents(self):
        assert run(["probe", "run", "--m", "2", "--theta", "1/2", "--nu", "1/2", "--kmax", "4", "--csv", "x.csv"]) == 2


class TestSeminormCli:
    def test_gaussian_calculus_value(self, tmp_path, capsys):
        out = tmp_path / "cells.csv"
        code = run(
            ["gs", "seminorm", "--kind", "a", "--a", "1/2", "--theta", "1/2", "--s", "1",
             "--kmax", "0", "--f", "gaussian", "--grid", "4:12", "--csv", str(out)]
        )
        assert code == 0
        assert "1.0" in capsys.readouterr().out
        lines = out.read_text().splitlines()
        assert lines[0] == "k,x,value"
        assert len(lines) == 14  # zero plus 12 halvings, one order

    def test_kind_requires_weight(self):
        assert run(["gs", "seminorm", "--kind", "a", "--theta", "1", "--s", "1", "--kmax", "2"]) == 2
        assert run(["gs", "seminorm", "--kind", "h", "--theta", "1", "--s", "1", "--kmax", "2"]) == 2

    def test_bad_grid_spec(self):
        assert run(
            ["gs", "seminorm", "--kind", "a", "--a", "1", "--theta", "1", "--s", "1", "--kmax", "1", "--grid", "oops"]
        ) == 2


class TestEnvPrecision:
    def test_env_override_parses(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("GSM_PRECISION_BITS", "192")
        out = tmp_path / "p.csv"
        assert run(["probe", "run", "--m", "2", "--theta", "1", "--nu", "1", "--kmax", "4", "--csv", str(out)]) == 0

    def test_env_invalid_rejected(self, monkeypatch, capsys):
        monkeypatch.setenv("GSM_PRECISION_BITS", "lots")
        assert run(["verify", "coeffs", "--m", "2", "--kmax", "4"]) == 2


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "gsmult.cli", "verify", "coeffs", "--m", "2", "--kmax", "6"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "certified" in proc.stdout
