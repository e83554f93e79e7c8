"""Tests for the command-line front end."""

import json

import pytest

from bohr_shared.models import SharpnessReport
from bohr_toolkit import cli
from bohr_toolkit.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, build_arg_parser, run
from bohr_toolkit.contracts import THEOREM_CONTRACTS


def run_cli(capsys, *argv):
    """Run the CLI and return (status, stdout, stderr)."""
    status = run(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


class TestRadius:
    """Tests for the radius subcommand."""

    def test_qc_bounded_limit(self, capsys):
        """Test that a huge K reaches the 0.299... limit."""
        status, out, _ = run_cli(capsys, "radius", "--family", "qc-bounded", "--K", "1e12")
        lines = out.splitlines()

        assert status == EXIT_OK
        assert lines[0].startswith("value 0.299")
        assert lines[1].startswith("bracket ")
        assert lines[3] == "method bisection"

    def test_log_u_lambda_one(self, capsys):
        status, out, _ = run_cli(capsys, "radius", "--family", "log-u", "--lambda", "1")

        assert status == EXIT_OK
        assert out.splitlines()[0] == "value 0.393469340287"
        assert "method closed-form" in out

    def test_json(self, capsys):
        status, out, _ = run_cli(capsys, "radius", "--family", "log-convex", "--format", "json")
        payload = json.loads(out)

        assert status == EXIT_OK
        assert payload["value"] == pytest.approx(0.632120558829, abs=1e-12)
        assert payload["method"] == "closed-form"

    def test_missing_parameter(self, capsys):
        """Test that a missing --K is a usage error."""
        status, out, err = run_cli(capsys, "radius", "--family", "qc-convex")

        assert status == EXIT_USAGE
        assert out == ""
        assert "needs --K" in err

    def test_unexpected_parameter(self, capsys):
        status, _, err = run_cli(capsys, "radius", "--family", "log-s", "--K", "2")

        assert status == EXIT_USAGE
        assert "takes no parameter" in err

    def test_wrong_parameter(self, capsys):
        status, _, err = run_cli(capsys, "radius", "--family", "log-u", "--K", "2")

        assert status == EXIT_USAGE
        assert "takes --lambda" in err

    def test_out_of_domain(self, capsys):
        status, _, err = run_cli(capsys, "radius", "--family", "qc-univalent", "--K", "0.5")

        assert status == EXIT_USAGE
        assert err.startswith("error: ")

    def test_unknown_family(self, capsys):
        status, _, _ = run_cli(capsys, "radius", "--family", "bogus")

        assert status == EXIT_USAGE

    def test_byte_identical(self, capsys):
        """Test that identical argv gives identical output."""
        argv = ("radius", "--family", "loc-univalent", "--lambda", "0.5")
        first = run_cli(capsys, *argv)
        second = run_cli(capsys, *argv)

        assert first == second


class TestVerify:
    """Tests for the verify subcommand."""

    def test_sharp_theorem(self, capsys):
        status, out, _ = run_cli(capsys, "verify", "--theorem", "log-convex")

        assert status == EXIT_OK
        assert out.splitlines()[0] == "theorem log-convex"
        assert out.splitlines()[-1] == "verdict pass"

    def test_sharp_with_parameter(self, capsys):
        status, out, _ = run_cli(capsys, "verify", "--theorem", "qc-convex", "--K", "2")

        assert status == EXIT_OK
        assert "param K=2" in out

    def test_holds_theorem(self, capsys):
        """Test that a holds theorem prints one line per check."""
        status, out, _ = run_cli(capsys, "verify", "--theorem", "qc-bounded", "--K", "2")
        checks = [line for line in out.splitlines() if line.startswith("check ")]

        assert status == EXIT_OK
        assert len(checks) == 4
        assert all(line.endswith("verdict=holds") for line in checks)

    def test_json(self, capsys):
        status, out, _ = run_cli(capsys, "verify", "--theorem", "log-s", "--format", "json")
        payload = json.loads(out)

        assert status == EXIT_OK
        assert payload["theorem"] == "log-s"
        assert payload["passed"] is True

    def test_failing_verification(self, capsys, monkeypatch):
        """Test that a failing report exits 1."""
        failing = SharpnessReport(
            theorem="log-s", params={}, r0=0.39, threshold=1.0, sum_at_r0=1.0,
            equality_margin=0.0, violation_r=0.4, violation_margin=-1e-3,
            tail_bound=0.0, order=200, tolerance=1e-10,
        )
        monkeypatch.setattr(cli, "verify", lambda *args, **kwargs: failing)
        status, out, _ = run_cli(capsys, "verify", "--theorem", "log-s")

        assert status == EXIT_FAILED
        assert out.splitlines()[-1] == "verdict fail"

    def test_invalid_parameter(self, capsys):
        status, _, err = run_cli(capsys, "verify", "--theorem", "log-u", "--lambda", "2")

        assert status == EXIT_USAGE
        assert "Invalid parameters for log-u" in err

    def test_group_label_runs_every_branch(self, capsys):
        """Test that label 2.2 verifies both the univalent and the convex branch."""
        status, out, _ = run_cli(capsys, "verify", "--theorem", "2.2", "--K", "2")
        theorems = [line for line in out.splitlines() if line.startswith("theorem ")]

        assert status == EXIT_OK
        assert theorems == ["theorem qc-univalent", "theorem qc-convex"]
        assert out.splitlines()[-1] == "overall pass"

    @pytest.mark.parametrize(
        "label,extra,names",
        [
            ("2.4", ["--K", "2"], ["qc-bounded"]),
            ("2.7", ["--lambda", "0.5"], ["loc-univalent"]),
            ("3.1", [], ["log-s", "log-inverse"]),
            ("3.3", ["--lambda", "1"], ["log-u"]),
            ("remark-convex", [], ["log-convex"]),
        ],
    )
    def test_group_labels_accepted(self, capsys, label, extra, names):
        status, out, _ = run_cli(capsys, "verify", "--theorem", label, *extra)
        theorems = [line.split(" ", 1)[1] for line in out.splitlines() if line.startswith("theorem ")]

        assert status == EXIT_OK
        assert theorems == names

    def test_group_fails_when_one_branch_fails(self, capsys, monkeypatch):
        """Test that label 3.1 exits 1 when only the inverse branch fails."""
        failing = SharpnessReport(
            theorem="log-inverse", params={}, r0=0.24, threshold=1.0, sum_at_r0=1.0,
            equality_margin=0.0, violation_r=0.25, violation_margin=-1e-3,
            tail_bound=0.0, order=200, tolerance=1e-10,
        )
        real_verify = cli.verify

        def verify(name, *args, **kwargs):
            return failing if name == "log-inverse" else real_verify(name, *args, **kwargs)

        monkeypatch.setattr(cli, "verify", verify)
        status, out, _ = run_cli(capsys, "verify", "--theorem", "3.1")

        assert status == EXIT_FAILED
        assert "verdict pass" in out
        assert out.splitlines()[-1] == "overall fail"

    def test_group_json_lists_reports(self, capsys):
        status, out, _ = run_cli(capsys, "verify", "--theorem", "3.1", "--format", "json")
        payload = json.loads(out)

        assert status == EXIT_OK
        assert [report["theorem"] for report in payload] == ["log-s", "log-inverse"]

    def test_infinite_k_json(self, capsys):
        """Test that K = inf prints strict JSON with the string "inf"."""
        status, out, _ = run_cli(capsys, "verify", "--theorem", "qc-convex", "--K", "inf", "--format", "json")
        payload = json.loads(out, parse_constant=pytest.fail)

        assert status == EXIT_OK
        assert "Infinity" not in out
        assert payload["params"]["K"] == "inf"

    def test_unknown_label(self, capsys):
        status, _, err = run_cli(capsys, "verify", "--theorem", "2.5")

        assert status == EXIT_USAGE
        assert "invalid choice" in err


class TestHarness:
    """Tests for the harness subcommand."""

    def test_small_run(self, capsys):
        status, out, _ = run_cli(capsys, "harness", "--samples", "5", "--order", "32", "--no-hunt")
        lines = out.splitlines()

        assert status == EXIT_OK
        assert lines[0] == "seed 20240611 order 32"
        assert lines[1].startswith("lemma1 5/5 worst_margin=")
        assert lines[-1] == "verdict pass"
        assert not any(line.startswith("counterexample") for line in lines)

    def test_counterexample_line(self, capsys):
        status, out, _ = run_cli(capsys, "harness", "--samples", "3", "--order", "32", "--check", "lemma1")
        found = [line for line in out.splitlines() if line.startswith("counterexample ")]

        assert status == EXIT_OK
        assert found[0].startswith("counterexample lemma1 ")
        assert "r=0.5" in found[0]

    def test_zero_samples(self, capsys):
        status, _, err = run_cli(capsys, "harness", "--samples", "0")

        assert status == EXIT_USAGE
        assert "--samples" in err

    def test_env_ignored(self, capsys, monkeypatch):
        """Test that BOHR_* variables do not change a CLI run."""
        monkeypatch.setenv("BOHR_HARNESS_SEED", "1")
        _, out, _ = run_cli(capsys, "harness", "--samples", "1", "--order", "16", "--no-hunt")

        assert out.startswith("seed 20240611 ")


class TestSweep:
    """Tests for the sweep subcommand."""

    def test_csv(self, capsys):
        """Test 10 rows with strictly decreasing r0."""
        status, out, _ = run_cli(
            capsys, "sweep", "--family", "qc-univalent", "--param", "K",
            "--min", "1", "--max", "10", "--steps", "10",
        )
        lines = out.splitlines()
        radii = [float(line.split(",")[1]) for line in lines[1:]]

        assert status == EXIT_OK
        assert lines[0] == "param,r0,residual"
        assert len(radii) == 10
        assert all(a > b for a, b in zip(radii, radii[1:]))
        assert lines[1].startswith("1,")

    def test_json(self, capsys):
        status, out, _ = run_cli(
            capsys, "sweep", "--family", "log-u", "--param", "lambda",
            "--min", "0.5", "--max", "1", "--steps", "3", "--format", "json",
        )
        rows = json.loads(out)

        assert status == EXIT_OK
        assert [row["param"] for row in rows] == [0.5, 0.75, 1.0]

    def test_empty_range(self, capsys):
        status, _, err = run_cli(
            capsys, "sweep", "--family", "qc-univalent", "--param", "K",
            "--min", "5", "--max", "2", "--steps", "3",
        )

        assert status == EXIT_USAGE
        assert err.startswith("error: ")


class TestSeries:
    """Tests for the series subcommand."""

    def test_koebe(self, capsys):
        status, out, _ = run_cli(capsys, "series", "--function", "koebe", "--order", "3")

        assert status == EXIT_OK
        assert out.splitlines() == ["0 0 0", "1 1 0", "2 2 0", "3 3 0"]

    def test_log_of_koebe_neg(self, capsys):
        """Test log(f/z) = 2 log(1/(1+z)) for the rotated Koebe function."""
        status, out, _ = run_cli(capsys, "series", "--function", "koebe-neg", "--order", "4", "--log")

        assert status == EXIT_OK
        assert out.splitlines() == ["0 0 0", "1 -2 0", "2 1 0", "3 -0.666666666667 0"]

    def test_parameter_rejected(self, capsys):
        status, _, err = run_cli(capsys, "series", "--function", "koebe", "--K", "2")

        assert status == EXIT_USAGE
        assert "does not take --K" in err


def test_list(capsys):
    """Test that every contract is listed once under its theorem label."""
    status, out, _ = run_cli(capsys, "list")
    rows = [line.split("\t") for line in out.splitlines() if not line.startswith("\t")]

    assert status == EXIT_OK
    assert [row[1] for row in rows] == [contract.name for contract in THEOREM_CONTRACTS]
    assert [row[0] for row in rows] == ["2.2", "2.2", "2.4", "2.7", "3.1", "3.1", "remark-convex", "3.3"]


def test_missing_subcommand(capsys):
    assert run_cli(capsys)[0] == EXIT_USAGE


def test_parser_defaults():
    args = build_arg_parser().parse_args(["series", "--function", "koebe"])

    assert args.order == 200
    assert args.log is False
