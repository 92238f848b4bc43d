"""CLI: flag parsing, output schemas, reproducibility, exit codes."""

import json

import pytest

from lastsuccess import _kernel
from lastsuccess.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestValue:
    def test_exact_rational(self, capsys):
        code, out, _ = run(capsys, "value", "--n", "4", "--p", "1/2")
        assert code == 0
        assert "v = 1/2" in out and "w = 1/2" in out and "deficit = 0 (exact)" in out

    def test_float(self, capsys):
        code, out, _ = run(capsys, "value", "--n", "10", "--p", "0.3", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert float(payload["v"]) == pytest.approx(0.441)
        assert payload["method"] == "dp_float"

    def test_bad_horizon_exits_2(self, capsys):
        code, _, err = run(capsys, "value", "--n", "1", "--p", "0.3")
        assert code == 2 and "horizon" in err

    def test_bad_probability_exits_2(self, capsys):
        code, _, _ = run(capsys, "value", "--n", "4", "--p", "1.5")
        assert code == 2


class TestPoly:
    def test_n2(self, capsys):
        code, out, _ = run(capsys, "poly", "--n", "2")
        assert code == 0 and json.loads(out) == ["0", "1"]

    def test_n3(self, capsys):
        _, out, _ = run(capsys, "poly", "--n", "3")
        assert json.loads(out) == ["0", "1"]

    def test_n4(self, capsys):
        _, out, _ = run(capsys, "poly", "--n", "4")
        assert json.loads(out) == ["0", "2", "-4", "5", "-2"]

    def test_out_of_range(self, capsys):
        code, _, _ = run(capsys, "poly", "--n", "300")
        assert code == 2


class TestCertify:
    def test_single_small(self, capsys):
        code, out, _ = run(capsys, "certify", "--n", "2")
        assert code == 0
        assert json.loads(out)["verdict"] == "NonNegativeOnInterval"

    def test_both_methods_n60(self, capsys):
        code, out, _ = run(capsys, "certify", "--n", "60", "--method", "both")
        assert code == 0
        payload = json.loads(out)
        assert payload["verdict"] == "NegativeSomewhere"
        assert round(float(payload["witness_lo"]), 4) == 0.0537
        assert round(float(payload["witness_hi"]), 4) == 0.0602

    def test_range_spec(self, capsys):
        code, out, _ = run(capsys, "certify", "--n", "2:4")
        assert code == 0
        assert len(out.strip().split("\n")) == 3

    def test_full_range_counts(self, capsys):
        # 2..60 inclusive: 58 nondecreasing verdicts and exactly one failure
        code, out, _ = run(capsys, "certify", "--n", "2:60")
        assert code == 0
        lines = [json.loads(line) for line in out.strip().split("\n")]
        assert len(lines) == 59
        negatives = [rec for rec in lines if rec["verdict"] == "NegativeSomewhere"]
        assert len(negatives) == 1 and negatives[0]["n"] == 60


class TestSweep:
    GOLDEN = (
        "n,p,v,w,deficit,method\n"
        "5,0.20000000000000001,0.40960000000000013,0.26144000000000012,"
        "0.14816000000000001,dp_float\n"
        "5,0.40000000000000002,0.47999999999999998,0.41727999999999998,"
        "0.062719999999999998,dp_float\n"
        "5,0.60000000000000009,0.60000000000000009,0.59232000000000018,"
        "0.0076799999999999091,dp_float\n"
        "5,0.80000000000000004,0.80000000000000004,0.79615999999999998,"
        "0.0038400000000000656,dp_float\n"
    )

    def test_golden_csv(self, capsys):
        code, out, _ = run(capsys, "sweep", "--n", "5", "--grid", "0.2:0.8:0.2")
        assert code == 0
        lines = out.strip().split("\n")
        golden_lines = self.GOLDEN.strip().split("\n")
        assert lines[0] == golden_lines[0]  # header and column order are frozen
        assert len(lines) == len(golden_lines)
        for got, want in zip(lines[1:], golden_lines[1:]):
            gf, wf = got.split(","), want.split(",")
            assert gf[0] == wf[0] and gf[5] == wf[5]
            for a, b in zip(gf[1:5], wf[1:5]):
                assert float(a) == pytest.approx(float(b), abs=1e-13)
        if _kernel.COMPILED:
            # the canonical build is byte-stable against the golden file
            assert out == self.GOLDEN

    def test_reproducible_bytes(self, capsys):
        _, out1, _ = run(capsys, "sweep", "--n", "5,10", "--grid", "0.1,0.5,0.9")
        _, out2, _ = run(capsys, "sweep", "--n", "5,10", "--grid", "0.1,0.5,0.9")
        assert out1 == out2

    def test_bad_grid(self, capsys):
        code, _, _ = run(capsys, "sweep", "--n", "5", "--grid", "0.5:0.1:0.1")
        assert code == 2


class TestSimulate:
    def test_reproducible(self, capsys):
        args = ("simulate", "--rule", "plugin", "--n", "10", "--p", "0.3",
                "--trials", "20000", "--seed", "7")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2
        payload = json.loads(out1)
        assert abs(payload["z"]) <= 4

    def test_first_rule_near_closed_form(self, capsys):
        _, out, _ = run(capsys, "simulate", "--rule", "first", "--n", "5", "--p",
                        "0.2", "--trials", "50000")
        payload = json.loads(out)
        assert payload["exact"] == pytest.approx(0.4096)
        assert abs(payload["estimate"] - 0.4096) <= payload["half_width"]

    def test_threshold_rule_spec(self, capsys):
        code, out, _ = run(capsys, "simulate", "--rule", "threshold:8", "--n", "10",
                           "--p", "0.3", "--trials", "10000")
        assert code == 0
        assert json.loads(out)["exact"] == pytest.approx(0.441)

    def test_unknown_rule_exits_2(self, capsys):
        code, _, err = run(capsys, "simulate", "--rule", "bogus", "--n", "5",
                           "--p", "0.2", "--trials", "10")
        assert code == 2 and "unknown rule" in err


class TestOtherCommands:
    def test_sparse(self, capsys):
        code, out, _ = run(capsys, "sparse", "--n", "400")
        assert code == 0
        assert json.loads(out)["np_product"] == pytest.approx(20.0)

    def test_critical(self, capsys):
        code, out, _ = run(capsys, "critical", "--c", "0.2", "--n", "300")
        assert code == 0
        assert json.loads(out)["bound_constant"] == pytest.approx(0.06435, abs=1e-5)

    def test_uniform(self, capsys):
        code, out, _ = run(capsys, "uniform", "--n", "200", "--tilde-p", "1e-5",
                           "--p-low", "0.3")
        assert code == 0
        assert json.loads(out)["left_cap_ok"]

    def test_supdeficit(self, capsys):
        code, out, _ = run(capsys, "supdeficit", "--p0", "0.3", "--n", "50,100")
        assert code == 0
        lines = out.strip().split("\n")
        assert len(lines) == 2
        assert json.loads(lines[0])["n"] == 50

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "records.csv"
        code, out, _ = run(capsys, "sweep", "--n", "5", "--grid", "0.5",
                           "--out", str(target))
        assert code == 0 and out == ""
        assert target.read_text().startswith("n,p,v,w,deficit,method")


class TestExitCodes:
    def test_internal_failure_exits_1(self, capsys, monkeypatch):
        import dataclasses

        from lastsuccess import isolation

        real = isolation.monotonicity_certificate

        def broken(n, method="descartes"):
            cert = real(n, method="descartes")
            if method == "sturm":
                flipped = (
                    isolation.NON_NEGATIVE
                    if cert.verdict == isolation.NEGATIVE_SOMEWHERE
                    else isolation.NEGATIVE_SOMEWHERE
                )
                return dataclasses.replace(cert, verdict=flipped, witness=None)
            return cert

        monkeypatch.setattr(isolation, "monotonicity_certificate", broken)
        code, _, err = run(capsys, "certify", "--n", "4", "--method", "both")
        assert code == 1 and "disagree" in err
