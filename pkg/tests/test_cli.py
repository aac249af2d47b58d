"""Command-line driver: artifacts, determinism, and exit codes.

Everything calls cli.main(argv) in-process; no subprocesses needed.
"""

import csv
import json

import pytest

from zetaperiod import cli, delta_newform

REPORT_KEYS = {"meta", "lvalues", "period_poly", "zeta_poly", "roots",
               "verification", "bloch_kato", "timing"}


def run(*argv):
    return cli.main(list(argv))


class TestAnalyze:
    def test_delta_report(self, tmp_path):
        assert run("analyze", "delta", "--output", str(tmp_path)) == 0
        doc = json.loads((tmp_path / "report.json").read_text())
        assert set(doc) == REPORT_KEYS
        assert doc["meta"]["label"] == "1.12.a.a"
        assert doc["meta"]["weight"] == 12
        assert doc["verification"]["passed"] is True
        assert doc["lvalues"]["invariant_problems"] == []
        assert len(doc["roots"]["zeta"]) == 10
        assert doc["timing"]["deterministic"] is True
        assert "lseries_terms" in doc["timing"]

    def test_deterministic_output(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        assert run("analyze", "delta", "--output", str(a)) == 0
        assert run("analyze", "delta", "--output", str(b)) == 0
        assert (a / "report.json").read_bytes() == (b / "report.json").read_bytes()

    def test_csv_and_svg_artifacts(self, tmp_path):
        assert run("analyze", "delta", "--emit", "json,csv,svg",
                   "--output", str(tmp_path)) == 0
        doc = json.loads((tmp_path / "report.json").read_text())
        with (tmp_path / "lvalues.csv").open() as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["s", "lambda"]
        assert len(rows) == 12
        parsed = [float(v) for _, v in rows[1:]]
        assert parsed == doc["lvalues"]["values"]
        svg = (tmp_path / "roots.svg").read_text()
        assert "<svg" in svg and len(svg) > 1000

    def test_minus_sign_form(self, tmp_path):
        assert run("analyze", "80.4.tw1", "--output", str(tmp_path)) == 0
        doc = json.loads((tmp_path / "report.json").read_text())
        assert doc["verification"]["eps"] == -1
        assert doc["meta"]["sign"] == -1
        assert len(doc["zeta_poly"]["direct"]["coeffs_ascending"]) == 2

    def test_file_ingestion_json(self, tmp_path):
        src = tmp_path / "form.json"
        src.write_text(delta_newform().to_json_text())
        assert run("analyze", "--input", str(src), "--output", str(tmp_path)) == 0

    def test_file_ingestion_csv_autodetects_sign(self, tmp_path):
        src = tmp_path / "form.csv"
        src.write_text(delta_newform().to_csv_text())
        assert run("analyze", "--input", str(src), "--level", "1",
                   "--weight", "12", "--output", str(tmp_path)) == 0
        doc = json.loads((tmp_path / "report.json").read_text())
        assert doc["meta"]["sign"] == 1

    def test_nested_output_directory(self, tmp_path):
        target = tmp_path / "deep" / "er"
        assert run("analyze", "delta", "--output", str(target)) == 0
        assert (target / "report.json").exists()


class TestOtherCommands:
    def test_roots(self, tmp_path):
        assert run("roots", "delta", "--emit", "json,csv",
                   "--output", str(tmp_path)) == 0
        doc = json.loads((tmp_path / "roots.json").read_text())
        assert len(doc["period_roots"]) == 10
        assert len(doc["zeta_roots"]) == 10
        assert doc["max_unit_circle_deviation"] < 1e-6
        with (tmp_path / "roots.csv").open() as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["family", "re", "im"]
        assert len(rows) == 21

    def test_limits_exact_rationals(self, tmp_path):
        assert run("limits", "--weight", "6", "--output", str(tmp_path)) == 0
        doc = json.loads((tmp_path / "limits.json").read_text())
        assert doc["minus"]["coeffs_ascending"] == ["1", "7/3", "1", "2/3"]
        assert doc["minus"]["degree"] == 3
        assert doc["plus"]["degree"] == 4
        assert doc["plus"]["solver_vs_polyroot_gap"] < 1e-9
        assert doc["minus"]["solver_vs_polyroot_gap"] < 1e-9

    def test_ehrhart(self, tmp_path):
        assert run("ehrhart", "--weight", "6", "--output", str(tmp_path)) == 0
        doc = json.loads((tmp_path / "ehrhart.json").read_text())
        assert doc["all_equal"] is True
        assert [r["dilation"] for r in doc["rows"]] == [0, 1, 2, 3, 4, 5]
        assert doc["rows"][0]["lattice_count"] == 1
        assert all(r["equal"] for r in doc["rows"])

    def test_ehrhart_custom_dilate(self, tmp_path):
        assert run("ehrhart", "--weight", "8", "--max-dilate", "3",
                   "--output", str(tmp_path)) == 0
        doc = json.loads((tmp_path / "ehrhart.json").read_text())
        assert [r["dilation"] for r in doc["rows"]] == [0, 1, 2, 3]

    def test_convergence(self, tmp_path, capsys):
        assert run("convergence", "--weight", "4", "--sign", "1",
                   "--output", str(tmp_path)) == 0
        doc = json.loads((tmp_path / "convergence.json").read_text())
        assert [r["level"] for r in doc["rows"]] == [5, 6, 8, 9, 45]
        assert doc["trend"]["first_to_last_decreased"] is True
        out = capsys.readouterr().out
        assert "first-to-last distance decreased: True" in out

    def test_selftest(self, tmp_path, capsys):
        assert run("selftest", "--output", str(tmp_path)) == 0
        doc = json.loads((tmp_path / "selftest.json").read_text())
        assert doc["all_passed"] is True
        assert len(doc["results"]) == 9
        out = capsys.readouterr().out
        assert out.count("PASS ") == 9
        assert "FAIL" not in out


class TestExitCodes:
    def test_unknown_label(self, tmp_path, capsys):
        assert run("analyze", "37.4.a.a", "--output", str(tmp_path)) == 2
        assert "error:" in capsys.readouterr().err

    def test_missing_input_file(self, tmp_path):
        assert run("analyze", "--input", str(tmp_path / "nope.json"),
                   "--output", str(tmp_path)) == 2

    def test_csv_without_level(self, tmp_path):
        src = tmp_path / "form.csv"
        src.write_text(delta_newform().to_csv_text())
        assert run("analyze", "--input", str(src), "--weight", "12",
                   "--output", str(tmp_path)) == 2

    def test_label_and_input_conflict(self, tmp_path):
        src = tmp_path / "form.json"
        src.write_text(delta_newform().to_json_text())
        assert run("analyze", "delta", "--input", str(src),
                   "--output", str(tmp_path)) == 2

    def test_nothing_to_analyze(self, tmp_path):
        assert run("analyze", "--output", str(tmp_path)) == 2

    def test_bad_precision_rejected_by_parser(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            run("analyze", "delta", "--precision", "1.0",
                "--output", str(tmp_path))
        assert exc.value.code == 2

    def test_bad_emit_rejected_by_parser(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            run("analyze", "delta", "--emit", "pdf", "--output", str(tmp_path))
        assert exc.value.code == 2

    def test_ehrhart_budget(self, tmp_path):
        assert run("ehrhart", "--weight", "14", "--output", str(tmp_path)) == 2
        assert run("ehrhart", "--weight", "10", "--max-dilate", "9",
                   "--output", str(tmp_path)) == 2

    def test_limits_odd_weight(self, tmp_path):
        assert run("limits", "--weight", "7", "--output", str(tmp_path)) == 2

    def test_limits_missing_weight(self, tmp_path):
        assert run("limits", "--output", str(tmp_path)) == 2

    def test_convergence_single_member_family(self, tmp_path):
        assert run("convergence", "--weight", "6", "--sign", "-1",
                   "--output", str(tmp_path)) == 2

    def test_corrupted_coefficients_fail_verification(self, tmp_path, capsys):
        doc = json.loads(delta_newform().to_json_text())
        doc["an"][1] += 50
        doc["sign"] = None
        src = tmp_path / "broken.json"
        src.write_text(json.dumps(doc))
        assert run("analyze", "--input", str(src), "--output", str(tmp_path)) == 1
        assert "verification failure:" in capsys.readouterr().err

    def test_version(self):
        with pytest.raises(SystemExit) as exc:
            run("--version")
        assert exc.value.code == 0
