import csv
import io
import json

import jsonschema
import numpy as np
import pytest

from conftest import ELLIPSE_2_1_PERIMETER
from fourier_isoperimetry.cli import ANALYZE_SCHEMA, main

CIRCLE = '{"kind": "circle", "params": {"r": 1}}'
ELLIPSE = '{"kind": "ellipse", "params": {"a": 2, "b": 1}}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestAnalyze:
    def test_circle(self, capsys):
        code, out, _ = run(capsys, "analyze", CIRCLE)
        assert code == 0
        payload = json.loads(out)
        jsonschema.validate(payload, ANALYZE_SCHEMA)
        rep = payload["results"][0]["report"]
        assert abs(rep["ratio"] - 1) <= 1e-8 and rep["chain_ok"]
        assert payload["config"]["tol"] == 1e-10 and payload["config"]["order"] == 32

    def test_ellipse(self, capsys):
        code, out, _ = run(capsys, "analyze", ELLIPSE)
        rep = json.loads(out)["results"][0]["report"]
        assert code == 0
        assert rep["deficit"] == pytest.approx(ELLIPSE_2_1_PERIMETER**2 - 8 * np.pi**2, abs=1e-8)

    def test_batch_file_and_csv(self, capsys, tmp_path):
        path = tmp_path / "curves.json"
        path.write_text(f"[{CIRCLE}, {ELLIPSE}]")
        code, out, _ = run(capsys, "analyze", str(path), "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0
        assert [r["curve_id"] for r in rows] == ["0", "1"]
        assert list(rows[0]) == ["curve_id", "L", "A", "ratio", "deficit", "chain_ok"]
        assert float(rows[1]["L"]) == pytest.approx(ELLIPSE_2_1_PERIMETER, abs=1e-8)

    def test_malformed_json(self, capsys):
        code, _, err = run(capsys, "analyze", '{"kind": "circle", "params": {"r": 1}')
        assert code == 1 and "invalid JSON" in err

    def test_bad_field(self, capsys):
        code, _, err = run(capsys, "analyze", '{"kind": "ellipse", "params": {"a": 2}}')
        assert code == 1 and "params.b" in err

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "rep.json"
        code, out, _ = run(capsys, "analyze", CIRCLE, "--out", str(target))
        assert code == 0 and out == ""
        jsonschema.validate(json.loads(target.read_text()), ANALYZE_SCHEMA)

    def test_numbers_round_trip(self, capsys):
        _, out, _ = run(capsys, "analyze", ELLIPSE)
        text = out.split('"L": ')[1].split(",")[0]
        assert len(text.replace(".", "").lstrip("0")) >= 15

    def test_bad_config(self, capsys):
        assert run(capsys, "analyze", CIRCLE, "--grid", "16")[0] == 1
        assert run(capsys, "analyze", CIRCLE, "--tol", "0")[0] == 1


class TestOrthogonality:
    def test_order_eight(self, capsys):
        code, out, _ = run(capsys, "orthogonality", "--max-order", "8")
        entries = json.loads(out)["entries"]
        assert code == 0 and len(entries) == 192
        assert max(e["residual"] for e in entries) <= 1e-10

    def test_order_one_csv(self, capsys):
        code, out, _ = run(capsys, "orthogonality", "--max-order", "1", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0
        assert [(r["kind"], r["n"], r["m"]) for r in rows] == [("cos*cos", "1", "1"), ("sin*sin", "1", "1"),
                                                               ("cos*sin", "1", "1")]
        assert [float(r["expected"]) for r in rows] == [np.pi, np.pi, 0.0]

    def test_order_zero(self, capsys):
        assert run(capsys, "orthogonality", "--max-order", "0")[0] == 1

    def test_violation_exit(self, capsys):
        # a tolerance below rounding cannot be met for every entry
        assert run(capsys, "orthogonality", "--max-order", "3", "--tol", "1e-30")[0] == 2


class TestParseval:
    def test_two_terms(self, capsys):
        code, out, _ = run(capsys, "parseval", '{"a0": 0, "a": [3, 0], "b": [0, 4]}')
        payload = json.loads(out)
        assert code == 0
        assert payload["parseval"]["rhs"] == 25.0
        assert payload["parseval"]["lhs"] == pytest.approx(25.0, abs=1e-12)
        w = payload["wirtinger"]
        assert w["slack"] == pytest.approx(48 * np.pi, abs=1e-10)
        assert w["parseval_fprime"] - w["parseval_f"] == 48.0

    def test_nonzero_mean(self, capsys):
        code, out, err = run(capsys, "parseval", '{"a0": 2, "a": [], "b": []}')
        payload = json.loads(out)
        assert code == 0 and payload["wirtinger"] is None
        assert "skipped" in err and payload["notices"]
        assert payload["parseval"]["lhs"] == pytest.approx(2.0, abs=1e-13)

    def test_seeded_random(self, capsys):
        code, out, _ = run(capsys, "parseval", "--seed", "42", "--order", "32")
        payload = json.loads(out)
        assert code == 0
        assert len(payload["coefficients"]["a"]) == 32
        assert payload["parseval"]["residual"] <= 1e-9
        assert payload["deriv_parseval"]["residual"] <= 1e-9

    def test_bad_file(self, capsys):
        assert run(capsys, "parseval", '{"a": [1], "b": []}')[0] == 1


class TestReparam:
    def test_csv(self, capsys):
        code, out, _ = run(capsys, "reparam", ELLIPSE, "--grid", "128", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0 and len(rows) == 128
        assert list(rows[0]) == ["theta", "f", "g", "df", "dg"]
        speed2 = [float(r["df"]) ** 2 + float(r["dg"]) ** 2 for r in rows]
        assert np.allclose(speed2, (ELLIPSE_2_1_PERIMETER / (2 * np.pi)) ** 2, atol=1e-8)


class TestRandomSuite:
    def test_deterministic(self, capsys):
        first = run(capsys, "random-suite", "--seed", "7", "--count", "3")
        second = run(capsys, "random-suite", "--seed", "7", "--count", "3")
        assert first[0] == 0 and first[1] == second[1]

    def test_count_zero(self, capsys):
        assert run(capsys, "random-suite", "--count", "0")[0] == 1

    def test_seed_one_hundred_cases(self, capsys):
        code, out, _ = run(capsys, "random-suite", "--seed", "1", "--count", "100")
        summary = json.loads(out)
        assert code == 0
        assert summary["failed_checks"] == 0 and summary["passed_cases"] == 100


def test_usage_error_exit_code(capsys):
    assert run_raises(capsys, ["frobnicate"]) == 1


def run_raises(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    capsys.readouterr()
    return exc.value.code
