import csv
import json
import math

import numpy as np
import pytest

from groverian.bench import CSV_COLUMNS
from groverian.cli import main
from groverian.optimize import DEFAULT_SEED
from groverian.statevec import build, make_state, save_state


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out)


class TestPmax:
    def test_ghz3_numeric(self, capsys):
        code, doc = run_json(capsys, "pmax", "--state", "ghz:3", "--method", "numeric", "--seed", "7")
        assert code == 0
        assert abs(doc["pmax"] - 0.5) < 1e-9
        assert abs(doc["groverian"] - 1 / math.sqrt(2)) < 1e-9
        assert doc["seed"] == 7 and doc["n"] == 3 and doc["method"] == "numeric"
        assert len(doc["argmax"]) == 3 and doc["diagnostics"]["starts_converged"] >= 1

    def test_w3_closed(self, capsys):
        code, doc = run_json(capsys, "pmax", "--state", "w:3", "--method", "closed")
        assert code == 0 and doc["pmax"] == 0.75
        assert doc["diagnostics"]["table_source"] == "transcribed"

    def test_both(self, capsys):
        code, doc = run_json(capsys, "pmax", "--state", "ghz:5", "--method", "both", "--starts", "8")
        assert code == 0
        assert abs(doc["pmax_closed"] - 1) < 1e-12 and abs(doc["abs_diff"] - 0.5) < 1e-6

    def test_ghz4_closed_gated(self, capsys):
        code, out, err = run(capsys, "pmax", "--state", "ghz:4", "--method", "closed")
        assert code == 3 and out == "" and "conjectural" in err

    def test_ghz4_closed_conjectural(self, capsys):
        code, doc = run_json(capsys, "pmax", "--state", "ghz:4", "--method", "closed", "--conjectural")
        assert code == 0 and doc["diagnostics"]["conjectural"] is True
        assert abs(doc["pmax"] - 0.5) < 1e-12

    def test_complex_closed_gated(self, capsys, tmp_path):
        path = tmp_path / "c.json"
        save_state(make_state(2, np.array([1, 1j, 0, 0]) / math.sqrt(2)), path)
        code, _, _ = run(capsys, "pmax", "--state", str(path), "--method", "closed")
        assert code == 3

    def test_state_file(self, capsys, tmp_path):
        path = tmp_path / "w.json"
        save_state(build("w", 3), path)
        code, doc = run_json(capsys, "pmax", "--state", str(path), "--method", "numeric", "--starts", "8")
        assert code == 0 and abs(doc["pmax"] - 4 / 9) < 1e-6

    @pytest.mark.parametrize("spec", ["ghz", "ghz:x", "tri:3", "basis:3:9", "/no/such/file.json"])
    def test_bad_spec(self, capsys, spec):
        code, _, err = run(capsys, "pmax", "--state", spec)
        assert code == 2 and err.startswith("groverian: error:")

    def test_default_seed(self, capsys, monkeypatch):
        monkeypatch.delenv("GROVERIAN_SEED", raising=False)
        _, doc = run_json(capsys, "pmax", "--state", "ghz:2", "--starts", "2")
        assert doc["seed"] == DEFAULT_SEED

    def test_env_seed(self, capsys, monkeypatch):
        monkeypatch.setenv("GROVERIAN_SEED", "99")
        _, doc = run_json(capsys, "pmax", "--state", "ghz:2", "--starts", "2")
        assert doc["seed"] == 99
        _, doc = run_json(capsys, "pmax", "--state", "ghz:2", "--starts", "2", "--seed", "5")
        assert doc["seed"] == 5

    def test_bad_env_seed(self, capsys, monkeypatch):
        monkeypatch.setenv("GROVERIAN_SEED", "abc")
        code, _, _ = run(capsys, "pmax", "--state", "ghz:2")
        assert code == 2

    def test_deterministic_stdout(self, capsys):
        _, a, _ = run(capsys, "pmax", "--state", "w:4", "--starts", "6", "--seed", "3")
        _, b, _ = run(capsys, "pmax", "--state", "w:4", "--starts", "6", "--seed", "3", "--jobs", "3")
        assert a == b

    def test_bad_config(self, capsys):
        code, _, _ = run(capsys, "pmax", "--state", "ghz:2", "--starts", "0")
        assert code == 2


class TestGrover:
    def test_two_iterations(self, capsys):
        code, doc = run_json(capsys, "grover", "--state", "uniform:3", "--marked", "0", "--iterations", "2")
        assert code == 0 and doc["final"] == 0.9453125 and len(doc["trace"]) == 3

    def test_zero_iterations(self, capsys):
        _, doc = run_json(capsys, "grover", "--state", "uniform:3", "--marked", "5", "--iterations", "0")
        assert doc["final"] == 0.125

    def test_auto(self, capsys):
        _, doc = run_json(capsys, "grover", "--state", "uniform:4", "--marked", "0", "--iterations", "auto")
        assert doc["iterations"] == 3 and doc["final"] >= 0.96

    @pytest.mark.parametrize("argv", [
        ("--marked", "8", "--iterations", "1"),
        ("--marked", "-1", "--iterations", "1"),
        ("--marked", "0", "--iterations", "lots"),
        ("--marked", "0", "--iterations", "-1"),
    ])
    def test_range_errors(self, capsys, argv):
        code, _, _ = run(capsys, "grover", "--state", "uniform:3", *argv)
        assert code == 2


class TestCompare:
    def test_default_csv(self, capsys, tmp_path):
        out = tmp_path / "r.csv"
        code, stdout, _ = run(capsys, "compare", "--format", "csv", "--output", str(out))
        assert code == 0 and "all published expectations pass" in stdout
        records = list(csv.DictReader(out.open()))
        assert tuple(records[0]) == CSV_COLUMNS
        ghz3 = next(r for r in records if r["name"] == "ghz3")
        assert abs(float(ghz3["abs_diff"]) - 0.5) < 1e-6

    def test_json_round_trip(self, capsys, tmp_path):
        out = tmp_path / "r.json"
        code, _, _ = run(capsys, "compare", "--format", "json", "--output", str(out))
        doc = json.loads(out.read_text())
        assert code == 0 and json.loads(json.dumps(doc)) == doc
        assert all(set(CSV_COLUMNS) <= set(r) for r in doc)

    def test_default_output_name(self, capsys, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        cat = tmp_path / "cat.json"
        cat.write_text(json.dumps([{"name": "bell", "state": "ghz:2"}]))
        assert run(capsys, "compare", "--catalog", str(cat), "--format", "json")[0] == 0
        assert (tmp_path / "groverian_report.json").exists()

    def test_failing_expectation_exit_1(self, capsys, tmp_path):
        cat = tmp_path / "cat.json"
        cat.write_text(json.dumps([{"name": "ghz3", "state": "ghz:3",
                                    "expected_numeric": {"value": 1.0, "provenance": "PAPER"}}]))
        out = tmp_path / "r.csv"
        code, stdout, _ = run(capsys, "compare", "--catalog", str(cat), "--output", str(out), "--starts", "4")
        assert code == 1 and "FAILED: ghz3" in stdout
        assert out.exists()

    @pytest.mark.parametrize("content", ["{not json", "[]", '[{"name": "x"}]'])
    def test_corrupted_catalog(self, capsys, tmp_path, content):
        cat = tmp_path / "cat.json"
        cat.write_text(content)
        out = tmp_path / "r.csv"
        code, _, _ = run(capsys, "compare", "--catalog", str(cat), "--output", str(out))
        assert code == 2 and not out.exists()

    def test_missing_catalog(self, capsys, tmp_path):
        assert run(capsys, "compare", "--catalog", str(tmp_path / "none.json"))[0] == 2

    def test_unwritable_output(self, capsys, tmp_path):
        cat = tmp_path / "cat.json"
        cat.write_text(json.dumps([{"name": "bell", "state": "ghz:2"}]))
        code, _, _ = run(capsys, "compare", "--catalog", str(cat), "--output", str(tmp_path / "no" / "r.csv"))
        assert code == 2


class TestVerifyTables:
    def test_n3(self, capsys):
        code, doc = run_json(capsys, "verify-tables", "--n", "3")
        assert code == 0 and doc["verdict"] == "exact" and doc["mismatches"] == []

    def test_n5(self, capsys):
        code, doc = run_json(capsys, "verify-tables", "--n", "5")
        assert code == 0 and doc["verdict"] == "suspected-typos"
        assert sorted(m["index"] for m in doc["mismatches"]) == [21, 25]

    def test_n4(self, capsys):
        assert run(capsys, "verify-tables", "--n", "4")[0] == 2


class TestSweep:
    def test_n2(self, capsys):
        code, doc = run_json(capsys, "sweep", "--n", "2", "--samples", "10", "--starts", "4")
        assert code == 0 and doc["verdict"] == "valid"

    def test_n9(self, capsys):
        assert run(capsys, "sweep", "--n", "9", "--samples", "1")[0] == 2


def test_usage_errors_exit_2():
    for argv in ([], ["pmax"], ["pmax", "--state", "ghz:3", "--method", "magic"], ["bogus"]):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 2


def test_module_entry_point():
    import subprocess
    import sys
    proc = subprocess.run([sys.executable, "-m", "groverian", "verify-tables", "--n", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["verdict"] == "exact"
