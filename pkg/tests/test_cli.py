import csv
import io
import json
from pathlib import Path

import pytest

from hecke_orbits.cli import main

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestCount:
    def test_worked_range(self, capsys):
        code, out, err = run(capsys, "count", "--from", "10", "--to", "15", "--format", "json")
        assert code == 0
        counts = {r["n"]: r["orbit_count"] for r in json.loads(out)}
        assert 12 not in counts
        assert {n: counts[n] for n in (10, 11, 14, 15)} == {10: 2, 11: 6, 14: 4, 15: 8}
        assert "skipping n=12" in err

    def test_special_cases(self, capsys):
        code, out, _ = run(capsys, "count", "--from", "1", "--to", "2", "--format", "json")
        assert code == 0
        assert [r["orbit_count"] for r in json.loads(out)] == [2, 2]

    def test_only_non_squarefree(self, capsys):
        code, out, err = run(capsys, "count", "--from", "12", "--to", "12", "--format", "json")
        assert code == 0
        assert json.loads(out) == []
        assert "n=12" in err

    def test_json_schema(self, capsys):
        _, out, _ = run(capsys, "count", "--from", "15", "--to", "15", "--format", "json")
        (rec,) = json.loads(out)
        assert rec["signatures"]["15"] == [[15, 15, 16], [15, 8, 30]]
        assert rec["E"]["15"] == 2
        assert rec["closed_form_count"] == rec["enumerative_count"] == 8

    def test_csv_matches_json(self, capsys):
        _, js, _ = run(capsys, "count", "--from", "1", "--to", "40", "--format", "json")
        _, cs, _ = run(capsys, "count", "--from", "1", "--to", "40", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(cs)))
        recs = json.loads(js)
        assert len(rows) == len(recs)
        for row, rec in zip(rows, recs):
            assert {k: int(v) for k, v in row.items()} == {k: rec[k] for k in row}

    def test_text(self, capsys):
        code, out, _ = run(capsys, "count", "--from", "14", "--to", "14")
        assert code == 0
        assert out.startswith("n=14: 4 orbits")

    def test_out_file_and_threads(self, capsys, tmp_path):
        serial, threaded = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["count", "--from", "1", "--to", "60", "--format", "json", "--out", str(serial)]) == 0
        assert main(["count", "--from", "1", "--to", "60", "--format", "json",
                     "--out", str(threaded), "--threads", "4"]) == 0
        assert serial.read_bytes() == threaded.read_bytes()

    def test_threads_from_env(self, capsys, monkeypatch):
        monkeypatch.setenv("HECKE_ORBITS_THREADS", "3")
        code, out, _ = run(capsys, "count", "--from", "1", "--to", "5", "--format", "csv")
        assert code == 0 and out.count("\n") == 5  # header + 1,2,3,5

    def test_bad_range_is_usage_error(self, capsys):
        code, _, err = run(capsys, "count", "--from", "9", "--to", "3")
        assert code == 1 and "empty range" in err

    def test_unwritable_output(self, capsys, tmp_path):
        code, _, err = run(capsys, "count", "--from", "1", "--to", "2", "--out", str(tmp_path / "no" / "x"))
        assert code == 1 and "I/O" in err

    def test_failed_cross_check_exits_2(self, capsys, monkeypatch):
        import hecke_orbits.counting as counting

        monkeypatch.setattr(counting, "orbit_count_closed_form", lambda n: -1)
        code, _, err = run(capsys, "count", "--from", "3", "--to", "3")
        assert code == 2 and "formula-equality" in err


class TestEnumerate:
    def test_n14(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--n", "14")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "n=14: 4 canonical classes"
        assert sum(line.startswith("PIPair") for line in lines) == 2
        assert sum(line.startswith("TNQuadruplet") for line in lines) == 2
        assert "(0 + sqrt(-14))/2" in out

    def test_n2(self, capsys):
        _, out, _ = run(capsys, "enumerate", "--n", "2", "--format", "json")
        doc = json.loads(out)
        assert [len(c["members"]) for c in doc["classes"]] == [1, 1]
        assert {c["kind"] for c in doc["classes"]} == {"PIPair"}

    def test_n11(self, capsys):
        _, out, _ = run(capsys, "enumerate", "--n", "11", "--format", "json")
        doc = json.loads(out)
        assert len(doc["classes"]) == 6
        assert all(c["kind"] == "TNQuadruplet" for c in doc["classes"])

    def test_not_squarefree(self, capsys):
        code, _, err = run(capsys, "enumerate", "--n", "12")
        assert code == 2 and "square-free" in err


class TestReduce:
    def test_golden(self, capsys):
        code, out, _ = run(capsys, "reduce", "--n", "2", "--a", "2", "--c", "2")
        assert code == 0
        assert out == (DATA / "reduce_n2_a2_c2.txt").read_text()

    def test_already_canonical(self, capsys):
        code, out, _ = run(capsys, "reduce", "--n", "5", "--a", "1", "--c", "-2")
        assert code == 0
        assert "step" not in out
        assert out.rstrip().endswith("witness: 1")

    def test_odd_denominator(self, capsys):
        code, _, err = run(capsys, "reduce", "--n", "5", "--a", "1", "--c", "3")
        assert code == 2
        assert "denominator must be even" in err


class TestVerify:
    def test_max_100(self, capsys):
        code, out, _ = run(capsys, "verify", "--max-n", "100")
        assert code == 0
        assert "0 failures" in out

    def test_max_2(self, capsys):
        code, out, _ = run(capsys, "verify", "--max-n", "2")
        assert code == 0 and "verified 2 square-free" in out

    def test_max_0(self, capsys):
        code, _, _ = run(capsys, "verify", "--max-n", "0")
        assert code == 1

    def test_reports_failures(self, capsys, monkeypatch):
        import hecke_orbits.cli as cli

        monkeypatch.setattr(cli, "bound_violations", lambda n: ["fake"] if n == 7 else [])
        code, out, _ = run(capsys, "verify", "--max-n", "10")
        assert code == 2
        assert "FAIL n=7: signature-bound" in out


class TestGraph:
    def test_depth_zero(self, tmp_path):
        out = tmp_path / "g.dot"
        assert main(["graph", "--n", "5", "--a", "1", "--c", "-2", "--depth", "0", "--out", str(out)]) == 0
        text = out.read_text()
        assert text.count("[label=") == 1 and "->" not in text

    def test_depth_one(self, tmp_path):
        out = tmp_path / "g.dot"
        main(["graph", "--n", "5", "--a", "1", "--c", "-2", "--depth", "1", "--out", str(out)])
        text = out.read_text()
        assert text.count("->") == 2
        assert text.count('class="') == 3
        assert 'label="X"' in text and 'label="Y"' in text

    def test_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.dot", tmp_path / "b.dot"
        for p in (a, b):
            main(["graph", "--n", "14", "--a", "2", "--c", "-6", "--depth", "6", "--out", str(p)])
        assert a.read_bytes() == b.read_bytes()

    def test_depth_too_large(self, capsys, tmp_path):
        code, _, _ = run(capsys, "graph", "--n", "5", "--a", "1", "--c", "-2", "--depth", "13",
                         "--out", str(tmp_path / "g.dot"))
        assert code == 1


def test_missing_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 1
