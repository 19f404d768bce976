import json
import math
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from graphbell.cli import main, table1_rows

SCHEMAS = Path(__file__).resolve().parents[1] / "docs" / "schemas"


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_inequality_lc3(capsys):
    doc = run_json(capsys, "inequality", "--family", "LC", "--n", "3", "--theorem1", "-i", "2", "-I", "1,3")
    jsonschema.validate(doc, schema("inequality"))
    assert doc["inequality"]["classical_bound"] == 2
    assert doc["bounds"]["classical_max"] == 2
    assert doc["bounds"]["quantum_value"] == 4
    assert doc["bounds"]["violation"] == 2


def test_inequality_triangle(capsys):
    doc = run_json(capsys, "inequality", "--family", "FC", "--n", "3", "--triangle", "1,2,3")
    assert doc["bounds"]["violation"] == 2


def test_inequality_ardehali(capsys):
    doc = run_json(capsys, "inequality", "--family", "ST", "--n", "4", "--ardehali", "-i", "1", "-I", "2,3,4")
    jsonschema.validate(doc, schema("inequality"))
    assert doc["bounds"]["violation"] == pytest.approx(2 * math.sqrt(2), abs=1e-4)


def test_inequality_dense_and_lemma1(capsys):
    doc = run_json(
        capsys, "inequality", "--family", "LC", "--n", "5", "--theorem1", "-i", "3", "-I", "2,4", "--lemma1", "--dense"
    )
    jsonschema.validate(doc, schema("inequality"))
    assert doc["bounds"]["lemma1_used"] is True
    assert doc["dense"]["expectation"] == 4 and doc["dense"]["max_eigenvalue"] == 4


def test_inequality_from_file(tmp_path, capsys):
    path = tmp_path / "g.txt"
    path.write_text("# triangle\n3\n1 2\n2 3\n1 3\n")
    doc = run_json(capsys, "inequality", "--graph", str(path), "--basic")
    assert doc["bounds"]["violation"] == 2


def test_inequality_csv(capsys):
    code, out, _ = run(capsys, "inequality", "--family", "LC", "--n", "3", "--theorem1", "-i", "2", "-I", "1,3",
                       "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["label,n,classical_max,quantum_value,violation", '"B(2,{1,3})",3,2,4,2']


@pytest.mark.parametrize(
    "argv, needle",
    [
        (["inequality", "--family", "LC", "--n", "3", "--theorem1", "-i", "2", "-I", "1,2"], "neighbors"),
        (["inequality", "--family", "FC", "--n", "3", "--theorem1", "-i", "1", "-I", "2,3"], "independent"),
        (["inequality", "--theorem1", "-i", "2", "-I", "1,3"], "graph source"),
        (["inequality", "--family", "LC", "--n", "3", "--graph", "x.txt", "--basic"], "graph source"),
        (["inequality", "--graph", "/nonexistent/graph.txt", "--basic"], "cannot read"),
        (["inequality", "--family", "LC", "--n", "3", "--triangle", "1,2,3"], "triangle"),
        (["table1", "--max-n", "13"], "3..12"),
    ],
)
def test_precondition_failures_exit_2(capsys, argv, needle):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert needle in err


def test_resource_cap_exits_3(capsys):
    code, _, err = run(capsys, "facet", "--pattern", "mermin", "--parties", "6")
    assert code == 3 and "limit" in err
    code, _, _ = run(capsys, "inequality", "--family", "LC", "--n", "11", "--theorem1", "-i", "2", "-I", "1,3",
                     "--dense")
    assert code == 3


def test_table1_small(capsys):
    code, out, _ = run(capsys, "table1", "--max-n", "5")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "family,n,violation"
    assert "LC,5,2" in lines and "ST,5,4" in lines and "RC,3,2" in lines
    assert len(lines) == 1 + 3 * 3


def test_table1_json(capsys):
    doc = run_json(capsys, "table1", "--max-n", "4", "--format", "json")
    jsonschema.validate(doc, schema("table1"))
    assert doc["rows"][0] == {"family": "LC", "n": 3, "violation": 2}


def test_table1_rows_selected_entries():
    rows = {(r["family"], r["n"]): r["violation"] for r in table1_rows(9)}
    assert rows[("LC", 7)] == 4
    assert rows[("ST", 9)] == 16


def test_verify_lc4(capsys):
    doc = run_json(capsys, "verify-lc4")
    jsonschema.validate(doc, schema("verify_lc4"))
    assert doc["pass"] is True
    assert doc["psd"]["is_psd"] and doc["psd"]["min_eigenvalue"] >= -1e-9
    assert all(r["multiplicity"] == 2 for r in doc["inequalities"])
    assert all(p["multiplicity"] == 1 and abs(p["fidelity"] - 1) < 1e-8 for p in doc["pairwise"])


def test_facet_mermin_three_from_graph(capsys):
    doc = run_json(capsys, "facet", "--family", "LC", "--n", "3", "--theorem1", "-i", "2", "-I", "1,3")
    jsonschema.validate(doc, schema("facet"))
    assert doc["is_facet"] is True and doc["affine_rank"] == 7


def test_facet_ardehali_four_from_star(capsys):
    doc = run_json(capsys, "facet", "--family", "ST", "--n", "4", "--ardehali", "-i", "1", "-I", "2,3,4")
    jsonschema.validate(doc, schema("facet"))
    assert doc["parties"] == 4 and doc["bound"] == 4
    assert doc["is_facet"] is True and doc["affine_rank"] == 15


def test_facet_pattern_and_bound_override(capsys):
    doc = run_json(capsys, "facet", "--pattern", "chsh", "--parties", "2")
    assert doc["is_facet"] is True and doc["affine_rank"] == 3
    doc = run_json(capsys, "facet", "--pattern", "chsh", "--parties", "2", "--bound", "3")
    assert doc["saturating_count"] == 0 and doc["is_facet"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ["inequality", "--family", "ST", "--n", "11", "--theorem1", "-i", "1", "-I", "2,3,4,5,6,7,8,9,10,11"],
        ["facet", "--family", "ST", "--n", "5", "--theorem1", "-i", "1", "-I", "2,3,4,5"],
        ["verify-lc4"],
        ["table1", "--max-n", "6"],
    ],
)
def test_output_is_byte_identical_across_workers(capsys, argv):
    outs = set()
    for w in ("1", "3", "8"):
        code, out, _ = run(capsys, *argv, "--workers", w)
        assert code == 0
        outs.add(out)
    assert len(outs) == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "graphbell", "inequality", "--family", "FC", "--n", "3", "--triangle", "1,2,3"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["bounds"]["violation"] == 2
