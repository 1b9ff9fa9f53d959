import json
import subprocess
import sys
import xml.dom.minidom

import pytest

from rank2ex import data
from rank2ex.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_roots(capsys):
    code, out, _ = call(capsys, "roots", "--type", "g2")
    assert code == 0
    d = json.loads(out)
    assert d["cartan_rows"] == [[2, -1], [-3, 2]]
    assert len(d["weyl_group"]) == 12


def test_verify_wb_g2(capsys):
    code, out, _ = call(capsys, "verify", "--type", "g2", "--collection", "wb-g2.json", "--order", "weak-bruhat")
    assert code == 0
    assert json.loads(out)["holds"] is True


def test_verify_raw_b2_names_pair(capsys, tmp_path):
    raw = tmp_path / "steinberg-raw.json"
    raw.write_text(json.dumps([list(w) for w in data.load_collection("steinberg-b2").weights]))
    code, out, _ = call(capsys, "verify", "--type", "b2", "--collection", str(raw), "--order", "weak-bruhat")
    assert code == 1
    (v,) = json.loads(out)["violations"]
    assert v["to"] == [-2, 1] and v["from"] == [0, 0]


def test_verify_total(capsys):
    code, out, _ = call(capsys, "verify", "--type", "b2", "--collection", "tot-b2")
    assert code == 0


def test_verify_malformed_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('[[0, 0],\n [1, ]]\n')
    code, out, err = call(capsys, "verify", "--type", "a2", "--collection", str(bad))
    assert code == 2
    assert f"{bad}:2:" in err
    assert out == ""


def test_verify_schema_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('[[0, 0], [1]]')
    code, _, err = call(capsys, "verify", "--type", "a2", "--collection", str(bad))
    assert code == 2 and "weights[1]" in err


def test_verify_wrong_size_weak_bruhat(capsys):
    code, _, err = call(capsys, "verify", "--type", "g2", "--collection", "tot-a2", "--order", "weak-bruhat")
    assert code == 2 and "needs 12 weights" in err


def test_missing_file(capsys):
    code, _, err = call(capsys, "verify", "--type", "a2", "--collection", "/nonexistent/x.json")
    assert code == 2 and "no such file" in err


def test_usage_errors(capsys):
    assert call(capsys, "roots", "--type", "e8")[0] == 2
    assert call(capsys, "facts", "--jobs", "0")[0] == 2
    assert call(capsys, "falsify", "--lemma", "lmp", "--radius-sq", "-4")[0] == 2
    assert call(capsys)[0] == 2


def test_steinberg(capsys):
    code, out, _ = call(capsys, "steinberg", "--type", "b2")
    assert code == 0
    d = json.loads(out)
    assert set(d["bases"]) == {"steinberg-b2", "wb-b2", "tot-b2"}
    assert all(b["oracle"] for b in d["bases"].values())


def test_facts_nodmz(capsys):
    code, out, _ = call(capsys, "facts", "--which", "nodmz", "--deterministic")
    assert code == 0
    d = json.loads(out)
    assert (d["candidates"], d["maximal_collections"], d["max_length"]) == (445, 160017, 10)
    assert d["elapsed_ms"] == 0


def test_deterministic_output_is_byte_identical(capsys):
    first = call(capsys, "facts", "--which", "nodmz", "--deterministic")[1]
    again = call(capsys, "facts", "--which", "nodmz", "--deterministic")[1]
    par = call(capsys, "facts", "--which", "nodmz", "--deterministic", "--jobs", "2")[1]
    assert first == again == par


def test_deterministic_falsify_across_jobs(capsys):
    a = call(capsys, "falsify", "--lemma", "baa", "--deterministic")[1]
    b = call(capsys, "falsify", "--lemma", "baa", "--deterministic", "--jobs", "2")[1]
    assert a == b


def test_falsify_exit_codes(capsys):
    assert call(capsys, "falsify", "--lemma", "lmp")[0] == 0
    code, out, _ = call(capsys, "falsify", "--lemma", "trig", "--radius-sq", "3600")
    assert code == 1
    assert json.loads(out)["counterexample"] is not None


def test_crab_svg(capsys, tmp_path):
    svg = tmp_path / "crab.svg"
    code, out, _ = call(capsys, "crab", "--svg", str(svg), "--extent", "10")
    assert code == 0
    doc = xml.dom.minidom.parse(str(svg))
    groups = {g.getAttribute("id"): g for g in doc.getElementsByTagName("g")}
    assert len(groups["crab-lines"].getElementsByTagName("line")) == 6
    assert len(groups["singular-lines"].getElementsByTagName("line")) == 6
    assert "stroke-dasharray" in groups["singular-lines"].attributes.keys()
    assert len(groups["twenty-weights"].getElementsByTagName("circle")) == 20
    assert len(groups["crab-points"].getElementsByTagName("circle")) == json.loads(out)["crab_points_within_extent"]


def test_quadric(capsys):
    code, out, _ = call(capsys, "quadric")
    assert code == 0 and json.loads(out)["holds"] is True


def test_text_and_csv_formats(capsys):
    code, out, _ = call(capsys, "roots", "--type", "a2", "--format", "text")
    assert code == 0 and out.startswith('type: "a2"')
    code, out, _ = call(capsys, "roots", "--type", "a2", "--format", "csv")
    assert out.splitlines()[0] == "root,functional"
    assert len(out.splitlines()) == 4


def test_output_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = call(capsys, "quadric", "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["holds"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rank2ex", "quadric"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["holds"]
