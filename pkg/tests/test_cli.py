import json
import subprocess
import sys

import jsonschema
import pytest

from tightclosure.cli import main, schema_path

FERMAT = """# Fermat cubic
ring R = char 7 vars x,y,z relations x^3+y^3-z^3 domain;
ideal I = x, y;
element z2 = z^2;
element zz = z;
task tc-hull R I bound 3;
task tc-membership R I z2;
task tc-membership R I zz;
task hk R I emax 1;
"""
MODELS = """ring R = char Z vars x,y,z relations x^3+y^3-z^3 domain;
ideal I = x, y;
task tc-hull R I bound 3;
"""
UNDETERMINED = """ring T = char 5 vars a,b,c,d relations b*c-a*d, b^3-a^2*c, c^3-b*d^2, a*c^2-b^2*d domain;
ideal A = a;
element w = b^2;
task tc-membership T A w emax 2 window 5;
"""


@pytest.fixture(scope="module")
def schema():
    return json.loads(schema_path().read_text())


def _run(tmp_path, capsys, text, *flags):
    path = tmp_path / "s.wb"
    path.write_text(text)
    code = main([str(path), *flags])
    return code, capsys.readouterr()


def test_fermat_json(tmp_path, capsys, schema):
    code, out = _run(tmp_path, capsys, FERMAT, "--json")
    assert code == 0
    doc = json.loads(out.out)
    jsonschema.validate(doc, schema)
    hull = doc["tasks"][0]["result"]
    assert [g["generator"] for g in hull["generators"]] == ["x", "y", "z^2"]
    assert doc["tasks"][1]["result"]["status"] == "IN_PROVED"
    assert doc["tasks"][2]["result"]["status"] == "OUT_EVIDENCE"


def test_text_output(tmp_path, capsys):
    code, out = _run(tmp_path, capsys, FERMAT)
    assert code == 0
    assert "== task tc-hull R I bound 3" in out.out
    assert "OUT_EVIDENCE" in out.out


def test_models_byte_stable(tmp_path, capsys, schema):
    _, one = _run(tmp_path, capsys, MODELS, "--json")
    _, four = _run(tmp_path, capsys, MODELS, "--json", "--threads", "4")
    assert one.out == four.out
    doc = json.loads(one.out)
    jsonschema.validate(doc, schema)
    models = doc["tasks"][0]["models"]
    assert models["agreement"]["message"] == "all fibers agree"
    assert models["agreement"]["value"] == ["x", "y", "z^2"]
    assert [s["prime"] for s in models["skipped"]] == [3]


def test_exit_codes(tmp_path, capsys, schema):
    code, out = _run(tmp_path, capsys, UNDETERMINED, "--json")
    assert code == 2
    jsonschema.validate(json.loads(out.out), schema)
    code, out = _run(tmp_path, capsys, "ring R = char 5 vars x, y;\nideal I = x;\ntask hk R I;\n", "--json")
    assert code == 1
    doc = json.loads(out.out)
    jsonschema.validate(doc, schema)
    assert doc["tasks"][0]["error"]["code"]
    code, out = _run(tmp_path, capsys, "ring R = char 5 vars x; ideal I = x, w;", "--json")
    assert code == 1
    assert json.loads(out.out)["error"]["line"] == 1


def test_console_entry_point_and_stdin():
    proc = subprocess.run([sys.executable, "-m", "tightclosure.cli", "-", "--json"],
                          input="ring R = char 5 vars x, y;\ntask dimension R;\n",
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["tasks"][0]["ok"]
