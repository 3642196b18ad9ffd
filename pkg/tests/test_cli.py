import json
import subprocess
import sys

import pytest

from quatcones.cli import main

PROBLEM = {
    "field": {"kind": "rational"},
    "algebra": {"a": "2", "b": "3"},
    "involution": {"kind": "orthogonal", "v": ["0", "0", "0", "1"]},
    "element": ["4", "1", "1", "0"],
}
WORKED = {
    "case": "Case2i",
    "target": ["4", "1", "1", "0"],
    "generator": ["1", "0", "0", "0"],
    "beta": "1",
    "terms": [{"u": "1", "x": ["1", "1/2", "1/2", "0"]},
              {"u": "7/4", "x": ["1", "0", "0", "0"]}],
}


@pytest.fixture
def write(tmp_path):
    def _write(name, doc):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(path)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    return json.loads(capsys.readouterr().out), code


def test_member(capsys, write):
    assert run(capsys, "member", "--input", write("p.json", PROBLEM)) == ({"verdict": "PlusCone"}, 0)
    path = write("n.json", dict(PROBLEM, element=["0", "1", "0", "0"]))
    assert run(capsys, "member", "--input", path) == ({"verdict": "Neither"}, 1)
    assert run(capsys, "member", "--orientation", "-", "--input", write("p.json", PROBLEM)) == (
        {"verdict": "MinusCone"}, 1)


def test_nil(capsys, write):
    doc = dict(PROBLEM, involution={"kind": "symplectic"})
    assert run(capsys, "nil", "--input", write("s.json", doc)) == ({"nil": True}, 1)
    assert run(capsys, "nil", "--input", write("p.json", PROBLEM)) == ({"nil": False}, 0)


def test_verify_worked_certificate(capsys, write):
    out = run(capsys, "verify", "--input", write("p.json", PROBLEM),
              "--certificate", write("c.json", WORKED))
    assert out == ({"ok": True}, 0)
    bad = dict(WORKED, terms=[WORKED["terms"][0], {"u": "7/5", "x": ["1", "0", "0", "0"]}])
    doc, code = run(capsys, "verify", "--input", write("p.json", PROBLEM),
                    "--certificate", write("b.json", bad))
    assert code == 1 and doc["ok"] is False and "mismatch" in doc["reason"]


def test_classify_sign_hilbert(capsys, write):
    path = write("p.json", PROBLEM)
    doc, code = run(capsys, "classify", "--input", path)
    assert code == 0 and doc["kind"] == "orthogonal" and doc["case"] == "Case2i"
    assert len(doc["sym_basis"]) == 3
    assert run(capsys, "sign", "--input", path) == ({"signature": 2}, 0)
    doc, code = run(capsys, "hilbert", "--input", path)
    assert code == 0 and doc["division"] is True and doc["ramified"] == ["2", "3"]
    assert doc["symbols"] == {"inf": 1, "2": -1, "3": -1}


def test_certify_then_verify(capsys, write, tmp_path):
    path = write("p.json", PROBLEM)
    out = str(tmp_path / "cert.json")
    assert main(["certify", "--from-generator", "--input", path, "--output", out]) == 0
    assert run(capsys, "verify", "--input", path, "--certificate", out) == ({"ok": True}, 0)
    doc, code = run(capsys, "certify", "--relative-to", '["3", "1", "0", "0"]', "--input", path)
    assert code == 0 and doc["generator"] == ["3", "1", "0", "0"]
    cert = write("r.json", doc)
    assert run(capsys, "verify", "--input", path, "--certificate", cert) == ({"ok": True}, 0)


def test_not_in_cone_and_errors(capsys, write):
    path = write("n.json", dict(PROBLEM, element=["0", "1", "0", "0"]))
    doc, code = run(capsys, "certify", "--from-generator", "--input", path)
    assert code == 1 and doc["error"] == "NotInConeError"
    doc, code = run(capsys, "sign", "--input", write("x.json", dict(PROBLEM, element=["0", "0", "0", "1"])))
    assert code == 2 and doc["error"] == "NotSymmetricError"
    doc, code = run(capsys, "member", "--input", write("f.json", '{"field": 1.5}'))
    assert code == 2 and doc["error"] == "InputError"
    doc, code = run(capsys, "member", "--input", write("k.json", dict(PROBLEM, extra=1)))
    assert code == 2 and "unknown keys" in doc["message"]
    doc, code = run(capsys, "frobnicate")
    assert code == 2 and doc["error"] == "UsageError"
    doc, code = run(capsys, "certify", "--input", write("p.json", PROBLEM))
    assert code == 2 and doc["error"] == "UsageError"
    doc, code = run(capsys, "sign", "--input", write("s.json", dict(PROBLEM, involution={"kind": "symplectic"})))
    assert code == 1 and doc["error"] == "NilOrderingError"


def test_selftest_is_deterministic(capsys, write):
    path = write("p.json", PROBLEM)
    first = run(capsys, "selftest", "--input", path, "--seed", "9", "--trials", "15")
    second = run(capsys, "selftest", "--input", path, "--seed", "9", "--trials", "15")
    assert first == second and first[1] == 0 and first[0]["passed"]
    doc, code = run(capsys, "selftest", "--seed", "-1")
    assert code == 2


def test_module_entry_point(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps(PROBLEM))
    proc = subprocess.run([sys.executable, "-m", "quatcones", "member", "--input", str(path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"verdict": "PlusCone"}
    again = subprocess.run([sys.executable, "-m", "quatcones", "member", "--input", str(path)],
                           capture_output=True, text=True)
    assert again.stdout == proc.stdout
