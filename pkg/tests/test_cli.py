import json
import subprocess
import sys

from fractions import Fraction

import pytest

from pseudoperiodic import catalog
from pseudoperiodic.cli import run
from pseudoperiodic.generate import CurveDesign, OrbitDesign, realize
from pseudoperiodic.model import Valency, dump, to_json


def out(capsys, argv):
    code = run(argv)
    return code, capsys.readouterr()


def test_validate_ok(capsys):
    code, cap = out(capsys, ["validate", "builtin:nielsen-f1"])
    assert code == 0 and json.loads(cap.out) == {"valid": True, "violations": []}


def test_validate_invalid(capsys, tmp_path):
    doc = to_json(catalog.builtin_get("nielsen-f1").data)
    doc["curve_orbits"][0]["screw"] = "1"
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    code, cap = out(capsys, ["validate", str(p)])
    assert code == 2 and "i" in [v["check"] for v in json.loads(cap.out)["violations"]]
    assert run(["quotient", str(p)]) == 2


def test_malformed(capsys, tmp_path):
    p = tmp_path / "x.json"
    p.write_text("[]")
    assert run(["validate", str(p)]) == 1
    assert run(["validate", str(tmp_path / "missing.json")]) == 1
    assert run(["validate", "builtin:missing"]) == 1
    assert run(["catalog", "--name", "missing"]) == 1
    capsys.readouterr()


def test_quotient_json_and_dot(capsys, tmp_path):
    dot = tmp_path / "g.dot"
    code, cap = out(capsys, ["quotient", "builtin:kodaira-II*", "--dot", str(dot)])
    doc = json.loads(cap.out)
    assert code == 0 and len(doc["components"]) == 9
    assert dot.read_text().startswith("graph")
    code, cap = out(capsys, ["quotient", "builtin:kodaira-II*", "--format", "dot"])
    assert cap.out == dot.read_text()


def test_invariants(capsys):
    code, cap = out(capsys, ["invariants", "builtin:nielsen-f1"])
    doc = json.loads(cap.out)
    assert code == 0 and set(doc) == {"genus", "S_f", "Y_f", "c_f", "eta_f"}


def test_compare(capsys):
    code, cap = out(capsys, ["compare", "builtin:nielsen-f1", "builtin:nielsen-f2"])
    assert code == 3 and json.loads(cap.out)["verdict"] == "DISTINCT_ACTION"
    code, cap = out(capsys, ["compare", "builtin:nielsen-f1", "builtin:nielsen-f1"])
    assert code == 0 and json.loads(cap.out)["verdict"] == "INVARIANTS_EQUAL"
    assert run(["compare", "builtin:nielsen-f1", "builtin:identity-genus2"]) == 1
    capsys.readouterr()


def test_bounds_before_and_after(capsys, tmp_path):
    # one curve with screw -5 between two one-holed tori needs a chain of six entries
    d = realize([OrbitDesign(x, 1, 1, 1, [], [Valency(1, 0)]) for x in "AB"],
                [CurveDesign((0, 0), (1, 0), Fraction(-5))])
    p = tmp_path / "twist.json"
    dump(d, p)
    assert run(["--bounds", "4,5", "quotient", str(p)]) == 4
    assert run(["quotient", str(p), "--bounds", "4,5"]) == 4
    assert run(["quotient", str(p), "--bounds", "6,5"]) == 0
    capsys.readouterr()


def test_bad_bounds():
    with pytest.raises(SystemExit):
        run(["--bounds", "1,x", "quotient", "builtin:nielsen-f1"])


def test_catalog(capsys, tmp_path):
    code, cap = out(capsys, ["catalog"])
    assert [e["name"] for e in json.loads(cap.out)] == catalog.builtin_list()
    code, cap = out(capsys, ["catalog", "--name", "nielsen-f2"])
    assert json.loads(cap.out) == to_json(catalog.builtin_get("nielsen-f2").data)
    assert run(["catalog", "--export", str(tmp_path)]) == 0
    assert len(list(tmp_path.glob("*.json"))) == len(catalog.builtin_list())


def test_selfcheck(capsys):
    code, cap = out(capsys, ["selfcheck"])
    assert code == 0
    assert cap.out.count("PASS") == len(catalog.builtin_list())


def test_stdin_subprocess():
    doc = json.dumps(to_json(catalog.builtin_get("amphidrome-genus2").data))
    r = subprocess.run([sys.executable, "-m", "pseudoperiodic", "quotient", "-"], input=doc,
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and len(json.loads(r.stdout)["components"]) == 8
    r = subprocess.run([sys.executable, "-m", "pseudoperiodic", "validate", "-"], input="{oops",
                       capture_output=True, text=True, check=False)
    assert r.returncode == 1
