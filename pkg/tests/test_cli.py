import json

import pytest

from fincoh import catalog
from fincoh.cli import main


def _group_file(path, name):
    G = catalog.get(name)
    path.write_text(json.dumps({"name": name, "order": G.order, "table": [list(r) for r in G.table]}))
    return str(path)


@pytest.fixture
def files(tmp_path):
    z2 = _group_file(tmp_path / "z2.json", "Z2")
    z4 = _group_file(tmp_path / "z4.json", "Z4")
    inv = tmp_path / "inv.json"
    inv.write_text(json.dumps({"acting": z2, "target": z4, "images": {"1": [0, 3, 2, 1]}}))
    triv = tmp_path / "trivial.json"
    triv.write_text(json.dumps({"acting": z2, "target": z4, "images": {}}))
    return {"z2": z2, "z4": z4, "inv": str(inv), "trivial": str(triv), "dir": tmp_path}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_h1_inversion(capsys, files):
    code, out, _ = run(capsys, "h1", "--group", files["z4"], "--acting", files["z2"],
                       "--action", files["inv"])
    rep = json.loads(out)
    assert code == 0 and len(rep["classes"]) == 2 and rep["z1_size"] == 4
    assert rep["schema_version"] == "1"
    assert len(rep["group_table"]) == 2


def test_h1_trivial_acting(capsys):
    code, out, _ = run(capsys, "h1", "--group", "S3", "--acting", "Z1")
    assert code == 0 and len(json.loads(out)["classes"]) == 1


def test_h1_malformed_table(capsys, files):
    bad = files["dir"] / "bad.json"
    bad.write_text(json.dumps({"table": [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3],
                                         [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]}))
    code, _, err = run(capsys, "h1", "--group", str(bad), "--acting", "Z2")
    assert code == 2 and "NotAssociative" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "h1", "--group", "nope.json", "--acting", "Z2")
    assert code == 2 and "cannot read" in err


def test_bad_action(capsys, files):
    act = files["dir"] / "bad_action.json"
    act.write_text(json.dumps({"acting": "Z2", "target": "Z4", "images": {"1": [0, 1, 1, 3]}}))
    code, _, err = run(capsys, "h1", "--action", str(act))
    assert code == 2 and "NotAnAutomorphism" in err


def test_forms(capsys, files):
    code, out, _ = run(capsys, "forms", "--group", files["z4"], "--acting", files["z2"],
                       "--action", files["trivial"])
    rep = json.loads(out)
    assert code == 0 and rep["aut_h1_size"] == 2 and len(rep["forms"]) == 2


def test_torsors(capsys, files):
    code, out, _ = run(capsys, "torsors", "--action", files["inv"])
    assert code == 0 and json.loads(out)["torsor_classes"] == 2


def test_twist_trivial(capsys, files):
    sub = files["dir"] / "n.json"
    sub.write_text(json.dumps({"members": [0, 2]}))
    code, out, _ = run(capsys, "twist", "--action", files["inv"], "--cocycle", "trivial",
                       "--subgroup", str(sub))
    rep = json.loads(out)
    assert code == 0
    sel = rep["selected"]
    assert sel["fiber"] == [0] and sel["twisted_kernel_size"] == 1 and sel["bijection_ok"]


def test_twist_bad_cocycle(capsys, files):
    code, _, err = run(capsys, "twist", "--action", files["inv"], "--cocycle", "[1, 0]")
    assert code == 2 and "NotACocycle" in err


def test_verify_exit_codes(capsys):
    code, out, err = run(capsys, "verify", "--suite", "cardinality", "--count", "5")
    rep = json.loads(out)
    assert code == 0 and rep["passed"] and "cardinality" in err
    assert all(r["suite"] == "cardinality" for r in rep["results"])
    assert "not reproducible" in rep["scope_note"]
    code, _, _ = run(capsys, "verify", "--count", "-1")
    assert code == 2


def test_verify_exactness_trivial_subgroups(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "exactness", "--count", "10", "--full")
    rep = json.loads(out)
    assert code == 0
    assert any(r["subgroup"] == [0] and r["pass"] for r in rep["results"])


def test_reports_are_byte_identical(capsys, files):
    argv = ("verify", "--suite", "all", "--count", "4", "--seed", "3", "--full")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]
    a = files["dir"] / "a.json"
    b = files["dir"] / "b.json"
    for p in (a, b):
        assert main(["forms", "--action", files["inv"], "--output", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_failed_check_exits_one(capsys, monkeypatch):
    from fincoh import suites

    def broken(inst):
        return [suites.CheckResult("cardinality", "broken", inst, None, False, {})]
    monkeypatch.setitem(suites.CHECKS, "cardinality", broken)
    code, out, _ = run(capsys, "verify", "--suite", "cardinality", "--count", "3")
    rep = json.loads(out)
    assert code == 1 and not rep["passed"]
    assert rep["counterexample"]["check"] == "broken" and "action" in rep["counterexample"]
