import json

import pytest

from superdenom.cli import main
from superdenom import denominators


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_verify_princ_gl21(capsys):
    code, out = run(
        capsys, "verify", "--identity", "princ-sd", "--family", "gl",
        "--m", "2", "--n", "1", "--orders", "all", "--depth", "5",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "pass"
    assert all(c["verdict"] == "pass" for c in doc["checks"])


def test_verify_glkk(capsys):
    code, out = run(capsys, "verify", "--identity", "glkk", "--k", "2", "--depth", "4")
    assert code == 0
    assert json.loads(out)["verdict"] == "pass"


def test_list_arc_diagrams_contains_gl54_reference(capsys):
    order = json.dumps(
        [{"kind": k, "idx": i, "sign": 1} for k, i in
         [("e", 1), ("d", 1), ("e", 2), ("d", 2), ("d", 3), ("e", 3), ("e", 4), ("d", 4), ("e", 5)]]
    )
    code, out = run(
        capsys, "list-arc-diagrams", "--family", "gl", "--m", "5", "--n", "4",
        "--orders", order,
    )
    assert code == 0
    doc = json.loads(out)
    assert any(sorted(map(tuple, X["arcs"])) == [(0, 3), (1, 2), (4, 5), (7, 8)] for X in doc)


def test_reduce_diagram(capsys):
    order = json.dumps([
        {"kind": "e", "idx": 1}, {"kind": "d", "idx": 1},
        {"kind": "e", "idx": 2}, {"kind": "d", "idx": 2},
    ])
    code, out = run(
        capsys, "reduce-diagram", "--family", "gl", "--m", "2", "--n", "2",
        "--order", order, "--arcs", "[[0,3],[1,2]]",
    )
    assert code == 0
    doc = json.loads(out)
    assert sorted(map(tuple, doc["result"]["arcs"])) == [(0, 1), (2, 3)]


def test_theta_table_contains_empty_partition(capsys):
    code, out = run(capsys, "theta-table", "--pair", "B", "--m", "1", "--n", "1", "--bound", "4")
    assert code == 0
    doc = json.loads(out)
    assert any(entry["partition"] == [0] for entry in doc)


def test_theta_verify(capsys):
    code, out = run(capsys, "theta-verify", "--pair", "GL", "--n", "1", "--p", "1", "--q", "1", "--depth", "5")
    assert code == 0
    assert json.loads(out)["verdict"] == "pass"


def test_kw_check(capsys):
    code, out = run(capsys, "kw-check", "--family", "gl", "--m", "2", "--n", "1", "--depth", "5")
    assert code == 0
    doc = json.loads(out)
    assert doc["chv"]["verdict"] == "pass" and doc["kwfor"]["verdict"] == "pass"


def test_dump_series_byte_stable(capsys):
    args = ("dump-series", "--family", "b", "--m", "1", "--n", "1", "--depth", "4")
    code1, out1 = run(capsys, *args)
    code2, out2 = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    coords = [tuple(t["coords2"]) for t in doc["terms"]]
    assert coords == sorted(coords)


def test_config_error_exit_2(capsys):
    code = main(["theta-verify", "--pair", "GL", "--n", "1"])  # missing p, q
    assert code == 2
    code = main(["verify", "--identity", "nonsense"])
    assert code == 2


def test_verification_failure_exit_1(capsys, monkeypatch):
    broken = denominators.IdentityReport(
        identity_kind="glkk", system="x", subset="k=2", depth=2, passed=False
    )
    import superdenom.cli as cli

    monkeypatch.setattr(cli, "verify_glkk", lambda k, depth: broken)
    code = main(["verify", "--identity", "glkk", "--k", "2"])
    assert code == 1
