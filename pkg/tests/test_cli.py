"""CLI surface: commands, formats, exit codes."""

import json
from pathlib import Path

import pytest

from smyth.cli import main
from smyth.suite import FIXTURE_DOCS

from conftest import assert_valid_dot

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def write_payload(tmp_path, payload, name="doc.json"):
    target = tmp_path / name
    target.write_text(json.dumps(payload))
    return str(target)


def vee_file(tmp_path):
    return write_payload(tmp_path, FIXTURE_DOCS[0], "vee.json")


def chain2_file(tmp_path):
    return write_payload(tmp_path, FIXTURE_DOCS[1], "chain2.json")


def test_shipped_fixtures_match_registry():
    names = ["vee.json", "chain2.json", "discrete3.json", "grid4x4.json"]
    for name, payload in zip(names, FIXTURE_DOCS):
        on_disk = json.loads((FIXTURES / name).read_text())
        assert on_disk == payload


def test_powerdomain_command(tmp_path, capsys):
    assert main(["powerdomain", vee_file(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert out == (
        "points: 4\n"
        "dimension: 2\n"
        "0: {a1}\n"
        "1: {a2}\n"
        "2: {a1,a2}\n"
        "3: {a1,a2,b}\n"
    )


def test_powerdomain_hat(tmp_path, capsys):
    assert main(["powerdomain", vee_file(tmp_path), "--hat"]) == 0
    out = capsys.readouterr().out
    assert "points: 5" in out
    assert "0: {}" in out


def test_powerdomain_inverse(tmp_path, capsys):
    assert main(["powerdomain", vee_file(tmp_path), "--inverse"]) == 0
    out = capsys.readouterr().out
    assert "points: 4" in out
    assert "0: {b}" in out


def test_powerdomain_dot_export(tmp_path, capsys):
    dot = tmp_path / "out.dot"
    assert main(["powerdomain", vee_file(tmp_path), "--dot", str(dot)]) == 0
    nodes, edges = assert_valid_dot(dot.read_text())
    assert (nodes, edges) == (4, 3)


def test_powerdomain_flag_conflict(tmp_path, capsys):
    with pytest.raises(SystemExit) as info:
        main(["powerdomain", vee_file(tmp_path), "--hat", "--inverse"])
    assert info.value.code == 2


def test_map_apply(tmp_path, capsys):
    code = main(
        [
            "map",
            "apply",
            vee_file(tmp_path),
            chain2_file(tmp_path),
            "--assign",
            "0:0,1:0,2:1",
        ]
    )
    assert code == 0
    assert capsys.readouterr().out == (
        "{a1} -> {c1}\n"
        "{a2} -> {c1}\n"
        "{a1,a2} -> {c1}\n"
        "{a1,a2,b} -> {c1,c2}\n"
    )


def test_map_apply_rejects_non_monotone(tmp_path, capsys):
    code = main(
        ["map", "apply", chain2_file(tmp_path), chain2_file(tmp_path), "--assign", "0:1,1:0"]
    )
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_map_apply_assignment_parsing(tmp_path, capsys):
    bad_assignments = ["0:0", "0:0,0:1,2:0", "0:0,1:0,2:9", "0=1", "x:0,1:0,2:1"]
    for assignment in bad_assignments:
        code = main(
            [
                "map",
                "apply",
                vee_file(tmp_path),
                chain2_file(tmp_path),
                "--assign",
                assignment,
            ]
        )
        assert code == 2, assignment
        assert "error:" in capsys.readouterr().err


def test_check_passes_on_fixture(tmp_path, capsys):
    assert main(["check", vee_file(tmp_path), "--suite", "all"]) == 0
    lines = capsys.readouterr().out.splitlines()
    reports = [json.loads(line) for line in lines]
    assert len(reports) == 11
    assert all(r["verdict"] != "fail" for r in reports)
    assert {r["property"] for r in reports} >= {
        "embedding-theorem",
        "functor-laws",
        "sup-extension",
        "fixture-expectations",
    }


def test_check_suite_choice(tmp_path, capsys):
    assert main(["check", vee_file(tmp_path), "--suite", "embedding"]) == 0
    reports = [json.loads(x) for x in capsys.readouterr().out.splitlines()]
    assert len(reports) == 6


def test_check_fails_on_corruption(tmp_path, capsys):
    payload = dict(FIXTURE_DOCS[0])
    payload["covers"] = [[0, 1], [1, 2]]
    target = write_payload(tmp_path, payload, "corrupt.json")
    assert main(["check", target, "--suite", "all"]) == 1
    lines = capsys.readouterr().out.splitlines()
    bad = [json.loads(x) for x in lines if json.loads(x)["verdict"] == "fail"]
    assert bad
    for report in bad:
        assert "witness" in report
        assert "instance" in report["witness"]


def test_check_default_suite_is_all(tmp_path, capsys):
    assert main(["check", vee_file(tmp_path)]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 11


def test_enumerate_posets(capsys):
    assert main(["enumerate-posets", "--n", "3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 19
    docs = [json.loads(line) for line in lines]
    assert all(doc["n"] == 3 for doc in docs)
    assert {"covers": [], "n": 3} in docs


def test_enumerate_posets_over_cap(capsys):
    assert main(["enumerate-posets", "--n", "7"]) == 2
    assert "error:" in capsys.readouterr().err


def test_iterate(tmp_path, capsys):
    assert main(["iterate", vee_file(tmp_path), "--k", "2"]) == 0
    assert capsys.readouterr().out == "sizes: 3 4 5\n"


def test_iterate_truncated(tmp_path, capsys):
    path = write_payload(tmp_path, FIXTURE_DOCS[2], "discrete3.json")
    assert main(["iterate", path, "--k", "3", "--capacity", "80"]) == 2
    captured = capsys.readouterr()
    assert captured.out == "sizes: 3 7 18\n"
    assert "capacity" in captured.err


def test_stats(tmp_path, capsys):
    assert main(["stats", chain2_file(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "n: 2\n" in out
    assert "chain: True\n" in out
    assert "phi_onto: True\n" in out
    assert "powerdomain_dimension: 1\n" in out


def test_missing_file(capsys):
    assert main(["stats", "/definitely/not/here.json"]) == 2
    assert "error:" in capsys.readouterr().err


def test_malformed_document(tmp_path, capsys):
    target = tmp_path / "bad.json"
    target.write_text('{"n": 2, "covers": [[0, 5]]}')
    assert main(["check", str(target)]) == 2
    assert "error:" in capsys.readouterr().err


def test_unknown_command():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_capacity_flows_through_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SPECTRAL_CAPACITY", "3")
    assert main(["powerdomain", vee_file(tmp_path)]) == 2
    assert "error:" in capsys.readouterr().err
    monkeypatch.delenv("SPECTRAL_CAPACITY")
    assert main(["powerdomain", vee_file(tmp_path)]) == 0
    capsys.readouterr()
