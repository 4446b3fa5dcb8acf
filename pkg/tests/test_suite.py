"""Report shape, suite scopes, determinism, and witness replay."""

import json

import pytest

from smyth import CheckReport, RangeError, replay, run_suite
from smyth.report import FAIL, PASS, SKIPPED, failed, instance_text, passed, skipped
from smyth.suite import (
    FIXTURE_DOCS,
    PER_POSET_PROPERTIES,
    PROPERTIES,
    SUITE_GROUPS,
    check_payload,
)


def test_report_validation():
    ok = CheckReport("law", "{}", PASS)
    assert ok.ok and ok.verdict == "pass"
    with pytest.raises(RangeError):
        CheckReport("law", "{}", FAIL)  # fail needs a witness
    with pytest.raises(RangeError):
        CheckReport("law", "{}", SKIPPED)  # skip needs a reason
    with pytest.raises(RangeError):
        CheckReport("law", "{}", "maybe")
    skippy = CheckReport("law", "{}", SKIPPED, reason="why")
    assert skippy.ok


def test_report_helpers():
    instance = {"n": 1, "covers": []}
    assert passed("p", instance).instance == instance_text(instance)
    bad = failed("p", instance, law="x", got=3)
    assert bad.witness == {"instance": instance, "law": "x", "got": 3}
    assert not bad.ok
    assert skipped("p", instance, "because").reason == "because"


def test_report_json_deterministic():
    instance = {"b": 1, "a": 2}
    left = failed("p", instance, z=1, a=2).to_json()
    right = failed("p", instance, a=2, z=1).to_json()
    assert left == right
    parsed = json.loads(left)
    assert parsed["verdict"] == "fail"


def test_registry_shape():
    assert len(PROPERTIES) == 13
    assert len(PER_POSET_PROPERTIES) == 10
    for group, names in SUITE_GROUPS.items():
        for name in names:
            assert name in PROPERTIES, (group, name)
    assert set(SUITE_GROUPS) == {"embedding", "functor", "sigma", "all"}


def test_exhaustive_scope_counts():
    reports = run_suite("exhaustive-2")
    assert len(reports) == 3 * len(PER_POSET_PROPERTIES)
    assert all(r.ok for r in reports)


def test_exhaustive_3_all_green():
    reports = run_suite("exhaustive-3")
    assert len(reports) == 19 * len(PER_POSET_PROPERTIES)
    assert not [r for r in reports if r.verdict == "fail"]


def test_fixture_scope_green():
    reports = run_suite("fixtures")
    assert not [r for r in reports if r.verdict == "fail"]
    names = {r.property for r in reports}
    assert "fixture-expectations" in names
    assert "fixture-vee-to-chain" in names
    assert "fixture-discrete-collapse" in names


def test_random_scope_deterministic():
    left = [r.to_json() for r in run_suite("random:6:4:11")]
    right = [r.to_json() for r in run_suite("random:6:4:11")]
    assert left == right
    assert len(left) == 6 * len(PER_POSET_PROPERTIES)


def test_bad_scopes():
    for scope in ("exhaustive-x", "random:1:2", "random:a:b:c", "nope"):
        with pytest.raises(RangeError):
            run_suite(scope)


def test_check_payload_groups():
    payload = dict(FIXTURE_DOCS[0])
    for group, names in SUITE_GROUPS.items():
        reports = check_payload(payload, group)
        # the expect block appends the fixture-expectations property
        assert len(reports) == len(names) + 1
        assert all(r.ok for r in reports)
    with pytest.raises(RangeError):
        check_payload(payload, "bogus")


def test_check_payload_without_expect():
    payload = {"n": 2, "covers": [[0, 1]]}
    reports = check_payload(payload, "embedding")
    assert len(reports) == len(SUITE_GROUPS["embedding"])
    assert all(r.ok for r in reports)


def test_corrupted_expect_fails_and_replays():
    payload = dict(FIXTURE_DOCS[0])
    payload["expect"] = dict(payload["expect"], point_count=5)
    reports = check_payload(payload, "all")
    bad = [r for r in reports if r.verdict == "fail"]
    assert len(bad) == 1
    assert bad[0].property == "fixture-expectations"
    again = replay(bad[0])
    assert again.verdict == "fail"
    assert again.witness["instance"] == bad[0].witness["instance"]


def test_corrupted_cover_fails_and_replays():
    payload = {k: v for k, v in FIXTURE_DOCS[0].items()}
    payload["covers"] = [[0, 1], [1, 2]]
    reports = check_payload(payload, "all")
    bad = [r for r in reports if r.verdict == "fail"]
    assert bad, "a chain relabeled as the vee fixture must trip the expectations"
    for report in bad:
        assert replay(report).verdict == "fail"


def test_replay_round_trips_through_json():
    payload = dict(FIXTURE_DOCS[0])
    payload["expect"] = dict(payload["expect"], dimension=9)
    bad = [r for r in check_payload(payload, "all") if not r.ok]
    line = bad[0].to_json()
    parsed = json.loads(line)
    rebuilt = CheckReport(
        parsed["property"],
        parsed["instance"],
        parsed["verdict"],
        parsed.get("reason"),
        parsed.get("witness"),
    )
    assert replay(rebuilt).verdict == "fail"


def test_replay_needs_witness():
    with pytest.raises(RangeError):
        replay(CheckReport("embedding-theorem", "{}", PASS))


def test_fixture_docs_shape():
    assert len(FIXTURE_DOCS) == 4
    assert [doc["n"] for doc in FIXTURE_DOCS] == [3, 2, 3, 16]
    assert FIXTURE_DOCS[3]["expect"]["point_count"] == 69
