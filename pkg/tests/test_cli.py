"""Manifest handling, the verify orchestration, and the CLI surface."""

import copy
import json

import pytest

from latmirror import (
    DEFAULT_MANIFEST,
    FixtureError,
    ManifestError,
    load_cy3_fixture,
    load_fixture,
    parse_manifest,
    resolve_fixture,
    run_verify,
)
from latmirror.cli import main

GOOD_MANIFEST = {
    "version": "1",
    "fixtures": ["quintic.json", "bicubic.json"],
    "suites": [
        {"name": "cy3-sublattice", "params": {}},
        {"name": "cy1-quantization", "params": {"k_max": 10}},
    ],
}


def write_manifest(tmp_path, payload, name="m.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return path


# ----------------------------------------------------------- manifests ----

def test_manifest_round_trip(tmp_path):
    m = parse_manifest(write_manifest(tmp_path, GOOD_MANIFEST))
    assert m.version == "1"
    assert m.fixtures == ("quintic.json", "bicubic.json")
    assert [s.name for s in m.suites] == ["cy3-sublattice", "cy1-quantization"]
    assert m.suites[1].params == {"k_max": 10}


@pytest.mark.parametrize(
    "mutate",
    [
        lambda p: p.update(extra=1),
        lambda p: p.update(version="2"),
        lambda p: p.pop("version"),
        lambda p: p["suites"].append({"name": "no-such-suite"}),
        lambda p: p["suites"].append({"name": "cy3-skew", "params": {"bogus": 1}}),
        lambda p: p["suites"].append({"name": "cy3-skew", "typo": 1}),
        lambda p: p["suites"].append("cy3-skew"),
        lambda p: p["fixtures"].append("no_such_fixture.json"),
    ],
)
def test_manifest_rejects_static_garbage(tmp_path, mutate):
    payload = copy.deepcopy(GOOD_MANIFEST)
    mutate(payload)
    with pytest.raises(ManifestError):
        parse_manifest(write_manifest(tmp_path, payload))


def test_manifest_rejects_non_json(tmp_path):
    path = tmp_path / "m.json"
    path.write_text("{not json")
    with pytest.raises(ManifestError):
        parse_manifest(path)
    with pytest.raises(ManifestError):
        parse_manifest(tmp_path / "absent.json")


def test_manifest_base_dir_resolution(tmp_path):
    # fixtures can live next to the manifest rather than in the package
    src = resolve_fixture("quintic.json")
    (tmp_path / "local.json").write_text(src.read_text())
    payload = {"version": "1", "fixtures": ["local.json"], "suites": []}
    m = parse_manifest(write_manifest(tmp_path, payload))
    assert m.fixtures == ("local.json",)


# -------------------------------------------------------------- verify ----

def test_verify_default_manifest_passes():
    result = run_verify(parse_manifest(DEFAULT_MANIFEST))
    assert result.passed
    assert result.exit_code == 0
    assert {r.suite for r in result.reports} >= {"fixtures", "cy3-skew", "quant-bs"}


def test_verify_reports_corrupted_fixture_and_keeps_going(tmp_path):
    bad = json.loads(resolve_fixture("k3_quartic.json").read_text())
    bad["gram"] = [[3]]  # odd diagonal entry: semantically invalid
    (tmp_path / "bad_k3.json").write_text(json.dumps(bad))
    payload = {
        "version": "1",
        "fixtures": ["bad_k3.json"],
        "suites": [{"name": "cy1-quantization", "params": {"k_max": 5}}],
    }
    result = run_verify(parse_manifest(write_manifest(tmp_path, payload)))
    by_name = {r.suite: r for r in result.reports}
    assert not by_name["fixtures"].passed
    assert by_name["cy1-quantization"].passed  # run continued past the failure
    assert not result.passed
    assert result.exit_code == 1


def test_verify_json_report_is_deterministic(tmp_path):
    def strip_durations(doc):
        for rep in doc["reports"]:
            rep.pop("duration_s")
        return doc

    m = parse_manifest(write_manifest(tmp_path, GOOD_MANIFEST))
    a = strip_durations(run_verify(m).to_json())
    b = strip_durations(run_verify(m).to_json())
    assert a == b
    assert a["passed"] is True
    assert a["suites"] == {"total": 3, "failed": 0}


def test_verify_missing_suite_fixture_is_error_not_crash(tmp_path):
    # a suite whose fixture set lacks any threefold reports, not raises
    payload = {
        "version": "1",
        "fixtures": ["k3_quartic.json"],
        "suites": [{"name": "cy3-skew", "params": {"samples": 10}}],
    }
    result = run_verify(parse_manifest(write_manifest(tmp_path, payload)))
    by_name = {r.suite: r for r in result.reports}
    assert by_name["cy3-skew"].status == "error"
    assert not result.passed


# ------------------------------------------------------------ fixtures ----

def test_fixture_unknown_keys_rejected(tmp_path):
    doc = json.loads(resolve_fixture("quintic.json").read_text())
    doc["surprise"] = 1
    p = tmp_path / "q.json"
    p.write_text(json.dumps(doc))
    with pytest.raises(FixtureError):
        load_fixture(str(p))


def test_fixture_env_dir_override(tmp_path, monkeypatch):
    doc = json.loads(resolve_fixture("quintic.json").read_text())
    doc["label"] = "env-quintic"
    (tmp_path / "quintic.json").write_text(json.dumps(doc))
    monkeypatch.setenv("LATMIRROR_FIXTURE_DIR", str(tmp_path))
    assert load_cy3_fixture("quintic").label == "env-quintic"
    # names absent from the override still fall through to the package
    assert load_cy3_fixture("bicubic").label == "bicubic"


def test_fixture_wrong_shape_rejected(tmp_path):
    (tmp_path / "odd.json").write_text(json.dumps({"label": "x"}))
    with pytest.raises(FixtureError):
        load_fixture(str(tmp_path / "odd.json"))
    (tmp_path / "arr.json").write_text("[1, 2]")
    with pytest.raises(FixtureError):
        load_fixture(str(tmp_path / "arr.json"))


# ----------------------------------------------------------- CLI smoke ----

def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_cy1_paths(capsys):
    code, out, _ = run_cli(capsys, "cy1", "intersect", "--a", "1,0", "--b", "0,1")
    assert (code, out.strip()) == (0, "1")
    code, out, _ = run_cli(capsys, "cy1", "atiyah", "--a", "2", "--b", "2", "--json")
    assert code == 0
    assert json.loads(out) == {"terms": {"F_1": 1, "F_3": 1}, "dimension": 4}
    code, out, _ = run_cli(capsys, "cy1", "bs", "--level", "4")
    assert (code, out.split()) == (0, ["0", "1/4", "1/2", "3/4"])


def test_cli_cy2_paths(capsys):
    code, out, _ = run_cli(capsys, "cy2", "verify", "--l2-range", "2..8")
    assert code == 0
    assert out.strip().endswith("result: PASS")
    code, out, _ = run_cli(capsys, "cy2", "gft", "--l2", "6", "--json")
    assert code == 0
    assert json.loads(out)["e"] == "-3"  # -L^2/2
    code, _, _ = run_cli(
        capsys, "cy2", "check-H", "--gram", "0,1;1,-2", "--e", "1,0", "--s", "0,1"
    )
    assert code == 0
    code, _, _ = run_cli(
        capsys, "cy2", "check-H", "--gram", "2,0;0,2", "--e", "1,0", "--s", "0,1"
    )
    assert code == 1  # e is not isotropic: check failure, not usage error


def test_cli_cy3_paths(capsys):
    # ch(O(H)) on the quintic; the middle blocks use the dual pairing
    code, out, _ = run_cli(capsys, "cy3", "chi", "--bundle", "1:1:5/2:5/6")
    assert (code, out.strip()) == (0, "5")
    code, out, _ = run_cli(
        capsys, "cy3", "verify-isometry", "--samples", "40", "--json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["failures"] == 0 and doc["samples"] == 40


def test_cli_quant_paths(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "quant", "bs", "--level", "3")
    assert code == 0
    assert len(out.split()) == 3
    code, out, _ = run_cli(capsys, "quant", "theta-rank", "--level", "5")
    assert (code, out.strip()) == (0, "5")

    pts = [[i / 63, 2 * i / 63] for i in range(64)]
    curve = tmp_path / "seg.json"
    curve.write_text(json.dumps(pts))
    code, out, _ = run_cli(capsys, "quant", "phase", "--curve", str(curve), "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["deviation"] < 1e-12 and abs(doc["winding"]) < 1e-9


def test_cli_exit_code_1_on_numeric_disagreement(capsys, tmp_path):
    curve = tmp_path / "degenerate.json"
    curve.write_text(json.dumps([[0.25, 0.25]] * 20))
    code, _, err = run_cli(capsys, "quant", "phase", "--curve", str(curve))
    assert code == 1
    assert "check failed" in err


def test_cli_exit_code_2_paths(capsys, tmp_path):
    cases = [
        ("cy1", "intersect", "--a", "1,0", "--b", "1"),  # malformed pair
        ("cy3", "chi", "--bundle", "1:1:1/2"),  # wrong block count
        ("cy3", "chi", "--bundle", "1:1:1/2:1/6", "--fixture", "nope"),
        ("quant", "bs", "--level", "3", "--tol", "0.5"),  # tol precondition
        ("verify", "--manifest", str(tmp_path / "absent.json")),
        ("quant", "phase", "--curve", str(tmp_path / "absent.json")),
    ]
    for argv in cases:
        code, _, err = run_cli(capsys, *argv)
        assert code == 2, argv
        assert "error" in err
    with pytest.raises(SystemExit) as exc:  # argparse handles unknown verbs
        main(["cy1", "no-such-verb"])
    assert exc.value.code == 2


def test_cli_verify_default_pass(capsys):
    code, out, _ = run_cli(capsys, "verify")
    assert code == 0
    assert out.strip().endswith("result: PASS")


def test_cli_verify_json_failure_report(capsys, tmp_path):
    bad = json.loads(resolve_fixture("k3_quartic.json").read_text())
    bad["gram"] = [[3]]
    (tmp_path / "bad.json").write_text(json.dumps(bad))
    m = write_manifest(
        tmp_path, {"version": "1", "fixtures": ["bad.json"], "suites": []}
    )
    code, out, _ = run_cli(capsys, "verify", "--manifest", str(m), "--json")
    assert code == 1
    doc = json.loads(out)
    assert doc["passed"] is False
    assert doc["suites"]["failed"] == 1
