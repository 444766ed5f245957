import json

import pytest

from rsplab import frames
from rsplab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(out):
    return json.loads(out)


def strip_time(text):
    d = json.loads(text)
    d.pop("wall_time_s")
    return d


def test_scan_marks_1_2_4_8(capsys):
    code, out, _ = run(capsys, "scan", "--max-dim", "8")
    assert code == 0
    rows = report(out)["data"]["verdicts"]
    assert [r["dim"] for r in rows if r["realizable"]] == [1, 2, 4, 8]
    assert "odd" in rows[2]["note"]


def test_demo_minimum_round_trip(capsys):
    code, out, _ = run(capsys, "demo-minimum", "--dim", "4", "--target", "0.5,0.5,0.5,0.5", "--seed", "7")
    assert code == 0
    d = report(out)
    (t,) = d["transcripts"]
    assert abs(t["fidelity"] - 1) <= 1e-10
    assert t["transcript_version"] == 1 and 0 <= t["outcome"] < 4
    assert d["tolerances"] == {"check": 1e-10, "exact": 1e-12, "fidelity": 1e-10}


def test_target_is_normalized(capsys):
    code, out, _ = run(capsys, "demo-minimum", "--dim", "4", "--target", "1,1,1,1")
    assert code == 0
    assert report(out)["transcripts"][0]["target"][0] == [0.5, 0.0]


def test_demo_minimum_dimension_gate(capsys):
    code, out, err = run(capsys, "demo-minimum", "--dim", "3", "--target", "1,0,0")
    assert code == 2
    assert out == ""
    assert "dimension gate" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["demo-minimum", "--dim", "2", "--target", "1,1j"],
        ["demo-minimum", "--dim", "4", "--target", "1,0,0"],
        ["demo-minimum", "--dim", "2", "--target", "1,abc"],
        ["demo-minimum", "--dim", "2", "--target", "0,0"],
        ["demo-minimum", "--dim", "2", "--target", "1,0", "--trials", "0"],
        ["demo-equatorial", "--dim", "3", "--thetas", "0.1"],
        ["demo-equatorial", "--dim", "3", "--thetas", "0.1,2j"],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and "error" in err


def test_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["teleport"])
    assert exc.value.code == 2


def test_demo_equatorial(capsys):
    code, out, _ = run(capsys, "demo-equatorial", "--dim", "5", "--thetas", "0.1,0.2,0.3,0.4", "--seed", "3")
    assert code == 0
    t = report(out)["transcripts"][0]
    assert t["scheme"] == "equatorial" and t["alice_pre_rotation"] is not None
    assert abs(t["fidelity"] - 1) <= 1e-10


def test_demo_equatorial_defaults_to_zero_phases(capsys):
    code, out, _ = run(capsys, "demo-equatorial", "--dim", "1")
    assert code == 0 and report(out)["transcripts"][0]["outcome"] == 0


def test_trials(capsys):
    code, out, _ = run(capsys, "demo-minimum", "--dim", "8", "--target", "1,2,3,4,5,6,7,8", "--trials", "5")
    assert code == 0 and len(report(out)["transcripts"]) == 5


@pytest.mark.parametrize(
    "argv",
    [
        ["demo-minimum", "--dim", "8", "--target", "1,-2,3,0,5,6,0.5,8", "--seed", "11", "--trials", "3"],
        ["demo-equatorial", "--dim", "6", "--thetas", "1,2,3,4,5", "--seed", "11"],
        ["build-family", "--algebra", "octonions"],
    ],
)
def test_deterministic_reports(capsys, argv):
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert strip_time(first) == strip_time(second)
    a = first.splitlines()
    b = second.splitlines()
    assert [x for x in a if "wall_time_s" not in x] == [x for x in b if "wall_time_s" not in x]


def test_seed_from_environment(capsys, monkeypatch):
    argv = ["demo-minimum", "--dim", "8", "--target", "1,2,3,4,5,6,7,8", "--trials", "4"]
    monkeypatch.setenv("RSPLAB_SEED", "99")
    _, env_out, _ = run(capsys, *argv)
    _, flag_out, _ = run(capsys, *argv, "--seed", "99")
    assert report(env_out)["config"]["seed"] == 99
    assert strip_time(env_out) == strip_time(flag_out)
    monkeypatch.setenv("RSPLAB_SEED", "nope")
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_verify_reference_families(capsys):
    code, out, _ = run(capsys, "verify-family", "--dim", "4")
    assert code == 0
    code, out, _ = run(capsys, "verify-family", "--dim", "8")
    assert code == 1
    failed = [c["name"] for c in report(out)["checks"] if not c["pass"]]
    assert failed == ["reference-8:frame"]


def test_verify_external_file(capsys, tmp_path):
    path = tmp_path / "oct.json"
    path.write_text(json.dumps(frames.standard_family(8).to_dict()))
    code, out, _ = run(capsys, "verify-family", "--dim", "8", "--file", str(path))
    assert code == 0
    assert report(out)["data"]["family"] == frames.standard_family(8).to_dict()
    code, _, _ = run(capsys, "verify-family", "--dim", "4", "--file", str(path))
    assert code == 2
    code, _, _ = run(capsys, "verify-family", "--dim", "4", "--file", str(tmp_path / "missing.json"))
    assert code == 2


def test_build_family_exports_and_reconciles(capsys, tmp_path):
    out_path = tmp_path / "r.json"
    code, out, _ = run(capsys, "build-family", "--algebra", "quaternions", "--output", str(out_path))
    assert code == 0 and out == ""
    d = json.loads(out_path.read_text())
    assert d["data"]["reconciliation"]["exact_signed_permutation"] is True
    assert frames.FrameFamily.from_dict(d["data"]["family"]) == frames.reference_family(4)

    code, out, _ = run(capsys, "build-family", "--algebra", "octonions")
    assert code == 0
    rec = report(out)["data"]["reconciliation"]
    assert rec["exact_signed_permutation"] is False
    assert rec["matrices"][1]["mismatched_entries"] == [[6, 7], [7, 6]]


def test_dump_table(capsys):
    code, out, _ = run(capsys, "dump-table", "--algebra", "quaternions")
    assert code == 0
    entries = report(out)["data"]["table"]["entries"]
    assert {"i": 1, "j": 2, "k": 3, "sign": 1} in entries
    assert {"i": 2, "j": 1, "k": 3, "sign": -1} in entries


def test_check_all_reports_every_criterion(capsys):
    code, out, err = run(capsys, "check-all", "--seed", "0")
    checks = report(out)["checks"]
    assert len(checks) == 8
    assert code == (0 if all(c["pass"] for c in checks) else 1)
    assert err.count("PASS") + err.count("FAIL") == 8
