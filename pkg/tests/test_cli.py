import json
import os
import subprocess
import sys

import pytest

from toricoh.cli import emit_document, main, normalize_input, parse_document

SCROLL_DOC = {
    "fan": {
        "dim": 2,
        "rays": [[1, 0], [0, 1], [-1, 1], [0, -1]],
        "max_cones": [[1, 2], [2, 3], [3, 4], [4, 1]],
    }
}

P2_DOC = {
    "fan": {
        "dim": 2,
        "rays": [[1, 0], [0, 1], [-1, -1]],
        "max_cones": [[1, 2], [2, 3], [1, 3]],
    }
}

RING_DOC = {
    "ring": {"n": 2, "rho": [[1], [1]]},
    "ideal": {"gens": [[1, 0], [0, 1]]},
}


def run_cli(tmp_path, doc, command, *args, env=None):
    path = tmp_path / "input.json"
    path.write_text(json.dumps(doc))
    out = tmp_path / "report.json"
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    proc = subprocess.run(
        [sys.executable, "-m", "toricoh.cli", command, str(path)]
        + list(args)
        + ["--out", str(out)],
        capture_output=True,
        text=True,
        env=full_env,
    )
    report = json.loads(out.read_text()) if out.exists() and out.read_text() else None
    return proc.returncode, report, proc.stderr


def test_sigma_scroll(tmp_path):
    code, report, _ = run_cli(tmp_path, SCROLL_DOC, "sigma")
    assert code == 0
    sig = report["results"]["sigma_local"]
    assert sig["2"] == [{"I": [1, 3], "dim": 1}, {"I": [2, 4], "dim": 1}]
    assert sig["3"] == [{"I": [1, 2, 3, 4], "dim": 1}]
    assert sig["0"] == [{"I": [], "dim": 1}]
    sheaf = report["results"]["sigma_sheaf"]
    assert sheaf["1"] == sig["2"]
    assert report["characteristic"] == 0


def test_sigma_ring_ideal(tmp_path):
    code, report, _ = run_cli(tmp_path, RING_DOC, "sigma")
    assert code == 0
    assert report["results"]["sigma_local"]["2"] == [{"I": [1, 2], "dim": 1}]


def test_sigma_verify_ok_and_fault(tmp_path):
    code, report, _ = run_cli(tmp_path, SCROLL_DOC, "sigma", "--verify")
    assert code == 0
    assert report["results"]["verify"]["status"] == "ok"
    code, report, err = run_cli(
        tmp_path, SCROLL_DOC, "sigma", "--verify", env={"TORICOH_FAULT_INJECT": "sigma"}
    )
    assert code == 4
    assert report["results"]["verify"]["status"] == "mismatch"


def test_cohom_examples(tmp_path):
    code, report, _ = run_cli(tmp_path, P2_DOC, "cohom", "--i", "2", "--delta=-3")
    assert code == 0 and report["results"]["dimension"] == 1
    code, report, _ = run_cli(tmp_path, P2_DOC, "cohom", "--i", "0", "--delta", "2")
    assert code == 0 and report["results"]["dimension"] == 6
    code, report, _ = run_cli(tmp_path, P2_DOC, "cohom", "--i", "1", "--delta", "5")
    assert code == 0 and report["results"]["dimension"] == 0
    # profile: requesting --ell adds the truncation profile; at -4 the
    # three fiber points all have a -2 coordinate, so nothing is visible
    # below level 2
    code, report, _ = run_cli(tmp_path, P2_DOC, "cohom", "--i", "2", "--delta=-4", "--ell", "0")
    assert code == 0
    assert report["results"]["bound"] == 2
    profile = dict(map(tuple, report["results"]["ell_profile"]))
    assert profile == {0: 0, 1: 0, 2: 3}


def test_bound_examples(tmp_path):
    # paper (a,b)=(-3,-4) is internal delta (-1,-3) for this fan
    code, report, _ = run_cli(tmp_path, SCROLL_DOC, "bound", "--i", "2", "--delta=-1,-3")
    assert code == 0 and report["results"]["bound"] == 2
    assert all(row["f"] <= 2 for row in report["results"]["breakdown"])
    code, report, _ = run_cli(tmp_path, SCROLL_DOC, "bound", "--i", "5", "--delta=-1,-3")
    assert code == 0 and report["results"]["bound"] == 0


def test_bound_with_module(tmp_path):
    doc = dict(SCROLL_DOC)
    doc["module"] = {"shifts": [[0, 0], [-1, -1]]}
    code, report, _ = run_cli(tmp_path, doc, "bound", "--i", "2", "--delta=-1,-3")
    assert code == 0
    assert report["results"]["bound"] == 2


def test_finiteness_and_exit_code_3(tmp_path):
    code, report, _ = run_cli(tmp_path, P2_DOC, "finiteness")
    assert code == 0
    assert all(v["finite"] for v in report["results"]["verdicts"])
    noncomplete = {
        "fan": {
            "dim": 2,
            "rays": [[1, 0], [0, 1], [-1, 0]],
            "max_cones": [[1, 2], [2, 3]],
        }
    }
    code, report, _ = run_cli(tmp_path, noncomplete, "finiteness")
    assert code == 0
    bad = {tuple(v["I"]): v for v in report["results"]["verdicts"] if not v["finite"]}
    # both the sections row and the interesting subset are infinite here
    assert set(bad) == {(), (1, 3)}
    assert any(bad[(1, 3)]["certificate"])
    assert bad[(1, 3)]["hyperplane"] is not None
    # a dimension request in the infinite direction exits 3
    path = tmp_path / "nc.json"
    path.write_text(json.dumps(noncomplete))
    proc = subprocess.run(
        [sys.executable, "-m", "toricoh.cli", "cohom", str(path), "--i", "1", "--delta", "0"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 3
    payload = json.loads(proc.stdout)
    assert payload["error"] == "finiteness" and payload["I"] == [1, 3]


def test_oracle_check(tmp_path):
    code, report, _ = run_cli(tmp_path, SCROLL_DOC, "oracle-check")
    assert code == 0
    assert all(c["status"] == "ok" for c in report["results"]["checks"])
    code, report, _ = run_cli(
        tmp_path, SCROLL_DOC, "oracle-check", env={"TORICOH_FAULT_INJECT": "sigma"}
    )
    assert code == 4


def test_invalid_inputs(tmp_path):
    bad = {"fan": {"dim": 2, "rays": [[1, 0]], "max_cones": [[1]]}}
    code, _, err = run_cli(tmp_path, bad, "sigma")
    assert code == 2 and "invalid input" in err
    nonsq = {"ring": {"n": 2, "rho": [[1], [1]]}, "ideal": {"gens": [[2, 0]]}}
    code, _, err = run_cli(tmp_path, nonsq, "sigma")
    assert code == 2
    both = {"fan": P2_DOC["fan"], "ring": RING_DOC["ring"]}
    code, _, _ = run_cli(tmp_path, both, "sigma")
    assert code == 2


def test_char_flag(tmp_path):
    code, report, _ = run_cli(tmp_path, SCROLL_DOC, "sigma", "--char", "5")
    assert code == 0 and report["characteristic"] == 5
    code, _, _ = run_cli(tmp_path, SCROLL_DOC, "sigma", "--char", "6")
    assert code == 2


def test_roundtrip_and_determinism(tmp_path):
    doc = normalize_input(SCROLL_DOC)
    assert normalize_input(parse_document(emit_document(doc))) == doc
    _, r1, _ = run_cli(tmp_path, SCROLL_DOC, "sigma")
    text1 = emit_document(r1)
    _, r2, _ = run_cli(tmp_path, SCROLL_DOC, "sigma")
    assert text1 == emit_document(r2)
    assert parse_document(emit_document(r1)) == r1


def test_main_in_process(tmp_path):
    # exercise the entry point without a subprocess
    path = tmp_path / "in.json"
    path.write_text(json.dumps(P2_DOC))
    assert main(["sigma", str(path), "--out", str(tmp_path / "r.json")]) == 0
