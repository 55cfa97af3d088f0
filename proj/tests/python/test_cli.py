import json
import os
import subprocess

import pytest

CLI = os.environ.get("NOVBAR_CLI")

pytestmark = pytest.mark.skipif(CLI is None, reason="NOVBAR_CLI not set")


def run(*args, **kwargs):
    return subprocess.run([CLI, *args], capture_output=True, text=True, **kwargs)


def test_gen_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        r = run("gen", "--seed", "12", "--rank", "5", "--field", "F5", "--out", str(out))
        assert r.returncode == 0, r.stderr
    assert a.read_bytes() == b.read_bytes()


def test_barcode_matches_truth(tmp_path):
    c, t = tmp_path / "c.json", tmp_path / "t.json"
    run("gen", "--seed", "3", "--rank", "4", "--out", str(c), "--truth", str(t))
    r = run("barcode", "--input", str(c), "--oracle")
    assert r.returncode == 0, r.stderr
    report = json.loads(r.stdout)
    truth = json.loads(t.read_text())
    assert report["oracle_agrees"]
    assert report["B"] == truth["B"]
    assert report["torsion"] == truth["torsion"]


def test_validate_and_exit_codes(tmp_path):
    c = tmp_path / "c.json"
    run("gen", "--seed", "5", "--rank", "3", "--out", str(c))
    assert run("validate", "--input", str(c)).returncode == 0

    broken = tmp_path / "broken.json"
    broken.write_text("{ not json")
    r = run("validate", "--input", str(broken))
    assert r.returncode == 2
    assert "error" in r.stderr

    missing = run("validate", "--input", str(tmp_path / "nope.json"))
    assert missing.returncode == 2

    usage = run("barcode")  # missing required --input
    assert usage.returncode == 2


def test_bottleneck_files(tmp_path):
    a = tmp_path / "a.json"
    a.write_text(json.dumps({"finite": [{"start": "0", "end": "1", "mult": 1}]}))
    b = tmp_path / "b.json"
    b.write_text(json.dumps({"finite": [{"start": "0", "end": "6/5", "mult": 1}]}))
    r = run("bottleneck", str(a), str(b))
    assert r.returncode == 0
    assert r.stdout.strip() == "1/5"
    same = run("bottleneck", str(a), str(a))
    assert same.stdout.strip() == "0"


def test_tate_verify(tmp_path):
    c = tmp_path / "c.json"
    run("gen", "--seed", "3", "--rank", "2", "--field", "F3", "--free-rank", "0",
        "--out", str(c))
    r = run("tate", "--input", str(c), "--p", "3", "--verify")
    assert r.returncode == 0, r.stderr
    report = json.loads(r.stdout)
    assert report["pass"]
    # Size cap override is honored.
    capped = run("tate", "--input", str(c), "--p", "3", "--verify", "--max-rank", "4")
    assert capped.returncode == 2


def test_perturb_and_pipeline(tmp_path):
    c = tmp_path / "c.json"
    run("gen", "--seed", "9", "--rank", "2", "--field", "F2", "--free-rank", "0",
        "--out", str(c))
    blocks = tmp_path / "blocks.json"
    blocks.write_text(json.dumps({"blocks": [[0], [1]]}))
    # Entries of a strict generated complex sit above min-val = 1/4.
    r = run("perturb", "--input", str(c), "--split", str(blocks), "--eps", "1/4",
            "--trunc", "10")
    assert r.returncode == 0, r.stderr
    report = json.loads(r.stdout)
    assert report["exact"]
    assert report["certificate_pass"]

    p = run("pipeline", "--input", str(c), "--p", "2", "--seed", "42")
    assert p.returncode == 0, p.stderr
    assert json.loads(p.stdout)["pass"]


def test_suite_report(tmp_path):
    out = tmp_path / "report.json"
    r = run("suite", "modp", "--seed", "4", "--count", "3", "--out", str(out))
    assert r.returncode == 0, r.stderr
    report = json.loads(out.read_text())
    assert report["failures"] == 0
    assert any(chk["name"] == "witness-expected-difference" for chk in report["checks"])

    unknown = run("suite", "who-knows")
    assert unknown.returncode == 2
