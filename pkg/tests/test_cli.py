import json
import subprocess
import sys

import pytest

from raidkit.cli import ReportTable, main


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_fj_exact2_at_zero_load(capsys):
    rc, out, _ = run(capsys, "queue", "fj", "--method", "exact2", "--rho", "0", "--R", "2", "--format", "json")
    assert rc == 0
    assert json.loads(out)["rows"][0][-1] == pytest.approx(3.0)


def test_azure_metrics(capsys):
    rc, out, _ = run(capsys, "code", "metrics", "--family", "azure-lrc", "--format", "json")
    assert json.loads(out)["rows"][0][3:] == [3.6, 6.0, 3.0]


def test_rdp_roundtrip(capsys):
    rc, out, _ = run(capsys, "code", "decode", "--family", "rdp", "--p", "5", "--erase-cols", "0,2")
    assert rc == 0 and "true" in out.lower()


def test_usage_errors(capsys):
    assert run(capsys, "code", "encode", "--family", "rdp", "--p", "6")[0] == 2
    assert run(capsys, "queue", "mm1", "--format", "yaml")[0] == 2
    assert run(capsys, "sim", "kofn", "--jobs", "0")[0] == 2
    assert run(capsys, "bogus")[0] == 2


def test_unstable_queue_rejected(capsys):
    rc, out, err = run(capsys, "queue", "mm1", "--lam", "2", "--m1", "1")
    assert rc == 2 and "utilization" in err and not out


def test_layout_json_roundtrip_and_check(capsys, tmp_path):
    rc, out, _ = run(capsys, "layout", "nrp", "--n", "10", "--g", "4", "--format", "json")
    assert rc == 0
    t = ReportTable.from_json(out)
    assert t.to_json() == json.dumps(json.loads(out), sort_keys=True) or json.loads(t.to_json()) == json.loads(out)
    p = tmp_path / "nrp.json"
    p.write_text(out)
    rc, out, _ = run(capsys, "layout", "check", "--input", str(p), "--format", "json")
    assert rc == 0 and "pass" in out.lower()


def test_formats_consistent(capsys):
    _, js, _ = run(capsys, "rel", "raid5", "--format", "json")
    _, csv, _ = run(capsys, "rel", "raid5", "--format", "csv")
    _, txt, _ = run(capsys, "rel", "raid5")
    head = json.loads(js)["headers"]
    assert csv.splitlines()[0] == ",".join(head)
    assert all(h in txt for h in head)


def test_env_format(capsys, monkeypatch):
    monkeypatch.setenv("RAIDKIT_FORMAT", "csv")
    _, out, _ = run(capsys, "queue", "mm1", "--lam", "0.5")
    assert "," in out.splitlines()[0]


def test_sim_jobs_identical(capsys):
    a = run(capsys, "sim", "kofn", "--replications", "300", "--seed", "4", "--format", "json")[1]
    b = run(capsys, "sim", "kofn", "--replications", "300", "--seed", "4", "--jobs", "3", "--format", "json")[1]
    assert a == b


def test_config_file(capsys, tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"seed": 9, "replications": 200}))
    a = run(capsys, "sim", "kofn", "--config", str(p), "--format", "json")[1]
    b = run(capsys, "sim", "kofn", "--seed", "9", "--replications", "200", "--format", "json")[1]
    assert json.loads(a)["rows"] == json.loads(b)["rows"]


def test_console_script_module():
    r = subprocess.run([sys.executable, "-m", "raidkit.cli", "queue", "mg1", "--lam", "0.5",
                        "--format", "csv"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout
