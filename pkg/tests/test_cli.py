import json
import os
import subprocess
import sys

import pytest

from quadhy.cli import main


def _run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_hy_example(capsys):
    code, out, _ = _run(["verify", "hy", "--family", "hq", "--p", "1,1.3333333333,2",
                         "--phase", "1,1,1,1,1"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert len(doc["results"]) == 3 * 5
    assert doc["meta"]["version"] == "v0.1.0"
    assert doc["meta"]["grid"] == {"lo": -16.0, "hi": 16.0, "count": 4096}
    assert {r["verdict"] for r in doc["results"]} == {"pass"}


def test_verify_oscdecay_example(tmp_path, capsys):
    out = tmp_path / "osc.json"
    code, _, _ = _run(["verify", "oscdecay", "--degree", "2", "--coeffs", "1",
                       "--lambdas", "16,64,256,1024,4096", "--out", str(out)], capsys)
    rep = json.loads(out.read_text())["results"][0]
    assert code == 0
    assert rep["kind"] == "decay" and abs(rep["slope"] + 0.5) <= 0.05
    assert rep["lambdas"] == [16.0, 64.0, 256.0, 1024.0, 4096.0]


def test_missing_config(capsys):
    code, _, err = _run(["--config", "/nonexistent/run.json", "verify"], capsys)
    assert code == 2 and "cannot read config" in err


@pytest.mark.parametrize("content, message", [
    ("{not json", "not valid JSON"),
    ('{"suites": ["hy"], "colour": 1}', "unknown config keys"),
    ('{"suites": ["hy"], "hy": {"famly": "hq"}}', "unknown keys in 'hy'"),
    ('{"suites": "hy"}', "suites must be"),
    ('{"suites": []}', "no suite selected"),
    ('{"suites": ["hy"], "corpus": "/nope.json"}', "does not exist"),
])
def test_bad_config(tmp_path, capsys, content, message):
    cfg = tmp_path / "run.json"
    cfg.write_text(content)
    code, _, err = _run(["verify", "--config", str(cfg)], capsys)
    assert code == 2 and message in err


def test_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"suites": ["hy"], "format": "csv",
                               "hy": {"family": "f1", "phase": "0,1,0,0,0", "p": [1, 1.5]}}))
    code, out, _ = _run(["verify", "--config", str(cfg)], capsys)
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("transform,corpus")
    assert {line.split(",")[2] for line in lines[1:]} == {"1", "1.5"}
    code, out, _ = _run(["verify", "--config", str(cfg), "--p", "2", "--format", "json"], capsys)
    doc = json.loads(out)
    assert {r["p"] for r in doc["results"]} == {2.0}
    assert {r["transform"] for r in doc["results"]} == {"F1"}


def test_suites_from_config(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"suites": ["minkowski", "oracle"],
                               "minkowski": {"tables": 3, "s": [1, 2]},
                               "oracle": {"count": 6}}))
    code, out, _ = _run(["verify", "--config", str(cfg)], capsys)
    kinds = [r["kind"] for r in json.loads(out)["results"]]
    assert code == 0 and kinds == ["minkowski"] * 6 + ["oracle"] * 6


def test_failures_exit_one(capsys):
    code, out, _ = _run(["verify", "unitarity"], capsys)
    assert code == 1
    assert {r["verdict"] for r in json.loads(out)["results"]} == {"fail"}


def test_untrusted_needs_flag(capsys):
    argv = ["--grid=-16,16,4096", "verify", "dirichlet", "--lambdas", "50,100,200"]
    code, out, _ = _run(argv, capsys)
    assert code == 1 and json.loads(out)["results"][0]["verdict"] == "untrusted"
    code, _, _ = _run(argv + ["--allow-untrusted"], capsys)
    assert code == 0


def test_determinism_and_atomic_write(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["verify", "hy", "--family", "t_lambda", "--phase", "0,1,0,0,0", "--lambda", "4"]
    assert _run(argv + ["--out", str(a)], capsys)[0] in (0, 1)
    assert _run(argv + ["--out", str(b)], capsys)[0] in (0, 1)
    assert a.read_bytes() == b.read_bytes()
    bad = tmp_path / "bad.json"
    code, _, err = _run(["verify", "hy", "--phase", "1,0,1,1,1", "--out", str(bad)], capsys)
    assert code == 2 and "b != 0" in err
    assert not bad.exists()
    assert sorted(p.name for p in tmp_path.iterdir()) == ["a.json", "b.json"]


def test_thread_env(monkeypatch, capsys):
    argv = ["verify", "hy", "--family", "f2", "--phase", "0.5,1,0,0,0"]
    serial = _run(argv, capsys)[1]
    monkeypatch.setenv("QUADHY_THREADS", "3")
    assert _run(argv, capsys)[1] == serial
    monkeypatch.setenv("QUADHY_THREADS", "many")
    assert _run(argv, capsys)[0] == 2


def test_constants(capsys):
    code, out, _ = _run(["constants", "--p", "2", "--b", "1"], capsys)
    rows = {line[:16].strip(): line.split()[-2:] for line in out.splitlines()[1:]}
    assert code == 0 and rows["C3 HQ"] == ["1", "1"]
    code, out, _ = _run(["constants", "--p", "1", "--c1", "2"], capsys)
    rows = {line[:16].strip(): line.split()[-2:] for line in out.splitlines()[1:]}
    assert rows["C1 T_lambda"] == ["2", "2"]
    code, out, _ = _run(["constants", "--p", "1.3333333333333333", "--n", "1"], capsys)
    rows = {line[:16].strip(): line.split()[-2:] for line in out.splitlines()[1:]}
    assert float(rows["beckner"][0]) == pytest.approx(0.93670, abs=5e-5)
    assert _run(["constants", "--p", "2.5"], capsys)[0] == 2


def test_corpus_list(capsys):
    code, out, _ = _run(["corpus", "list"], capsys)
    ids = [line.split("\t")[0] for line in out.splitlines()]
    assert code == 0 and ids == ["gauss_s0.5", "gauss_s1", "gauss_s2", "modgauss_w3", "bump_r2"]


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "nosuchsuite"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "quadhy.cli", "constants", "--p", "2"],
                         capture_output=True, text=True, env={**os.environ})
    assert res.returncode == 0 and "C3 HQ" in res.stdout
