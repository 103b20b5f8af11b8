import csv
import io
import json
import os
import subprocess
import sys

import pytest

from kochtube.cli import main


def _run(*args, env=None):
    full = dict(os.environ, **(env or {}))
    return subprocess.run([sys.executable, "-m", "kochtube", *args], capture_output=True,
                          text=True, env=full, timeout=600)


def test_dims(capsys):
    assert main(["dims", "--n", "3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["dimensions"]) == 14
    assert {"re", "im", "line", "n", "magnitude"} <= set(doc["dimensions"][0])


def test_coeffs_json(capsys):
    assert main(["coeffs", "--N", "4", "--M", "20"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["meta"]["N_max"] == 4
    assert [row[0] for row in doc["b"]] == list(range(-4, 5))
    assert set(doc) == {"meta", "a", "b", "sigma", "tau"}


def test_h_profile(capsys):
    assert main(["h-profile", "--count", "11"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["x", "h_geometric", "h_tilde"]
    assert len(rows) == 12
    for r in rows[1:]:
        assert 0.0 <= float(r[1]) < 1.0 and 0.0 <= float(r[2]) < 1.0


def test_direct_csv_precision(capsys):
    assert main(["direct", "--eps", "0.1", "0.05"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["epsilon", "V", "term_G1", "term_G2", "h"]
    v = rows[1][1]
    assert float(v) == float(format(float(v), ".17g"))
    assert len(v.lstrip("-0.").replace(".", "").split("e")[0]) >= 15


def test_tube_json_and_file(tmp_path):
    out = tmp_path / "t.json"
    assert main(["tube", "--count", "2", "--N", "50", "--A-max", "100", "--format", "json",
                 "-o", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["columns"][:2] == ["epsilon", "V"]
    assert len(doc["rows"]) == 2


def test_output_is_byte_deterministic():
    a = _run("direct", "--count", "3")
    b = _run("direct", "--count", "3")
    assert a.returncode == 0
    assert a.stdout == b.stdout


def test_domain_error_exit_code():
    r = _run("direct", "--eps", "0.9")
    assert r.returncode == 2
    rec = json.loads(r.stderr.strip().splitlines()[-1])
    assert rec["error"] == "domain"


def test_jump_refused():
    r = _run("tube", "--eps", str(3.0**-2.5))
    assert r.returncode == 2


def test_usage_error():
    assert _run("nonsense").returncode == 2
    assert _run("tube", "--N", "many").returncode == 2


def test_bad_worker_env():
    r = _run("oracle", "--count", "1", "--samples", "10000", env={"KOCHTUBE_WORKERS": "x"})
    assert r.returncode == 2
    assert json.loads(r.stderr.strip())["error"] == "configuration"


def test_small_compare_passes():
    r = _run("compare", "--count", "2", "--samples", "200000", "--N", "100", "--A-max", "200")
    assert r.returncode == 0, r.stderr
    assert json.loads(r.stderr.strip())["verdict"] == "pass"


@pytest.mark.slow
def test_selftest():
    r = _run("selftest")
    assert r.returncode == 0, r.stdout
    assert "FAIL" not in r.stdout
