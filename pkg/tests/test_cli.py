import json
import subprocess
import sys

import pytest

from kregular.cli import CACHE_ENV, main
from kregular.series import d_table, dumps_table, save_table


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_exact_output(capsys):
    code, out, _ = run(capsys, "exact", "--k", "2", "--t", "2", "--N", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# schema=kregular.exact/1 k=2 t=2 N=3"
    assert "3,1,2,3" in lines and "3,2,1,3" in lines
    # P_k is the total number of parts, zero at n = 0
    code, out, _ = run(capsys, "exact", "--k", "5", "--t", "3", "--N", "0")
    assert code == 0
    assert out.splitlines()[2:] == ["0,1,0,0", "0,2,0,0", "0,3,0,0"]


def test_exact_cache_is_byte_identical(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    _, cold, _ = run(capsys, "exact", "--k", "3", "--t", "4", "--N", "200")
    assert (tmp_path / "d_k3_t4_N200.krtb").exists()
    _, warm, _ = run(capsys, "exact", "--k", "3", "--t", "4", "--N", "200")
    monkeypatch.delenv(CACHE_ENV)
    _, none, _ = run(capsys, "exact", "--k", "3", "--t", "4", "--N", "200")
    assert cold == warm == none


def test_corrupt_cache_exit_code(capsys, tmp_path):
    blob = bytearray(dumps_table(d_table(2, 2, 50)))
    blob[30] ^= 0xFF
    (tmp_path / "d_k2_t2_N50.krtb").write_bytes(bytes(blob))
    code, out, err = run(capsys, "exact", "--k", "2", "--t", "2", "--N", "50", "--cache", str(tmp_path))
    assert code == 3 and out == ""
    rec = json.loads(err)
    assert rec["error"] == "integrity" and rec["header"]["N"] == 50


def test_usage_errors(capsys):
    assert run(capsys, "exact", "--k", "1", "--t", "2", "--N", "3")[0] == 2
    assert run(capsys, "exact", "--k", "2", "--t", "2", "--N", "-1")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["exact", "--k", "2"])
    assert info.value.code == 2


def test_inequality_exit_codes(capsys):
    code, out, _ = run(capsys, "inequality", "--k", "3", "--t", "2", "--r", "1", "--n", "1000000",
                       "--delta", "3.95")
    assert code == 0
    body = json.loads(out)
    assert body["schema"] == "kregular.inequality/1" and body["holds"] is True
    assert run(capsys, "inequality", "--k", "2", "--t", "2", "--r", "1", "--n", "300",
               "--delta", "8.6")[0] == 1
    code, _, err = run(capsys, "inequality", "--k", "2", "--t", "2", "--r", "1", "--n", "100",
                       "--delta", "8.6")
    assert code == 2 and "PreconditionError" in err


def test_find_n_exit_codes(capsys):
    code, out, _ = run(capsys, "find-n", "--k", "4", "--t", "2", "--delta", "2.8")
    assert code == 0
    body = json.loads(out)
    assert abs(body["N"] - 4130) <= 83 and body["certificate"]["passed"]
    assert run(capsys, "find-n", "--k", "2", "--t", "2", "--delta", "2.0")[0] == 2
    code, _, err = run(capsys, "find-n", "--k", "10", "--t", "2", "--delta", "1.4")
    assert code == 4 and json.loads(err)["error"] == "inconclusive"


def test_validate_suites(capsys):
    code, out, _ = run(capsys, "validate", "--suite", "arc-bounds", "--seed", "7", "--count", "20")
    body = json.loads(out)
    assert code == 0 and body["passed"] and body["seed"] == 7
    assert len(body["per_bound"]) == 8 and set(body["per_bound"].values()) == {20}
    code, out, _ = run(capsys, "validate", "--suite", "oracle", "--nmax", "12")
    assert code == 0 and json.loads(out)["failures"] == []
    code, out, _ = run(capsys, "validate", "--suite", "census", "--nmax", "300")
    body = json.loads(out)
    assert code == 0 and all(body["verdicts"].values())


def test_census_deterministic(capsys):
    a = run(capsys, "census", "--k", "2:4", "--t", "2:6", "--nmax", "60")
    b = run(capsys, "census", "--k", "2:4", "--t", "2:6", "--nmax", "60", "--workers", "2")
    assert a == b and a[0] == 0
    body = json.loads(a[1])
    assert body["schema"] == "kregular.check-report/1" and "runtime" not in body
    timed = json.loads(run(capsys, "census", "--k", "2", "--t", "2", "--nmax", "20", "--timing")[1])
    assert "runtime" in timed


def test_census_long_and_patterns(capsys, tmp_path):
    code, out, _ = run(capsys, "census-long", "--k", "3", "--t", "4", "--nmax", "200",
                       "--checkpoint", str(tmp_path / "ck"))
    assert code == 0 and json.loads(out)["verdicts"]
    code, out, _ = run(capsys, "patterns", "--t", "4:7")
    body = json.loads(out)
    assert code == 0 and body["all_equal"]


def test_figures_q_table(capsys, tmp_path, t4_tables):
    for k, tab in t4_tables.items():
        save_table(tab, tmp_path / f"d_k{k}_t4_N10000.krtb")
    code, out, _ = run(capsys, "figures", "--figure", "q-table", "--cache", str(tmp_path))
    lines = out.splitlines()
    assert code == 0 and len(lines) == 18
    assert float(lines[2].split(",")[-1]) == pytest.approx(1.02401, abs=1e-5)
    code, out, _ = run(capsys, "figures", "--figure", "q-table", "--format", "json",
                       "--cache", str(tmp_path))
    assert json.loads(out)["rows"][0]["Q"] == pytest.approx(1.02401, abs=1e-5)


def test_figures_nkt_single_cell(capsys, tmp_path):
    path = tmp_path / "nkt.csv"
    code, out, _ = run(capsys, "figures", "--figure", "nkt-table", "--cells", "4,2", "--out", str(path))
    assert code == 0 and out == ""
    rows = path.read_text().splitlines()
    assert rows[1] == "k,t,delta,N,certificate"
    k, t, d, N, cert = rows[2].split(",")
    assert (k, t, d, cert) == ("4", "2", "2.8", "pass") and abs(int(N) - 4130) <= 83


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kregular.cli", "exact", "--k", "2", "--t", "2",
                           "--N", "3"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "3,1,2,3" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "kregular.cli", "--help"], capture_output=True,
                          text=True, check=False)
    assert proc.returncode == 0 and "census-long" in proc.stdout
