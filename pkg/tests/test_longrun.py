"""Kill a checkpointed census mid-run and check that resuming reproduces the
uninterrupted result."""
import json
import os
import signal
import subprocess
import sys
import time

import pytest

from kregular.finite_check import CHECKPOINT_FORMAT, census, run_long_census
from kregular.series import k_regular_table, save_table

K, T, NMAX = 2, 5, 6000


@pytest.fixture(scope="module")
def reference():
    return census([K], [T], NMAX)


def _state(path):
    try:
        return json.loads((path / "state.json").read_text())
    except (FileNotFoundError, json.JSONDecodeError):
        return None


@pytest.mark.slow
def test_sigkill_and_resume(tmp_path, reference):
    ck = tmp_path / "ck"
    cmd = [sys.executable, "-m", "kregular.cli", "census-long", "--k", str(K), "--t", str(T),
           "--nmax", str(NMAX), "--checkpoint", str(ck), "--interval", "0.1", "--chunk", "20"]
    proc = subprocess.Popen(cmd, stdout=subprocess.DEVNULL, stderr=subprocess.DEVNULL)
    deadline = time.monotonic() + 120
    killed_at = None
    try:
        while time.monotonic() < deadline:
            st = _state(ck)
            if st and st["phase"] == "rows" and st["next_n"] > 100:
                os.kill(proc.pid, signal.SIGKILL)
                killed_at = st
                break
            if proc.poll() is not None:
                break
            time.sleep(0.02)
    finally:
        if proc.poll() is None:
            proc.kill()
        proc.wait()
    assert killed_at is not None, "run finished before it could be interrupted"
    assert killed_at["next_n"] <= NMAX
    resumed = run_long_census(K, T, NMAX, ck, log=lambda m: None)
    assert resumed.weak_counterexamples == reference.weak_counterexamples
    assert resumed.strict_counterexamples == reference.strict_counterexamples
    assert resumed.verdicts == reference.verdicts


def test_resume_from_partial_pk_phase(tmp_path):
    n_max = 400
    ref = census([3], [4], n_max)
    state = {"format": CHECKPOINT_FORMAT, "k": 3, "t": 4, "n_max": n_max, "phase": "pk",
             "pk_len": 151, "next_n": 1, "weak": [], "strict": []}
    save_table(k_regular_table(3, 150), tmp_path / "pk.krtb")
    (tmp_path / "state.json").write_text(json.dumps(state))
    rep = run_long_census(3, 4, n_max, tmp_path, log=lambda m: None)
    assert rep.to_json() == ref.to_json()


def test_resume_partial_rows(tmp_path):
    n_max = 500
    ref = census([2], [4], n_max)
    full = run_long_census(2, 4, n_max, tmp_path / "a", chunk=30, log=lambda m: None)
    assert full.to_json() == ref.to_json()
    # rewind the finished checkpoint to mid-rows, dropping later records
    st = json.loads((tmp_path / "a" / "state.json").read_text())
    cut = 211
    st.update(phase="rows", next_n=cut,
              weak=[c for c in st["weak"] if c[4] < cut],
              strict=[c for c in st["strict"] if c[4] < cut])
    (tmp_path / "a" / "state.json").write_text(json.dumps(st))
    again = run_long_census(2, 4, n_max, tmp_path / "a", chunk=30, log=lambda m: None)
    assert again.to_json() == ref.to_json()
