"""End-to-end checks of the ``pivot`` command line."""

import json
import subprocess
import sys

import pytest

from irvpivot import BallotProfile


def run_cli(*args, env=None):
    return subprocess.run(
        [sys.executable, "-m", "irvpivot.cli", *args],
        capture_output=True,
        text=True,
        env=env,
    )


@pytest.fixture
def profile_path(tmp_path):
    prof = BallotProfile(
        3,
        {(0, 1, 2): 12.0, (1, 2, 0): 10.0, (2, 0, 1): 9.0, (0, 2, 1): 8.0,
         (1, 0, 2): 6.0, (2, 1, 0): 5.0},
    )
    path = tmp_path / "profile.json"
    prof.dump(path)
    return str(path)


def test_compute(profile_path):
    res = run_cli("compute", "--profile", profile_path, "--ballot", "0,2,1")
    assert res.returncode == 0, res.stderr
    payload = json.loads(res.stdout)
    assert payload["ballot"] == [0, 2, 1]
    assert payload["p_total"] == payload["p_direct"] + payload["p_indirect"]
    assert payload["expected_utility"] is None


def test_compute_with_events_and_utilities(profile_path):
    res = run_cli(
        "compute", "--profile", profile_path, "--ballot", "0",
        "--utilities", "1,0.5,0", "--events",
    )
    payload = json.loads(res.stdout)
    assert payload["expected_utility"] is not None
    assert payload["events"], "expected an event dump"


def test_sweep(profile_path):
    res = run_cli("sweep", "--profile", profile_path, "--full-length-only")
    payload = json.loads(res.stdout)
    assert len(payload) == 6
    res_all = run_cli("sweep", "--profile", profile_path)
    assert len(json.loads(res_all.stdout)) == 15


def test_smdp(profile_path):
    res = run_cli("smdp", "--profile", profile_path)
    payload = json.loads(res.stdout)
    assert len(payload) == 3
    assert all(p["p_indirect"] == 0.0 for p in payload)
    res2 = run_cli("smdp", "--profile", profile_path, "--pairwise-approx")
    assert json.loads(res2.stdout) != payload


def test_oracle(profile_path):
    res = run_cli(
        "oracle", "--profile", profile_path, "--ballot", "0",
        "--draws", "20000", "--seed", "3",
    )
    payload = json.loads(res.stdout)
    assert payload["draws_used"] == 20000
    assert payload["p_total_hat"] == payload["p_direct_hat"] + payload["p_indirect_hat"]
    res2 = run_cli(
        "oracle", "--profile", profile_path, "--ballot", "0",
        "--draws", "20000", "--seed", "3",
    )
    assert res2.stdout == res.stdout


def test_experiment_reproducible_csv(tmp_path):
    args = (
        "experiment", "--dist", "powerlaw", "--kappas", "2,3", "--voters", "40",
        "--runs", "2", "--base-seed", "9",
    )
    out1, out2 = tmp_path / "r1.csv", tmp_path / "r2.csv"
    assert run_cli(*args, "--out", str(out1)).returncode == 0
    assert run_cli(*args, "--out", str(out2)).returncode == 0
    assert out1.read_bytes() == out2.read_bytes()
    header = out1.read_text().splitlines()[0]
    assert header == "run_id,kappa,system,distribution,total_pivot,seconds"


def test_experiment_dat_output(tmp_path):
    out = tmp_path / "r.csv"
    dat = tmp_path / "r.dat"
    res = run_cli(
        "experiment", "--dist", "uniform", "--kappas", "2", "--voters", "30",
        "--runs", "1", "--out", str(out), "--dat", str(dat),
    )
    assert res.returncode == 0, res.stderr
    assert dat.read_text().startswith("# run_id kappa system distribution total_pivot")


def test_tail_eps_env_override(profile_path):
    import os

    env = dict(os.environ, PIVOT_TAIL_EPS="not-a-number")
    res = run_cli("compute", "--profile", profile_path, "--ballot", "0", env=env)
    assert res.returncode != 0
    env = dict(os.environ, PIVOT_TAIL_EPS="1e-9")
    res = run_cli("compute", "--profile", profile_path, "--ballot", "0", env=env)
    assert res.returncode == 0


def test_bad_ballot_message(profile_path):
    res = run_cli("compute", "--profile", profile_path, "--ballot", "zero")
    assert res.returncode != 0
    assert "cannot parse ballot" in res.stderr
