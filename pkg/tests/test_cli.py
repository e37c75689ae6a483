from __future__ import annotations

import json
import os

import pytest

from zerosumlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


# --- happy paths, one per subcommand ------------------------------------------

def test_davenport(capsys):
    payload = run_json(capsys, "davenport", "Z3xZ3")
    assert payload["value_Dk"] == 5
    assert payload["value_dk"] == 4
    assert payload["schema_version"] == "1"


def test_davenport_with_k(capsys):
    assert run_json(capsys, "davenport", "Z2", "--k", "3")["value_Dk"] == 6


def test_dk_table_json(capsys):
    payload = run_json(capsys, "dk-table", "Z2xZ2", "--k-upto", "3")
    assert [r["value_Dk"] for r in payload["rows"]] == [3, 5, 7]


def test_eta(capsys):
    assert run_json(capsys, "eta", "Z2xZ2")["eta"] == 4


def test_linearity(capsys):
    payload = run_json(capsys, "linearity", "Z3", "--k-upto", "4")
    assert payload["slope"] == 3
    assert payload["status"] == "stabilized"


def test_support_lemma(capsys):
    payload = run_json(capsys, "support-lemma", "5", "1,3")
    assert payload["sequence"] == "[1,1,3]"
    assert payload["length"] == 3


def test_product_bound(capsys):
    payload = run_json(capsys, "product-bound", "Z2", "Z2", "--r", "1", "--s", "2")
    assert payload["tight"]
    assert payload["lhs_D_r_plus_s_minus_1"] == 5


def test_beta_regular(capsys):
    assert run_json(capsys, "beta", "reg(Z3)")["beta"] == 3


def test_beta_induced(capsys):
    assert run_json(capsys, "beta", "ind(SD(3,2,2))")["beta_1"] >= 1


def test_crosscheck(capsys):
    payload = run_json(capsys, "crosscheck", "Z2", "--k", "2")
    assert payload["beta"] == payload["davenport"] == 4


def test_sigma_zpzd(capsys):
    payload = run_json(capsys, "sigma-zpzd", "SD(3,2,2)")
    assert payload["sigma"] == 3


def test_sigma_az2(capsys):
    payload = run_json(capsys, "sigma-az2", "6", "2")
    assert payload["bound"] == 2


def test_ring_beta(capsys):
    payload = run_json(
        capsys, "ring-beta", "--gens", "a:1,b:3",
        "--rels", "b^3-a^9, a*b^2-a^7", "--k", "2", "--cutoff", "30",
    )
    assert payload["beta"] == 6
    assert payload["status"] == "verified-up-to-cutoff"


def test_verify_all_filtered(capsys):
    payload = run_json(capsys, "verify-all", "--groups", "Z2")
    assert payload["passed"]
    assert payload["counts"]["fail"] == 0


# --- output modes ----------------------------------------------------------------

def test_dk_table_csv(capsys):
    code, out, err = run(capsys, "dk-table", "Z2", "--k-upto", "3", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k,D_k,d_k,witness"
    assert lines[1].startswith("1,2,1,")
    assert len(lines) == 4


def test_csv_rejected_elsewhere(capsys):
    code, out, err = run(capsys, "eta", "Z2", "--format", "csv")
    assert code == 2
    assert "csv" in err


def test_out_writes_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, err = run(capsys, "eta", "Z3", "--out", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["eta"] == 3


def test_out_unwritable_path(capsys, tmp_path):
    target = tmp_path / "missing_dir" / "report.json"
    code, out, err = run(capsys, "eta", "Z3", "--out", str(target))
    assert code == 2
    assert err.startswith("error: cannot write")


def test_json_is_sorted_and_versioned(capsys):
    code, out, err = run(capsys, "eta", "Z2")
    payload = json.loads(out)
    assert list(payload) == sorted(payload)
    assert payload["schema_version"] == "1"


# --- exit codes --------------------------------------------------------------------

def test_parse_error_exits_2(capsys):
    code, out, err = run(capsys, "davenport", "Zx")
    assert code == 2
    assert "error:" in err


def test_domain_error_exits_2(capsys):
    code, out, err = run(capsys, "davenport", "SD(3,2,2)")
    assert code == 2
    code, out, err = run(capsys, "sigma-zpzd", "Z4")
    assert code == 2


def test_capacity_exits_3(capsys):
    code, out, err = run(capsys, "davenport", "Z64")
    assert code == 3
    assert "capacity:" in err


def test_budget_exhaustion_exits_3(capsys):
    code, out, err = run(capsys, "dk-table", "Z3xZ3", "--k-upto", "3",
                         "--budget-seconds", "1e-9")
    assert code == 3


def test_failed_verification_exits_1(capsys, monkeypatch):
    import zerosumlab.suite as suite

    # plant a wrong frozen value so the suite genuinely fails
    monkeypatch.setitem(suite.GOLDEN["davenport-baselines"], "Z2", 3)
    code, out, err = run(capsys, "verify-all", "--groups", "Z2")
    assert code == 1
    assert json.loads(out)["passed"] is False


# --- the k_max cache ------------------------------------------------------------------

def test_cache_spill_and_reload(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("ZSL_CACHE_DIR", str(tmp_path))
    code, _, _ = run(capsys, "davenport", "Z2xZ2", "--k", "2")
    assert code == 0
    cache_file = tmp_path / "zsl_kmax_cache.json"
    assert cache_file.exists()
    data = json.loads(cache_file.read_text())
    assert data["schema_version"] == 1
    assert data["entries"]
    # a second invocation loads the cache without error
    code, _, _ = run(capsys, "davenport", "Z2xZ2", "--k", "2")
    assert code == 0
