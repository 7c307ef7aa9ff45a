import io
import json
import subprocess
import sys

import pytest

from exceptional_primes import cli


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv, "--json")
    return code, json.loads(out)


def test_bound_n4():
    code, doc = run_json("bound", "--n", "4")
    assert code == 0
    assert doc["schema"] == "1" and doc["command"] == "bound"
    assert doc["result"]["reducible_candidates"] == [7]
    assert doc["result"]["dihedral_candidates"] == []
    assert doc["completeness"]["factorization_complete"] is True


def test_bound_n6():
    code, doc = run_json("bound", "--n", "6")
    assert code == 0 and doc["result"]["reducible_candidates"] == [19, 73]


def test_bound_odd_n_is_invalid():
    code, out, err = run("bound", "--n", "5")
    assert code == 3 and "odd" in err
    code, doc = run_json("bound", "--n", "5")
    assert code == 3 and doc["error"]["kind"] == "invalid-input"


def test_trusted_rules_cited():
    _, doc = run_json("bound", "--n", "4")
    cited = {p["rule"] for p in doc["provenance"]}
    used = {r["rule"] for e in doc["result"]["entries"] for r in e["justification"] if r["trusted"]}
    assert used <= cited
    assert all(p["statement"] for p in doc["provenance"])


def test_audit_witness():
    code, doc = run_json("audit", "--n", "4", "--ell", "7")
    assert code == 0 and doc["result"]["outcome"] == "witness-found"
    assert doc["result"]["witness"]["branch"] == "-1,-2"


def test_audit_not_a_candidate_and_refusal():
    code, doc = run_json("audit", "--n", "4", "--ell", "11")
    assert code == 0 and doc["result"]["outcome"] == "not-a-candidate"
    code, out, err = run("audit", "--n", "8", "--ell", "7")
    assert code == 3 and "EXCEPTIONAL_PRIMES_AUDIT_N_MAX" in err


def test_audit_with_dihedral_check():
    code, doc = run_json("audit", "--n", "4", "--ell", "5", "--force", "--dihedral")
    assert code == 0 and doc["result"]["dihedral_spotcheck"]["dihedral_pattern"] == []


@pytest.mark.parametrize("ell, r0, n", [(5, 3, 6), (7, 1, 6), (5, 1, 4)])
def test_plan(ell, r0, n):
    code, doc = run_json("plan", "--ell", str(ell), "--r0", str(r0))
    assert code == 0 and doc["result"]["n"] == n
    assert doc["result"]["guaranteed_exponent"] >= r0
    assert f"{6 * ell}" in doc["result"]["ramification"]


def test_dims():
    code, doc = run_json("dims", "--N", "162")
    r = doc["result"]
    assert code == 0 and (r["genus"], r["cuspidal_dimension"], r["sturm_bound"]) == (16, 32, 54)
    assert doc["completeness"]["consistent"] is True
    code, doc = run_json("dims", "--N", "1")
    assert code == 0 and doc["result"]["genus"] == 0


def test_dims_limit(monkeypatch):
    monkeypatch.setenv("EXCEPTIONAL_PRIMES_DIMS_MAX", "100")
    code, _, err = run("dims", "--N", "162")
    assert code == 3 and "EXCEPTIONAL_PRIMES_DIMS_MAX" in err


def test_fetch_offline(tmp_path):
    code, doc = run_json("fetch", "--N", "162", "--offline", "--cache-dir", str(tmp_path))
    assert code == 0 and doc["result"]["origin"] == "fixture"
    code, doc = run_json("fetch", "--N", "162", "--offline", "--cache-dir", str(tmp_path))
    assert doc["result"]["origin"] == "cache" and len(doc["result"]["newforms"]) == 4
    code, doc = run_json("fetch", "--N", "13", "--offline", "--cache-dir", str(tmp_path))
    assert code == 4 and doc["error"]["kind"] == "network"


@pytest.mark.parametrize(
    "argv",
    [
        ("bound", "--n", "4"),
        ("audit", "--n", "4", "--ell", "7"),
        ("plan", "--ell", "5", "--r0", "3"),
        ("dims", "--N", "54"),
    ],
)
def test_json_byte_identical_and_text_matches(argv):
    _, a, _ = run(*argv, "--json")
    _, b, _ = run(*argv, "--json")
    assert a == b
    _, text, _ = run(*argv)
    assert text == cli.render_text(json.loads(a)) + "\n"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "exceptional_primes", "bound", "--n", "4", "--json"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(proc.stdout)["result"]["reducible_candidates"] == [7]
