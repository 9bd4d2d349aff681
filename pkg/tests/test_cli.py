import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from qverify import cli
from qverify.report import FAIL, PASS, Mismatch, VerificationReport


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


# --- reports -----------------------------------------------------------------------------


def test_report_invariant():
    with pytest.raises(ValueError):
        VerificationReport("x", {}, 5, FAIL)
    with pytest.raises(ValueError):
        VerificationReport("x", {}, 5, PASS, Mismatch(1, 1, Fraction(0), Fraction(1)))
    with pytest.raises(ValueError):
        VerificationReport("x", {}, 5, "maybe")


@pytest.mark.parametrize("report", [
    VerificationReport("id_kp", {}, 200, PASS, None, 12),
    VerificationReport("eq_2_19", {"k": 3}, 40, FAIL, Mismatch.at(7, 2, Fraction(-3, 4), 5, "n=2"), 3),
    VerificationReport("bad", {"k": 1}, 40, "error", None, 0, "ParameterError: k"),
])
def test_report_json_round_trip(report):
    line = report.to_json()
    assert VerificationReport.from_json(line) == report
    rec = json.loads(line)
    assert set(rec) >= {"identity", "params", "order", "status", "first_mismatch", "ms"}
    if report.first_mismatch:
        assert rec["first_mismatch"]["lhs"] == "-3/4" and rec["first_mismatch"]["rhs"] == "5/1"
        assert (rec["first_mismatch"]["exp_num"], rec["first_mismatch"]["exp_den"]) == (7, 2)


# --- list ----------------------------------------------------------------------------------


def test_list_default_and_pattern():
    code, text = run("list")
    assert code == 0
    ids = [line.split("\t")[0] for line in text.splitlines()]
    assert {"eq_2_13", "eq_D1", "id_kp", "pair_thm21"} <= set(ids)
    code, text = run("list", "--id", "pair_*")
    assert len(text.splitlines()) == 5


def test_list_json_records():
    code, text = run("list", "--json", "--id", "eq_2_19")
    (rec,) = [json.loads(line) for line in text.splitlines()]
    assert set(rec) >= {"id", "anchor", "defaults"}
    assert rec["defaults"] == {"order": 40, "k": [2, 3, 4, 6]}


# --- verify ----------------------------------------------------------------------------------


def test_verify_pass_exit_zero():
    code, text = run("verify", "--id", "id_kp", "--order", "100")
    assert code == 0 and text.startswith("PASS  id_kp")


def test_verify_k_list():
    code, text = run("verify", "--id", "eq_2_19", "--k", "2,3,4,6", "--order", "40", "--json")
    recs = [json.loads(line) for line in text.splitlines()]
    assert code == 0 and [r["params"]["k"] for r in recs] == [2, 3, 4, 6]
    assert all(r["status"] == "pass" for r in recs)


def test_verify_fail_exit_one():
    code, text = run("verify", "--id", "eq_D1", "--json")
    rec = json.loads(text)
    assert code == 1 and rec["status"] == "fail"
    assert rec["first_mismatch"] == {"exp_num": 3, "exp_den": 1, "lhs": "0/1", "rhs": "4/1"}


def test_verify_error_exit_one(monkeypatch):
    from qverify.identities import REGISTRY, IdentityEntry

    def boom(params, g, slack):
        raise ZeroDivisionError("synthetic")
        yield

    monkeypatch.setitem(REGISTRY, "zz_synthetic", IdentityEntry("zz_synthetic", "raises", 1, 5, boom))
    code, text = run("verify", "--id", "zz_synthetic", "--json")
    rec = json.loads(text)
    assert code == 1 and rec["status"] == "error" and "synthetic" in rec["error"]
    assert rec["first_mismatch"] is None


def test_verify_empty_selection_exit_zero():
    code, text = run("verify", "--id", "nothing-matches")
    assert code == 0 and "0 passed" in text


@pytest.mark.parametrize("argv", [
    ["verify", "--order", "0"],
    ["verify", "--k", "1,2"],
    ["verify", "--nmax", "-1"],
    ["verify", "--jobs", "0"],
    ["expand", "--target", "bogus", "--order", "3"],
    ["expand", "--target", "hecke(x)", "--order", "3"],
    ["expand", "--target", "beta(no_such_pair,2)", "--order", "3"],
    ["expand", "--target", "lhs(no_such_id)", "--order", "3"],
    ["frobnicate"],
])
def test_usage_errors_exit_two(argv, capsys):
    code, _ = run(*argv)
    assert code == 2


def test_json_stream_round_trips_through_reports():
    code, text = run("verify", "--id", "pair_*", "--order", "20", "--nmax", "3", "--json")
    for line in text.splitlines():
        r = VerificationReport.from_json(line)
        assert r.to_record() == json.loads(line)
        assert r.passed and r.params == {"n_max": 3}


def test_jobs_keeps_output_order():
    args = ["verify", "--id", "hecke_rewrite", "--order", "30", "--json"]
    _, serial = run(*args)
    _, parallel = run(*args, "--jobs", "2")
    strip = lambda text: [{k: v for k, v in json.loads(l).items() if k != "ms"} for l in text.splitlines()]
    assert strip(serial) == strip(parallel)


# --- expand ------------------------------------------------------------------------------------


def test_expand_hecke_dump():
    code, text = run("expand", "--target", "hecke(2)", "--order", "3")
    lines = text.splitlines()
    assert code == 0
    assert lines[0] == "# target=hecke(2) den=1 guarantee=3"
    assert lines[1:] == ["0/1\t1/1", "1/1\t-1/1", "2/1\t0/1", "3/1\t0/1"]


def test_expand_phi_constant_term():
    code, text = run("expand", "--target", "phi", "--order", "3", "--json")
    rec = json.loads(text)
    assert rec["coefficients"][0] == {"exp_num": 0, "exp_den": 1, "coeff": "1/1"}
    assert len(rec["coefficients"]) == 4


def test_expand_multisum_matches_registry_rhs():
    _, a = run("expand", "--target", "multisum(2)", "--order", "10")
    _, b = run("expand", "--target", "rhs(eq_2_19,k=2)", "--order", "10")
    assert a.splitlines()[1:] == b.splitlines()[1:]


def test_expand_pair_component_and_f():
    _, text = run("expand", "--target", "alpha(pair_HM,0)", "--order", "2")
    assert text.splitlines()[1:] == ["0/1\t1/1", "1/1\t0/1", "2/1\t0/1"]
    _, text = run("expand", "--target", "f(2,4,2,4,4,2)", "--order", "4")
    assert text.splitlines()[1] == "0/1\t1/1"
    _, text = run("expand", "--target", "lhs(pair_thm21,n=0)", "--order", "2")
    assert text.splitlines()[1:] == ["0/1\t2/1", "1/1\t2/1", "2/1\t2/1"]


def test_expand_rational_coefficients_and_negative_exponents():
    code, text = run("expand", "--target", "alpha(pair_LO,1)", "--order", "6")
    assert code == 0
    assert all(line.count("\t") == 1 for line in text.splitlines()[1:])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qverify", "verify", "--id", "id_kp", "--order", "20"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "PASS" in proc.stdout
