import csv
import io
import json

from quadperiod.cli import main, period_report_from_dict
from quadperiod.arith import QuadPoly
from quadperiod.period import smallest_period


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_period_json(capsys):
    code, out, _ = run(capsys, "period", "--poly", "1,0,1", "--k", "1", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["schema_version"] == 1
    assert set(doc) >= {"request", "result", "checks"}
    assert (doc["result"]["P"], doc["result"]["B_k"], doc["result"]["A_k"]) == ("5", "5", "5")


def test_period_json_round_trip(capsys):
    for poly, k in [("1,0,1", 4), ("-6,3,9", 3), ("2,1,1", 5)]:
        code, out, _ = run(capsys, "period", f"--poly={poly}", "--k", str(k), "--json")
        assert code == 0
        parsed = period_report_from_dict(json.loads(out)["result"])
        a, b, c = (int(x) for x in poly.split(","))
        assert parsed == smallest_period(QuadPoly(a, b, c), k)


def test_not_periodic_exit(capsys):
    code, _, err = run(capsys, "period", "--poly", "1,1,0", "--k", "1")
    assert code == 1
    assert "i0 = 1" in err and "a^2 * 1^2" in err


def test_not_periodic_json(capsys):
    code, out, _ = run(capsys, "period", "--poly", "1,3,0", "--k", "3", "--json")
    assert code == 1
    assert json.loads(out)["error"]["witness_i0"] == "3"


def test_solve_brute(capsys):
    code, out, _ = run(capsys, "solve", "--poly", "1,0,1", "--prime", "5", "--exp", "2", "--brute")
    assert code == 0
    assert "[7, 18]" in out and "brute=match" in out


def test_brute_flag_does_not_change_answer(capsys):
    _, plain, _ = run(capsys, "solve", "--poly", "3,1,1", "--prime", "3", "--exp", "2", "--json")
    _, brute, _ = run(capsys, "solve", "--poly", "3,1,1", "--prime", "3", "--exp", "2", "--json", "--brute")
    assert json.loads(plain)["result"] == json.loads(brute)["result"]
    assert json.loads(brute)["checks"]["brute"] == "match"


def test_solve_non_primitive_is_domain_error(capsys):
    code, _, err = run(capsys, "solve", "--poly", "2,2,2", "--prime", "3", "--exp", "1")
    assert code == 1 and "reduce by content first" in err


def test_mindist(capsys):
    code, out, _ = run(capsys, "mindist", "--poly", "1,0,1", "--prime", "3", "--emax", "3", "--brute", "--json")
    doc = json.loads(out)
    assert code == 0
    assert [r["d"] for r in doc["result"]["rows"]] == ["1", "inf", "inf", "inf"]
    assert "residue_convention" in doc["result"]


def test_oracle_verify(capsys):
    code, out, _ = run(capsys, "oracle", "--poly", "1,0,1", "--k", "2", "--verify", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["checks"]["verify"] == "match"
    assert doc["result"]["empirical_period"] == "10"


def test_asym_csv(capsys):
    code, out, _ = run(capsys, "asym", "--poly", "1,0,1", "--k", "1", "--csv", "-")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["n", "log_lcm", "ratio", "predicted_C"]
    assert [r[0] for r in rows[1:]] == ["1000", "10000", "100000"]


def test_asym_csv_file(tmp_path, capsys):
    path = tmp_path / "slope.csv"
    code, out, _ = run(capsys, "asym", "--poly", "1,2,0", "--k", "2", "--csv", str(path))
    assert code == 0 and "predicted C = 5" in out
    assert path.read_text().startswith("n,log_lcm,ratio,predicted_C")


def test_usage_errors(capsys):
    assert run(capsys, "period", "--poly", "1,x,0", "--k", "1")[0] == 2
    assert run(capsys, "period", "--poly", "0,1,1", "--k", "1")[0] == 2
    assert run(capsys, "period", "--poly", "1,0,1", "--k", "0")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "period", "--poly", "1,0,1")[0] == 2


def test_selftest_quick(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    assert out.count("[PASS]") == 9
