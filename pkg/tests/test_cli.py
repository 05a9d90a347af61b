import json

import pytest

from qinv.cli import main
from qinv.invariants import jones_closed
from qinv.qseries import from_record


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_jones_json_round_trip(capsys):
    code, out, _ = run(capsys, "jones", "--r", "3", "--p", "2", "--pp", "5", "--n", "2", "--order", "40")
    assert code == 0
    rec = json.loads(out)
    assert rec["kind"] == "series"
    assert "timestamp" not in rec["meta"]
    assert from_record(rec["payload"]) == jones_closed(3, 2, 5, 2, 40)


def test_output_is_deterministic(capsys):
    argv = ["wchar", "--r", "3", "--p", "3", "--pp", "5", "--mu", "1,0", "--order", "30"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_timestamps_flag(capsys):
    _, out, _ = run(capsys, "limit", "--r", "2", "--p", "2", "--pp", "5", "--j", "1", "--order", "10", "--timestamps")
    assert "timestamp" in json.loads(out)["meta"]


def test_formats(capsys):
    base = ["jones", "--r", "2", "--p", "2", "--pp", "3", "--n", "1", "--order", "5"]
    _, plain, _ = run(capsys, *base, "--format", "plain")
    assert plain.strip() == "-1 + q^2 + q^3 + q^4 + O(q^5)"
    _, csv_out, _ = run(capsys, *base, "--format", "csv")
    lines = csv_out.strip().splitlines()
    assert lines[0] == "exponent,coeff_num,coeff_den"
    assert lines[1:3] == ["0,-1,1", "2,1,1"]


def test_hat(capsys):
    code, out, _ = run(capsys, "jones", "--r", "3", "--p", "2", "--pp", "5", "--n", "2", "--order", "20", "--hat")
    payload = json.loads(out)["payload"]
    assert code == 0 and payload["trailing_sign"] in (1, -1)
    assert from_record(payload["series"])[0] == 1


def test_oracle_path(capsys):
    a = run(capsys, "jones", "--r", "3", "--p", "3", "--pp", "4", "--n", "2", "--order", "20")[1]
    b = run(capsys, "jones", "--r", "3", "--p", "3", "--pp", "4", "--n", "2", "--order", "20", "--path", "oracle")[1]
    assert json.loads(a)["payload"] == json.loads(b)["payload"]


def test_verify_pass_and_fail(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--check", "thm_p2", "--order", "60")
    assert code == 0 and json.loads(out)["payload"]["status"] == "pass"

    params = tmp_path / "p.json"
    params.write_text(json.dumps({"cases": [[3, 2, 5]], "n_max": 3, "target": 20}))
    code, out, _ = run(capsys, "verify", "--check", "conjecture_p_lt_r", "--params", str(params), "--order", "30")
    assert code == 1
    assert json.loads(out)["payload"]["status"] == "fail"


def test_out_file(capsys, tmp_path):
    dest = tmp_path / "s.json"
    code, out, _ = run(capsys, "conjecture", "--r", "3", "--p", "2", "--pp", "5", "--order", "15", "--out", str(dest))
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["meta"]["quantity"] == "conjecture"


@pytest.mark.parametrize("argv,flag", [
    (["jones", "--r", "3", "--p", "2", "--pp", "4", "--n", "1", "--order", "10"], "gcd"),
    (["jones", "--r", "3", "--p", "2", "--pp", "5", "--order", "10"], "--n"),
    (["wchar", "--r", "3", "--p", "3", "--pp", "4", "--mu", "1", "--order", "10"], "--mu"),
    (["wchar", "--r", "3", "--p", "3", "--pp", "4", "--order", "-1"], "--order"),
    (["verify", "--check", "bogus"], "bogus"),
    (["limit", "--r", "3", "--p", "3", "--pp", "4", "--j", "7", "--order", "10"], "j must"),
    (["frobnicate"], "frobnicate"),
])
def test_usage_errors(capsys, argv, flag):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert flag in err
