import json

import pytest

from rcf.cli import fmt, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_golden(capsys):
    code, out, _ = run(capsys, "eval", "rr", "--r", "4", "--digits", "30")
    assert code == 0 and out.strip() == "0.284079043840412296028291832393"


@pytest.mark.parametrize("route", ["direct", "oracle", "closed"])
def test_eval_routes_agree(capsys, route):
    code, out, _ = run(capsys, "eval", "v", "--r", "1", "--route", route, "--digits", "25")
    assert code == 0 and out.strip() == "0.3358093337363671913131086"


def test_eval_by_q(capsys):
    code, out, _ = run(capsys, "eval", "m", "--q", "0.1", "--route", "closed", "--digits", "20")
    code2, out2, _ = run(capsys, "eval", "m", "--q", "0.1", "--digits", "20")
    assert code == code2 == 0 and out == out2


def test_default_digits_capped_by_precision(capsys):
    code, out, _ = run(capsys, "eval", "h", "--r", "1", "--prec", "100")
    assert code == 0 and len(out.strip()) == len("0.") + 30


@pytest.mark.parametrize("argv", [["eval", "rr", "--q", "1.2"], ["eval", "rr", "--r", "-1"],
                                  ["eval", "rr", "--r", "x"]])
def test_eval_domain_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


@pytest.mark.parametrize("argv", [["eval", "rr", "--r", "1", "--prec", "32"],
                                  ["eval", "rr", "--r", "1", "--digits", "200"],
                                  ["eval", "zz", "--r", "1"],
                                  ["eval", "rr", "--r", "1", "--q", "0.1"]])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_modulus_json(capsys):
    code, out, _ = run(capsys, "modulus", "--r", "1", "--format", "json", "--digits", "20")
    data = json.loads(out)
    assert code == 0 and data["r"] == "1"
    assert data["k"] == "0.70710678118654752440"
    assert data["K"] == "1.8540746773013719184"


def test_modulus_text(capsys):
    code, out, _ = run(capsys, "modulus", "--r", "4")
    assert code == 0 and out.splitlines()[0].split() == ["r", "4"]


def test_solve_marks_selected(capsys):
    code, out, _ = run(capsys, "solve", "eq17", "--r", "1")
    assert code == 0
    assert "multiplicity 2" in out
    starred = [line for line in out.splitlines() if line.startswith("*")]
    assert len(starred) == 1 and starred[0].split()[1].startswith("0.8472135954")


def test_verify_formats(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "landen_step", "--prec", "128", "--format", "json")
    assert code == 0 and json.loads(out)["summary"]["fail"] == 0
    code, out, _ = run(capsys, "verify", "--suite", "landen_step", "--format", "csv")
    assert code == 0 and out.startswith("id,params,residual,tolerance,status")
    code, out, _ = run(capsys, "verify", "--suite", "discrepancy")
    assert code == 0 and "KNOWN_DISCREPANCY_CONFIRMED" in out


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--fraction", "s", "--r-list", "1/4,1,2", "--digits", "25")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "r,q,direct,oracle,closed"
    for line in lines[1:]:
        _, _, direct, oracle, closed = line.split(",")
        assert direct == oracle == closed


def test_fmt_is_positional():
    from mpmath import mpf
    assert fmt(mpf("1e-30"), 3) == "0.00000000000000000000000000000100"
