import json

import pytest

from tracepoly.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


@pytest.mark.parametrize("argv,want", [
    (["expand", "--to", "I", "(0 1 2)[1,1]"], "(0 1 2)[1,1] - (0)"),
    (["expand", "--to", "I", "(0)(1 2)[1,1]"], "(0)(1 2)[1,1] - q^-1 * (0)"),
    (["expand", "--to", "I", "--q", "1/2", "(0)(1 2)[1,1]"], "(0)(1 2)[1,1] - 2 * (0)"),
    (["mul", "--basis", "I", "(0 1)[1]", "(0 1)[1]"], "(0 1 2)[1,1] + (0)"),
    (["mul", "--basis", "I", "--route", "I", "(0 1)[1]", "(0 1)[1]"], "(0 1 2)[1,1] + (0)"),
    (["state", "--q", "1/2", "(0)(1 2)[1,1]"], "2"),
    (["state", "(0)(1 2)[1,1]"], "q^-1"),
    (["state", "2 * (0 1 2)[1,2] - q^-1 * (0)(1 2)[2,2] + 3"], "3 - q^-2"),
    (["inner", "--basis", "I", "(0)(1)[1]", "(0 1)[1]"], "q"),
    (["gram", "--n", "1", "--q", "1/2", "--format", "tsv"], "1\t1/2\n1/2\t1"),
    (["wick", "--perm", "(0 1 2 3 4)", "--vecs", "e1,e1,e1,e1", "--N", "2"], "9/4"),
    (["wick", "--perm", "(0)(1 2)", "--vecs", "[1 1],[1 1]", "--N", "3"], "6"),
])
def test_frozen_outputs(capsys, argv, want):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == want


def test_chartable(capsys):
    code, out, _ = run(capsys, "chartable", "--n", "2")
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines()]
    assert rows[0] == ["lambda\\class", "(3)", "(2,1)", "(1,1,1)"]
    assert rows[1:] == [["(3)", "1", "1", "1"], ["(2,1)", "-1", "0", "2"], ["(1,1,1)", "1", "-1", "1"]]


def test_gram_summary(capsys):
    _, out, _ = run(capsys, "gram", "--n", "2", "--q", "1/2")
    assert out.splitlines() == ["n\t2", "q\t1/2", "size\t6", "rank\t5", "psd\tTrue"]
    _, out, _ = run(capsys, "gram", "--n", "2", "--q", "2/3")
    assert "rank\t6" in out and "psd\tFalse" in out


def test_kernel(capsys):
    code, out, _ = run(capsys, "kernel", "--n", "2", "--N", "1")
    assert code == 0
    fields = dict(line.split("\t", 1) for line in out.splitlines())
    assert fields["kernel_dim"] == fields["expected_kernel_dim"] == fields["generator_span_dim"] == "5"


def test_json_outputs(capsys):
    _, out, _ = run(capsys, "wick", "--perm", "(0 1 2 3 4)", "--vecs", "e1,e1,e1,e1", "--N", "2", "--format", "json")
    assert json.loads(out) == {"perm": "(0 1 2 3 4)", "N": 2, "value": "9/4"}
    _, out, _ = run(capsys, "mc", "--perm", "(0 1 2)", "--vecs", "[1],[1]", "--N", "2", "--samples", "20000")
    rep = json.loads(out)
    assert set(rep) == {"estimate", "stderr", "oracle", "sigmas"}
    assert rep["oracle"] == "1" and rep["sigmas"] <= 4


@pytest.mark.parametrize("argv,code", [
    (["state", "--q", "0", "(0)(1 2)[1,1]"], 4),
    (["state", "(0 1"], 2),
    (["state", "(0 1 2)[1]"], 2),
    (["mul", "(0 1 2 3)[1,1,1]", "(0 1 2 3 4)[1,1,1,1]"], 3),
    (["gram", "--n", "5"], 3),
    (["wick", "--perm", "(0 1 2)", "--vecs", "[1],[1]"], 2),
    (["frobnicate"], 2),
])
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert err
    if code == 3 and argv[0] == "mul":
        assert "cap 6" in err


def test_verify_perm_report(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "perm")
    assert code == 0
    rep = json.loads(out)
    assert rep["suite"] == "perm" and rep["checks"]
    for c in rep["checks"]:
        assert set(c) == {"name", "status", "detail"}
        assert c["status"] == "pass"


def test_verify_all_passes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--format", "text")
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines())
