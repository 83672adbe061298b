import argparse
import json
import subprocess
import sys

import pytest

from genfib.cli import main, parse_range

RANKS_P31 = [3, 31, 15, 16, 8, 15, 15, 4, 16, 16, 16, 5, 5, 8, 15]


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["fib", "--s", "1", "--t", "1", "--n", "10"], "55"),
        (["fib", "--s", "3", "--t", "-1", "--n", "0"], "0"),
        (["fib", "--s", "1", "--t", "1", "--n", "10", "--method", "iter"], "55"),
        (["rank", "--s", "1", "--t", "-1", "--mod", "31"], "3"),
        (["rank", "--s", "1", "--t", "1", "--mod", "8"], "6"),
        (["rank", "--s", "1", "--t", "1", "--mod", "8", "--method", "lcm"], "6"),
        (["rank", "--s", "1", "--t", "-1", "--mod", "31", "--method", "order"], "3"),
        (["rank", "--s", "1", "--t", "6", "--mod", "3"], "absent"),
        (["val", "--s", "3", "--p", "5", "--n", "25"], "2 2 agree"),
        (["val", "--s", "3", "--p", "5", "--n", "7"], "0 0 agree"),
        (["val-witness", "--s", "4", "--d", "5"], "d'=3 s'=15 validated n≤2000"),
        (["zeta", "--s", "1", "--t", "1", "--r", "1", "--n", "4", "--w", "1", "--family", "thm15"], "1 1 match"),
        (["zeta", "--s", "3", "--t", "-1", "--r", "1", "--n", "2", "--w", "1", "--family", "conj2"], "1 1 match"),
    ],
)
def test_plain_examples(capsys, argv, expected):
    code, out, err = run(capsys, *argv)
    assert code == 0 and err == ""
    assert out == expected + "\n"


def test_big_integers_print_in_full(capsys):
    code, out, _ = run(capsys, "fib", "--s", "1", "--t", "1", "--n", "500")
    assert code == 0
    value = out.strip()
    assert value.isdigit() and len(value) == 105


def test_rank_sweep_p31_rows(capsys):
    code, out, _ = run(capsys, "rank-sweep", "--t", "-1", "--p", "31", "--s", "1..15")
    assert code == 0
    body, hist = out.split("# histogram\n")
    lines = body.splitlines()
    assert lines[0] == "s,rank,order_method_agrees"
    rows = [line.split(",") for line in lines[1:]]
    assert [int(r[0]) for r in rows] == list(range(1, 16))
    assert [int(r[1]) for r in rows] == RANKS_P31
    assert all(r[2] == "true" for r in rows)
    counts = dict(map(int, line.split(",")) for line in hist.splitlines()[1:])
    assert counts == {v: RANKS_P31.count(v) for v in RANKS_P31}
    assert "\r" not in out


def test_rank_sweep_small_and_json(capsys):
    code, out, _ = run(capsys, "rank-sweep", "--t", "-1", "--p", "5", "--s", "1..2")
    assert code == 0
    assert out.splitlines()[1:3] == ["1,3,true", "2,5,true"]
    code, out, _ = run(capsys, "rank-sweep", "--t", "-1", "--p", "5", "--s", "1..2", "--format", "json")
    data = json.loads(out)
    assert [(r["s"], r["rank"]) for r in data["rows"]] == [(1, 3), (2, 5)]
    assert data["histogram"] == {"3": 1, "5": 1}


def test_json_and_csv_formats(capsys):
    code, out, _ = run(capsys, "val", "--s", "3", "--p", "5", "--n", "25", "--format", "json")
    assert code == 0
    row = json.loads(out)[0]
    assert (row["closed"], row["brute"], row["agree"]) == (2, 2, True)
    code, out, _ = run(capsys, "fib", "--s", "1", "--t", "1", "--n", "10", "--format", "csv")
    assert code == 0 and out.splitlines()[-1].endswith("55")


@pytest.mark.parametrize(
    "argv,code",
    [
        (["fib", "--s", "3", "--t", "-1", "--n", "-1"], 2),
        (["fib", "--s", "x", "--t", "1", "--n", "1"], 2),
        (["rank", "--s", "1", "--t", "1", "--mod", "8", "--method", "order"], 2),
        (["rank", "--s", "1", "--t", "1", "--mod", "0"], 2),
        (["rank-sweep", "--t", "-1", "--p", "4", "--s", "1..3"], 2),
        (["rank-sweep", "--t", "31", "--p", "31", "--s", "1..3"], 2),
        (["rank-sweep", "--t", "-1", "--p", "31", "--s", "5..1"], 2),
        (["val", "--s", "1", "--p", "5", "--n", "3"], 2),
        (["val-witness", "--s", "4", "--d", "6"], 2),
        (["zeta", "--s", "2", "--t", "-1", "--r", "1", "--n", "2", "--w", "1", "--family", "conj2"], 2),
        (["zeta", "--s", "3", "--t", "-2", "--r", "1", "--n", "2", "--w", "1", "--family", "conj2", "--max-terms", "2"], 3),
        (["verify", "--suite", "nope"], 2),
        (["nope"], 2),
    ],
)
def test_failures_exit_nonzero_with_error_line(capsys, argv, code):
    got, out, err = run(capsys, *argv)
    assert got == code
    assert out == ""
    assert err.strip().splitlines()[-1].startswith("error:")


def test_verify_suites(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "zeta", "--grid", "thm15")
    assert code == 0
    assert out.strip().splitlines()[-1] == "# zeta: 40 asserted cases, 0 failures, 0 logged"
    code, out, _ = run(capsys, "verify", "--suite", "rank-order", "--pmax", "40")
    assert code == 0
    assert "FAIL" not in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lemmas", "--format", "json")
    assert code == 0
    cases = json.loads(out)
    assert cases and all(c["status"] == "PASS" for c in cases)


def test_out_file(capsys, tmp_path):
    path = tmp_path / "sweep.csv"
    code, out, _ = run(capsys, "rank-sweep", "--t", "-1", "--p", "31", "--s", "1..15", "--out", str(path))
    assert code == 0 and out == ""
    code, direct, _ = run(capsys, "rank-sweep", "--t", "-1", "--p", "31", "--s", "1..15")
    assert path.read_bytes() == direct.encode("utf-8")


def test_deterministic_output(capsys):
    argv = ["verify", "--suite", "zeta", "--format", "csv"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_parse_range():
    assert parse_range("1..15") == range(1, 16)
    assert list(parse_range("-3..5")) == list(range(-3, 6))
    assert list(parse_range("-7..-2")) == [-7, -6, -5, -4, -3, -2]
    assert parse_range("3") == range(3, 4)
    for bad in ("1-5", "a..b", "5..1"):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_range(bad)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "genfib", "fib", "--s", "1", "--t", "1", "--n", "10"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "55\n"
