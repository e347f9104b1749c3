import json
import subprocess
import sys

import pytest

from nfactor.cache import FactorCache
from nfactor.cli import cmd_table, main, parse_range
from nfactor.complexity import ScanPolicy, enumerate_factors
from nfactor.sequences import FIBONACCI, DigitalSpec


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv, expected", [
    (["gen", "fib", "--terms", "13"], "0 1 2 2 3 2 3 4 2 3 4 4 5\n"),
    (["gen", "digital", "--base", "2", "--block", "1", "--terms", "9"], "0 1 1 2 1 2 2 3 1\n"),
    (["gen", "digital", "--base", "2", "--block", "11", "--terms", "9"], "0 0 0 1 0 0 1 2 0\n"),
    (["gen", "fib", "--terms", "0"], "\n"),
])
def test_gen(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out == expected


def test_complexity_all(capsys):
    code, out, _ = run(capsys, "complexity", "fib", "--n", "2", "--N", "3", "--method", "all")
    assert code == 0
    assert "P: oracle=5 formula=5 MATCH" in out


def test_complexity_oracle(capsys):
    code, out, _ = run(capsys, "complexity", "fib", "--n", "1", "--N", "7")
    assert code == 0 and " P=8 " in out


def test_complexity_needs_bootstrap(capsys):
    code, _, err = run(capsys, "complexity", "digital", "--base", "2", "--block", "01",
                       "--n", "4", "--N", "6", "--method", "formula")
    assert code == 2 and "NeedsBootstrap" in err


def test_complexity_formula_with_init(capsys):
    code, out, _ = run(capsys, "complexity", "digital", "--base", "2", "--block", "01",
                       "--n", "4", "--N", "7", "--method", "formula", "--init", "48,36", "--json")
    assert code == 0 and json.loads(out)["P"] == 84


def test_complexity_shift_matches_oracle(capsys):
    base = ["complexity", "digital", "--base", "3", "--block", "02", "--n", "4", "--N", "6"]
    _, shift, _ = run(capsys, *base, "--method", "shift", "--json")
    _, oracle, _ = run(capsys, *base, "--json")
    a, b = json.loads(shift), json.loads(oracle)
    assert (a["P"], a["P1"], a["P2"]) == (b["P"], b["P1"], b["P2"])


def test_complexity_shift_rejects_power_block(capsys):
    code, _, err = run(capsys, "complexity", "digital", "--base", "2", "--block", "1",
                       "--n", "2", "--N", "6", "--method", "shift")
    assert code == 2 and "UnsupportedSpec" in err


def test_usage_errors(capsys):
    assert run(capsys, "gen", "digital", "--terms", "3")[0] == 2
    assert run(capsys, "gen", "digital", "--base", "2", "--block", "3")[0] == 2
    assert run(capsys, "table", "fib", "--n", "3..1", "--N", "0")[0] == 2
    assert run(capsys, "complexity", "fib", "--n", "2", "--N", "3", "--workers", "0")[0] == 2


def test_budget_exit_code(capsys):
    code, _, err = run(capsys, "complexity", "digital", "--base", "3", "--block", "12", "--n", "8",
                       "--N", "6", "--digital-method", "scan", "--scan-budget", "1000")
    assert code == 3 and "budget" in err


def test_parse_range():
    assert parse_range("1..3") == range(1, 4)
    assert parse_range("4") == range(4, 5)


def test_table_csv(capsys, tmp_path):
    out = tmp_path / "t.csv"
    code, stdout, _ = run(capsys, "table", "fib", "--n", "1..3", "--N", "0..4", "--out", str(out))
    assert code == 0 and stdout == ""
    data = out.read_bytes()
    assert b"\r" not in data
    lines = data.decode().splitlines()
    assert lines[0] == "n,N,P,P1,P2,method,bound"
    assert len(lines) == 16
    assert [tuple(map(int, l.split(",")[:2])) for l in lines[1:]] == \
        [(n, N) for n in range(1, 4) for N in range(5)]
    assert not any(l.endswith(",") for l in lines)
    run(capsys, "table", "fib", "--n", "1..3", "--N", "0..4", "--out", str(tmp_path / "u.csv"))
    assert (tmp_path / "u.csv").read_bytes() == data


def test_table_formula_matches_oracle():
    for spec in (FIBONACCI, DigitalSpec(2, (1,)), DigitalSpec(2, (0, 1))):
        oracle = cmd_table(spec, range(1, 5), range(0, 8), method="oracle")
        formula = cmd_table(spec, range(1, 5), range(0, 8), method="formula")
        strip = lambda t: [l.split(",")[:5] for l in t.splitlines()]
        assert strip(oracle) == strip(formula)


def test_table_json(capsys):
    code, out, _ = run(capsys, "table", "digital", "--base", "2", "--block", "01", "--n", "2",
                       "--N", "0..3", "--format", "json")
    cells = json.loads(out)
    assert code == 0 and [c["N"] for c in cells] == [0, 1, 2, 3]


def test_warm_cache_output_identical(capsys, tmp_path):
    argv = ["table", "digital", "--base", "3", "--block", "12", "--n", "1..4", "--N", "0..6",
            "--cache-dir", str(tmp_path)]
    _, cold, _ = run(capsys, *argv)
    _, warm, _ = run(capsys, *argv)
    assert cold == warm and list(tmp_path.glob("*.json"))


def test_verify_fib(capsys):
    code, out, _ = run(capsys, "verify", "fib", "--n-max", "20", "--N-max", "12")
    assert code == 0 and "FAIL" not in out


def test_verify_balance_json(capsys):
    code, out, _ = run(capsys, "verify", "balance", "--base", "2", "--block", "01",
                       "--m-max", "100000", "--json")
    assert code == 0 and json.loads(out)["verdict"] == "pass"


def test_verify_corrupt_cache_fails(capsys, tmp_path):
    # plant a well-formed entry with one factor removed
    cache = FactorCache(tmp_path)
    policy = ScanPolicy()
    spec = DigitalSpec(2, (0, 1))
    fs = enumerate_factors(spec, 3, 4, policy)
    bad = type(fs)(fs.spec, fs.n, fs.N, frozenset(fs.sorted()[1:]), fs.bound)
    cache.put(bad, policy.bound_key(spec, 3, 4))
    code, out, _ = run(capsys, "verify", "digital", "--base", "2", "--block", "01", "--n-max", "3",
                       "--cache-dir", str(tmp_path))
    assert code == 1
    assert "FAIL" in out and "witness=" in out


def test_env_cache_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("NFACTOR_CACHE_DIR", str(tmp_path / "env"))
    run(capsys, "complexity", "digital", "--base", "2", "--block", "01", "--n", "2", "--N", "3")
    assert list((tmp_path / "env").glob("*.json"))


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nfactor.cli", "gen", "fib", "--terms", "5"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "0 1 2 2 3\n"
