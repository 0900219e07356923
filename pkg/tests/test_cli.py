import re

import pytest

from rbacs.cli import main
from rbacs.core import validate_tour
from rbacs.tsplib import bundled_path

TINY = "NAME: tiny\nTYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 3 4\n3 0 4\nEOF\n"


@pytest.fixture
def tiny(tmp_path):
    p = tmp_path / "tiny.tsp"
    p.write_text(TINY)
    return p


def tour_from(out: str) -> list[int]:
    line = next(ln for ln in out.splitlines() if ln.startswith("tour"))
    return [int(c) - 1 for c in line.split(":", 1)[1].split()]


def test_solve_eil51(capsys):
    assert main(["solve", "--algo", "rbacs", "--seed", "7", "--budget", "30", str(bundled_path("eil51"))]) == 0
    out = capsys.readouterr().out
    order = tour_from(out)
    assert validate_tour(order, 51)
    assert re.search(r"^best length: \d+$", out, re.M)
    assert "seed: 7" in out


def test_solve_tiny_reports_perimeter(tiny, capsys):
    assert main(["solve", "--budget", "3", str(tiny)]) == 0
    assert "best length: 12" in capsys.readouterr().out


def test_solve_missing_file(capsys):
    assert main(["solve", "/no/such/file.tsp"]) != 0
    assert "file not found" in capsys.readouterr().err


def test_solve_acs_writes_trace(tiny, tmp_path, capsys):
    trace = tmp_path / "t.csv"
    assert main(["solve", "--algo", "acs", "--budget", "4", "--trace", str(trace), str(tiny)]) == 0
    lines = trace.read_text().splitlines()
    assert lines[0] == "iteration,black_best,red_best,global_best"
    assert lines[1:] == [f"{i},12,,12" for i in range(1, 5)]


def test_inspect(capsys):
    assert main(["inspect", str(bundled_path("eil51"))]) == 0
    out = capsys.readouterr().out
    assert "dimension: 51" in out
    assert "nn_tour_length: 511" in out
    assert "tau0: 3.837151e-05" in out
    assert main(["inspect", "eil76"]) == 0
    assert "dimension: 76" in capsys.readouterr().out


def test_inspect_garbage(tmp_path, capsys):
    p = tmp_path / "junk.txt"
    p.write_text("this is not a TSPLIB file\n")
    assert main(["inspect", str(p)]) != 0
    assert "line 1" in capsys.readouterr().err


def test_bench_single_trial(tiny, tmp_path, capsys):
    assert main(["bench", "--trials", "1", "--budget", "3", "--optimum", "12", str(tiny)]) == 0
    out = capsys.readouterr().out
    assert "rbacs.mean=12.000000" in out
    assert "0.00%" in out


def test_bench_both_and_outputs(tmp_path, capsys):
    summary = tmp_path / "summary.txt"
    traces = tmp_path / "traces"
    argv = ["bench", "--algo", "both", "--trials", "2", "--budget", "5", "--seed", "3",
            "--summary", str(summary), "--trace-dir", str(traces), "eil51"]
    assert main(argv) == 0
    out = capsys.readouterr().out
    assert summary.read_text() == out
    assert out.index("acs ") < out.index("rbacs ")
    assert "rbacs.config.red.rho=" in out
    assert "acs.config.budget=5" in out
    assert sorted(p.name for p in traces.iterdir()) == [
        "eil51_acs_trial000.csv", "eil51_acs_trial001.csv",
        "eil51_rbacs_trial000.csv", "eil51_rbacs_trial001.csv",
    ]


def test_bench_rejects_zero_trials(tiny, capsys):
    assert main(["bench", "--trials", "0", str(tiny)]) != 0


def test_parameter_overrides_reach_config(tiny, capsys):
    argv = ["solve", "--budget", "2", "--q0", "0.5", "--beta", "3", "--ants", "4",
            "--rho-black", "0.2", "--rho-red", "0.4", "--alpha-black", "0.3", "--alpha-red", "0.05",
            "--c-init", "50", "--stagnation", "1", str(tiny)]
    assert main(argv) == 0
    out = capsys.readouterr().out
    for expected in ["config.black.q0=0.5", "config.red.beta=3.0", "config.red.m=4",
                     "config.black.rho=0.2", "config.red.rho=0.4", "config.black.alpha=0.3",
                     "config.red.alpha=0.05", "config.c_init=50.0", "config.stagnation_limit=1"]:
        assert expected in out


def test_invalid_parameter_is_reported(tiny, capsys):
    assert main(["solve", "--rho-red", "1.5", str(tiny)]) != 0
    assert "rho" in capsys.readouterr().err
