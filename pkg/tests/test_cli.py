import json
import subprocess
import sys

import pytest

from hyperlag.cli import run
from hyperlag.core import Hypergraph, make_colex_graph
from hyperlag.solver import maximize


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_colex_gen(capsys):
    code, out, _ = call(capsys, "colex", "gen", "-r", "3", "-m", "5")
    assert code == 0
    assert json.loads(out) == {"r": 3, "n": 5, "edges": [[1, 2, 3], [1, 2, 4], [1, 3, 4],
                                                         [2, 3, 4], [1, 2, 5]]}


def test_pipe_into_solver_matches_library():
    gen = subprocess.run([sys.executable, "-m", "hyperlag", "colex", "gen", "-r", "3", "-m", "6"],
                         capture_output=True, text=True, check=True)
    solve = subprocess.run([sys.executable, "-m", "hyperlag", "lagrangian", "solve", "-i", "-"],
                           input=gen.stdout, capture_output=True, text=True, check=True)
    expected = json.dumps(maximize(make_colex_graph(3, 6)).to_record())
    assert solve.stdout.strip() == expected
    assert json.loads(solve.stdout)["lambda"] == pytest.approx(1 / 16, abs=1e-8)


def test_solve_oracle_and_clique(tmp_path, capsys):
    path = tmp_path / "g.jsonl"
    path.write_text(make_colex_graph(3, 5).dumps() + "\n" + Hypergraph(2, 3, ((1, 2),)).dumps() + "\n")
    code, out, _ = call(capsys, "lagrangian", "solve", "-i", str(path), "--oracle", "--depth", "4")
    assert code == 0
    lams = [json.loads(line)["lambda"] for line in out.splitlines()]
    assert lams == pytest.approx([1 / 16, 1 / 4], abs=1e-8)
    code, out, _ = call(capsys, "clique", "-i", str(path))
    assert [json.loads(line)["order"] for line in out.splitlines()] == [4, 2]


def test_compress_modes(tmp_path, capsys):
    path = tmp_path / "g.jsonl"
    path.write_text(Hypergraph(3, 5, ((3, 4, 5),)).dumps() + "\n")
    _, out, _ = call(capsys, "compress", "-i", str(path), "--to-fixpoint")
    assert json.loads(out)["edges"] == [[1, 2, 3]]
    _, out, _ = call(capsys, "compress", "-i", str(path), "--pair", "1", "5")
    assert json.loads(out)["edges"] == [[1, 3, 4]]


def test_verify_plateau_exit_zero(capsys):
    code, out, _ = call(capsys, "verify", "plateau", "-r", "3", "-t", "5")
    assert code == 0
    lines = [json.loads(line) for line in out.splitlines()]
    summary = next(x for x in lines if "passes" in x)
    assert summary["passes"] == 4 and summary["fails"] == 0
    assert lines[-1].get("trailer")


def test_verify_plateau_is_deterministic(capsys):
    runs = [call(capsys, "verify", "plateau", "-r", "2", "-t", "5", "--no-trailer")[1]
            for _ in range(2)]
    assert runs[0] == runs[1]


def test_verify_failure_exit_one(capsys):
    # zero tolerance turns last-bit rounding into recorded failures
    code, out, _ = call(capsys, "verify", "plateau", "-r", "3", "-t", "6", "--tol", "0")
    summary = next(json.loads(x) for x in out.splitlines() if "passes" in json.loads(x))
    assert summary["fails"] > 0
    assert code == 1


def test_verify_bounds_scan(capsys):
    code, out, _ = call(capsys, "verify", "bounds", "-r", "4", "--scan-t", "100")
    assert code == 0
    header = json.loads(out.splitlines()[0])
    assert header["first_nonempty_t"] == 55 and header["first_width"] == 17


def test_verify_csv(capsys):
    code, out, _ = call(capsys, "verify", "ineq", "--r-max", "6", "--t-max", "100",
                        "--format", "csv")
    assert code == 0
    assert out.splitlines()[0].startswith("campaign,instance")
    assert len(out.splitlines()) == 4


def test_budget_refusal_exit_two(capsys):
    code, _, err = call(capsys, "verify", "ff", "-r", "3", "-n", "7", "-m", "10", "--budget", "5")
    assert code == 2 and "budget" in err


def test_usage_errors_exit_two(capsys, tmp_path):
    assert call(capsys, "verify", "nonsense")[0] == 2
    assert call(capsys, "verify", "ff", "-r", "3")[0] == 2
    assert call(capsys, "clique", "-i", str(tmp_path / "missing.jsonl"))[0] == 2
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"r": 3, "n": 2, "edges": [[1, 2, 3]]}\n')
    code, _, err = call(capsys, "lagrangian", "solve", "-i", str(bad))
    assert code == 2 and err.startswith("hyperlag: error")


def test_output_file(tmp_path, capsys):
    dest = tmp_path / "out.jsonl"
    assert call(capsys, "colex", "gen", "-r", "2", "-m", "3", "-o", str(dest))[0] == 0
    assert Hypergraph.loads(dest.read_text().strip()).m == 3
