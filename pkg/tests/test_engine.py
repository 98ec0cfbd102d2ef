import random
import sys
import textwrap

import numpy as np
import pytest

from hypercube_dml.cnf import Cnf, write_dimacs
from hypercube_dml.engine import (
    SAT,
    UNKNOWN,
    UNSAT,
    SolverConfig,
    SolverUnknown,
    enumerate_models,
    format_command,
    parse_solver_output,
    solve_builtin,
    solve_external,
    solve_portfolio,
)


def truth_table_sat(cnf):
    """Exhaustive evaluation over all 2**num_vars assignments."""
    nv = cnf.num_vars
    rows = np.arange(2 ** nv, dtype=np.int64)
    bits = ((rows[:, None] >> np.arange(nv)) & 1).astype(bool)
    ok = np.ones(len(rows), dtype=bool)
    for clause in cnf.clauses:
        sat = np.zeros(len(rows), dtype=bool)
        for lit in clause:
            col = bits[:, abs(lit) - 1]
            sat |= col if lit > 0 else ~col
        ok &= sat
        if not ok.any():
            return False
    return bool(ok.any())


def random_cnf(rng, max_vars=18, max_clauses=80):
    nv = rng.randint(1, max_vars)
    cnf = Cnf(nv)
    for _ in range(rng.randint(1, max_clauses)):
        width = rng.randint(1, 4)
        cnf.add_clause([v if rng.random() < 0.5 else -v for v in (rng.randint(1, nv) for _ in range(width))])
    return cnf


def make_cnf(clauses, nv):
    cnf = Cnf(nv)
    for c in clauses:
        cnf.add_clause(c)
    return cnf


def test_trivial_sat_unsat():
    out = solve_builtin(make_cnf([[1]], 1))
    assert out.status == SAT and out.model == {1: True}
    assert solve_builtin(make_cnf([[1], [-1]], 1)).status == UNSAT


def test_empty_formula_model_is_total():
    out = solve_builtin(Cnf(3))
    assert out.is_sat and set(out.model) == {1, 2, 3}


def test_tautologies_and_duplicates():
    out = solve_builtin(make_cnf([[1, -1], [2, 2], [-2, 3, 3]], 3))
    assert out.is_sat and out.model[2] and out.model[3]


@pytest.mark.parametrize("heuristic", ["random", "static"])
def test_random_cnfs_against_truth_table(heuristic):
    rng = random.Random(11)
    for k in range(40):
        cnf = random_cnf(rng, max_vars=12, max_clauses=60)
        out = solve_builtin(cnf, SolverConfig(seed=k, heuristic=heuristic))
        assert out.is_sat == truth_table_sat(cnf)
        if out.is_sat:
            assert cnf.is_satisfied_by(out.model)


def test_pigeonhole_unsat():
    # 4 pigeons, 3 holes
    p = lambda i, j: 3 * i + j + 1  # noqa: E731
    cnf = Cnf(12)
    for i in range(4):
        cnf.add_clause([p(i, j) for j in range(3)])
    for j in range(3):
        for a in range(4):
            for b in range(a + 1, 4):
                cnf.add_clause([-p(a, j), -p(b, j)])
    assert solve_builtin(cnf).is_unsat


def test_conflict_budget_gives_unknown():
    p = lambda i, j: 5 * i + j + 1  # noqa: E731
    cnf = Cnf(30)
    for i in range(6):
        cnf.add_clause([p(i, j) for j in range(5)])
    for j in range(5):
        for a in range(6):
            for b in range(a + 1, 6):
                cnf.add_clause([-p(a, j), -p(b, j)])
    out = solve_builtin(cnf, SolverConfig(conflict_budget=5))
    assert out.status == UNKNOWN and "budget" in out.reason


def test_unknown_heuristic():
    with pytest.raises(ValueError):
        solve_builtin(Cnf(1), SolverConfig(heuristic="vsids"))


def test_deterministic_with_seed():
    rng = random.Random(5)
    cnf = random_cnf(rng, 18, 40)
    while not truth_table_sat(cnf):
        cnf = random_cnf(rng, 18, 40)
    a = solve_builtin(cnf, SolverConfig(seed=3))
    b = solve_builtin(cnf, SolverConfig(seed=3))
    assert a.model == b.model and a.stats == b.stats


def test_enumerate_projected():
    cnf = make_cnf([[1, 2]], 2)
    models = enumerate_models(cnf, [1, 2], 10)
    assert sorted((m[1], m[2]) for m in models) == [(False, True), (True, False), (True, True)]
    assert len(enumerate_models(cnf, [1, 2], 1)) == 1
    assert len(cnf.clauses) == 1  # caller's formula untouched


def test_enumerate_projection_ignores_aux():
    # x3 free: 3 projected models on {1,2}, not 6
    cnf = make_cnf([[1, 2], [3, -3]], 3)
    assert len(enumerate_models(cnf, [1, 2], 100)) == 3


def test_enumerate_propagates_unknown():
    def give_up(_):
        from hypercube_dml.engine import SolverOutcome
        return SolverOutcome(UNKNOWN, reason="nope")

    with pytest.raises(SolverUnknown):
        enumerate_models(Cnf(1), [1], 5, solve=give_up)
    with pytest.raises(ValueError):
        enumerate_models(Cnf(1), [1], 0)


# external solver protocol

def test_parse_unsat():
    assert parse_solver_output("c hi\ns UNSATISFIABLE\n", 2, 20).status == UNSAT


def test_parse_sat_model():
    out = parse_solver_output("s SATISFIABLE\nv 1 -2 0\n", 2, 10)
    assert out.status == SAT and out.model == {1: True, 2: False}


def test_parse_model_across_lines_and_whitespace():
    out = parse_solver_output("s SATISFIABLE\nv  1\nv -2   3\nv 0\n", 3)
    assert out.model == {1: True, 2: False, 3: True}


@pytest.mark.parametrize(
    "text, code",
    [
        ("", 0),
        ("s SATISFIABLE\n", 10),  # no values
        ("s SATISFIABLE\nv 1 0\n", 20),  # contradicting exit code
        ("s SATISFIABLE\nv 1 -1 0\n", 10),
        ("s SATISFIABLE\nv 9 0\n", 10),
        ("s SATISFIABLE\nv 1 x 0\n", 10),
        ("s MAYBE\n", 0),
        ("s UNKNOWN\n", 0),
        ("v 1 0\n", 10),
    ],
)
def test_parse_garbage_is_unknown(text, code):
    assert parse_solver_output(text, 2, code).status == UNKNOWN


def test_format_command():
    assert format_command("solver --seed={seed} {cnf}", "/tmp/a b.cnf", 7) == ["solver", "--seed=7", "/tmp/a b.cnf"]
    with pytest.raises(ValueError):
        format_command("solver", "x.cnf")


def fake_solver(tmp_path, output, code, name="fake.py"):
    script = tmp_path / name
    script.write_text(textwrap.dedent(f"""
        import sys
        sys.stdout.write({output!r})
        sys.exit({code})
    """))
    return f"{sys.executable} {script} {{cnf}} {{seed}}"


@pytest.fixture
def or_instance(tmp_path):
    cnf = make_cnf([[1, 2]], 2)
    path = tmp_path / "or.cnf"
    path.write_text(write_dimacs(cnf))
    return cnf, path


def test_external_sat(tmp_path, or_instance):
    cnf, path = or_instance
    out = solve_external(path, fake_solver(tmp_path, "s SATISFIABLE\nv 1 -2 0\n", 10), seed=1)
    assert out.status == SAT and out.model == {1: True, 2: False}


def test_external_unsat(tmp_path, or_instance):
    _, path = or_instance
    assert solve_external(path, fake_solver(tmp_path, "s UNSATISFIABLE\n", 20)).status == UNSAT


def test_external_wrong_model_rejected(tmp_path, or_instance):
    _, path = or_instance
    out = solve_external(path, fake_solver(tmp_path, "s SATISFIABLE\nv -1 -2 0\n", 10))
    assert out.status == UNKNOWN and "falsifies" in out.reason


def test_external_crash_and_missing_binary(tmp_path, or_instance):
    _, path = or_instance
    assert solve_external(path, fake_solver(tmp_path, "", 3)).status == UNKNOWN
    assert solve_external(path, "/nonexistent/solver {cnf}").status == UNKNOWN


def test_external_timeout(tmp_path, or_instance):
    _, path = or_instance
    script = tmp_path / "slow.py"
    script.write_text("import time\ntime.sleep(30)\n")
    out = solve_external(path, f"{sys.executable} {script} {{cnf}}", timeout=0.5)
    assert out.status == UNKNOWN and "timeout" in out.reason


def test_portfolio_first_definite_answer_wins(tmp_path, or_instance):
    cnf, path = or_instance
    script = tmp_path / "seeded.py"
    script.write_text(textwrap.dedent("""
        import sys, time
        seed = int(sys.argv[2])
        if seed == 0:
            time.sleep(30)
        print("s SATISFIABLE")
        print("v -1 2 0")
        sys.exit(10)
    """))
    out = solve_portfolio(path, f"{sys.executable} {script} {{cnf}} {{seed}}", [0, 1], cnf=cnf, timeout=20)
    assert out.status == SAT and out.stats["seed"] == 1


def test_portfolio_all_unknown(tmp_path, or_instance):
    cnf, path = or_instance
    out = solve_portfolio(path, fake_solver(tmp_path, "garbage", 0), [1, 2], cnf=cnf)
    assert out.status == UNKNOWN


def test_pysat_wrapper_round_trip(tmp_path, or_instance):
    pytest.importorskip("pysat")
    cnf, path = or_instance
    for seed in (0, 5):
        out = solve_external(path, f"{sys.executable} -m hypercube_dml.pysat_solver {{cnf}} --seed {{seed}}", seed)
        assert out.is_sat and cnf.is_satisfied_by(out.model)
    contra = tmp_path / "contra.cnf"
    contra.write_text(write_dimacs(make_cnf([[1], [-1]], 1)))
    assert solve_external(contra, f"{sys.executable} -m hypercube_dml.pysat_solver {{cnf}}").is_unsat


def test_pysat_wrapper_scrambling_matches_truth_table(tmp_path, capsys):
    pytest.importorskip("pysat")
    from hypercube_dml.pysat_solver import main as shim

    rng = random.Random(99)
    for k in range(25):
        cnf = random_cnf(rng, max_vars=10, max_clauses=40)
        path = tmp_path / f"r{k}.cnf"
        path.write_text(write_dimacs(cnf))
        code = shim([str(path), "--seed", str(k + 1)])
        out = parse_solver_output(capsys.readouterr().out, cnf.num_vars, code)
        assert out.is_sat == truth_table_sat(cnf)
        if out.is_sat:
            assert cnf.is_satisfied_by(out.model)
