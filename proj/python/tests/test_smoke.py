import json
from fractions import Fraction

import pytest

import jrpforge

SINGLE = {"k0": "1", "commodities": [{"id": "a", "class": "generic", "lambda": "2", "h": "1", "k": "25"}]}


def test_cost_is_exact():
    c = jrpforge.cost(SINGLE, {"cycles": {"a": "5"}})
    assert c["total"] == Fraction(51, 5)
    assert c["joint_frequency"] == Fraction(1, 5)


def test_optimal_cycle():
    assert jrpforge.optimal_cycle(25, 1, 2) == (5.0, Fraction(5))
    approx, exact = jrpforge.optimal_cycle(26, 1, 2)
    assert exact is None
    assert approx == pytest.approx(26 ** 0.5, rel=1e-15)


def test_union_rate():
    assert jrpforge.union_rate([2, 3]) == Fraction(2, 3)
    assert jrpforge.union_rate([Fraction(1, 2), 1]) == 2


def test_solve_pot_and_exhaustive():
    pot = jrpforge.solve(SINGLE, method="pot")
    assert pot["policy"] == {"a": Fraction(4)}
    best = jrpforge.solve(SINGLE, method="exhaustive", k_hi=10)
    assert best["cost"]["total"] <= pot["cost"]["total"]


def test_dimacs_round_trip_and_errors():
    n, clauses = jrpforge.parse_dimacs("c x\np cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n")
    assert n == 3 and clauses == [[1, -2, 3], [-1, 2, -3]]
    assert jrpforge.serialize_dimacs(n, clauses) == "p cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n"
    with pytest.raises(jrpforge.JrpError, match="line 2"):
        jrpforge.parse_dimacs("p cnf 2 1\n1 5 0\n")


def test_sat_and_reduction():
    text = "p cnf 3 1\n1 2 3 0\n"
    assert jrpforge.brute_force_sat(text) == [False, False, True]
    inst = jrpforge.reduce(text)
    classes = [c["class"] for c in inst["commodities"]]
    assert classes.count("variable") == 3 and classes.count("clause") == 1
    assert jrpforge.verify_roundtrip(text)["sync_iff_sat"]


def test_cli_in_process(tmp_path):
    p = tmp_path / "one.json"
    p.write_text(json.dumps(SINGLE))
    code, out, _ = jrpforge.run_cli("solve", "--instance", p, "--method", "pot")
    assert code == 0
    assert json.loads(out)["cycles"] == {"a": "4/1"}
    code, _, err = jrpforge.run_cli("eval", "--instance", p, "--policy", tmp_path / "missing.json")
    assert code == 2 and err
