import json
import math

import pytest

import critlab

PI2 = math.pi ** 2


def test_sobolev_constant_matches_closed_form():
    assert critlab.sobolev_tilde_power() == pytest.approx(3 * math.sqrt(3) * PI2 / 4, rel=1e-6)


def test_admissibility_window():
    inside = critlab.make_params([-0.5 * PI2], [[1.0]])
    outside = critlab.make_params([-0.2 * PI2], [[1.0]])
    assert critlab.check_admissible(inside).admissible
    assert not critlab.check_admissible(outside).admissible


def test_invalid_params_raise_value_error():
    with pytest.raises(ValueError):
        critlab.make_params([-1.0, -1.0], [[1.0, 0.5], [0.4, 1.0]])


def test_single_level_below_bubble_level():
    params = critlab.make_params([-0.5 * PI2], [[1.0]])
    r = critlab.solve_single(params)
    assert r.converged
    assert r.level < critlab.sobolev_tilde_power() / 3
    assert len(r.profile) == 1 and len(r.profile[0]) == len(r.nodes)
    assert r.profile[0][-1] == 0.0


def test_pmax_and_limit_level():
    value, argmax = critlab.pmax([[1.0, 7.0], [7.0, 1.0]])
    assert value == pytest.approx(2.0, abs=1e-9)
    assert argmax[0] == pytest.approx(math.sqrt(0.5), abs=1e-5)
    assert critlab.limit_level([[1.0, 0.0], [0.0, 1.0]]) == pytest.approx(critlab.sobolev_tilde_power() / 3)


def test_oracle_runs_a_check():
    params = critlab.make_params([-0.5 * PI2] * 2, [[1.0, 0.0], [0.0, 1.0]])
    oracle = critlab.LevelOracle(params)
    report = oracle.run_check("cbar")
    assert report.passed
    assert report.margin == pytest.approx(report.rhs - report.lhs)
    assert "cbar" in critlab.check_names()


def test_run_json_writes_artifacts(tmp_path):
    out = tmp_path / "run"
    code, message, directory = critlab.run_json(json.dumps({"mode": "constants", "output": str(out)}))
    assert code == 0, message
    assert (out / "manifest.json").exists()
    results = json.loads((out / "results.json").read_text())
    assert results["cbar"] == pytest.approx(2 / 3 * critlab.sobolev_tilde_power(), rel=1e-6)
    code, _, _ = critlab.run_json(json.dumps({"params": {"lambdas": [-20.0], "beta": [[1.0]]}, "output": str(out)}))
    assert code == 2
