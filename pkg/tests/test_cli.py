"""End-to-end tests of the command-line interface."""

import json

import pytest
from click.testing import CliRunner

from grosslap.chaos import DISTRIBUTION, expansion_to_json
from grosslap.cli import main
from grosslap.gross import trace_distribution
from grosslap.quantum_op import OperatorKernel, kernel_to_json


@pytest.fixture
def runner():
    return CliRunner()


FAST_SUITES = ["exponential-eigenvalue", "young-conjugate-diagnostics"]


def test_verify_fast_suites_pass(runner):
    args = ["verify"] + [f"--suite={s}" for s in FAST_SUITES]
    res = runner.invoke(main, args)
    assert res.exit_code == 0, res.output
    report = json.loads(res.output)
    assert report["passed"] is True
    assert {c["name"] for c in report["checks"]} == set(FAST_SUITES)
    for c in report["checks"]:
        assert c["passed"] is True
        assert "identity" in c


def test_verify_is_byte_deterministic(runner):
    args = ["verify", "--seed", "7"] + [f"--suite={s}" for s in FAST_SUITES]
    a = runner.invoke(main, args)
    b = runner.invoke(main, args)
    assert a.exit_code == b.exit_code == 0
    assert a.output == b.output


def test_verify_rejects_low_cutoff_for_gross_suites(runner):
    res = runner.invoke(main, ["verify", "--cutoff1", "1",
                               "--suite", "exponential-eigenvalue"])
    assert res.exit_code == 2


def test_verify_rejects_unknown_suite(runner):
    res = runner.invoke(main, ["verify", "--suite", "no-such-suite"])
    assert res.exit_code == 2


def test_young_conjugate_gaussian(runner):
    res = runner.invoke(main, ["young", "--family", "gaussian",
                               "--op", "conjugate", "--x", "2.0"])
    assert res.exit_code == 0, res.output
    assert json.loads(res.output)["value"] == pytest.approx(1.0, abs=1e-8)


def test_young_missing_argument(runner):
    res = runner.invoke(main, ["young", "--family", "gaussian",
                               "--op", "conjugate"])
    assert res.exit_code == 2


def test_eval_symbol_of_trace(runner, tmp_path):
    T = OperatorKernel(trace_distribution(1, 1, 8, 8), "trace")
    payload = {"op": "symbol", "kernel": kernel_to_json(T),
               "points": [{"z": [2.0], "t": [1.0]}]}
    path = tmp_path / "in.json"
    path.write_text(json.dumps(payload))
    res = runner.invoke(main, ["eval", "--in", str(path)])
    assert res.exit_code == 0, res.output
    out = json.loads(res.output)
    assert out["values"][0]["re"] == pytest.approx(5.0)


def test_eval_laplace_of_delta0(runner, tmp_path):
    from grosslap.chaos import delta0
    payload = {"op": "laplace",
               "expansion": expansion_to_json(delta0(2, 0, 4, 0)),
               "points": [{"z": [[0.3, 1.0], 7.0], "t": []}]}
    path = tmp_path / "in.json"
    path.write_text(json.dumps(payload))
    res = runner.invoke(main, ["eval", "--in", str(path)])
    assert res.exit_code == 0, res.output
    assert json.loads(res.output)["values"][0]["re"] == pytest.approx(1.0)


def test_eval_role_violation_exits_2(runner, tmp_path):
    from grosslap.chaos import vacuum
    payload = {"op": "laplace", "expansion": expansion_to_json(vacuum(1, 0, 3, 0)),
               "points": [{"z": [1.0]}]}
    path = tmp_path / "in.json"
    path.write_text(json.dumps(payload))
    res = runner.invoke(main, ["eval", "--in", str(path)])
    assert res.exit_code == 2


def _heat_input(times):
    from grosslap.chaos import Expansion2
    xi0 = OperatorKernel(
        Expansion2(1, 1, 8, 8, {((2,), (0,)): 1 + 0j}, role=DISTRIBUTION),
        "square")
    return {"xi0": kernel_to_json(xi0), "times": times}


def test_solve_heat_example(runner, tmp_path):
    path = tmp_path / "in.json"
    path.write_text(json.dumps(_heat_input([0.0, 0.5, 1.0])))
    out_path = tmp_path / "out.json"
    res = runner.invoke(main, ["solve", "--in", str(path),
                               "--out", str(out_path)])
    assert res.exit_code == 0, res.output
    report = json.loads(out_path.read_text())
    assert report["times"] == [0.0, 0.5, 1.0]
    consts = []
    for entry in report["kernels"]:
        terms = {(tuple(t["alpha"]), tuple(t["beta"])): t["re"]
                 for t in entry["kernel"]["terms"]}
        assert terms[((2,), (0,))] == pytest.approx(1.0)
        consts.append(terms.get(((0,), (0,)), 0.0))
    assert consts == pytest.approx([0.0, 0.5, 1.0])
    assert report["checks"]["gaussian_gap"] <= 1e-10


def test_solve_method_both_reports_cross_checks(runner, tmp_path):
    path = tmp_path / "in.json"
    path.write_text(json.dumps(_heat_input([0.5, 1.0])))
    res = runner.invoke(main, ["solve", "--in", str(path),
                               "--method", "both"])
    assert res.exit_code == 0, res.output
    report = json.loads(res.output)
    assert report["checks"]["gaussian_gap"] <= 1e-10
    assert report["checks"]["residual_max"] <= 1e-6


def test_solve_malformed_json_exits_2(runner, tmp_path):
    path = tmp_path / "in.json"
    path.write_text("{ this is not json")
    res = runner.invoke(main, ["solve", "--in", str(path)])
    assert res.exit_code == 2


def test_solve_missing_file_exits_2(runner, tmp_path):
    res = runner.invoke(main, ["solve", "--in", str(tmp_path / "none.json")])
    assert res.exit_code == 2


def test_solve_nonconvergence_exits_3(runner, tmp_path):
    from grosslap.chaos import Expansion2
    xi0 = OperatorKernel(
        Expansion2(1, 1, 6, 6, {((0,), (0,)): 1 + 0j}, role=DISTRIBUTION))
    Zk = OperatorKernel(
        Expansion2(1, 1, 6, 6, {((1,), (0,)): 1 + 0j}, role=DISTRIBUTION))
    Tk = OperatorKernel(
        Expansion2(1, 1, 6, 6, {((0,), (1,)): 1 + 0j}, role=DISTRIBUTION))
    payload = {
        "xi0": kernel_to_json(xi0),
        "Z": {"grid": [0.0, 1.0], "kernels": [kernel_to_json(Zk)]},
        "Theta": {"grid": [0.0, 1.0], "kernels": [kernel_to_json(Tk)]},
        "times": [1.0],
    }
    path = tmp_path / "in.json"
    path.write_text(json.dumps(payload))
    res = runner.invoke(main, ["solve", "--in", str(path), "--tol=-1"])
    assert res.exit_code == 3


def test_solve_deterministic_output(runner, tmp_path):
    path = tmp_path / "in.json"
    path.write_text(json.dumps(_heat_input([0.25, 0.75])))
    a = runner.invoke(main, ["solve", "--in", str(path), "--seed", "42"])
    b = runner.invoke(main, ["solve", "--in", str(path), "--seed", "42"])
    assert a.exit_code == b.exit_code == 0
    assert a.output == b.output
