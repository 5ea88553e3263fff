"""Command-line driver: verification suites, solvers and point evaluation.

All reports are JSON with sorted keys, so a fixed seed yields byte-identical
output.  Exit codes: 0 success, 2 input or configuration error, 3 numerical
non-convergence.
"""

from __future__ import annotations

import inspect
import json
import sys
from typing import Optional, Sequence

import click

from .chaos import (
    DISTRIBUTION,
    Expansion2,
    Point2,
    RoleError,
    evaluate,
    expansion_from_json,
    laplace,
)
from .evolution import (
    ACTION_DISTRIBUTION,
    ACTION_FUNCTION,
    ProcessSpec,
    QuadratureError,
    solve_heat,
    solve_qsde,
    solve_symbol_ode,
    zero_process,
)
from .quantum_op import OperatorKernel, kernel_from_json, kernel_to_json, symbol
from .tensor_core import DegreeError, DimensionMismatchError
from .verify import ALL_CHECKS
from .young import YoungFunctionSpec, check_growth_condition, conjugate_eval, theta_n

GROSS_SUITES = {
    "trace-convolution-equals-gross",
    "exponential-eigenvalue",
    "gross-adjointness",
    "quantum-symbol-multiplier",
    "multiplication-operator-bridge",
    "heat-oracle-triangle",
    "evolution-symbol-residual",
}

INPUT_ERRORS = (RoleError, DimensionMismatchError, DegreeError, ValueError,
                KeyError, TypeError, json.JSONDecodeError)


def _emit(report: dict, out: Optional[str]) -> None:
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _as_complex(obj) -> complex:
    if isinstance(obj, (int, float)):
        return complex(obj)
    if isinstance(obj, list) and len(obj) == 2:
        return complex(obj[0], obj[1])
    if isinstance(obj, dict):
        return complex(obj.get("re", 0.0), obj.get("im", 0.0))
    raise ValueError(f"cannot read {obj!r} as a complex number")


def _as_point(obj) -> Point2:
    z = [_as_complex(v) for v in obj.get("z", [])]
    t = [_as_complex(v) for v in obj.get("t", [])]
    return Point2.of(z, t)


def _c_json(v: complex) -> dict:
    return {"re": v.real, "im": v.imag}


@click.group()
def main() -> None:
    """Coefficient-calculus toolkit: verification, solvers, evaluation."""


@main.command()
@click.option("--suite", "suites", multiple=True,
              help="Run only the named suites (default: all).")
@click.option("--dim1", type=int, default=2, show_default=True)
@click.option("--dim2", type=int, default=2, show_default=True)
@click.option("--cutoff1", type=int, default=8, show_default=True)
@click.option("--cutoff2", type=int, default=8, show_default=True)
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--tol", type=float, default=None,
              help="Override each suite's default tolerance.")
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None)
def verify(suites: Sequence[str], dim1: int, dim2: int, cutoff1: int,
           cutoff2: int, seed: int, tol: Optional[float],
           out: Optional[str]) -> None:
    """Run the registered invariant suites and report pass/fail per suite."""
    if dim1 < 1 or dim2 < 0:
        _fail(2, "dims must satisfy dim1 >= 1, dim2 >= 0")
    selected = list(suites) if suites else list(ALL_CHECKS)
    unknown = [s for s in selected if s not in ALL_CHECKS]
    if unknown:
        _fail(2, f"unknown suites: {', '.join(unknown)}")
    if min(cutoff1, cutoff2) < 2 and any(s in GROSS_SUITES for s in selected):
        _fail(2, "Laplacian suites need cutoffs >= 2")
    results = []
    for name in selected:
        fn = ALL_CHECKS[name]
        kwargs = {"seed": seed}
        params = inspect.signature(fn).parameters
        if tol is not None and "tol" in params:
            kwargs["tol"] = tol
        res = fn(**kwargs)
        results.append({
            "name": res.name,
            "identity": res.identity,
            "passed": res.passed,
            "max_error": res.max_error,
            "tolerance": res.tolerance,
            "samples": res.samples,
        })
    report = {"seed": seed, "checks": results,
              "passed": all(r["passed"] for r in results)}
    _emit(report, out)
    sys.exit(0 if report["passed"] else 1)


def _process_from_json(obj, ref: Expansion2) -> ProcessSpec:
    grid = tuple(float(g) for g in obj["grid"])
    kernels = tuple(kernel_from_json(k) for k in obj["kernels"])
    return ProcessSpec(grid, kernels)


@main.command()
@click.option("--in", "in_path", type=click.Path(exists=False), required=True)
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None)
@click.option("--method", type=click.Choice(["closed_form", "symbol_ode",
                                             "both"]), default=None,
              help="Override the method named in the input file.")
@click.option("--ode-step", type=float, default=None)
@click.option("--tol", type=float, default=1e-10, show_default=True,
              help="Quadrature refinement tolerance.")
@click.option("--seed", type=int, default=42, show_default=True)
def solve(in_path: str, out: Optional[str], method: Optional[str],
          ode_step: Optional[float], tol: float, seed: int) -> None:
    """Solve a linear kernel evolution problem described by a JSON file.

    Without a "Z" process the heat flow (half the trace distribution) is
    assumed.  method "both" additionally runs the Runge-Kutta symbol oracle
    and reports the worst symbol gap as residual_max.
    """
    try:
        with open(in_path) as fh:
            spec = json.load(fh)
        xi0 = kernel_from_json(spec["xi0"])
        ref = xi0.kernel
        times = [float(t) for t in spec["times"]]
        method = method or spec.get("method", "closed_form")
        step = ode_step if ode_step is not None else float(
            spec.get("ode_step", 1e-3))
        action = spec.get("action", ACTION_FUNCTION)
        t_end = max(times + [1e-9])
        heat = "Z" not in spec
        if heat:
            Z = None
        else:
            Z = _process_from_json(spec["Z"], ref)
        if "Theta" in spec:
            Theta = _process_from_json(spec["Theta"], ref)
        else:
            Theta = zero_process(ref.dim1, ref.dim2, ref.cutoff1, ref.cutoff2,
                                 max(t_end, Z.end if Z else t_end))
    except FileNotFoundError as exc:
        _fail(2, str(exc))
    except INPUT_ERRORS as exc:
        _fail(2, f"bad solver input: {exc}")

    try:
        if heat:
            sol = solve_heat(xi0, Theta, times, action=action, quad_tol=tol,
                             seed=seed)
        else:
            sol = solve_qsde(Z, Theta, xi0, times, action=action,
                             quad_tol=tol)
        checks = dict(sol.checks)
        if method in ("symbol_ode", "both"):
            from .evolution import half_trace_process
            Zn = Z if Z is not None else half_trace_process(
                ref.dim1, ref.dim2, ref.cutoff1, ref.cutoff2, t_end)
            numeric = solve_symbol_ode(Zn, Theta, xi0, times, step=step,
                                       seed=seed, radius=0.1)
            if method == "both":
                closed = (sol if action == ACTION_DISTRIBUTION else
                          (solve_heat(xi0, Theta, times,
                                      action=ACTION_DISTRIBUTION,
                                      quad_tol=tol) if heat else
                           solve_qsde(Z, Theta, xi0, times,
                                      action=ACTION_DISTRIBUTION,
                                      quad_tol=tol)))
                gap = 0.0
                for kern, values in zip(closed.kernels,
                                        numeric.symbol_values):
                    for p, v in zip(numeric.symbol_points, values):
                        gap = max(gap, abs(symbol(kern, p[0], p[1]) - v))
                checks["residual_max"] = gap
            else:
                sol = numeric
    except QuadratureError as exc:
        _fail(3, str(exc))
    except INPUT_ERRORS as exc:
        _fail(2, f"bad solver input: {exc}")

    report = {
        "method": sol.method,
        "action": sol.action,
        "times": list(sol.times),
        "kernels": [kernel_to_json(k) for k in sol.kernels],
        "truncated": sol.truncated,
        "checks": checks,
    }
    _emit(report, out)


@main.command(name="eval")
@click.option("--in", "in_path", type=click.Path(exists=False), required=True)
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None)
def eval_cmd(in_path: str, out: Optional[str]) -> None:
    """Evaluate an expansion or kernel symbol at a list of points.

    Input JSON: {"op": "evaluate"|"laplace"|"symbol", "expansion": ... or
    "kernel": ..., "points": [{"z": [..], "t": [..]}, ..]}.  Complex numbers
    are written as numbers, [re, im] pairs, or {"re": .., "im": ..}.
    """
    try:
        with open(in_path) as fh:
            spec = json.load(fh)
        op = spec["op"]
        points = [_as_point(p) for p in spec["points"]]
        values = []
        if op == "symbol":
            kern = kernel_from_json(spec["kernel"])
            for p in points:
                values.append(symbol(kern, p.z, p.t))
        elif op in ("evaluate", "laplace"):
            phi = expansion_from_json(spec["expansion"])
            for p in points:
                if op == "evaluate":
                    values.append(evaluate(phi, p))
                else:
                    values.append(laplace(phi, p.z, p.t))
        else:
            raise ValueError(f"unknown op {op!r}")
    except FileNotFoundError as exc:
        _fail(2, str(exc))
    except INPUT_ERRORS as exc:
        _fail(2, f"bad eval input: {exc}")
    _emit({"op": op, "values": [_c_json(v) for v in values]}, out)


@main.command()
@click.option("--family", type=click.Choice(["power", "gaussian", "expm1"]),
              required=True)
@click.option("--k", type=float, default=None,
              help="Exponent for the power family.")
@click.option("--op", "op", type=click.Choice(["theta", "conjugate",
                                               "theta-n", "growth"]),
              required=True)
@click.option("--x", type=float, default=None)
@click.option("--n", type=int, default=None)
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None)
def young(family: str, k: Optional[float], op: str, x: Optional[float],
          n: Optional[int], out: Optional[str]) -> None:
    """Query a named Young function: values, conjugates, weights, growth."""
    try:
        spec = YoungFunctionSpec(family, k)
        if op == "theta":
            if x is None:
                raise ValueError("--x is required for op theta")
            value = spec.theta(x)
        elif op == "conjugate":
            if x is None:
                raise ValueError("--x is required for op conjugate")
            value = conjugate_eval(spec, x)
        elif op == "theta-n":
            if n is None:
                raise ValueError("--n is required for op theta-n")
            value = theta_n(spec, n)
        else:
            value = bool(check_growth_condition(spec))
    except INPUT_ERRORS as exc:
        _fail(2, f"bad young query: {exc}")
    _emit({"family": family, "op": op, "value": value}, out)


if __name__ == "__main__":
    main()
