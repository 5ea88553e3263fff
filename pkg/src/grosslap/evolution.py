"""Closed-form and numeric solvers for linear kernel evolution equations.

The closed form composes convolution exponentials of the integrated driving
process.  Two independent oracles exist: a Runge-Kutta integration of the
scalar symbol ODE with kernel reconstruction by linear fit, and (for the heat
flow on function-convention kernels) exact Gaussian-moment smoothing.

A propagator, being a distribution, can act on the kernel two ways and both
appear in the theory: "distribution" convolves kernels as distributions, so
symbols multiply along the flow; "function" lets the propagator act on the
kernel read as a test function, which for the heat flow is exactly Gaussian
smoothing of the kernel polynomial.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .chaos import (
    DISTRIBUTION,
    TEST,
    Expansion2,
    Key,
    Point2,
    RoleError,
    coefficient_polynomial,
)
from .gross import convolve_dist_dist, convolve_dist_test, trace_distribution
from .quantum_op import OperatorKernel, symbol
from .tensor_core import MultiIndex, iter_occupations, multinomial_weight, weight

ACTION_FUNCTION = "function"
ACTION_DISTRIBUTION = "distribution"


class QuadratureError(RuntimeError):
    """Simpson refinement failed to converge within the panel cap."""


# ---------------------------------------------------------------------------
# Gaussian moments


def gaussian_moment(alpha: MultiIndex) -> float:
    """Product moment of the standard Gaussian: prod E[X_i^{alpha_i}]."""
    out = 1.0
    for a in alpha:
        if a < 0:
            raise ValueError("occupations must be non-negative")
        if a % 2 == 1:
            return 0.0
        out *= _double_factorial(a - 1)
    return out


def _double_factorial(k: int) -> float:
    out = 1.0
    while k > 1:
        out *= k
        k -= 2
    return out


def _shifted_gauss_moment(a: complex, t: float, k: int) -> complex:
    """E[(a + sqrt(t) X)^k] for standard Gaussian X."""
    total = 0j
    for j in range(0, k + 1, 2):
        total += (math.comb(k, j) * a ** (k - j)
                  * t ** (j // 2) * _double_factorial(j - 1))
    return total


# ---------------------------------------------------------------------------
# Convolution exponential


def conv_exp(Phi: Expansion2) -> Expansion2:
    """e^{*Phi}: the distribution whose Laplace transform is exp of Phi's.

    The constant term exponentiates to a scalar factor; the remainder has
    positive minimal degree, so its convolution powers terminate at the
    cutoffs and the series is finite.
    """
    if Phi.role != DISTRIBUTION:
        raise RoleError("conv_exp needs a distribution")
    zero_key = ((0,) * Phi.dim1, (0,) * Phi.dim2)
    c0 = Phi.coeffs.get(zero_key, 0j)
    plus = replace(Phi, coeffs={k: v for k, v in Phi.coeffs.items()
                                if k != zero_key})
    result = replace(Phi, coeffs={zero_key: 1 + 0j}, truncated=False)
    power = result
    kmax = Phi.cutoff1 + Phi.cutoff2
    truncated = Phi.truncated
    for k in range(1, kmax + 1):
        power = convolve_dist_dist(power, plus)
        truncated = truncated or power.truncated
        if not power.coeffs:
            break
        result = result.add(power.scale(1.0 / math.factorial(k)))
    scaled = result.scale(np.exp(c0))
    return replace(scaled, truncated=truncated)


# ---------------------------------------------------------------------------
# Piecewise-constant operator processes


@dataclass(frozen=True)
class ProcessSpec:
    """Piecewise-constant kernel-valued process on a time grid.

    grid has one more point than kernels; kernels[i] is the value on
    [grid[i], grid[i+1]).  Continuous processes must be pre-sampled.
    """

    grid: Tuple[float, ...]
    kernels: Tuple[OperatorKernel, ...]

    def __post_init__(self):
        if len(self.grid) < 2 or len(self.kernels) != len(self.grid) - 1:
            raise ValueError("grid needs len(kernels) + 1 points")
        if self.grid[0] != 0.0:
            raise ValueError("grid must start at 0")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("grid must be strictly increasing")

    @property
    def end(self) -> float:
        return self.grid[-1]

    def value_at(self, s: float) -> OperatorKernel:
        if s < 0 or s > self.end:
            raise ValueError(f"time {s} outside process grid")
        i = min(bisect_right(self.grid, s) - 1, len(self.kernels) - 1)
        return self.kernels[i]

    def is_zero(self) -> bool:
        return all(not k.kernel.coeffs for k in self.kernels)

    @staticmethod
    def constant(kernel: OperatorKernel, t_end: float) -> "ProcessSpec":
        return ProcessSpec((0.0, float(t_end)), (kernel,))


def zero_process(dim1: int, dim2: int, cutoff1: int, cutoff2: int,
                 t_end: float) -> ProcessSpec:
    empty = OperatorKernel(Expansion2(dim1, dim2, cutoff1, cutoff2, {},
                                      role=DISTRIBUTION), "zero")
    return ProcessSpec.constant(empty, t_end)


def integrate_process(P: ProcessSpec, t: float) -> OperatorKernel:
    """Exact integral of a piecewise-constant process over [0, t]."""
    return integrate_between(P, 0.0, t)


def integrate_between(P: ProcessSpec, s: float, t: float) -> OperatorKernel:
    if not (0.0 <= s <= t <= P.end + 1e-12):
        raise ValueError(f"integration range [{s}, {t}] outside grid")
    ref = P.kernels[0].kernel
    total = replace(ref, coeffs={}, truncated=False)
    for i, kern in enumerate(P.kernels):
        a, b = P.grid[i], P.grid[i + 1]
        length = min(b, t) - max(a, s)
        if length > 0:
            total = total.add(kern.kernel.scale(length))
    return OperatorKernel(total, "integrated")


# ---------------------------------------------------------------------------
# Closed-form solver


@dataclass(frozen=True)
class EvolutionSolution:
    """Per-time kernels plus provenance and cross-check metadata."""

    times: Tuple[float, ...]
    kernels: Tuple[OperatorKernel, ...]
    method: str
    action: str = ACTION_FUNCTION
    truncated: bool = False
    checks: Dict[str, float] = field(default_factory=dict)
    symbol_points: Optional[Tuple[Tuple[Tuple[complex, ...],
                                        Tuple[complex, ...]], ...]] = None
    symbol_values: Optional[Tuple[Tuple[complex, ...], ...]] = None


def apply_propagator(G: Expansion2, K: Expansion2, action: str) -> Expansion2:
    """Act with a propagator distribution on a kernel, either convention."""
    if action == ACTION_DISTRIBUTION:
        return convolve_dist_dist(G, K)
    if action == ACTION_FUNCTION:
        out = convolve_dist_test(G, K.with_role(TEST))
        return out.with_role(DISTRIBUTION)
    raise ValueError(f"unknown action {action!r}")


def _simpson_kernels(f: Callable[[float], Expansion2], a: float, b: float,
                     tol: float, max_panels: int) -> Expansion2:
    """Composite Simpson quadrature for kernel-valued integrands.

    Doubles the panel count until the coefficients move by at most tol.
    """
    cache: Dict[float, Expansion2] = {}

    def ev(s: float) -> Expansion2:
        if s not in cache:
            cache[s] = f(s)
        return cache[s]

    def composite(n: int) -> Expansion2:
        h = (b - a) / n
        acc = ev(a).scale(1.0)
        acc = acc.add(ev(b))
        for i in range(1, n):
            wgt = 4.0 if i % 2 else 2.0
            acc = acc.add(ev(a + i * h).scale(wgt))
        return acc.scale(h / 3.0)

    n = 2
    prev = composite(n)
    while n < max_panels:
        n *= 2
        cur = composite(n)
        if _max_coeff_diff(cur, prev) <= tol:
            return cur
        prev = cur
    raise QuadratureError(
        f"Simpson quadrature did not reach {tol} within {max_panels} panels")


def _max_coeff_diff(a: Expansion2, b: Expansion2) -> float:
    keys = set(a.coeffs) | set(b.coeffs)
    return max((abs(a.coeffs.get(k, 0j) - b.coeffs.get(k, 0j)) for k in keys),
               default=0.0)


def _segment_points(Z: ProcessSpec, Theta: ProcessSpec, t: float) -> List[float]:
    pts = {0.0, t}
    for g in list(Z.grid) + list(Theta.grid):
        if 0.0 < g < t:
            pts.add(float(g))
    return sorted(pts)


def solve_qsde(Z: ProcessSpec, Theta: ProcessSpec, xi0: OperatorKernel,
               times: Sequence[float], action: str = ACTION_FUNCTION,
               quad_tol: float = 1e-10,
               max_panels: int = 2 ** 14) -> EvolutionSolution:
    """Closed-form solution of d Xi/dt = Z(t) * Xi(t) + Theta(t).

    Xi(t) is the convolution exponential of the integrated Z applied to the
    initial kernel, plus a Simpson-refined integral of propagated source
    terms.  The propagator action is selected by ``action``.
    """
    _check_processes(Z, Theta, xi0)
    kernels: List[OperatorKernel] = []
    truncated = False
    theta_zero = Theta.is_zero()
    for t in times:
        if t < 0 or t > min(Z.end, Theta.end) + 1e-12:
            raise ValueError(f"requested time {t} outside the process grids")
        G = conv_exp(integrate_process(Z, t).kernel)
        state = apply_propagator(G, xi0.kernel, action)
        if not theta_zero and t > 0:
            for a, b in zip(seg := _segment_points(Z, Theta, t), seg[1:]):
                # The source is constant on each segment; bind it at the
                # midpoint so endpoint samples don't read the next interval.
                th = Theta.value_at((a + b) / 2).kernel

                def integrand(s: float, _t: float = t,
                              _th: Expansion2 = th) -> Expansion2:
                    Gs = conv_exp(integrate_between(Z, s, _t).kernel)
                    return apply_propagator(Gs, _th, action)

                state = state.add(
                    _simpson_kernels(integrand, a, b, quad_tol, max_panels))
        truncated = truncated or state.truncated
        kernels.append(OperatorKernel(state, label="solution"))
    return EvolutionSolution(tuple(float(t) for t in times), tuple(kernels),
                             method="closed_form", action=action,
                             truncated=truncated)


def _check_processes(Z: ProcessSpec, Theta: ProcessSpec,
                     xi0: OperatorKernel) -> None:
    ref = xi0.kernel
    for proc in (Z, Theta):
        for k in proc.kernels:
            if (k.kernel.dim1, k.kernel.dim2) != (ref.dim1, ref.dim2) or \
               (k.kernel.cutoff1, k.kernel.cutoff2) != (ref.cutoff1, ref.cutoff2):
                raise ValueError("process kernels must match the initial "
                                 "kernel's dims and cutoffs")


# ---------------------------------------------------------------------------
# Symbol-ODE oracle


def _coefficient_keys(dim1: int, dim2: int, cutoff1: int,
                      cutoff2: int) -> List[Key]:
    keys = []
    for n in range(cutoff1 + 1):
        for alpha in iter_occupations(dim1, n):
            for m in range(cutoff2 + 1):
                for beta in iter_occupations(dim2, m):
                    keys.append((alpha, beta))
    return keys


def default_symbol_points(dim1: int, dim2: int, count: int, radius: float,
                          seed: int) -> List[Tuple[Tuple[complex, ...],
                                                   Tuple[complex, ...]]]:
    rng = np.random.default_rng(seed)
    pts = []
    for _ in range(count):
        z = radius * (rng.uniform(-1, 1, dim1) + 1j * rng.uniform(-1, 1, dim1))
        w = radius * (rng.uniform(-1, 1, dim2) + 1j * rng.uniform(-1, 1, dim2))
        pts.append((tuple(z.tolist()), tuple(w.tolist())))
    return pts


def solve_symbol_ode(Z: ProcessSpec, Theta: ProcessSpec, xi0: OperatorKernel,
                     times: Sequence[float], step: float,
                     points: Optional[Sequence] = None,
                     radius: float = 0.5, oversample: float = 1.5,
                     seed: int = 42) -> EvolutionSolution:
    """RK4 integration of the scalar symbol ODE, then kernel reconstruction.

    d sigma/dt = sigma(Z) sigma + sigma(Theta) holds pointwise for the
    distribution-action flow; integrating it at a generic point set and
    fitting coefficients gives an oracle independent of the convolution
    calculus.  High reconstructed degrees absorb the truncation tail of the
    closed form; comparisons belong on low degrees or on symbol values.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    _check_processes(Z, Theta, xi0)
    ref = xi0.kernel
    keys = _coefficient_keys(ref.dim1, ref.dim2, ref.cutoff1, ref.cutoff2)
    if points is None:
        count = max(len(keys), int(math.ceil(oversample * len(keys))))
        points = default_symbol_points(ref.dim1, ref.dim2, count, radius, seed)
    points = list(points)
    if len(points) < len(keys):
        raise ValueError("point set smaller than the coefficient count")

    sigma = np.array([symbol(xi0, p[0], p[1]) for p in points], dtype=complex)
    sz_cache: Dict[int, np.ndarray] = {}
    st_cache: Dict[int, np.ndarray] = {}

    def sig_Z(s: float) -> np.ndarray:
        i = min(bisect_right(Z.grid, s) - 1, len(Z.kernels) - 1)
        if i not in sz_cache:
            k = Z.kernels[i]
            sz_cache[i] = np.array([symbol(k, p[0], p[1]) for p in points])
        return sz_cache[i]

    def sig_T(s: float) -> np.ndarray:
        i = min(bisect_right(Theta.grid, s) - 1, len(Theta.kernels) - 1)
        if i not in st_cache:
            k = Theta.kernels[i]
            st_cache[i] = np.array([symbol(k, p[0], p[1]) for p in points])
        return st_cache[i]

    def rhs(s: float, y: np.ndarray) -> np.ndarray:
        return sig_Z(s) * y + sig_T(s)

    design = np.array(
        [[multinomial_weight(a) * multinomial_weight(b)
          * _mono(p[0], a) * _mono(p[1], b) for (a, b) in keys]
         for p in points], dtype=complex)
    scale = np.linalg.norm(design, axis=0)
    scale[scale == 0] = 1.0

    sorted_times = sorted(set(float(t) for t in times))
    if any(t < 0 or t > min(Z.end, Theta.end) + 1e-12 for t in sorted_times):
        raise ValueError("requested times outside the process grids")
    # Integrate segment by segment so RK4 never steps across a process kink.
    marks = sorted({0.0, *sorted_times,
                    *[g for g in list(Z.grid) + list(Theta.grid)
                      if 0.0 < g < max(sorted_times, default=0.0)]})
    snapshots: Dict[float, np.ndarray] = {0.0: sigma.copy()}
    s_cur = 0.0
    for target in marks[1:]:
        span = target - s_cur
        nsteps = max(1, int(math.ceil(span / step)))
        h = span / nsteps
        for i in range(nsteps):
            s = s_cur + i * h
            k1 = rhs(s, sigma)
            k2 = rhs(s + h / 2, sigma + h / 2 * k1)
            k3 = rhs(s + h / 2, sigma + h / 2 * k2)
            k4 = rhs(s + h, sigma + h * k3)
            sigma = sigma + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        s_cur = target
        snapshots[target] = sigma.copy()

    out_kernels = []
    out_values = []
    for t in times:
        values = snapshots[float(t)]
        coef, *_ = np.linalg.lstsq(design / scale, values, rcond=None)
        coef = coef / scale
        coeffs = {k: complex(c) for k, c in zip(keys, coef)
                  if abs(c) > 1e-300}
        kern = Expansion2(ref.dim1, ref.dim2, ref.cutoff1, ref.cutoff2,
                          coeffs, role=DISTRIBUTION)
        out_kernels.append(OperatorKernel(kern, label="symbol-ode"))
        out_values.append(tuple(values.tolist()))
    return EvolutionSolution(tuple(float(t) for t in times),
                             tuple(out_kernels),
                             method="symbol_ode_numeric",
                             action=ACTION_DISTRIBUTION,
                             symbol_points=tuple((tuple(p[0]), tuple(p[1]))
                                                 for p in points),
                             symbol_values=tuple(out_values))


def _mono(point: Sequence[complex], alpha: MultiIndex) -> complex:
    v = 1 + 0j
    for x, a in zip(point, alpha):
        if a:
            v *= complex(x) ** a
    return v


# ---------------------------------------------------------------------------
# Heat equation


def half_trace_process(dim1: int, dim2: int, cutoff1: int, cutoff2: int,
                       t_end: float) -> ProcessSpec:
    T = trace_distribution(dim1, dim2, cutoff1, cutoff2)
    return ProcessSpec.constant(OperatorKernel(T.scale(0.5), "half-trace"),
                                t_end)


def solve_heat(xi0: OperatorKernel, Theta: Optional[ProcessSpec],
               times: Sequence[float], action: str = ACTION_FUNCTION,
               quad_tol: float = 1e-10, max_panels: int = 2 ** 14,
               check_points: int = 5, seed: int = 42) -> EvolutionSolution:
    """Heat flow driven by half the trace distribution.

    With no source and the function action, the solution kernel is the
    Gaussian smoothing of the initial kernel polynomial; the moment-based
    evaluation is recorded as a cross-check gap.
    """
    ref = xi0.kernel
    t_end = max([float(t) for t in times] + [1e-9])
    Z = half_trace_process(ref.dim1, ref.dim2, ref.cutoff1, ref.cutoff2, t_end)
    if Theta is None:
        Theta = zero_process(ref.dim1, ref.dim2, ref.cutoff1, ref.cutoff2,
                             t_end)
    sol = solve_qsde(Z, Theta, xi0, times, action=action,
                     quad_tol=quad_tol, max_panels=max_panels)
    checks = dict(sol.checks)
    if Theta.is_zero() and action == ACTION_FUNCTION:
        rng = np.random.default_rng(seed)
        gap = 0.0
        for t, kern in zip(sol.times, sol.kernels):
            for _ in range(check_points):
                y = Point2.of(rng.uniform(-1, 1, ref.dim1).tolist(),
                              rng.uniform(-1, 1, ref.dim2).tolist())
                direct = coefficient_polynomial(kern.kernel, y)
                oracle = gaussian_heat_kernel(xi0, t, y)
                gap = max(gap, abs(direct - oracle))
        checks["gaussian_gap"] = gap
    return replace(sol, checks=checks)


def gaussian_heat_kernel(xi0: OperatorKernel, t: float, y: Point2) -> complex:
    """Gaussian-integral evaluation of the homogeneous heat solution kernel.

    Integrates the initial kernel polynomial shifted by sqrt(t) times a
    standard Gaussian, coordinate by coordinate, using exact moments.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    if len(y.z) != xi0.dim1 or len(y.t) != xi0.dim2:
        raise ValueError("evaluation point does not match kernel dims")
    total = 0j
    for (alpha, beta), c in xi0.kernel.coeffs.items():
        term = multinomial_weight(alpha) * multinomial_weight(beta) * c
        for a, k in zip(y.z, alpha):
            if k:
                term *= _shifted_gauss_moment(a, t, k)
        for a, k in zip(y.t, beta):
            if k:
                term *= _shifted_gauss_moment(a, t, k)
        total += term
    return total
