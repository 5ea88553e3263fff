"""Young functions, Legendre conjugates and growth-norm diagnostics.

Only named convex families are supported so the qualitative hypotheses
(convexity, superlinear growth) are known by construction and can be spot
checked numerically.  Nothing in the core calculus depends on this module;
it exists for diagnostics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .chaos import Expansion2, Point2, RoleError, TEST, evaluate


@dataclass(frozen=True)
class YoungFunctionSpec:
    """A named Young function theta with theta(0) = 0.

    Families: "power" (x^k / k, k >= 1), "gaussian" (x^2),
    "expm1" (e^x - 1 - x).
    """

    family: str
    k: Optional[float] = None

    def __post_init__(self):
        if self.family not in ("power", "gaussian", "expm1"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "power":
            if self.k is None or self.k < 1:
                raise ValueError("power family needs exponent k >= 1")

    def theta(self, x: float) -> float:
        if x < 0:
            raise ValueError("Young functions are defined on x >= 0")
        if self.family == "gaussian":
            return x * x
        if self.family == "power":
            return x ** self.k / self.k
        return math.expm1(x) - x


def conjugate_eval(spec: YoungFunctionSpec, x: float) -> float:
    """Legendre conjugate theta*(x) = sup_{t>=0} (t x - theta(t))."""
    if x < 0:
        raise ValueError("conjugate_eval needs x >= 0")
    if x == 0:
        return 0.0
    # The objective is concave; expand the bracket until it is decreasing,
    # then refine with bounded golden-section/Brent search.
    hi = 1.0
    def neg(t: float) -> float:
        return spec.theta(t) - t * x
    while neg(hi * 2) < neg(hi) and hi < 1e12:
        hi *= 2
    res = minimize_scalar(neg, bounds=(0.0, 2 * hi), method="bounded",
                          options={"xatol": 1e-12})
    return max(0.0, -res.fun)


def theta_n(spec: YoungFunctionSpec, n: int) -> float:
    """inf over r > 0 of e^{theta(r)} / r^n, via log-domain minimization."""
    if n < 1:
        raise ValueError("theta_n needs n >= 1")
    def obj(logr: float) -> float:
        r = math.exp(logr)
        return spec.theta(r) - n * logr
    res = minimize_scalar(obj, bounds=(-40.0, 40.0), method="bounded",
                          options={"xatol": 1e-13})
    return math.exp(res.fun)


def check_growth_condition(spec: YoungFunctionSpec) -> bool:
    """True iff theta(x) / x^2 stabilizes on a geometric grid up to 1e6."""
    xs = np.geomspace(1.0, 1e6, 121)
    try:
        ratios = np.array([spec.theta(float(x)) / float(x) ** 2 for x in xs])
    except OverflowError:
        return False
    running_max = np.maximum.accumulate(ratios)
    # Compare the max over the last decade against the one a decade before.
    last = running_max[-1]
    prev = running_max[-21]
    if prev == 0:
        return last == 0
    if not np.isfinite(last):
        return False
    return last / prev <= 1.01


def growth_norm_estimate(phi: Expansion2, a1: float, a2: float,
                         theta1: YoungFunctionSpec, theta2: YoungFunctionSpec,
                         samples: int = 2000, r_max: float = 10.0,
                         seed: int = 0) -> float:
    """Sampled lower bound for sup |phi(z, t)| e^{-theta1(a1|z|) - theta2(a2|t|)}."""
    if phi.role != TEST:
        raise RoleError("growth_norm_estimate needs a test expansion")
    rng = np.random.default_rng(seed)
    best = 0.0
    for i in range(samples):
        # Radii sweep [0, r_max] deterministically; directions are random
        # complex unit vectors.
        r = r_max * i / max(samples - 1, 1)
        z = _random_direction(rng, phi.dim1) * r
        t = _random_direction(rng, phi.dim2) * r if phi.dim2 else np.zeros(0)
        val = abs(evaluate(phi, Point2.of(z.tolist(), t.tolist())))
        damp = math.exp(-theta1.theta(a1 * _norm(z)) - theta2.theta(a2 * _norm(t)))
        best = max(best, val * damp)
    return best


def _random_direction(rng: np.random.Generator, d: int) -> np.ndarray:
    if d == 0:
        return np.zeros(0, dtype=complex)
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    n = np.linalg.norm(v)
    return v / n if n else v


def _norm(v: np.ndarray) -> float:
    return float(np.linalg.norm(v)) if len(v) else 0.0
