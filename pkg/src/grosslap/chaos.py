"""Two-variable truncated chaos (Taylor) expansions.

An expansion holds coefficients c_{alpha,beta} indexed by a pair of occupation
vectors (alpha over the first variable, beta over the second).  The same
storage serves test functions and distributions; a role flag guards operations
that only make sense for one side.  The one-variable theory is the degenerate
case dim2 = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Dict, Sequence, Tuple

from .tensor_core import (
    DimensionMismatchError,
    MultiIndex,
    multinomial_weight,
    iter_occupations,
    weight,
)

TEST = "test"
DISTRIBUTION = "distribution"

Key = Tuple[MultiIndex, MultiIndex]


class RoleError(ValueError):
    """Operation applied to an expansion with the wrong role."""


@dataclass(frozen=True)
class Expansion2:
    """Truncated chaos expansion in two variables.

    coeffs maps (alpha, beta) -> complex; alpha indexes the first variable
    (dimension dim1), beta the second (dimension dim2, possibly 0).  Degrees
    above (cutoff1, cutoff2) are never stored; ``truncated`` records that some
    operation had to drop a produced degree.
    """

    dim1: int
    dim2: int
    cutoff1: int
    cutoff2: int
    coeffs: Dict[Key, complex] = field(default_factory=dict)
    role: str = TEST
    truncated: bool = False

    def __post_init__(self):
        if self.dim1 < 1:
            raise ValueError("dim1 must be >= 1")
        if self.dim2 < 0:
            raise ValueError("dim2 must be >= 0")
        if self.role not in (TEST, DISTRIBUTION):
            raise ValueError(f"unknown role {self.role!r}")
        for (alpha, beta) in self.coeffs:
            if len(alpha) != self.dim1 or len(beta) != self.dim2:
                raise DimensionMismatchError(
                    f"key {(alpha, beta)} incompatible with dims "
                    f"({self.dim1}, {self.dim2})")
            if weight(alpha) > self.cutoff1 or weight(beta) > self.cutoff2:
                raise ValueError(f"key {(alpha, beta)} exceeds cutoffs")

    # -- basic algebra ------------------------------------------------------

    def __getitem__(self, key: Key) -> complex:
        return self.coeffs.get(key, 0j)

    def scale(self, c: complex) -> "Expansion2":
        coeffs = {} if c == 0 else {k: c * v for k, v in self.coeffs.items()}
        return replace(self, coeffs=coeffs)

    def add(self, other: "Expansion2") -> "Expansion2":
        _check_compatible(self, other)
        if other.role != self.role:
            raise RoleError("can only add expansions with equal roles")
        coeffs = dict(self.coeffs)
        for k, v in other.coeffs.items():
            coeffs[k] = coeffs.get(k, 0j) + v
        coeffs = {k: v for k, v in coeffs.items() if v != 0}
        return replace(self, coeffs=coeffs,
                       truncated=self.truncated or other.truncated)

    def with_role(self, role: str) -> "Expansion2":
        return replace(self, role=role)

    def max_degrees(self) -> Tuple[int, int]:
        n = max((weight(a) for a, _ in self.coeffs), default=0)
        m = max((weight(b) for _, b in self.coeffs), default=0)
        return n, m

    def norm_inf(self) -> float:
        return max((abs(v) for v in self.coeffs.values()), default=0.0)

    def is_one_variable(self) -> bool:
        return self.dim2 == 0


@dataclass(frozen=True)
class Point2:
    """Evaluation point (z, t) with z over dim1 and t over dim2."""

    z: Tuple[complex, ...]
    t: Tuple[complex, ...] = ()

    @staticmethod
    def of(z: Sequence[complex], t: Sequence[complex] = ()) -> "Point2":
        return Point2(tuple(complex(x) for x in z),
                      tuple(complex(x) for x in t))

    def __add__(self, other: "Point2") -> "Point2":
        return Point2(tuple(a + b for a, b in zip(self.z, other.z)),
                      tuple(a + b for a, b in zip(self.t, other.t)))


def _check_compatible(a: Expansion2, b: Expansion2) -> None:
    if (a.dim1, a.dim2) != (b.dim1, b.dim2):
        raise DimensionMismatchError(
            f"dims ({a.dim1},{a.dim2}) vs ({b.dim1},{b.dim2})")
    if (a.cutoff1, a.cutoff2) != (b.cutoff1, b.cutoff2):
        raise DimensionMismatchError(
            f"cutoffs ({a.cutoff1},{a.cutoff2}) vs ({b.cutoff1},{b.cutoff2})")


def _check_point(phi: Expansion2, p: Point2) -> None:
    if len(p.z) != phi.dim1 or len(p.t) != phi.dim2:
        raise DimensionMismatchError(
            f"point dims ({len(p.z)},{len(p.t)}) vs "
            f"expansion ({phi.dim1},{phi.dim2})")


def _monomial(point: Sequence[complex], alpha: MultiIndex) -> complex:
    v = 1 + 0j
    for x, a in zip(point, alpha):
        if a:
            v *= complex(x) ** a
    return v


def coefficient_polynomial(phi: Expansion2, p: Point2) -> complex:
    """Sum mult(alpha) mult(beta) c_{alpha,beta} z^alpha t^beta.

    This is plain evaluation for a test expansion and, with the same formula,
    the Laplace transform for a distribution; the role check lives in the
    public wrappers.
    """
    _check_point(phi, p)
    total = 0j
    for (alpha, beta), c in phi.coeffs.items():
        total += (multinomial_weight(alpha) * multinomial_weight(beta)
                  * c * _monomial(p.z, alpha) * _monomial(p.t, beta))
    return total


def evaluate(phi: Expansion2, p: Point2) -> complex:
    """Evaluate a test expansion at a point of the (dual) base space."""
    if phi.role != TEST:
        raise RoleError("evaluate needs a test expansion; use laplace "
                        "for distributions")
    return coefficient_polynomial(phi, p)


def laplace(Phi: Expansion2, xi: Sequence[complex],
            eta: Sequence[complex] = ()) -> complex:
    """Laplace transform of a distribution: pairing with e_{(xi,eta)}.

    Coefficient-wise the exponential-vector factorials cancel, leaving the
    plain bilinear pairing of each Phi_{n,m} with xi^n (x) eta^m.
    """
    if Phi.role != DISTRIBUTION:
        raise RoleError("laplace needs a distribution")
    return coefficient_polynomial(Phi, Point2.of(xi, eta))


def exponential_vector(xi: Sequence[complex], eta: Sequence[complex],
                       cutoff1: int, cutoff2: int) -> Expansion2:
    """e_{(xi,eta)}: coefficient at (n,m) is xi^n / n! (x) eta^m / m!."""
    dim1, dim2 = len(xi), len(eta)
    coeffs: Dict[Key, complex] = {}
    for n in range(cutoff1 + 1):
        fn = math.factorial(n)
        for alpha in iter_occupations(dim1, n):
            va = _monomial(xi, alpha)
            if va == 0 and n > 0:
                continue
            for m in range(cutoff2 + 1):
                fm = math.factorial(m)
                for beta in iter_occupations(dim2, m):
                    vb = _monomial(eta, beta)
                    if vb == 0 and m > 0:
                        continue
                    coeffs[(alpha, beta)] = va * vb / (fn * fm)
    return Expansion2(dim1, dim2, cutoff1, cutoff2, coeffs, role=TEST)


def vacuum(dim1: int, dim2: int, cutoff1: int, cutoff2: int) -> Expansion2:
    """The constant function 1 (exponential vector at the origin)."""
    zero_key = ((0,) * dim1, (0,) * dim2)
    return Expansion2(dim1, dim2, cutoff1, cutoff2, {zero_key: 1 + 0j}, role=TEST)


def delta0(dim1: int, dim2: int, cutoff1: int, cutoff2: int) -> Expansion2:
    """Evaluation-at-the-origin distribution, the convolution unit."""
    zero_key = ((0,) * dim1, (0,) * dim2)
    return Expansion2(dim1, dim2, cutoff1, cutoff2, {zero_key: 1 + 0j},
                      role=DISTRIBUTION)


def translate(phi: Expansion2, shift: Point2) -> Expansion2:
    """Shift of a test expansion: translate(phi, s)(x) = phi(x + s).

    Coefficients follow the binomial rule: the (gamma, delta) coefficient
    picks up C(n+i, i) C(m+j, j) times the contraction of s^i (x) s^j against
    phi_{n+i, m+j}.
    """
    if phi.role != TEST:
        raise RoleError("translate needs a test expansion")
    _check_point(phi, shift)
    coeffs: Dict[Key, complex] = {}
    for (kappa, lam), c in phi.coeffs.items():
        # Split kappa = mu + gamma over all sub-occupations mu absorbed by the
        # shift; likewise for lam.  The binomial factor C(|gamma|+|mu|, |mu|)
        # combines with the orbit counts of mu and nu.
        for mu in _sub_occupations(kappa):
            zmu = _monomial(shift.z, mu)
            if zmu == 0 and weight(mu) > 0:
                continue
            gamma = tuple(k - m for k, m in zip(kappa, mu))
            wf1 = math.comb(weight(kappa), weight(mu)) * multinomial_weight(mu)
            for nu in _sub_occupations(lam):
                tnu = _monomial(shift.t, nu)
                if tnu == 0 and weight(nu) > 0:
                    continue
                delta = tuple(l - n for l, n in zip(lam, nu))
                wf2 = math.comb(weight(lam), weight(nu)) * multinomial_weight(nu)
                key = (gamma, delta)
                coeffs[key] = coeffs.get(key, 0j) + wf1 * wf2 * zmu * tnu * c
    coeffs = {k: v for k, v in coeffs.items() if v != 0}
    return replace(phi, coeffs=coeffs)


def _sub_occupations(alpha: MultiIndex):
    """All occupation vectors mu with mu <= alpha componentwise."""
    if not alpha:
        yield ()
        return
    head, tail = alpha[0], alpha[1:]
    for h in range(head + 1):
        for rest in _sub_occupations(tail):
            yield (h,) + rest


def dual_pair(Phi: Expansion2, phi: Expansion2) -> complex:
    """Canonical pairing <<Phi, phi>> = sum n! m! <Phi_{n,m}, phi_{n,m}>."""
    if Phi.role != DISTRIBUTION:
        raise RoleError("dual_pair needs a distribution on the left")
    if phi.role != TEST:
        raise RoleError("dual_pair needs a test expansion on the right")
    _check_compatible(Phi, phi)
    total = 0j
    for key, c in Phi.coeffs.items():
        d = phi.coeffs.get(key)
        if d is None:
            continue
        alpha, beta = key
        w = (math.factorial(weight(alpha)) * math.factorial(weight(beta))
             * multinomial_weight(alpha) * multinomial_weight(beta))
        total += w * c * d
    return total


def sym_convolve_coeffs(f: Expansion2, g: Expansion2) -> Tuple[Dict[Key, complex], bool]:
    """Per-variable symmetrized-product convolution of coefficient families.

    Returns the coefficient dict truncated at the shared cutoffs plus a flag
    saying whether anything was dropped.  This is the engine behind both the
    pointwise product of test functions and the convolution of distributions.
    """
    _check_compatible(f, g)
    acc: Dict[Key, complex] = {}
    dropped = False
    for (a1, b1), c1 in f.coeffs.items():
        w11 = multinomial_weight(a1)
        w12 = multinomial_weight(b1)
        for (a2, b2), c2 in g.coeffs.items():
            alpha = tuple(x + y for x, y in zip(a1, a2))
            beta = tuple(x + y for x, y in zip(b1, b2))
            if weight(alpha) > f.cutoff1 or weight(beta) > f.cutoff2:
                dropped = True
                continue
            w = (w11 * w12 * multinomial_weight(a2) * multinomial_weight(b2))
            key = (alpha, beta)
            acc[key] = acc.get(key, 0j) + w * c1 * c2
    coeffs = {}
    for (alpha, beta), v in acc.items():
        v /= multinomial_weight(alpha) * multinomial_weight(beta)
        if v != 0:
            coeffs[(alpha, beta)] = v
    return coeffs, dropped


def pointwise_product(f: Expansion2, g: Expansion2) -> Expansion2:
    """Product of two test functions, truncated at the shared cutoffs."""
    if f.role != TEST or g.role != TEST:
        raise RoleError("pointwise_product needs two test expansions")
    coeffs, dropped = sym_convolve_coeffs(f, g)
    return replace(f, coeffs=coeffs,
                   truncated=f.truncated or g.truncated or dropped)


# ---------------------------------------------------------------------------
# JSON interchange


def expansion_to_json(phi: Expansion2) -> dict:
    return {
        "dim1": phi.dim1,
        "dim2": phi.dim2,
        "cutoff1": phi.cutoff1,
        "cutoff2": phi.cutoff2,
        "role": phi.role,
        "terms": [
            {"alpha": list(a), "beta": list(b), "re": v.real, "im": v.imag}
            for (a, b), v in sorted(phi.coeffs.items())
        ],
    }


def expansion_from_json(obj: dict) -> Expansion2:
    coeffs = {
        (tuple(t["alpha"]), tuple(t["beta"])): complex(t["re"], t.get("im", 0.0))
        for t in obj.get("terms", [])
    }
    return Expansion2(int(obj["dim1"]), int(obj["dim2"]),
                      int(obj["cutoff1"]), int(obj["cutoff2"]),
                      coeffs, role=obj.get("role", TEST))
