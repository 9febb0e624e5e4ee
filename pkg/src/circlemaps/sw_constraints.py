"""Stone-Weierstrass approximation under interpolatory constraints on X = [0, 1].

An approximant from a unital, point-separating algebra is corrected so that
it takes prescribed values at finitely many points while still converging
uniformly. The only algebra backend implemented is polynomials on I (Bernstein).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .approximation import Polynomial, bernstein, class_lift
from .circle_core import CircleMap, GridFunction
from .errors import ConstraintError, DegenerateDenominatorError, DomainError, IllConditionedError
from .lifting import DEFAULT_N
from .metric import phi_inv

DENOM_TOL = 1e-12
MATCH_TOL = 1e-9
MAX_LAGRANGE_POINTS = 12
MIN_LAGRANGE_GAP = 1e-3
MAX_RETRIES = 3


@dataclass(frozen=True)
class ConstraintSpec:
    """Constraints f(points[i]) = targets[i]."""

    points: tuple
    targets: tuple

    def __post_init__(self):
        pts = tuple(float(x) for x in self.points)
        vals = tuple(float(v) for v in self.targets)
        if not pts:
            raise DomainError("need at least one constraint")
        if len(pts) != len(vals):
            raise DomainError(f"{len(pts)} points but {len(vals)} targets")
        if not all(0.0 <= x <= 1.0 for x in pts):
            raise DomainError("constraint points must lie in [0, 1]")
        if not all(math.isfinite(v) for v in vals):
            raise DomainError("constraint targets must be finite")
        if len(pts) > 1 and np.min(np.diff(np.sort(pts))) <= 1e-9:
            raise DomainError("constraint points must be pairwise distinct")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "targets", vals)

    def residuals(self, h) -> np.ndarray:
        return np.array([abs(h(x) - v) for x, v in zip(self.points, self.targets)])


@dataclass(frozen=True)
class AlgebraBackend:
    """A unital point-separating subalgebra of C(I, R) with an approximation
    procedure ``approximate(grid_function, size) -> element``."""

    kind: str
    approximate: Callable[[GridFunction, int], Polynomial]


POLYNOMIALS = AlgebraBackend("polynomials-on-I", bernstein)
BACKENDS = {POLYNOMIALS.kind: POLYNOMIALS}


def two_point_correct(fn: Polynomial, u: float, v: float, a: float, b: float) -> Polynomial:
    """Rescale ``fn`` affinely so that it takes value a at u and b at v."""
    if u == v:
        raise DomainError("u and v must differ")
    if a == b:
        raise DomainError("the two-point rescaling needs a != b; use equal_value_correct")
    fu, fv = fn(u), fn(v)
    if abs(fv - fu) < DENOM_TOL:
        raise DegenerateDenominatorError(
            f"approximant takes (almost) the same value {fu!r} at u={u} and v={v}"
        )
    scale = (b - a) / (fv - fu)
    return Polynomial(a + scale * (fn.coeffs - fu))


def urysohn_g(u: float, v: float, a: float) -> Callable:
    """Continuous g on [0, 1] with g(u) = -a/4 and g(v) = a/4."""
    if u == v:
        raise DomainError("u and v must differ")
    if a == 0:
        raise DomainError("the Urysohn split needs a != 0")
    q = a / 4.0

    def g(x):
        x = np.asarray(x, dtype=float)
        du, dv = np.abs(x - u), np.abs(x - v)
        out = q * (du - dv) / (du + dv)
        return float(out) if out.ndim == 0 else out

    return g


def urysohn_split(f: GridFunction, u: float, v: float, a: float):
    """Return (g, f1, f2) on the grid with f1 = f/2 + g and f2 = f/2 - g.

    f1 takes values a/4, 3a/4 at u, v; f2 takes 3a/4, a/4.
    """
    g = urysohn_g(u, v, a)(f.nodes)
    half = 0.5 * f.values
    return GridFunction(g), GridFunction(half + g), GridFunction(half - g)


def _check_value(f: GridFunction, x: float, target: float):
    val = f.at(x)
    if abs(val - target) > MATCH_TOL:
        raise ConstraintError(f"f({x}) = {val!r}, expected {target!r}")


def _corrected_with_retry(backend, f: GridFunction, size: int, correct):
    for attempt in range(MAX_RETRIES + 1):
        try:
            return correct(backend.approximate(f, size))
        except DegenerateDenominatorError:
            if attempt == MAX_RETRIES:
                raise
            size *= 2


def equal_value_correct(
    f: GridFunction, u: float, v: float, a: float, backend: AlgebraBackend = POLYNOMIALS, size: int = 64
) -> Polynomial:
    """Approximate f with f(u) = f(v) = a by an algebra element with the same values.

    For a != 0, f is split with an Urysohn function into pieces with unequal
    endpoint values, each piece gets the two-point correction, and the
    corrected pieces are summed. For a == 0 the residual's linear interpolant
    at {u, v} is subtracted instead.
    """
    _check_value(f, u, a)
    _check_value(f, v, a)
    if a == 0:
        spec = ConstraintSpec((u, v), (0.0, 0.0))
        return k_point_correct(backend.approximate(f, size), spec)
    _, f1, f2 = urysohn_split(f, u, v, a)
    p1 = _corrected_with_retry(backend, f1, size, lambda p: two_point_correct(p, u, v, a / 4, 3 * a / 4))
    p2 = _corrected_with_retry(backend, f2, size, lambda p: two_point_correct(p, u, v, 3 * a / 4, a / 4))
    return p1 + p2


def two_point_constrained(
    f: GridFunction, u: float, v: float, backend: AlgebraBackend = POLYNOMIALS, size: int = 64
) -> Polynomial:
    """Approximant of f that keeps f's values at the grid nodes u and v (any values)."""
    a, b = f.at(u), f.at(v)
    if a != b:
        return _corrected_with_retry(backend, f, size, lambda p: two_point_correct(p, u, v, a, b))
    return equal_value_correct(f, u, v, a, backend, size)


def lagrange_basis(points) -> list:
    """Lagrange basis polynomials l_i on the given nodes, l_i(x_j) = delta_ij."""
    basis = []
    for i, xi in enumerate(points):
        li = Polynomial.constant(1.0)
        for j, xj in enumerate(points):
            if j != i:
                d = xi - xj
                li = li * Polynomial.linear(-xj / d, (1.0 - xj) / d)
        basis.append(li)
    return basis


def k_point_correct(fn: Polynomial, spec: ConstraintSpec) -> Polynomial:
    """Add to ``fn`` the Lagrange interpolant of its constraint residuals."""
    pts = spec.points
    if len(pts) > MAX_LAGRANGE_POINTS:
        raise IllConditionedError(f"{len(pts)} constraints exceed the limit of {MAX_LAGRANGE_POINTS}")
    if len(pts) > 1 and np.min(np.diff(np.sort(pts))) < MIN_LAGRANGE_GAP:
        raise IllConditionedError(f"constraint points closer than {MIN_LAGRANGE_GAP}")
    out = fn
    for x, v, li in zip(pts, spec.targets, lagrange_basis(pts)):
        out = out + li * (v - fn(x))
    return out


def constrained_circle_approx(
    f: CircleMap,
    spec,
    backend: AlgebraBackend = POLYNOMIALS,
    size: int = 64,
    n: int = DEFAULT_N,
):
    """Approximate f in C_m^q by a map whose lift is an algebra element with
    values q~ at 0 and q~ + m at 1. Returns the map sampled on the grid j/n."""
    g = class_lift(f, spec, n)
    ends = spec.endpoints
    h = k_point_correct(backend.approximate(g, size), ConstraintSpec((0.0, 1.0), (ends.a, ends.b)))
    return phi_inv(GridFunction(h(g.nodes)))
