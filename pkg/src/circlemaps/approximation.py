"""Constructive approximation on I = [0, 1] with prescribed endpoint values,
and class-preserving approximation of circle maps through their lifts.

Polynomials are stored by their Bernstein coefficients on [0, 1]. That keeps
degree-256 Bernstein approximants well conditioned (their monomial expansion
is not) and makes values at 0 and 1 exact: they are the first and last
coefficients. :meth:`Polynomial.monomial_coefficients` gives the ascending
monomial view, computed in exact rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .circle_core import CircleMap, CirclePoint, GridFunction, alpha_inv, eval_map
from .errors import ClassMismatchError, DegreeAlignmentError, DomainError, KnotAlignmentError
from .lifting import DEFAULT_N, lift, winding_number
from .metric import phi_inv

MAX_DEGREE = 512
BASE_TOL = 1e-9


class Polynomial:
    """A real polynomial on [0, 1] in Bernstein form: ``sum c_k C(n,k) x^k (1-x)^(n-k)``."""

    __slots__ = ("coeffs",)

    def __init__(self, bernstein_coeffs):
        c = np.array(bernstein_coeffs, dtype=float).reshape(-1)
        if c.size == 0:
            c = np.zeros(1)
        if c.size - 1 > MAX_DEGREE:
            raise DomainError(f"polynomial degree {c.size - 1} exceeds the cap {MAX_DEGREE}")
        if not np.all(np.isfinite(c)):
            raise DomainError("polynomial coefficients must be finite")
        c.flags.writeable = False
        self.coeffs = c

    @classmethod
    def from_monomial(cls, coeffs) -> Polynomial:
        """Build from ascending monomial coefficients (exact conversion)."""
        a = [Fraction(float(v)) for v in coeffs] or [Fraction(0)]
        n = len(a) - 1
        b = [
            sum((Fraction(math.comb(k, j), math.comb(n, j)) * a[j] for j in range(k + 1)), Fraction(0))
            for k in range(n + 1)
        ]
        return cls([float(v) for v in b])

    @classmethod
    def constant(cls, c: float) -> Polynomial:
        return cls([c])

    @classmethod
    def linear(cls, at0: float, at1: float) -> Polynomial:
        """The affine polynomial with the given values at 0 and 1."""
        return cls([at0, at1])

    @property
    def degree(self) -> int:
        """Nominal degree of the Bernstein representation."""
        return self.coeffs.size - 1

    def monomial_coefficients(self) -> np.ndarray:
        """Ascending monomial coefficients, trailing zeros trimmed."""
        b = [Fraction(float(v)) for v in self.coeffs]
        n = len(b) - 1
        a = []
        for j in range(n + 1):
            s = sum(((-1) ** (j - k) * math.comb(j, k) * b[k] for k in range(j + 1)), Fraction(0))
            a.append(math.comb(n, j) * s)
        while len(a) > 1 and a[-1] == 0:
            a.pop()
        return np.array([float(v) for v in a])

    def elevate(self, degree: int) -> Polynomial:
        """Same polynomial written in a Bernstein basis of higher degree."""
        c = self.coeffs
        if degree < c.size - 1:
            raise ValueError("cannot lower the degree by elevation")
        while c.size - 1 < degree:
            n1 = c.size
            w = np.arange(n1 + 1) / n1
            padded_lo = np.concatenate([[0.0], c])
            padded_hi = np.concatenate([c, [0.0]])
            c = w * padded_lo + (1.0 - w) * padded_hi
        return Polynomial(c)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        xs = np.atleast_1d(x).reshape(-1)
        b = np.broadcast_to(self.coeffs, (xs.size, self.coeffs.size))
        u, v = (1.0 - xs)[:, None], xs[:, None]
        # de Casteljau; exact at x = 0 and x = 1
        for _ in range(self.degree):
            b = u * b[:, :-1] + v * b[:, 1:]
        out = b[:, 0].reshape(np.shape(x)) if not scalar else b[0, 0]
        return float(out) if scalar else out

    def _aligned(self, other: Polynomial):
        n = max(self.degree, other.degree)
        return self.elevate(n).coeffs, other.elevate(n).coeffs

    def __add__(self, other):
        if isinstance(other, Polynomial):
            a, b = self._aligned(other)
            return Polynomial(a + b)
        return Polynomial(self.coeffs + float(other))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial(self.coeffs * float(other))
        m, n = self.degree, other.degree
        out = np.zeros(m + n + 1)
        for i, ci in enumerate(self.coeffs):
            w = math.comb(m, i) * np.array([math.comb(n, j) for j in range(n + 1)], dtype=float)
            w /= np.array([math.comb(m + n, i + j) for j in range(n + 1)], dtype=float)
            out[i : i + n + 1] += ci * other.coeffs * w
        return Polynomial(out)

    __rmul__ = __mul__

    def __repr__(self):
        return f"Polynomial(degree={self.degree}, bernstein={self.coeffs.tolist()!r})"


@dataclass(frozen=True, eq=False)
class PLFunction:
    """Continuous function affine between consecutive knots."""

    knots: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        k = np.array(self.knots, dtype=float)
        v = np.array(self.values, dtype=float)
        if k.ndim != 1 or k.shape != v.shape or k.size < 2:
            raise DomainError("knots and values must be 1-d arrays of equal length >= 2")
        if k[0] != 0.0 or k[-1] != 1.0 or np.any(np.diff(k) <= 0):
            raise DomainError("knots must increase strictly from 0 to 1")
        object.__setattr__(self, "knots", k)
        object.__setattr__(self, "values", v)

    def __call__(self, t):
        out = np.interp(t, self.knots, self.values)
        return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class EndpointSpec:
    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError("endpoint targets must be finite")


@dataclass(frozen=True)
class CircleClassSpec:
    """The class C_m^q: maps sending (1, 0) to q with winding number m."""

    q: CirclePoint
    m: int

    @property
    def q_tilde(self) -> float:
        return alpha_inv(self.q)

    @property
    def endpoints(self) -> EndpointSpec:
        qt = self.q_tilde
        return EndpointSpec(qt, qt + self.m)


def pl_interpolate(g: GridFunction, k: int) -> PLFunction:
    """PL interpolant of ``g`` on k uniform knots; the knots must be grid nodes."""
    n = g.n_intervals
    if k < 2 or n % (k - 1):
        raise KnotAlignmentError(f"{k} uniform knots do not land on the {n}-interval grid")
    step = n // (k - 1)
    return PLFunction(np.arange(k) / (k - 1), g.values[::step])


def bernstein(g: GridFunction, n: int) -> Polynomial:
    """Bernstein polynomial B_n(g), using the grid values g(k/n)."""
    big_n = g.n_intervals
    if n < 1 or big_n % n:
        raise DegreeAlignmentError(f"degree {n} does not divide the {big_n}-interval grid")
    return Polynomial(g.values[:: big_n // n])


def endpoint_correct_0a(p: Polynomial, f1: float) -> Polynomial:
    """``p(x) - p(0) + x (f1 - p(1) + p(0))``: vanishes at 0 and equals f1 at 1."""
    p = p.elevate(max(p.degree, 1))
    c = p.coeffs
    p0, p1 = c[0], c[-1]
    ramp = np.arange(c.size) / p.degree
    return Polynomial(c - p0 + ramp * (f1 - p1 + p0))


def shift_conjugate_correct(p: Polynomial, spec: EndpointSpec) -> Polynomial:
    """Move ``p`` into P_{a,b}: shift by -a, correct to P_{0,b-a}, shift back."""
    return endpoint_correct_0a(p - spec.a, spec.b - spec.a) + spec.a


def correct_pl_endpoints(h: PLFunction, spec: EndpointSpec) -> PLFunction:
    """The same affine endpoint correction applied to a PL function (stays PL)."""
    v0, v1 = h.values[0], h.values[-1]
    shift = spec.a - v0
    return PLFunction(h.knots, h.values + shift + h.knots * (spec.b - v1 - shift))


def sup_error(h, g: GridFunction) -> float:
    """Max over the grid nodes of |h - g|."""
    return float(np.max(np.abs(h(g.nodes) - g.values)))


def modulus_of_continuity(g: GridFunction, delta: float) -> float:
    """Largest change of ``g`` between grid nodes at most ``delta`` apart."""
    v = g.values
    lags = min(int(math.floor(delta * g.n_intervals + 1e-9)), v.size - 1)
    return max((float(np.max(np.abs(v[j:] - v[:-j]))) for j in range(1, lags + 1)), default=0.0)


def check_class(f: CircleMap, spec: CircleClassSpec, n: int = DEFAULT_N) -> None:
    """Raise ClassMismatchError unless f is in C_m^q."""
    m = winding_number(f, n)
    if m != spec.m:
        raise ClassMismatchError(f"map has winding number {m}, class requires {spec.m}")
    base = eval_map(f, 0.0)
    dist = math.hypot(base.x - spec.q.x, base.y - spec.q.y)
    if dist > BASE_TOL:
        raise ClassMismatchError(
            f"map sends (1,0) to ({base.x:.17g}, {base.y:.17g}), class requires "
            f"({spec.q.x:.17g}, {spec.q.y:.17g})"
        )


def class_lift(f: CircleMap, spec: CircleClassSpec, n: int = DEFAULT_N) -> GridFunction:
    """Lift of ``f o alpha`` on the branch starting at q~ (validated membership)."""
    check_class(f, spec, n)
    v = lift(f, n).values
    return GridFunction(v + round(spec.q_tilde - v[0]))


def approximate_lift(g: GridFunction, spec: EndpointSpec, method: str, size: int):
    """PL (``size`` knots) or corrected Bernstein (degree ``size``) approximant of g
    whose values at 0 and 1 are ``spec.a`` and ``spec.b``."""
    if method == "pl":
        return correct_pl_endpoints(pl_interpolate(g, size), spec)
    if method == "poly":
        return shift_conjugate_correct(bernstein(g, size), spec)
    raise DomainError(f"unknown approximation method {method!r}; expected 'pl' or 'poly'")




def approximate_in_class(
    f: CircleMap, spec: CircleClassSpec, method: str = "poly", size: int = 64, n: int = DEFAULT_N
):
    """Approximate ``f`` inside C_m^q by a PL or polynomial-lift map.

    Returns the approximating map sampled on the grid j/n.
    """
    g = class_lift(f, spec, n)
    h = approximate_lift(g, spec.endpoints, method, size)
    return phi_inv(GridFunction(h(g.nodes)))
