"""Points on the unit circle, the parametrization alpha, the covering map p and
the circle-map representations used throughout the package.

Phases are measured in revolutions (angle / 2pi), so ``cover_p(t)`` has period 1.
Vectorized helpers work on ``(M, 2)`` arrays of ``(x, y)`` rows; the scalar
API returns :class:`CirclePoint`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ContinuityError, DomainError, NonIntegerGapError

TWO_PI = 2.0 * math.pi

# adjacent samples of a sampled map must be closer than this (revolutions)
CONTINUITY_GAP = 0.25
CLOSURE_TOL = 1e-9
UNIT_TOL = 1e-12


@dataclass(frozen=True)
class CirclePoint:
    x: float
    y: float

    def __post_init__(self):
        x, y = float(self.x), float(self.y)
        r = math.hypot(x, y)
        if not math.isfinite(r) or r == 0.0:
            raise DomainError(f"cannot place ({x}, {y}) on the unit circle")
        if abs(r - 1.0) > UNIT_TOL:
            x, y = x / r, y / r
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y])

    def __iter__(self):
        yield self.x
        yield self.y


def _check_unit_interval(t):
    t = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t)) or np.any(t < 0.0) or np.any(t > 1.0):
        raise DomainError("parameter must lie in [0, 1]")
    return t


def cover_xy(t) -> np.ndarray:
    """Vectorized covering map; ``t`` may be any finite real array."""
    t = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t)):
        raise DomainError("phase must be finite")
    frac = t - np.floor(t)
    ang = TWO_PI * frac
    return np.stack([np.cos(ang), np.sin(ang)], axis=-1)


def phases(xy) -> np.ndarray:
    """Phase in [0, 1) of each row of an ``(M, 2)`` array; (1, 0) maps to 0."""
    xy = np.asarray(xy, dtype=float)
    t = np.arctan2(xy[..., 1], xy[..., 0]) / TWO_PI
    t = np.where(t < 0.0, t + 1.0, t)
    # -tiny + 1 rounds to 1.0; -0.0 should read as 0
    t = np.where(t >= 1.0, 0.0, t)
    return t + 0.0


def wrapped_diff(d) -> np.ndarray:
    """Reduce phase differences to the representative in [-1/2, 1/2)."""
    d = np.asarray(d, dtype=float)
    return d - np.floor(d + 0.5)


def alpha(t: float) -> CirclePoint:
    """alpha(t) = (cos 2pi t, sin 2pi t) for t in [0, 1]."""
    _check_unit_interval(t)
    x, y = cover_xy(float(t))
    return CirclePoint(x, y)


def cover_p(t: float) -> CirclePoint:
    """The exponential covering map R -> S^1."""
    x, y = cover_xy(float(t))
    return CirclePoint(x, y)


def alpha_inv(point: CirclePoint) -> float:
    return float(phases(np.array([point.x, point.y])))


class CircleMap:
    """A continuous map S^1 -> S^1, evaluated through its composite with alpha."""

    kind = "abstract"

    def xy(self, ts) -> np.ndarray:
        """Return ``f(alpha(t))`` for every t as an ``(M, 2)`` array."""
        raise NotImplementedError

    def __call__(self, t: float) -> CirclePoint:
        return eval_map(self, t)


@dataclass(frozen=True)
class PowerMap(CircleMap):
    """z -> z**n."""

    n: int
    kind = "power"

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n:
            raise DomainError("power map exponent must be an integer")
        object.__setattr__(self, "n", int(self.n))

    def xy(self, ts):
        ts = _check_unit_interval(ts)
        z = cover_xy(ts) @ np.array([1.0, 1j])
        k = abs(self.n)
        acc = np.ones_like(z)
        base = z
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        if self.n < 0:
            acc = np.conj(acc)
        return np.stack([acc.real, acc.imag], axis=-1)


@dataclass(frozen=True)
class RotationMap(CircleMap):
    """The rigid rotation z -> e^{i theta} z (theta in radians)."""

    theta: float
    kind = "rotation"

    def __post_init__(self):
        if not math.isfinite(self.theta):
            raise DomainError("rotation angle must be finite")
        object.__setattr__(self, "theta", float(self.theta))

    def xy(self, ts):
        ts = _check_unit_interval(ts)
        c, s = math.cos(self.theta), math.sin(self.theta)
        pts = cover_xy(ts)
        return pts @ np.array([[c, s], [-s, c]])


@dataclass(frozen=True)
class LiftExprMap(CircleMap):
    """The map whose lift is ``ell(t) = sum poly[i] t^i + sum sin[k-1] sin(2pi k t)
    + sum cos[k-1] cos(2pi k t)``.

    ``ell(1) - ell(0)`` must be an integer; it is the winding number.
    """

    poly: tuple = (0.0,)
    sin: tuple = ()
    cos: tuple = ()
    kind = "lift_expr"

    def __post_init__(self):
        for name in ("poly", "sin", "cos"):
            vals = tuple(float(c) for c in getattr(self, name))
            if not all(math.isfinite(c) for c in vals):
                raise DomainError(f"lift_expr {name} coefficients must be finite")
            object.__setattr__(self, name, vals)
        if not self.poly:
            object.__setattr__(self, "poly", (0.0,))
        gap = float(self.ell(1.0) - self.ell(0.0))
        if abs(gap - round(gap)) > CLOSURE_TOL:
            raise NonIntegerGapError(f"lift_expr gap ell(1)-ell(0) = {gap!r} is not an integer")

    def ell(self, ts):
        ts = np.asarray(ts, dtype=float)
        out = np.polynomial.polynomial.polyval(ts, self.poly)
        for k, a in enumerate(self.sin, start=1):
            out = out + a * np.sin(TWO_PI * k * ts)
        for k, b in enumerate(self.cos, start=1):
            out = out + b * np.cos(TWO_PI * k * ts)
        return out

    @property
    def gap(self) -> int:
        return int(round(float(self.ell(1.0) - self.ell(0.0))))

    def xy(self, ts):
        ts = _check_unit_interval(ts)
        return cover_xy(self.ell(ts))


@dataclass(frozen=True, eq=False)
class SampledMap(CircleMap):
    """A closed curve given by samples ``points[j] = f(alpha(ts[j]))``.

    Between samples the map is interpolated phase-linearly along the shorter arc.
    """

    ts: np.ndarray
    points: np.ndarray
    kind = "sampled"
    _phases: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        ts = np.array(self.ts, dtype=float)
        pts = np.array(self.points, dtype=float)
        if ts.ndim != 1 or pts.shape != (ts.size, 2):
            raise DomainError("sampled map needs ts of shape (M,) and points of shape (M, 2)")
        if ts.size < 3:
            raise DomainError("sampled map needs at least 3 samples")
        if not (np.all(np.isfinite(ts)) and np.all(np.isfinite(pts))):
            raise DomainError("sampled map contains non-finite values")
        if ts[0] != 0.0 or abs(ts[-1] - 1.0) > UNIT_TOL or np.any(np.diff(ts) <= 0):
            raise DomainError("sample parameters must increase strictly from 0 to 1")
        ts[-1] = 1.0
        r = np.hypot(pts[:, 0], pts[:, 1])
        if np.any(r == 0.0):
            raise DomainError("sampled map contains the zero vector")
        off = np.abs(r - 1.0) > UNIT_TOL
        pts[off] = pts[off] / r[off, None]
        if np.max(np.abs(pts[0] - pts[-1])) > CLOSURE_TOL:
            raise ContinuityError("sampled curve is not closed: first and last samples differ")
        ph = phases(pts)
        gaps = np.abs(wrapped_diff(np.diff(ph)))
        j = int(np.argmax(gaps))
        if gaps[j] >= CONTINUITY_GAP:
            raise ContinuityError(
                f"adjacent phase gap {gaps[j]:.6g} rev between samples {j} and {j + 1} "
                f"reaches the limit {CONTINUITY_GAP}; sample more finely"
            )
        ts.flags.writeable = False
        pts.flags.writeable = False
        ph.flags.writeable = False
        object.__setattr__(self, "ts", ts)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "_phases", ph)

    @property
    def n_intervals(self) -> int:
        return self.ts.size - 1

    def xy(self, ts):
        ts = np.atleast_1d(_check_unit_interval(ts))
        j = np.clip(np.searchsorted(self.ts, ts, side="right") - 1, 0, self.ts.size - 2)
        t0, t1 = self.ts[j], self.ts[j + 1]
        s = (ts - t0) / (t1 - t0)
        step = wrapped_diff(self._phases[j + 1] - self._phases[j])
        out = cover_xy(self._phases[j] + s * step)
        # nodes are returned verbatim
        at0, at1 = s == 0.0, s == 1.0
        out[at0] = self.points[j[at0]]
        out[at1] = self.points[j[at1] + 1]
        return out


def power(n: int) -> PowerMap:
    return PowerMap(n)


def rotation(theta: float) -> RotationMap:
    return RotationMap(theta)


def lift_expr(poly=(0.0,), sin=(), cos=()) -> LiftExprMap:
    return LiftExprMap(tuple(poly), tuple(sin), tuple(cos))


def constant_map(phase: float) -> LiftExprMap:
    """Constant map onto cover_p(phase)."""
    return LiftExprMap((float(phase),))


def eval_map(f: CircleMap, t: float) -> CirclePoint:
    """Evaluate ``f(alpha(t))`` for a single t in [0, 1]."""
    _check_unit_interval(t)
    x, y = np.atleast_2d(f.xy(np.array([float(t)])))[0]
    return CirclePoint(x, y)


def unit_grid(n: int) -> np.ndarray:
    return np.arange(n + 1, dtype=float) / n


def sample_map(f: CircleMap, n: int) -> SampledMap:
    """Sample ``f`` at t_j = j/n, j = 0..n."""
    if int(n) != n or n < 8:
        raise DomainError(f"sample count must be an integer >= 8, got {n}")
    n = int(n)
    ts = unit_grid(n)
    return SampledMap(ts, f.xy(ts))


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Values of a real function on [0, 1] at the nodes j / n_intervals."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim != 1 or v.size < 2:
            raise DomainError("grid function needs at least two values")
        if not np.all(np.isfinite(v)):
            raise DomainError("grid function values must be finite")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @classmethod
    def from_callable(cls, func, n: int) -> GridFunction:
        return cls(func(unit_grid(n)))

    @property
    def n_intervals(self) -> int:
        return self.values.size - 1

    @property
    def nodes(self) -> np.ndarray:
        return unit_grid(self.n_intervals)

    def at(self, t: float) -> float:
        """Value at a grid node; raises if t is not a node."""
        j = t * self.n_intervals
        if abs(j - round(j)) > 1e-9 or not 0 <= round(j) <= self.n_intervals:
            raise DomainError(f"t = {t} is not a node of the {self.n_intervals}-interval grid")
        return float(self.values[int(round(j))])

    def __len__(self):
        return self.values.size
