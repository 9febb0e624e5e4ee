"""Path lifting through the covering map p: R -> S^1.

The normalized lift of ``f o alpha`` is computed by phase unwrapping on a
uniform grid and a single integer shift that puts the start value in [0, 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circle_core import CircleMap, GridFunction, phases, sample_map
from .errors import AliasingError, ContinuityError, DomainError, NonIntegerGapError

DEFAULT_N = 1024
ALIAS_TOL = 1e-9
LIFT_GAP_TOL = 1e-9
WINDING_TOL = 1e-6


def unwrap_phases(raw) -> np.ndarray:
    """Continue a sequence of phases (revolutions) along the nearest branch.

    ``out[0] == raw[0]`` and each later entry is ``raw[j]`` plus the integer that
    brings it within half a revolution of its predecessor. Only integers are
    ever added, so every output is an exact representative of its input mod 1.
    """
    raw = np.asarray(raw, dtype=float)
    if raw.ndim != 1 or raw.size < 2:
        raise ValueError("need a 1-d array of at least two phases")
    d = np.diff(raw)
    frac = d - np.floor(d)
    tie = np.abs(frac - 0.5) < ALIAS_TOL
    if np.any(tie):
        j = int(np.argmax(tie))
        raise AliasingError(
            f"phases {raw[j]!r} and {raw[j + 1]!r} are half a revolution apart; "
            "the nearest branch is ambiguous"
        )
    jumps = -np.round(d)
    offsets = np.concatenate([[0.0], np.cumsum(jumps)])
    return raw + offsets


@dataclass(frozen=True, eq=False)
class LiftedMap:
    """A sampled element of C^(I, R): start in [0, 1), integer endpoint gap."""

    grid: GridFunction

    def __post_init__(self):
        v = self.grid.values
        if not 0.0 <= v[0] < 1.0:
            raise DomainError(f"lift must start in [0, 1), got {v[0]!r}")
        gap = v[-1] - v[0]
        if abs(gap - round(gap)) > LIFT_GAP_TOL:
            raise NonIntegerGapError(f"lift endpoint gap {gap!r} is not an integer")
        if np.any(np.abs(np.diff(v)) >= 0.5):
            raise ContinuityError("adjacent lift values differ by half a revolution or more")

    @classmethod
    def from_values(cls, values) -> LiftedMap:
        return cls(GridFunction(values))

    @property
    def values(self) -> np.ndarray:
        return self.grid.values

    @property
    def n_intervals(self) -> int:
        return self.grid.n_intervals

    @property
    def start(self) -> float:
        return float(self.values[0])

    @property
    def gap(self) -> int:
        return int(round(self.values[-1] - self.values[0]))


def lift(f: CircleMap, n: int = DEFAULT_N) -> LiftedMap:
    """Normalized lift of ``f o alpha`` on the grid j/n."""
    sampled = sample_map(f, n)
    unwrapped = unwrap_phases(phases(sampled.points))
    unwrapped -= math.floor(unwrapped[0])
    return LiftedMap(GridFunction(unwrapped))


def integer_gap(values) -> int:
    """Round ``values[-1] - values[0]`` to the winding integer, refusing corrupt gaps."""
    gap = float(values[-1] - values[0])
    m = round(gap)
    if abs(gap - m) >= WINDING_TOL:
        raise NonIntegerGapError(f"endpoint gap {gap!r} is {abs(gap - m):.3g} away from an integer")
    return int(m)


def winding_number(f: CircleMap, n: int = DEFAULT_N) -> int:
    return integer_gap(lift(f, n).values)
