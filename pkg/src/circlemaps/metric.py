"""The metric d0 on C(S^1, S^1), the sup metric d1 on lifted maps, and the
homeomorphism phi (a map to its normalized lift) with its inverse.

The sup in d0 excludes the base point (1, 0); by continuity it equals the max
over the closed grid, which is what is computed here.
"""

from __future__ import annotations

import math

import numpy as np

from .circle_core import CircleMap, GridFunction, SampledMap, cover_xy
from .errors import GridMismatchError
from .lifting import DEFAULT_N, LiftedMap, integer_gap, lift


def _values(g):
    return g.values if isinstance(g, (LiftedMap, GridFunction)) else np.asarray(g, dtype=float)


def d1(g1, g2) -> float:
    """Sup distance between two grid functions.

    Grids of different resolution are compared on the coarser grid's nodes,
    which requires one interval count to divide the other.
    """
    v1, v2 = _values(g1), _values(g2)
    n1, n2 = v1.size - 1, v2.size - 1
    if n1 != n2:
        lo, hi = min(n1, n2), max(n1, n2)
        if hi % lo:
            raise GridMismatchError(f"grids with {n1} and {n2} intervals share no common refinement")
        step = hi // lo
        if n1 > n2:
            v1 = v1[::step]
        else:
            v2 = v2[::step]
    return float(np.max(np.abs(v1 - v2)))


def phi(f: CircleMap, n: int = DEFAULT_N) -> LiftedMap:
    """Send a circle map to its normalized lift (same contract as :func:`lift`)."""
    return lift(f, n)


def phi_inv(g: LiftedMap) -> SampledMap:
    """Project a lifted map back to S^1: the sampled map t_j -> p(g(t_j)).

    Also accepts any grid function with an integer endpoint gap; its start
    need not be normalized since p is 1-periodic.
    """
    if isinstance(g, LiftedMap):
        g = g.grid
    elif not isinstance(g, GridFunction):
        g = GridFunction(g)
    integer_gap(g.values)
    pts = cover_xy(g.values)
    # base point takes p(g(0)) = p(g(1)) from both ends
    pts[-1] = pts[0]
    return SampledMap(g.nodes, pts)


def d0(f: CircleMap, g: CircleMap, n: int = DEFAULT_N) -> float:
    """2 pi times the sup distance between the normalized lifts (radians)."""
    return 2.0 * math.pi * d1(phi(f, n), phi(g, n))
