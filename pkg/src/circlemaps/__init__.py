"""Circle maps S^1 -> S^1: normalized lifts, winding numbers, the lift metric d0,
and constructive approximation that preserves base value and winding number."""

from .approximation import (
    CircleClassSpec,
    EndpointSpec,
    PLFunction,
    Polynomial,
    approximate_in_class,
    bernstein,
    endpoint_correct_0a,
    pl_interpolate,
    shift_conjugate_correct,
)
from .circle_core import (
    CircleMap,
    CirclePoint,
    GridFunction,
    alpha,
    alpha_inv,
    constant_map,
    cover_p,
    eval_map,
    lift_expr,
    power,
    rotation,
    sample_map,
)
from .errors import CircleMapError
from .lifting import LiftedMap, lift, unwrap_phases, winding_number
from .metric import d0, d1, phi, phi_inv
from .sw_constraints import (
    POLYNOMIALS,
    AlgebraBackend,
    ConstraintSpec,
    constrained_circle_approx,
    equal_value_correct,
    k_point_correct,
    two_point_correct,
    urysohn_g,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraBackend",
    "CircleClassSpec",
    "CircleMap",
    "CircleMapError",
    "CirclePoint",
    "ConstraintSpec",
    "EndpointSpec",
    "GridFunction",
    "LiftedMap",
    "PLFunction",
    "POLYNOMIALS",
    "Polynomial",
    "alpha",
    "alpha_inv",
    "approximate_in_class",
    "bernstein",
    "constant_map",
    "constrained_circle_approx",
    "cover_p",
    "d0",
    "d1",
    "endpoint_correct_0a",
    "equal_value_correct",
    "eval_map",
    "k_point_correct",
    "lift",
    "lift_expr",
    "phi",
    "phi_inv",
    "pl_interpolate",
    "power",
    "rotation",
    "sample_map",
    "shift_conjugate_correct",
    "two_point_correct",
    "unwrap_phases",
    "urysohn_g",
    "winding_number",
]
