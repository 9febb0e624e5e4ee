import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circlemaps.approximation import CircleClassSpec, Polynomial, bernstein, sup_error
from circlemaps.circle_core import CirclePoint, GridFunction, cover_p, eval_map, lift_expr, power, unit_grid
from circlemaps.errors import (
    ClassMismatchError,
    ConstraintError,
    DegenerateDenominatorError,
    DomainError,
    IllConditionedError,
)
from circlemaps.lifting import winding_number
from circlemaps.metric import d0
from circlemaps.sw_constraints import (
    POLYNOMIALS,
    AlgebraBackend,
    ConstraintSpec,
    constrained_circle_approx,
    equal_value_correct,
    k_point_correct,
    lagrange_basis,
    two_point_constrained,
    two_point_correct,
    urysohn_g,
    urysohn_split,
)

N = 1024
XS = np.linspace(0, 1, 513)


def target(t):
    return np.sin(2 * np.pi * t) + t**2


def test_two_point_examples():
    p = two_point_correct(Polynomial.from_monomial([0.0, 1.0]), 0.0, 1.0, 2.0, 5.0)
    assert np.allclose(p.monomial_coefficients(), [2.0, 3.0])
    q = Polynomial.from_monomial([0.5, -1.0, 2.0])
    same = two_point_correct(q, 0.25, 0.75, q(0.25), q(0.75))
    assert np.allclose(same(XS), q(XS), atol=1e-14)
    assert same.degree == q.degree
    with pytest.raises(DegenerateDenominatorError):
        two_point_correct(Polynomial.constant(3.0), 0.1, 0.7, 1.0, 2.0)


def test_two_point_preconditions():
    p = Polynomial.from_monomial([0.0, 1.0])
    with pytest.raises(DomainError):
        two_point_correct(p, 0.5, 0.5, 1.0, 2.0)
    with pytest.raises(DomainError):
        two_point_correct(p, 0.1, 0.5, 1.0, 1.0)


@settings(max_examples=100)
@given(
    st.lists(st.floats(-5, 5), min_size=2, max_size=8),
    st.floats(0, 1),
    st.floats(0, 1),
    st.floats(-5, 5),
    st.floats(-5, 5),
)
def test_two_point_exact(a_coeffs, u, v, a, b):
    p = Polynomial.from_monomial(a_coeffs)
    if abs(u - v) < 1e-3 or abs(a - b) < 1e-3 or abs(p(u) - p(v)) < 1e-3:
        return
    q = two_point_correct(p, u, v, a, b)
    assert abs(q(u) - a) <= 1e-12 * max(1, abs(a), abs(b)) * 10
    assert abs(q(v) - b) <= 1e-12 * max(1, abs(a), abs(b)) * 10


def test_urysohn_examples():
    g = urysohn_g(0.0, 1.0, 4.0)
    ts = unit_grid(64)
    assert np.array_equal(g(ts), 2 * ts - 1)
    h = urysohn_g(0.2, 0.7, 3.0)
    assert h(0.2) == -0.75 and h(0.7) == 0.75
    assert h(0.45) == pytest.approx(0.0, abs=1e-15)
    assert np.all(np.abs(h(XS)) <= 0.75)
    with pytest.raises(DomainError):
        urysohn_g(0.3, 0.3, 1.0)
    with pytest.raises(DomainError):
        urysohn_g(0.0, 1.0, 0.0)


def test_equal_value_split_constant_four():
    f = GridFunction(np.full(N + 1, 4.0))
    g, f1, f2 = urysohn_split(f, 0.0, 1.0, 4.0)
    ts = f.nodes
    assert np.array_equal(g.values, 2 * ts - 1)
    assert np.array_equal(f1.values, 2 * ts + 1)
    assert np.array_equal(f2.values, 3 - 2 * ts)
    assert np.array_equal(f1.values + f2.values, f.values)
    out = equal_value_correct(f, 0.0, 1.0, 4.0, POLYNOMIALS, 64)
    assert abs(out(0.0) - 4) <= 1e-10 and abs(out(1.0) - 4) <= 1e-10


def test_equal_value_wave():
    f = GridFunction.from_callable(lambda t: 4 + np.sin(2 * np.pi * t), N)
    out = equal_value_correct(f, 0.0, 1.0, 4.0, POLYNOMIALS, 64)
    assert abs(out(0.0) - 4) <= 1e-10 and abs(out(1.0) - 4) <= 1e-10
    assert sup_error(out, f) < sup_error(bernstein(f, 64), f) + 0.1


def test_equal_value_interior_points():
    f = GridFunction.from_callable(lambda t: np.cos(4 * np.pi * t) + 2, N)
    out = equal_value_correct(f, 0.25, 0.75, 1.0, POLYNOMIALS, 128)
    assert abs(out(0.25) - 1) <= 1e-10 and abs(out(0.75) - 1) <= 1e-10


def test_equal_value_zero_uses_additive_correction():
    f = GridFunction.from_callable(lambda t: np.sin(2 * np.pi * t), N)
    out = equal_value_correct(f, 0.0, 0.5, 0.0, POLYNOMIALS, 64)
    assert abs(out(0.0)) <= 1e-12 and abs(out(0.5)) <= 1e-12
    assert sup_error(out, f) < 0.1


def test_equal_value_requires_matching_values():
    f = GridFunction.from_callable(lambda t: t, 64)
    with pytest.raises(ConstraintError):
        equal_value_correct(f, 0.0, 1.0, 1.0)


@settings(max_examples=30, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3), st.integers(1, 7), st.integers(9, 15))
def test_split_identity(c, amp, iu, iv):
    u, v = iu / 16, iv / 16
    f = GridFunction.from_callable(lambda t: c + amp * np.sin(2 * np.pi * t) * np.sin(2 * np.pi * (t - u) * (t - v)), 256)
    a = f.at(u)
    if a == 0:
        return
    g, f1, f2 = urysohn_split(f, u, v, a)
    assert f1.at(u) == pytest.approx(a / 4) and f1.at(v) == pytest.approx(3 * a / 4)
    assert f2.at(u) == pytest.approx(3 * a / 4) and f2.at(v) == pytest.approx(a / 4)
    ulp = np.spacing(np.maximum(np.abs(f.values), np.abs(f1.values) + np.abs(f2.values)))
    assert np.all(np.abs(f1.values + f2.values - f.values) <= 2 * ulp)


class FlatThenPoly:
    """Backend that returns a constant on its first call, to exercise the retry path."""

    def __init__(self):
        self.calls = []

    def __call__(self, g, size):
        self.calls.append(size)
        if len(self.calls) == 1:
            return Polynomial.constant(1.0)
        return bernstein(g, size)


def test_degenerate_denominator_retry():
    fake = FlatThenPoly()
    backend = AlgebraBackend("test", fake)
    f = GridFunction.from_callable(target, N)
    out = two_point_constrained(f, 0.25, 0.75, backend, 32)
    assert fake.calls == [32, 64]
    assert abs(out(0.25) - f.at(0.25)) < 1e-12


def test_retry_gives_up():
    backend = AlgebraBackend("flat", lambda g, size: Polynomial.constant(1.0))
    f = GridFunction.from_callable(target, N)
    with pytest.raises(DegenerateDenominatorError):
        two_point_constrained(f, 0.25, 0.75, backend, 32)


def test_two_point_ladder_converges():
    f = GridFunction.from_callable(target, N)
    errs = []
    for size in (16, 32, 64, 128, 256):
        p = two_point_constrained(f, 0.25, 0.75, POLYNOMIALS, size)
        assert abs(p(0.25) - f.at(0.25)) < 1e-12 and abs(p(0.75) - f.at(0.75)) < 1e-12
        errs.append(sup_error(p, f))
    assert all(b < a for a, b in zip(errs, errs[1:])), errs


def test_k_point_examples():
    out = k_point_correct(Polynomial.constant(0.0), ConstraintSpec((0.0, 0.5, 1.0), (0.0, 1.0, 0.0)))
    assert np.allclose(out.monomial_coefficients(), [0.0, 4.0, -4.0], atol=1e-14)
    p = Polynomial.from_monomial([0.2, 1.0, -3.0, 0.5])
    pts = (0.1, 0.4, 0.9)
    same = k_point_correct(p, ConstraintSpec(pts, tuple(p(x) for x in pts)))
    assert np.allclose(same(XS), p(XS), atol=1e-14)


def test_k_point_two_points_vs_two_point_correct():
    p = Polynomial.from_monomial([0.3, 2.0, -1.0])
    spec = ConstraintSpec((0.2, 0.8), (1.0, -1.0))
    a = k_point_correct(p, spec)
    b = two_point_correct(p, 0.2, 0.8, 1.0, -1.0)
    for q in (a, b):
        assert q(0.2) == pytest.approx(1.0, abs=1e-12) and q(0.8) == pytest.approx(-1.0, abs=1e-12)
    assert not np.allclose(a(XS), b(XS))


def test_k_point_single_constant_shift():
    out = k_point_correct(Polynomial.constant(2.5), ConstraintSpec((0.3,), (-1.0,)))
    assert np.array_equal(out.coeffs, [-1.0])


def test_k_point_conditioning_guard():
    with pytest.raises(IllConditionedError):
        k_point_correct(Polynomial.constant(0.0), ConstraintSpec(tuple(np.linspace(0, 1, 13)), (0.0,) * 13))
    with pytest.raises(IllConditionedError):
        k_point_correct(Polynomial.constant(0.0), ConstraintSpec((0.5, 0.5005), (0.0, 1.0)))


def test_constraint_spec_validation():
    with pytest.raises(DomainError):
        ConstraintSpec((0.1, 0.1), (0.0, 1.0))
    with pytest.raises(DomainError):
        ConstraintSpec((0.1,), (0.0, 1.0))
    with pytest.raises(DomainError):
        ConstraintSpec((1.5,), (0.0,))


def test_lagrange_basis_is_kronecker():
    pts = (0.0, 0.2, 0.55, 0.9, 1.0)
    for i, li in enumerate(lagrange_basis(pts)):
        assert np.allclose([li(x) for x in pts], np.eye(len(pts))[i], atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), st.lists(st.floats(-3, 3), min_size=1, max_size=6), st.randoms(use_true_random=False))
def test_k_point_bound_and_exactness(k, coeffs, rnd):
    pts = tuple(sorted(rnd.sample(range(0, 101), k)))
    pts = tuple(x / 100 for x in pts)
    vals = tuple(rnd.uniform(-2, 2) for _ in pts)
    p = Polynomial.from_monomial(coeffs)
    out = k_point_correct(p, ConstraintSpec(pts, vals))
    assert max(abs(out(x) - v) for x, v in zip(pts, vals)) < 1e-10
    assert out.degree <= max(p.degree, k - 1)
    xs = np.linspace(0, 1, 401)
    bound = sum(abs(v - p(x)) * np.max(np.abs(li(xs))) for x, v, li in zip(pts, vals, lagrange_basis(pts)))
    assert np.max(np.abs(out(xs) - p(xs))) <= bound + 1e-9


def test_constrained_circle_power3_exact():
    out = constrained_circle_approx(power(3), CircleClassSpec(CirclePoint(1, 0), 3), POLYNOMIALS, 8, N)
    ts = unit_grid(N)
    assert np.max(np.abs(out.xy(ts) - power(3).xy(ts))) < 1e-12


def test_constrained_circle_ladder():
    f = lift_expr([0.0, 1.0], [0.0, 0.1])  # t + 0.2 sin(2 pi t) cos(2 pi t)
    spec = CircleClassSpec(CirclePoint(1, 0), 1)
    o64 = constrained_circle_approx(f, spec, POLYNOMIALS, 64, N)
    o128 = constrained_circle_approx(f, spec, POLYNOMIALS, 128, N)
    assert winding_number(o128, N) == 1
    assert d0(f, o128, N) < d0(f, o64, N)


def test_constrained_circle_mismatch():
    with pytest.raises(ClassMismatchError):
        constrained_circle_approx(power(1), CircleClassSpec(CirclePoint(1, 0), 2), POLYNOMIALS, 16, N)


@settings(max_examples=15, deadline=None)
@given(st.floats(0.05, 0.95), st.integers(-3, 3), st.floats(-0.1, 0.1))
def test_constrained_circle_in_class(q0, m, amp):
    f = lift_expr([q0, float(m)], [amp])
    spec = CircleClassSpec(cover_p(q0), m)
    out = constrained_circle_approx(f, spec, POLYNOMIALS, 64, N)
    assert winding_number(out, N) == m
    assert math.hypot(*(out.points[0] - spec.q.as_array())) < 1e-10
    assert eval_map(out, 0.0) == eval_map(out, 1.0)
