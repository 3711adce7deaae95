import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cl3spacetime import algebra as ga
from cl3spacetime.errors import ArgumentError, DegenerateGeometryError, InvariantError
from cl3spacetime.exponential import exp_bivector, exp_vector, rapidity_from_speed
from cl3spacetime.lorentz import (
    FieldMultivector,
    LorentzOperator,
    aligned_event,
    boost_event,
    boost_event_components,
    boost_field,
    boost_perpendicular_axis,
    make_operator,
    reflect,
    rotate,
    thomas_operator,
)
from cl3spacetime.spacetime import Event, interval_squared, project_orthogonal

from oracles import boost_matrix, rodrigues, textbook_field_boost

directions = st.tuples(*[st.floats(-1, 1)] * 3).filter(lambda a: np.linalg.norm(a) > 0.1).map(
    lambda a: np.array(a) / np.linalg.norm(a)
)
vectors = st.tuples(*[st.floats(-5, 5)] * 3).map(np.array)
AXES = [np.eye(3)[k] for k in range(3)]


def test_identity_operator():
    op = make_operator(0.0, (1, 0, 0), 0.0, (0, 0, 1))
    assert op.L == ga.ONE and op.L_dagger == ga.ONE


def test_quarter_turn_sends_e1_to_e2():
    op = make_operator(0.0, (1, 0, 0), math.pi / 2, (0, 0, 1))
    assert op.apply(ga.E1).isclose(ga.E2, 1e-15)
    assert rotate((1, 0, 0), math.pi / 2, (0, 0, 1)).isclose(ga.E2, 1e-15)


@given(st.floats(-2, 2), directions, st.floats(-7, 7), directions)
def test_operator_times_dagger_is_one(phi, v, theta, w):
    for op in (make_operator(phi, v, theta, w), thomas_operator(phi, v, theta, w)):
        assert (op.L * op.L_dagger).isclose(ga.ONE, 1e-12 * math.cosh(phi))


def test_operator_rejects_non_inverse():
    with pytest.raises(InvariantError):
        LorentzOperator(ga.ONE * 2, ga.ONE)
    with pytest.raises(ArgumentError):
        make_operator(0.1, (1, 1, 0), 0.0, (0, 0, 1))


@given(st.floats(-2, 2), directions, st.floats(-7, 7), directions)
def test_thomas_reduces_to_pure_factors(phi, v, theta, w):
    pure_boost = thomas_operator(phi, v, 0.0, w)
    assert pure_boost.L.isclose(make_operator(phi, v, 0.0, w).L, 1e-12 * math.cosh(phi))
    assert pure_boost.L.isclose(exp_vector(-phi / 2, v), 1e-12 * math.cosh(phi))
    pure_rotation = thomas_operator(0.0, v, theta, w)
    assert pure_rotation.L.isclose(exp_bivector(-theta / 2, w), 1e-12)


@given(vectors, st.floats(-7, 7), directions)
def test_rotate_matches_rodrigues(v, theta, u):
    expected = rodrigues(u, theta) @ v
    np.testing.assert_allclose(rotate(v, theta, u).v, expected, atol=1e-10)


@given(vectors, st.floats(-4, 4), st.floats(-4, 4), directions)
def test_rotations_compose(v, a, b, u):
    twice = rotate(rotate(v, a, u).v, b, u)
    assert twice.isclose(rotate(v, a + b, u), 1e-10)


@given(vectors, directions)
def test_reflect_twice_is_identity(v, n):
    once = reflect(v, n)
    np.testing.assert_allclose(once.v, v - 2 * np.dot(v, n) * n, atol=1e-12)
    np.testing.assert_allclose(reflect(once.v, n).v, v, atol=1e-12)


def test_two_reflections_make_a_rotation():
    # Mirrors at angle pi/8 compose to a rotation by pi/4.
    n1 = np.array([0.0, 1.0, 0.0])
    n2 = np.array([-math.sin(math.pi / 8), math.cos(math.pi / 8), 0.0])
    v = np.array([1.0, 0.0, 0.0])
    out = reflect(reflect(v, n1).v, n2)
    assert out.isclose(rotate(v, math.pi / 4, (0, 0, 1)), 1e-15)


def test_field_boost_frozen_values():
    F = FieldMultivector((0, 1, 0), (0, 0, 0))
    out = boost_field(F, rapidity_from_speed(0.6), (1, 0, 0))
    np.testing.assert_allclose(out.E, [0, 1.25, 0], atol=1e-15)
    np.testing.assert_allclose(out.B, [0, 0, -0.75], atol=1e-15)


def test_parallel_fields_unchanged():
    phi = rapidity_from_speed(0.9)
    for axis in AXES:
        F = FieldMultivector(tuple(2.0 * axis), tuple(-3.0 * axis))
        out = boost_field(F, phi, axis)
        np.testing.assert_allclose(out.E, F.E, atol=1e-14)
        np.testing.assert_allclose(out.B, F.B, atol=1e-14)


@given(vectors, vectors, st.floats(0, 0.95), directions, st.floats(0.5, 3))
def test_field_boost_matches_textbook(E, B, beta, axis, c):
    out = boost_field(FieldMultivector(E, B, c), rapidity_from_speed(beta), axis)
    E_ref, B_ref = textbook_field_boost(E, B, beta * c * axis, c)
    scale = max(1.0, np.abs(E).max(), c * np.abs(B).max()) / math.sqrt(1 - beta**2)
    np.testing.assert_allclose(out.E, E_ref, atol=1e-12 * scale)
    np.testing.assert_allclose(c * np.array(out.B), c * B_ref, atol=1e-12 * scale)


def test_field_round_trip_and_errors():
    F = FieldMultivector((1, 2, 3), (4, 5, 6), 2.0)
    assert FieldMultivector.from_dict(F.to_dict()) == F
    np.testing.assert_array_equal(F.as_multivector().b, [8, 10, 12])
    with pytest.raises(ArgumentError, match="E"):
        FieldMultivector.from_dict({"E": [1, 2]})
    with pytest.raises(ArgumentError, match="Q"):
        FieldMultivector.from_dict({"Q": 1})
    with pytest.raises(InvariantError):
        FieldMultivector.from_multivector(ga.Multivector(1.0))


def test_event_boost_frozen_values():
    # x = (1, 1, 0), boost 0.6 c along e1, coordinate time 0.5.
    X = aligned_event((1, 1, 0), 0.5, (1, 0, 0))
    np.testing.assert_allclose(X.t_vec, [0, 0, -0.5])
    out = boost_event(X, rapidity_from_speed(0.6), (1, 0, 0))
    np.testing.assert_allclose(out.x_vec, [1.25 * (1 - 0.6 * 0.5), 1, 0], atol=1e-15)
    _, t_hat = boost_perpendicular_axis(out.x, (1, 0, 0))
    assert float(np.dot(out.t_vec, t_hat)) == pytest.approx(1.25 * (0.5 - 0.6), abs=1e-15)


def test_event_boost_zero_rapidity_is_identity():
    X = aligned_event((0.3, -1, 2), 1.7, (0, 1, 0))
    out = boost_event(X, 0.0, (0, 1, 0))
    np.testing.assert_allclose(out.x_vec, X.x_vec, atol=1e-15)
    np.testing.assert_allclose(out.t_vec, X.t_vec, atol=1e-15)


@given(vectors, st.floats(-5, 5), st.floats(-0.95, 0.95), directions, st.floats(0.5, 3))
def test_event_boost_matches_boost_matrix(x, t, beta, v_hat, c):
    x_perp = x - np.dot(x, v_hat) * v_hat
    if np.linalg.norm(x_perp) < 1e-3:
        return
    # The signed time is measured along t_hat, which flips with the boost
    # direction, so the event is built for the direction actually used.
    direction = v_hat if beta >= 0 else -v_hat
    X = aligned_event(x, t, direction, c)
    out = boost_event(X, math.atanh(abs(beta)), direction)
    four = boost_matrix(beta * c * v_hat, c) @ np.concatenate([[c * t], x])
    _, t_hat = boost_perpendicular_axis(out.x, direction)
    scale = max(1.0, np.abs(x).max(), c * abs(t)) / math.sqrt(1 - beta**2)
    np.testing.assert_allclose(out.x_vec, four[1:], atol=1e-12 * scale)
    assert c * float(np.dot(out.t_vec, t_hat)) == pytest.approx(four[0], abs=1e-12 * scale)
    assert abs(float(np.dot(out.x_vec, out.t_vec))) <= 1e-12 * scale * scale


@given(vectors, st.floats(-5, 5), st.floats(-0.95, 0.95), directions)
def test_component_boost_matches_boost_matrix(x, t, beta, v_hat):
    x_new, t_new = boost_event_components(x, t, beta * v_hat)
    four = boost_matrix(beta * v_hat) @ np.concatenate([[t], x])
    scale = max(1.0, np.abs(x).max(), abs(t)) / math.sqrt(1 - beta**2)
    np.testing.assert_allclose(x_new, four[1:], atol=1e-12 * scale)
    assert t_new == pytest.approx(four[0], abs=1e-12 * scale)


def test_event_boost_degenerate_and_misaligned():
    with pytest.raises(DegenerateGeometryError, match="boost_event_components"):
        boost_event(Event((2, 0, 0), (0, 1, 0)), 0.5, (1, 0, 0))
    with pytest.raises(ArgumentError, match="aligned_event"):
        boost_event(Event((1, 1, 0), (1, -1, 1)), 0.5, (1, 0, 0))
    x_new, t_new = boost_event_components((2, 0, 0), 1.0, (0.6, 0, 0))
    np.testing.assert_allclose(x_new, [1.25 * (2 - 0.6), 0, 0])
    assert t_new == pytest.approx(1.25 * (1 - 1.2))


def test_interval_invariance_under_random_operators(rng):
    for _ in range(200):
        x = rng.uniform(-2, 2, 3)
        t = project_orthogonal(x, rng.uniform(-2, 2, 3))
        X = Event(tuple(x), tuple(t))
        before = interval_squared(X)
        v_hat, w_hat = (a / np.linalg.norm(a) for a in rng.normal(size=(2, 3)))
        args = (rng.uniform(-1.5, 1.5), v_hat, rng.uniform(-7, 7), w_hat)
        for op in (make_operator(*args), thomas_operator(*args)):
            Y = op.apply(X.as_multivector())
            sq = Y * Y
            assert abs(sq.s - before) <= 1e-10 * max(abs(before), 1e-300)
            assert np.abs(sq.coeffs[1:]).max() <= 1e-10 * max(abs(before), 1.0) * 10


def test_thomas_example_keeps_interval():
    op = thomas_operator(1.0, (1, 0, 0), 1.0, (0, 1, 0))
    X = Event((0.3, -0.2, 0.5), tuple(project_orthogonal((0.3, -0.2, 0.5), (1.0, 0.4, -0.7))))
    Y = op.apply(X.as_multivector())
    assert (Y * Y).s == pytest.approx(interval_squared(X), rel=1e-10)


def test_apply_event_and_compose():
    rot = make_operator(0.0, (1, 0, 0), math.pi / 2, (0, 0, 1))
    X = Event((1, 0, 0), (0, 0, 2))
    Y = rot.apply_event(X)
    np.testing.assert_allclose(Y.x_vec, [0, 1, 0], atol=1e-15)
    np.testing.assert_allclose(Y.t_vec, [0, 0, 2], atol=1e-15)
    half = make_operator(0.0, (1, 0, 0), math.pi / 4, (0, 0, 1))
    assert half.compose(half).apply(ga.E1).isclose(ga.E2, 1e-15)
