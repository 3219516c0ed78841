import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from htype.errors import DegenerateDirection
from htype.geometry import (HTypeAlgebra, c0_operator, connection_matrix, curvature_apply,
                            curvature_general_oracle, curvature_operator, geodesic_velocity,
                            levi_civita, lie_bracket, ricci, theta_operator)

SPECS = ["irr(1)", "irr(3)", "irr(5)", "irr(8)", "sum(irr(3,+),irr(3,+))",
         "sum(irr(7,+),irr(7,-))"]
seeds = st.integers(0, 2 ** 32 - 1)


def _pair(spec, seed):
    A = HTypeAlgebra.from_spec(spec)
    rng = np.random.default_rng(seed)
    return A, rng.normal(size=A.m), rng.normal(size=A.m)


def test_bracket_basics():
    A = HTypeAlgebra.from_spec("irr(1)")
    X = np.array([0.3, 1.0, -2.0])
    assert not lie_bracket(A, X, X).any()
    assert not lie_bracket(A, [1, 0, 0], X).any()
    out = lie_bracket(A, [0, 1, 0], [0, 0, 1])
    assert np.allclose(np.abs(out), [1, 0, 0])


@settings(max_examples=30, deadline=None)
@given(spec=st.sampled_from(SPECS), seed=seeds)
def test_levi_civita_torsion_free_and_metric(spec, seed):
    A, X, Y = _pair(spec, seed)
    torsion = levi_civita(A, X, Y) - levi_civita(A, Y, X) - lie_bracket(A, X, Y)
    assert np.abs(torsion).max() < 1e-12 * (1 + np.abs(X).max() * np.abs(Y).max())
    C = connection_matrix(A, X)
    assert np.allclose(C, -C.T)
    assert np.allclose(C @ Y, levi_civita(A, X, Y))


def test_geodesic_field_on_self():
    A = HTypeAlgebra.from_spec("irr(3)")
    X = np.array([1.0, 2.0, 0.5, 1.0, -1.0, 0.0, 2.0])
    Xz, Xv = A.split(X)
    assert np.allclose(levi_civita(A, X, X), A.join(np.zeros(3), -A.act(Xz, Xv)))
    assert not levi_civita(A, [1, 0, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0, 0]).any()


@settings(max_examples=30, deadline=None)
@given(spec=st.sampled_from(SPECS), seed=seeds)
def test_curvature_symmetric_and_kills_direction(spec, seed):
    A, X, Y = _pair(spec, seed)
    R = curvature_operator(A, X)
    assert np.allclose(R, R.T, atol=1e-12 * np.abs(R).max())
    assert np.abs(R @ X).max() < 1e-12 * (1 + np.abs(R).max() * np.abs(X).max())
    assert np.allclose(R @ Y, curvature_apply(A, X, Y))
    assert np.isclose(Y @ R @ Y, curvature_general_oracle(A, X, Y), rtol=1e-12, atol=1e-12)


def test_curvature_pure_centre_direction():
    A = HTypeAlgebra.from_spec("irr(1)")
    Y = np.array([0.0, 0.3, -0.7])
    assert np.allclose(curvature_apply(A, [1, 0, 0], Y), 0.25 * Y)


def test_ricci_values():
    A1 = HTypeAlgebra.from_spec("irr(1)")
    assert ricci(A1, [1, 0, 0], [1, 0, 0]) == 0.5
    A3 = HTypeAlgebra.from_spec("irr(3)")
    S = np.array([0, 0, 0, 1.0, 0, 0, 0])
    assert ricci(A3, S, S) == -1.5
    assert ricci(A3, [1, 0, 0, 0, 0, 0, 0], S) == 0


@settings(max_examples=20, deadline=None)
@given(spec=st.sampled_from(SPECS), seed=seeds)
def test_ricci_is_trace(spec, seed):
    A, X, Y = _pair(spec, seed)
    # Ric(X, X) = trace of R(X)
    assert np.isclose(np.trace(curvature_operator(A, X)), ricci(A, X, X), rtol=1e-12)


def test_geodesic_half_period():
    A = HTypeAlgebra.from_spec("irr(3)")
    X = np.array([0.0, 2.0, 0.0, 1.0, -1.0, 0.5, 0.0])
    Xz, Xv = A.split(X)
    assert np.allclose(geodesic_velocity(A, X, 0.0), X)
    assert np.allclose(geodesic_velocity(A, X, np.pi / 2.0), A.join(Xz, -Xv))


@settings(max_examples=20, deadline=None)
@given(spec=st.sampled_from(SPECS), seed=seeds)
def test_c0_and_theta(spec, seed):
    A, X, _ = _pair(spec, seed)
    C, T = c0_operator(A, X), theta_operator(A, X)
    Xz, Xv = A.split(X)
    assert np.allclose(C, -C.T)
    assert np.abs(C @ X).max() < 1e-12 * (1 + np.abs(X).max() ** 2)
    assert np.allclose(T @ X, A.join(np.zeros(A.n), -A.act(Xz, Xv)))
    assert np.allclose(T + C, connection_matrix(A, X))


def test_c0_needs_generic_direction():
    A = HTypeAlgebra.from_spec("irr(2)")
    with pytest.raises(DegenerateDirection):
        c0_operator(A, [1, 0, 0, 0, 0, 0])
