import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from htype import algebra
from htype.clifford import (build_module, clifford_act, irreducible_dimension, spinor_product,
                            verify_relations, CliffordModule)
from htype.errors import DimensionError, ModelSpecError

finite = st.floats(-10, 10, allow_nan=False)


@pytest.mark.parametrize("n, d", [(1, 2), (2, 4), (3, 4), (4, 8), (5, 8), (6, 8), (7, 8),
                                  (8, 16), (9, 32), (10, 64), (12, 128)])
def test_irreducible_dimensions(n, d):
    M = build_module(f"irr({n})")
    assert (M.n, M.d) == (n, d)
    assert irreducible_dimension(n) == d


def test_direct_sum_summands():
    M = build_module("sum(irr(3,+),irr(3,-))")
    assert (M.n, M.d) == (3, 8)
    assert sorted(s for _, s in M.summands) == [-1, 1]


@pytest.mark.parametrize("spec", ["irr(1)", "irr(3,-)", "irr(7,+)", "irr(8)", "irr(9)",
                                  "irr(10)", "sum(irr(7,+),irr(7,-))", "tensor(irr(8),irr(4))"])
def test_relations_exact(spec):
    M = build_module(spec)
    assert M.is_exact
    assert verify_relations(M, trials=50, seed=1).max_residual == 0


@pytest.mark.parametrize("spec", ["irr(9)", "irr(11)"])
def test_relations_float(spec):
    assert verify_relations(build_module(spec), trials=50, seed=2, exact=False).max_residual < 1e-12


def test_corrupted_module_detected():
    M = build_module("irr(3)")
    G = M.float_generators.copy()
    eps = 1e-3
    G[0] += eps * np.eye(M.d)
    bad = CliffordModule(M.n, M.d, G)
    assert verify_relations(bad, trials=20, seed=0, exact=False).max_residual >= eps


def test_quaternion_right_multiplication():
    M = build_module("irr(3,+)")
    assert np.array_equal(clifford_act(M, [1, 0, 0], [1, 0, 0, 0]), [0, 1, 0, 0])


def test_quaternion_spinor_product():
    M = build_module("irr(3,+)")
    assert np.allclose(spinor_product(M, [1, 0, 0, 0], [0, 1, 0, 0]), [1, 0, 0])


def test_zero_action_and_self_product():
    M = build_module("irr(8)")
    S = np.arange(16.0)
    assert not clifford_act(M, np.zeros(8), S).any()
    assert np.allclose(spinor_product(M, S, S), 0)


def test_bad_specs():
    for spec in ("irr(0)", "irr(99", "foo(3)", "sum()", "tensor(irr(3),irr(2))"):
        with pytest.raises(ModelSpecError):
            build_module(spec)
    with pytest.raises(DimensionError):
        clifford_act(build_module("irr(3)"), [1, 0], [1, 0, 0, 0])


@settings(max_examples=40, deadline=None)
@given(spec=st.sampled_from(["irr(2)", "irr(5)", "irr(8)", "irr(9)", "sum(irr(3,+),irr(3,-))"]),
       seed=st.integers(0, 2 ** 32 - 1))
def test_clifford_square_and_adjoint(spec, seed):
    M = build_module(spec)
    rng = np.random.default_rng(seed)
    Z, S = rng.normal(size=M.n), rng.normal(size=M.d)
    ZS = clifford_act(M, Z, S)
    assert np.allclose(clifford_act(M, Z, ZS), -(Z @ Z) * S)
    assert np.isclose(ZS @ ZS, (Z @ Z) * (S @ S))
    assert np.allclose(spinor_product(M, S, ZS), (S @ S) * Z)


@settings(max_examples=50, deadline=None)
@given(st.lists(finite, min_size=16, max_size=16))
def test_octonion_alternative_and_normed(xs):
    a, b = np.array(xs[:8]), np.array(xs[8:])
    assert np.allclose(algebra.mul(algebra.mul(a, a), b), algebra.mul(a, algebra.mul(a, b)),
                       atol=1e-8 * (1 + np.abs(a).max() ** 2 * np.abs(b).max()))
    ab = algebra.mul(a, b)
    assert np.isclose(ab @ ab, (a @ a) * (b @ b), rtol=1e-10, atol=1e-10)
    assert np.allclose(algebra.conj(ab), algebra.mul(algebra.conj(b), algebra.conj(a)), atol=1e-9)
