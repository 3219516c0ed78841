from fractions import Fraction as F

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from htype import minpoly as mp
from htype.errors import DegenerateDirection, NonGenericParameters
from htype.geometry import HTypeAlgebra

fractions = st.fractions(min_value=F(1, 10), max_value=10, max_denominator=12)
LAM = sympy.Symbol("lam")


def n2_closed_form(z2, v2):
    """Closed form of the degree-7 minimal polynomial for n = 2."""
    return mp.LambdaPoly([
        1, 0, F(1, 4) * (49 * z2 + 9 * v2), 0,
        F(1, 2) * (3 * v2 ** 2 + 34 * z2 * v2 + 63 * z2 ** 2), 0,
        F(1, 4) * (v2 ** 3 + 19 * z2 * v2 ** 2 + 99 * z2 ** 2 * v2 + 81 * z2 ** 3), 0])


def divides(P, Q):
    _, rem = sympy.div(Q.to_sympy(LAM), P.to_sympy(LAM))
    return rem.is_zero


# ---------------------------------------------------------------- LambdaPoly

def test_poly_basics():
    P = mp.LambdaPoly([1, 0, 2, 0])
    assert P.degree == 3 and P.is_exact and str(P) == "l^3 + 2*l"
    assert P.ascending() == (0, 2, 0, 1)
    assert P(2) == 12
    assert mp.LambdaPoly.from_even([1, 2], times_lambda=True) == P
    assert mp.positivity_check(P).positive


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=1, max_size=6),
       st.lists(st.integers(-9, 9), min_size=1, max_size=6), st.integers(-5, 5))
def test_poly_product_evaluates(a, b, x):
    P, Q = mp.LambdaPoly([1] + a), mp.LambdaPoly([1] + b)
    assert (P * Q)(x) == P(x) * Q(x)
    assert (P * Q).degree == P.degree + Q.degree


# ---------------------------------------------------------------- closed factors

def test_closed_factor_examples():
    assert mp.closed_factor("n3", 1, 1) == mp.LambdaPoly([1, 0, 2, 0])
    assert mp.closed_factor("one_sharp", 0, 1) == mp.LambdaPoly([1, 0, 1])
    P = mp.closed_factor("mu", 1, 1, 1)
    assert P == mp.LambdaPoly([1, 0, 15, 0, F(900, 16), 0, F(3757, 64)])
    assert divides(mp.quadratic_factor(F(9, 4) + 1), P)
    with pytest.raises(ValueError):
        mp.closed_factor("mu", 1, 1)


@settings(max_examples=30, deadline=None)
@given(z2=fractions, v2=fractions)
def test_factorization_identities(z2, v2):
    outer, inner = mp.zero_factorization(z2, v2, squared=True)
    assert mp.closed_factor("mu", z2, v2, 0, squared=True) == outer * inner * inner
    sharp = mp.closed_factor("one_sharp", z2, v2, squared=True)
    assert mp.closed_factor("mu", z2, v2, 1, squared=True) == sharp * mp.one_cofactor(z2, v2, squared=True)


def test_positivity_boundary():
    P = mp.closed_factor("mu", 1, 18, 1, squared=True)
    result = mp.positivity_check(P * mp.LambdaPoly([1, 0]))
    assert not result.positive and result.witness == 6


@settings(max_examples=30, deadline=None)
@given(z2=fractions, v2=fractions, mu=st.fractions(0, 1, max_denominator=50).filter(lambda m: m < 1))
def test_positive_below_one(z2, v2, mu):
    P = mp.closed_factor("mu", z2, v2, mu, squared=True) * mp.closed_factor("n3", z2, v2, squared=True)
    assert mp.positivity_check(P).positive


# ---------------------------------------------------------------- blocks

def test_block_entries():
    z, v, mu = F(3, 2), F(2), F(1, 3)
    assert 4 * mp.block_pair("n3", z, v).R[0, 2] == -z * z
    assert 2 * mp.block_pair("mu", z, v, mu).C[0, 5] == -mu * v * v * z
    for kind in mp.KINDS:
        assert mp.block_pair(kind, z, v, mu).C.trace() == 0


def test_block_examples():
    lam = mp.LambdaPoly([1, 0])
    c0 = F(729, 16) + F(243, 16) + (F(27, 16) - F(243, 128)) + F(1, 16)
    expected = lam * mp.LambdaPoly([1, 0, 15, 0, F(900, 16), 0, c0])
    assert mp.block_annihilator_exact("mu", 1, 1, F(1, 2)) == expected
    assert mp.block_annihilator_exact("n3", 1, 2) == mp.LambdaPoly([1, 0, 5, 0])
    assert mp.block_annihilator_exact("one_sharp", 2, 1) == mp.LambdaPoly([1, 0, 10, 0])


def test_block_nongeneric():
    with pytest.raises(NonGenericParameters):
        mp.block_annihilator_exact("n3", 1, 0)


@settings(max_examples=10, deadline=None)
@given(z=fractions, v=fractions, kind=st.sampled_from(["zero_sharp", "one_sharp", "n3"]))
def test_block_replay_property(z, v, kind):
    P = mp.block_annihilator_exact(kind, z, v)
    closed = mp.closed_factor(kind, z, v)
    assert P == (closed if kind == "n3" else mp.LambdaPoly([1, 0]) * closed)
    assert mp.evaluate_on_block(P, mp.block_pair(kind, z, v)).is_zero_matrix


# ---------------------------------------------------------------- coprimality

def test_coprimality_generic():
    factors = [mp.closed_factor("zero_sharp", 1, 1), mp.closed_factor("one_sharp", 1, 1),
               mp.closed_factor("n3", 1, 1), mp.closed_factor("mu", 1, 1, F(1, 3)),
               mp.closed_factor("mu", 1, 1, F(2, 3))]
    assert mp.coprimality_resultants(factors).all_coprime


def test_coprimality_zero_root_locus():
    # v^2 = 18 z^2 and the branch value that puts a root of P_mu at lambda^2 = -(z^2 + v^2)
    mu = mp.zero_root_locus(1, 18)
    assert mu == 1
    report = mp.coprimality_resultants([mp.closed_factor("mu", 1, 18, mu, squared=True),
                                        mp.closed_factor("one_sharp", 1, 18, squared=True)])
    assert not report.all_coprime


def test_coprimality_imaginary_root_locus():
    mu = mp.imaginary_root_locus(1, 1)
    report = mp.coprimality_resultants([mp.closed_factor("mu", 1, 1, mu, squared=True),
                                        mp.closed_factor("n3", 1, 1, squared=True)])
    assert not report.all_coprime


def test_zero_sharp_meets_n3():
    # 5 z^2 = 3 v^2: lambda^2 = -(z^2 + v^2) is a root of both
    pair = [mp.closed_factor("zero_sharp", 3, 5, squared=True),
            mp.closed_factor("n3", 3, 5, squared=True)]
    assert not mp.coprimality_resultants(pair).all_coprime
    assert not mp.is_coprime_point(np.sqrt(3), np.sqrt(5), [])


def test_degree_drops_on_zero_sharp_locus():
    A = HTypeAlgebra.from_spec("irr(2)")
    X = np.array([np.sqrt(3), 0, np.sqrt(5), 0, 0, 0])
    assert mp.blueprint_minpoly(A, X).degree == 5


# ---------------------------------------------------------------- symmetric expansion

def _direct(mus, z2, v2):
    P = mp.LambdaPoly([1])
    for mu in mus:
        P = P * mp.closed_factor("mu", z2, v2, mu, squared=True)
    return list(P.even_coefficients())[::-1]


@settings(max_examples=20, deadline=None)
@given(z2=fractions, v2=fractions,
       mus=st.lists(st.fractions(0, 1, max_denominator=20), min_size=1, max_size=4))
def test_symmetric_expansion_exact(z2, v2, mus):
    Q = mp.closed_factor("mu", z2, v2, 0, squared=True)
    _, _, a, _, b, _, c = Q.coeffs
    prods = [mu * z2 * v2 ** 2 for mu in mus]
    D = mp.symmetric_expansion(mp.elementary_symmetric(prods), a, b, c, len(mus))
    assert D == _direct(mus, z2, v2)


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_symmetric_expansion_collapse(ell):
    Q = mp.closed_factor("mu", 2, 3, 0, squared=True)
    _, _, a, _, b, _, c = Q.coeffs
    D = mp.symmetric_expansion([1] + [0] * ell, a, b, c, ell)
    power = mp.LambdaPoly([1])
    for _ in range(ell):
        power = power * Q
    assert D == list(power.even_coefficients())[::-1]


def test_symmetric_expansion_errors():
    with pytest.raises(ValueError):
        mp.symmetric_expansion([1, 2], 1, 1, 1, 2)
    with pytest.raises(ValueError):
        mp.symmetric_expansion([2, 1], 1, 1, 1, 1)


# ---------------------------------------------------------------- blueprint

def test_blueprint_n1():
    A = HTypeAlgebra.from_spec("irr(1)")
    result = mp.blueprint_minpoly(A, [1.4, 0.2, 0.0])
    assert result.degree == 3
    assert mp.rationalize_poly(result.poly) == mp.LambdaPoly([1, 0, 2, 0])


def test_blueprint_n1_equal_norms_drops_degree():
    A = HTypeAlgebra.from_spec("irr(1)")
    result = mp.blueprint_minpoly(A, [1, 1, 0])
    assert mp.rationalize_poly(result.poly) == mp.LambdaPoly([1, 0, 2])


def test_blueprint_n2_exact():
    A = HTypeAlgebra.from_spec("irr(2)")
    X = [F(1, 2), 1, 1, F(-1, 2), 0, F(3, 2)]
    result = mp.blueprint_minpoly(A, [float(x) for x in X])
    assert result.degree == 7
    z2, v2 = sum(x * x for x in X[:2]), sum(x * x for x in X[2:])
    assert mp.rationalize_poly(result.poly) == n2_closed_form(z2, v2)
    assert n2_closed_form(z2, v2) == mp.closed_factor("n3", z2, v2, squared=True) * mp.closed_factor(
        "zero_sharp", z2, v2, squared=True)


@pytest.mark.parametrize("method", ["eigen", "krylov"])
def test_blueprint_matches_prediction(method):
    A = HTypeAlgebra.from_spec("irr(5)")
    X, _ = mp.admissible_point(A, np.random.default_rng(3))
    result = mp.blueprint_minpoly(A, X, method=method)
    predicted = mp.predicted_minpoly(A, X)
    assert result.degree == predicted.degree == 11
    assert max(abs(result.poly.odd_coefficients()[i]) for i in range(6)) < 1e-8 * max(
        abs(c) for c in result.poly.coeffs)
    ref = predicted.to_float().coeffs
    assert all(abs(a - b) <= 1e-6 * abs(b) for a, b in zip(result.poly.coeffs, ref) if b)


def test_blueprint_degenerate():
    A = HTypeAlgebra.from_spec("irr(3)")
    with pytest.raises(DegenerateDirection):
        mp.blueprint_minpoly(A, [1, 0, 0, 0, 0, 0, 0])


# ---------------------------------------------------------------- rational reconstruction

@settings(max_examples=100, deadline=None)
@given(st.fractions(min_value=-1000, max_value=1000, max_denominator=1000))
def test_rationalize_roundtrip(q):
    assert mp.rationalize(float(q)) == q


def test_rationalize_poly_zero_detection():
    P = mp.LambdaPoly([1.0, 3e-15, 2.25, -1e-13, 12.5 + 1e-12, 1e-12])
    assert mp.rationalize_poly(P) == mp.LambdaPoly([1, 0, F(9, 4), 0, F(25, 2), 0])
