"""Named verification suites shared by the CLI and the test-suite.

Every suite returns a list of :class:`Check` records; a check passes when
its measured value is at most its tolerance (or exactly zero for exact
checks, which carry tol = 0).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import branches as br
from . import minpoly as mp
from .clifford import verify_relations
from .geometry import (HTypeAlgebra, c0_operator, connection_matrix, curvature_apply,
                       curvature_general_oracle, curvature_operator, curvature_polarized,
                       parallel_frame_oracle, ricci, theta_operator,
                       transported_jacobi_derivative)
from .spectral import gradient_identity_residual, k_check

SUITES = ("clifford", "curvature", "c0", "spectrum", "branches", "killing",
          "blocks", "positivity", "expansion")

# model spec -> (ell, m0 >= 2, unit eigenvalue, degree)
EXPECTED_TABLE = {
    "irr(1)": (0, False, False, 3),
    "irr(2)": (0, True, False, 7),
    "irr(3)": (0, False, True, 5),
    "irr(4)": (1, True, False, 13),
    "irr(5)": (1, False, True, 11),
    "irr(6)": (0, True, True, 9),
    "irr(7)": (0, False, True, 5),
    "irr(8)": (1, True, False, 13),
    "irr(9)": (3, False, False, 21),
    "sum(irr(3,+),irr(3,+))": (0, False, True, 5),
    "sum(irr(3,+),irr(3,-))": (1, False, False, 9),
    "sum(irr(7,+),irr(7,+))": (1, False, True, 11),
    "sum(irr(7,+),irr(7,-))": (2, False, False, 15),
    "sum(irr(8),irr(8))": (3, True, False, 25),
    "sum(irr(9),irr(9))": (4, False, False, 27),
}

EXTENDED_TABLE = {
    "irr(10)": 31,
    "irr(11)": 33,
}


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tol: float
    passed: bool

    def to_dict(self) -> dict:
        return asdict(self)


def check(name: str, value, tol: float) -> Check:
    value = float(value)
    passed = value == 0 if tol == 0 else value <= tol
    return Check(name, value, tol, bool(passed))


def sample_rngs(seed: int, count: int) -> list:
    """Independent generators, one per sample index."""
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(count)]


def _unit(x: np.ndarray) -> np.ndarray:
    return x / np.linalg.norm(x)


# ---------------------------------------------------------------- suites

def suite_clifford(A: HTypeAlgebra, samples: int = 100, seed: int = 0,
                   exact: bool = False) -> list:
    out = []
    if exact or A.module.is_exact:
        rep = verify_relations(A.module, trials=samples, seed=seed, exact=True)
        out.append(check("clifford_relations_exact", rep.max_residual, 0))
    rep = verify_relations(A.module, trials=samples, seed=seed, exact=False)
    out.append(check("clifford_relations_float", rep.max_residual, 1e-12))
    return out


def suite_curvature(A: HTypeAlgebra, samples: int = 100, seed: int = 0) -> list:
    oracle = apply_gap = sym = ric = 0.0
    for rng in sample_rngs(seed, samples):
        X, Y = _unit(rng.normal(size=A.m)), _unit(rng.normal(size=A.m))
        R = curvature_operator(A, X)
        oracle = max(oracle, abs(curvature_general_oracle(A, X, Y) - Y @ R @ Y))
        apply_gap = max(apply_gap, np.abs(curvature_apply(A, X, Y) - R @ Y).max())
        sym = max(sym, np.abs(R - R.T).max())
        ric = max(ric, abs(ricci(A, X, X) - np.trace(R)))
    return [check("curvature_oracle_vs_quadratic_form", oracle, 1e-12),
            check("curvature_operator_vs_apply", apply_gap, 1e-12),
            check("curvature_symmetric", sym, 1e-12),
            check("ricci_trace", ric, 1e-12)]


def suite_c0(A: HTypeAlgebra, samples: int = 5, seed: int = 0, h: float = 1e-4) -> list:
    theta = split = deriv = drift = 0.0
    for rng in sample_rngs(seed, samples):
        X = _unit(A.random_vector(rng))
        Xz, Xv = A.split(X)
        Xp = A.join(np.zeros(A.n), -A.act(Xz, Xv))
        T, R, C = theta_operator(A, X), curvature_operator(A, X), c0_operator(A, X)
        theta = max(theta, np.abs(T @ R - R @ T - 2 * curvature_polarized(A, X, Xp)).max())
        split = max(split, np.abs(connection_matrix(A, X) - (T + C)).max())
        fd = transported_jacobi_derivative(A, X, h)
        deriv = max(deriv, np.abs(fd - (C @ R - R @ C)).max())
        period = 2 * np.pi / np.linalg.norm(Xz)
        tr = parallel_frame_oracle(A, X, period, max(200, int(100 * period)))
        drift = max(drift, np.abs(tr.c0 - tr.c0[0]).max())
    return [check("theta_commutator_identity", theta, 1e-12),
            check("connection_equals_theta_plus_c", split, 1e-12),
            check("transported_jacobi_derivative", deriv, 1e-6),
            check("transported_c_drift", drift, 1e-6)]


def suite_spectrum(A: HTypeAlgebra, samples: int = 50, seed: int = 0,
                   h: float = 1e-5) -> list:
    bounds = grad = 0.0
    counted = 0
    for rng in sample_rngs(seed, samples):
        X, report = mp.admissible_point(A, rng)
        K = k_check(A, X)
        vals = np.linalg.eigvalsh(K.T @ K)
        bounds = max(bounds, max(0.0, -vals.min(), vals.max() - 1))
        for b in range(len(report.nonconstant)):
            grad = max(grad, gradient_identity_residual(A, X, b, h))
            counted += 1
    out = [check("spectrum_in_unit_interval", bounds, 1e-12)]
    if counted:
        out.append(check("gradient_identity", grad, 1e-5))
    return out


def branch_models_for(A: Optional[HTypeAlgebra]) -> list:
    models = [br.branch_model(tag) for tag in br.TAGS]
    if A is None:
        return models
    return [B for B in models if B.algebra.module == A.module]


def suite_branches(A: Optional[HTypeAlgebra] = None, samples: int = 100, seed: int = 0) -> list:
    out = []
    for B in branch_models_for(A):
        worst = homog = trace = 0.0
        for rng in sample_rngs(seed, samples):
            X = B.algebra.random_vector(rng)
            values = br.explicit_branch_values(B, X)
            worst = max(worst, br.match_spectrum(values, br.eigensolver_spectrum(B, X)))
            a, b = rng.uniform(0.5, 2.0, size=2)
            Xz, Xv = B.algebra.split(X)
            scaled = br.explicit_branch_values(B, B.algebra.join(a * Xz, b * Xv))
            homog = max(homog, max(abs(s - a * a * b ** 4 * v) / abs(a * a * b ** 4 * v)
                                   for (s, _), (v, _) in zip(scaled, values)))
            if B.tag == "n7_mixed":
                from .spectral import k_hat
                K = k_hat(B.algebra, X)
                lhs = 2 * values[0][0] + 4 * values[1][0]
                trace = max(trace, abs(lhs + np.trace(K @ K)) / abs(lhs))
        out.append(check(f"branch_agreement[{B.tag}]", worst, 1e-9))
        out.append(check(f"branch_homogeneity[{B.tag}]", homog, 1e-10))
        if B.tag == "n7_mixed":
            out.append(check("n7_mixed_trace_identity", trace, 1e-10))
    return out


def suite_killing(A: Optional[HTypeAlgebra] = None, samples: int = 100, seed: int = 0,
                  grid_points: int = 64) -> list:
    out = []
    for B in branch_models_for(A):
        worst = max(br.killing_deviation(B, B.algebra.random_vector(rng), grid_points)
                    for rng in sample_rngs(seed, samples))
        out.append(check(f"killing_constancy[{B.tag}]", worst, 1e-9))
    return out


def random_rational(rng: np.random.Generator, low: int = 1, high: int = 9,
                    max_den: int = 5) -> Fraction:
    return Fraction(int(rng.integers(low, high + 1)), int(rng.integers(1, max_den + 1)))


def suite_blocks(samples: int = 50, seed: int = 0) -> list:
    """Exact replay of the block iterations and the factor identities."""
    out = []
    rngs = sample_rngs(seed, samples)
    for kind in mp.KINDS:
        worst = 0
        mismatches = 0
        for rng in rngs:
            z, v = random_rational(rng), random_rational(rng)
            mu = random_rational(rng, 1, 4, 5) if kind == "mu" else None
            if z == v:
                v += 1
            P = mp.block_annihilator_exact(kind, z, v, mu)
            factor = mp.closed_factor(kind, z, v, mu)
            expected = factor if kind == "n3" else factor * mp.LambdaPoly([1, 0])
            mismatches += P != expected
            residual = mp.evaluate_on_block(P, mp.block_pair(kind, z, v, mu))
            worst = max(worst, max(abs(x) for x in residual))
        out.append(check(f"block_replay[{kind}]", mismatches, 0))
        out.append(check(f"block_residual[{kind}]", worst, 0))
    factor_gap = 0
    for rng in rngs:
        z2, v2 = random_rational(rng), random_rational(rng)
        a, b = mp.zero_factorization(z2, v2, squared=True)
        factor_gap += mp.closed_factor("mu", z2, v2, 0, squared=True) != a * b * b
        factor_gap += (mp.closed_factor("mu", z2, v2, 1, squared=True)
                       != mp.closed_factor("one_sharp", z2, v2, squared=True)
                       * mp.one_cofactor(z2, v2, squared=True))
        factor_gap += mp.closed_factor("zero_sharp", z2, v2, squared=True) != a * b
    out.append(check("factorization_identities", factor_gap, 0))
    out.extend(suite_coprimality(samples, seed))
    return out


def suite_coprimality(samples: int = 50, seed: int = 0) -> list:
    failures = 0
    for rng in sample_rngs(seed + 1, samples):
        z2, v2 = random_rational(rng), random_rational(rng)
        mus = sorted({Fraction(int(rng.integers(1, 20)), 20) for _ in range(2)})
        if (v2 == 18 * z2 or 5 * z2 == 3 * v2 or any(mu in (mp.imaginary_root_locus(z2, v2),
                                        mp.zero_root_locus(z2, v2)) for mu in mus)):
            continue
        factors = [mp.closed_factor(k, z2, v2, squared=True)
                   for k in ("zero_sharp", "one_sharp", "n3")]
        factors += [mp.closed_factor("mu", z2, v2, mu, squared=True) for mu in mus]
        failures += not mp.coprimality_resultants(factors).all_coprime
    # constructed exceptional loci: both must report a shared root
    n3_18 = mp.closed_factor("n3", 1, 18, squared=True)
    zero_hit = mp.coprimality_resultants(
        [mp.closed_factor("mu", 1, 18, 1, squared=True), n3_18]).all_coprime
    mu_im = mp.imaginary_root_locus(1, 1)
    imag_hit = mp.coprimality_resultants(
        [mp.closed_factor("mu", 1, 1, mu_im, squared=True),
         mp.closed_factor("n3", 1, 1, squared=True)]).all_coprime
    sharp_hit = mp.coprimality_resultants(
        [mp.closed_factor("zero_sharp", 3, 5, squared=True),
         mp.closed_factor("n3", 3, 5, squared=True)]).all_coprime
    return [check("generic_pairwise_coprime", failures, 0),
            check("zero_root_locus_detected", int(zero_hit), 0),
            check("imaginary_root_locus_detected", int(imag_hit), 0),
            check("zero_sharp_locus_detected", int(sharp_hit), 0)]


def suite_positivity(A: HTypeAlgebra, samples: int = 100, seed: int = 0) -> list:
    """Blueprint polynomials: positivity, odd vanishing and agreement with the prediction."""
    negative = degree_gap = 0
    odd = coeff = 0.0
    for rng in sample_rngs(seed, samples):
        X, report = mp.admissible_point(A, rng)
        res = mp.blueprint_minpoly(A, X)
        P = res.poly
        pred = mp.predicted_minpoly(A, X, report)
        scale = max(abs(float(c)) for c in P.coeffs)
        odd = max(odd, max(abs(float(c)) for c in P.odd_coefficients()) / scale)
        negative += not mp.positivity_check(_clean_odd(P)).positive
        if P.degree != pred.degree or P.degree > 3 * A.n + 1:
            degree_gap += 1
            continue
        coeff = max(coeff, coefficient_reldiff(P, pred))
    return [check("even_coefficients_positive", negative, 0),
            check("odd_coefficients_vanish", odd, 1e-8),
            check("blueprint_degree_matches_prediction", degree_gap, 0),
            check("blueprint_coefficients_match_prediction", coeff, 1e-6)]


def _clean_odd(P: mp.LambdaPoly) -> mp.LambdaPoly:
    return mp.LambdaPoly([c if i % 2 == 0 else 0 for i, c in enumerate(P.coeffs)])


def coefficient_reldiff(P: mp.LambdaPoly, Q: mp.LambdaPoly) -> float:
    """Max relative difference over the nonzero coefficients of Q."""
    return max((abs(float(a) - float(b)) / abs(float(b))
                for a, b in zip(P.coeffs, Q.coeffs) if b != 0), default=0.0)


def suite_expansion(samples: int = 20, seed: int = 0, ells: Sequence[int] = (1, 2, 3, 4)) -> list:
    out = []
    for ell in ells:
        worst = 0.0
        for rng in sample_rngs(seed + ell, samples):
            z, v = rng.uniform(0.3, 2.0, size=2)
            mus = rng.uniform(0.0, 1.0, size=ell)
            a, b, c = (float(x) for x in mp.q_coefficients(z, v))
            hats = [mu * z * z * v ** 4 for mu in mus]
            D = mp.symmetric_expansion(mp.elementary_symmetric(hats), a, b, c, ell)
            direct = np.array([1.0])
            for mu in mus:
                direct = np.polymul(direct, [float(x) for x in
                                             mp.closed_factor("mu", z, v, mu).even_coefficients()])
            direct = direct[::-1]
            worst = max(worst, max(abs(x - y) / max(abs(y), 1.0) for x, y in zip(D, direct)))
        out.append(check(f"symmetric_expansion[ell={ell}]", worst, 1e-10))
    return out


# ---------------------------------------------------------------- table

@dataclass(frozen=True)
class TableRow:
    model: str
    n: int
    ell: int
    zero_sharp: bool
    unit: bool
    word: str
    degree: int
    blueprint_degree: int
    expected: Optional[tuple]

    @property
    def matches(self) -> bool:
        if self.expected is None:
            return self.degree == self.blueprint_degree
        return ((self.ell, self.zero_sharp, self.unit, self.degree) == self.expected
                and self.blueprint_degree == self.degree)


def table_row(spec: str, samples: int = 3, seed: int = 0) -> TableRow:
    from .spectral import classify

    A = HTypeAlgebra.from_spec(spec)
    cls = classify(A, samples=samples, seed=seed)
    rng = sample_rngs(seed, 1)[0]
    X, _ = mp.admissible_point(A, rng)
    k = mp.blueprint_minpoly(A, X).degree
    return TableRow(spec, A.n, cls.ell, cls.m0 >= 2, cls.m1 >= 2,
                    mp.factor_word(cls.m0, cls.m1, cls.ell), cls.degree, k,
                    EXPECTED_TABLE.get(spec))


def degree_table(seed: int = 0, samples: int = 3, extended: bool = False) -> list:
    specs = list(EXPECTED_TABLE) + (list(EXTENDED_TABLE) if extended else [])
    return [table_row(spec, samples, seed) for spec in specs]


def run_suite(name: str, A: Optional[HTypeAlgebra], samples: Optional[int], seed: int,
              exact: bool = False, fd_step: Optional[float] = None) -> list:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    kw = {"seed": seed}
    if samples is not None:
        kw["samples"] = samples
    if name == "blocks":
        return suite_blocks(**kw)
    if name == "expansion":
        return suite_expansion(**kw)
    if name == "branches":
        return suite_branches(A, **kw)
    if name == "killing":
        return suite_killing(A, **kw)
    if A is None:
        raise ValueError(f"suite {name!r} needs a model")
    if name == "clifford":
        return suite_clifford(A, exact=exact, **kw)
    if name == "curvature":
        return suite_curvature(A, **kw)
    if name == "c0":
        return suite_c0(A, h=fd_step or 1e-4, **kw)
    if name == "spectrum":
        return suite_spectrum(A, h=fd_step or 1e-5, **kw)
    return suite_positivity(A, **kw)
