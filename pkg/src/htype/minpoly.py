"""Minimal annihilating polynomials of the Jacobi operator under ad(C).

Polynomials are in the variable lambda.  The closed-form factors depend
only on z = |X_z|, v = |X_v| and a branch value mu of -K_check^2; the
block matrices are the restrictions of R(X) and C(X) to the invariant
pieces of n, written in the natural spanning frames.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Optional, Sequence, Union

import numpy as np
import sympy

from .errors import DegenerateDirection, NonGenericParameters, NoTermination
from .geometry import HTypeAlgebra, c0_operator, curvature_operator
from .spectral import ClusterAmbiguity, SpectrumReport, spectrum

Number = Union[int, Fraction, float]

ALPHA = Fraction(243, 64)
TAU_RANK = 1e-8
KINDS = ("mu", "zero_sharp", "one_sharp", "n3")


# ---------------------------------------------------------------- polynomial type

@dataclass(frozen=True)
class LambdaPoly:
    """Monic polynomial sum a_i lambda^(k - i), coefficients a_0 = 1 .. a_k."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if not coeffs:
            raise ValueError("a polynomial needs at least one coefficient")
        if coeffs[0] != 1:
            raise ValueError("polynomial must be monic")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, (int, Fraction)) for c in self.coeffs)

    def ascending(self) -> tuple:
        return self.coeffs[::-1]

    def __mul__(self, other: "LambdaPoly") -> "LambdaPoly":
        out = [0] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return LambdaPoly(out)

    def __call__(self, x):
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def to_float(self) -> "LambdaPoly":
        return LambdaPoly([float(c) for c in self.coeffs])

    def to_sympy(self, lam: sympy.Symbol) -> sympy.Poly:
        return sympy.Poly([_to_sympy(c) for c in self.coeffs], lam)

    def odd_coefficients(self) -> tuple:
        """a_1, a_3, ... (the ones that vanish for H-type minimal polynomials)."""
        return self.coeffs[1::2]

    def even_coefficients(self) -> tuple:
        return self.coeffs[0::2]

    @classmethod
    def from_even(cls, coeffs_in_square: Sequence, times_lambda: bool = False) -> "LambdaPoly":
        """Lift a monic polynomial in x = lambda^2 (descending) to lambda."""
        out = []
        for c in coeffs_in_square:
            out.extend([c, 0])
        out = out[:-1]
        if times_lambda:
            out.append(0)
        return cls(out)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            p = self.degree - i
            mono = "" if p == 0 else ("l" if p == 1 else f"l^{p}")
            if c == 1 and mono:
                terms.append(mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms) or "0"


def _q(x: Number) -> Number:
    """Keep ints and Fractions exact, pass floats through."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    return float(x)


# ---------------------------------------------------------------- closed factors

def closed_factor(kind: str, z: Number, v: Number, mu: Optional[Number] = None,
                  squared: bool = False) -> LambdaPoly:
    """The factor polynomial of the given kind at (mu, z, v).

    With ``squared=True`` the arguments z and v are z^2 and v^2, which
    keeps loci such as v^2 = 18 z^2 rational.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown factor kind {kind!r}")
    z2, v2 = (_q(z), _q(v)) if squared else (_q(z) * _q(z), _q(v) * _q(v))
    F = Fraction
    if kind == "mu":
        if mu is None:
            raise ValueError("kind 'mu' needs a branch value")
        mu = _q(mu)
        return LambdaPoly([
            1, 0,
            F(27, 2) * z2 + F(3, 2) * v2, 0,
            F(729, 16) * z2 ** 2 + F(81, 8) * z2 * v2 + F(9, 16) * v2 ** 2, 0,
            F(729, 16) * z2 ** 3 + F(243, 16) * z2 ** 2 * v2
            + (F(27, 16) - ALPHA * mu) * z2 * v2 ** 2 + F(1, 16) * v2 ** 3,
        ])
    if kind == "zero_sharp":
        return LambdaPoly([1, 0, F(45, 4) * z2 + F(5, 4) * v2, 0,
                           F(81, 4) * z2 ** 2 + F(9, 2) * z2 * v2 + F(1, 4) * v2 ** 2])
    if kind == "one_sharp":
        return LambdaPoly([1, 0, F(9, 4) * z2 + v2])
    return LambdaPoly([1, 0, z2 + v2, 0])


def quadratic_factor(c: Number) -> LambdaPoly:
    return LambdaPoly([1, 0, c])


def zero_factorization(z: Number, v: Number, squared: bool = False) -> tuple:
    """The pieces (lambda^2 + 9z^2 + v^2, lambda^2 + 9z^2/4 + v^2/4) of P_mu at mu = 0."""
    z2, v2 = (_q(z), _q(v)) if squared else (_q(z) ** 2, _q(v) ** 2)
    return (quadratic_factor(9 * z2 + v2), quadratic_factor(Fraction(9, 4) * z2 + v2 / 4))


def one_cofactor(z: Number, v: Number, squared: bool = False) -> LambdaPoly:
    """The quartic cofactor of lambda^2 + 9z^2/4 + v^2 in P_mu at mu = 1."""
    z2, v2 = (_q(z), _q(v)) if squared else (_q(z) ** 2, _q(v) ** 2)
    F = Fraction
    return LambdaPoly([1, 0, F(45, 4) * z2 + F(1, 2) * v2, 0,
                       F(1, 16) * v2 ** 2 - F(9, 4) * v2 * z2 + F(81, 4) * z2 ** 2])


def predicted_minpoly(A: HTypeAlgebra, X, report: Optional[SpectrumReport] = None) -> LambdaPoly:
    """Product of the factor polynomials selected by the spectrum at X."""
    if report is None:
        report = spectrum(A, X)
    Xz, Xv = A.split(X)
    z, v = float(np.linalg.norm(Xz)), float(np.linalg.norm(Xv))
    return predicted_from_signature(report.m0, report.m1,
                                    [mu for mu, _ in report.nonconstant], z, v)


def predicted_from_signature(m0: int, m1: int, branches: Sequence[Number],
                             z: Number, v: Number, squared: bool = False) -> LambdaPoly:
    P = closed_factor("n3", z, v, squared=squared)
    if m0 >= 2:
        P = P * closed_factor("zero_sharp", z, v, squared=squared)
    if m1 >= 2:
        P = P * closed_factor("one_sharp", z, v, squared=squared)
    for mu in branches:
        P = P * closed_factor("mu", z, v, mu, squared=squared)
    return P


def factor_word(m0: int, m1: int, ell: int) -> str:
    word = "P_n3"
    if m0 >= 2:
        word += "*P0#"
    if m1 >= 2:
        word += "*P1#"
    return word + "".join(f"*P_mu{i + 1}" for i in range(ell))


# ---------------------------------------------------------------- block matrices

@dataclass(frozen=True)
class BlockPair:
    kind: str
    mu: Optional[Fraction]
    z: Fraction
    v: Fraction
    R: sympy.Matrix
    C: sympy.Matrix


def block_pair(kind: str, z: Number, v: Number, mu: Optional[Number] = None) -> BlockPair:
    """Exact restrictions of R(X) and C(X) to one invariant block."""
    if kind not in KINDS:
        raise ValueError(f"unknown block kind {kind!r}")
    Q = sympy.Rational
    zs, vs = sympy.nsimplify(z, rational=True), sympy.nsimplify(v, rational=True)
    z2, v2 = zs ** 2, vs ** 2
    if kind == "mu":
        if mu is None:
            raise ValueError("kind 'mu' needs a branch value")
        m = sympy.nsimplify(mu, rational=True)
        R = Q(1, 4) * sympy.Matrix([
            [v2, 0, 0, 3 * m * v2 * zs, 3 * v2 * z2, 0],
            [0, v2, -3 * v2 * zs, 0, 0, 3 * v2 * z2],
            [0, 0, z2 - 3 * v2, 0, 0, 3 * m * v2 * zs],
            [0, 0, 0, z2 - 3 * v2, -3 * v2 * zs, 0],
            [3, 0, 0, 0, z2, 0],
            [0, 3, 0, 0, 0, z2]])
        C = Q(1, 2) * sympy.Matrix([
            [0, 0, v2, 0, 0, -m * v2 * zs],
            [0, 0, 0, v2, v2 * zs, 0],
            [-1, 0, 0, 0, -3 * z2, 0],
            [0, -1, 0, 0, 0, -3 * z2],
            [0, 0, 3, 0, 0, 0],
            [0, 0, 0, 3, 0, 0]])
    elif kind == "zero_sharp":
        R = Q(1, 4) * sympy.Matrix([[v2, 0, 3 * v2 * z2], [0, z2 - 3 * v2, 0], [3, 0, z2]])
        C = Q(1, 2) * sympy.Matrix([[0, v2, 0], [-1, 0, -3 * z2], [0, 3, 0]])
    elif kind == "one_sharp":
        R = Q(1, 4) * sympy.Matrix([
            [v2, 0, 0, 3 * v2 * zs],
            [0, v2, -3 * zs * v2, 0],
            [0, -3 * zs, z2 - 3 * v2, 0],
            [3 * zs, 0, 0, z2 - 3 * v2]])
        C = Q(1, 2) * sympy.Matrix([
            [0, 0, v2, 0], [0, 0, 0, v2], [-1, 0, 0, -3 * zs], [0, -1, 3 * zs, 0]])
    else:
        R = Q(1, 4) * sympy.Matrix([[z2, 0, -z2], [0, z2 - 3 * v2, 0], [-v2, 0, v2]])
        C = Q(1, 2) * sympy.Matrix([[0, -z2, 0], [1, 0, -1], [0, v2, 0]])
    mu_f = None if mu is None or kind != "mu" else Fraction(str(sympy.nsimplify(mu, rational=True)))
    return BlockPair(kind, mu_f, Fraction(str(zs)), Fraction(str(vs)), R, C)


_BLOCK_DEGREE = {"mu": 7, "zero_sharp": 5, "one_sharp": 3, "n3": 3}


def _sympy_to_fraction(x) -> Fraction:
    x = sympy.Rational(sympy.simplify(x))
    return Fraction(int(x.p), int(x.q))


def block_annihilator_exact(kind: str, z: Number, v: Number,
                            mu: Optional[Number] = None) -> LambdaPoly:
    """Exact replay of the commutator iteration on one block.

    Raises NonGenericParameters if the iteration stops below the generic
    degree of the block.
    """
    pair = block_pair(kind, z, v, mu)
    B = pair.R
    columns = [B.reshape(B.rows * B.cols, 1)]
    for k in range(1, _BLOCK_DEGREE[kind] + 1):
        B = pair.C * B - B * pair.C
        target = B.reshape(B.rows * B.cols, 1)
        basis = sympy.Matrix.hstack(*columns)
        if basis.rank() == sympy.Matrix.hstack(basis, target).rank():
            if k < _BLOCK_DEGREE[kind]:
                raise NonGenericParameters(
                    f"{kind} block annihilated in degree {k} < {_BLOCK_DEGREE[kind]}")
            sol, params = basis.gauss_jordan_solve(target)
            if params.shape[0]:
                raise NonGenericParameters("iterates are linearly dependent")
            alpha = [_sympy_to_fraction(s) for s in sol]
            return LambdaPoly([Fraction(1)] + [-alpha[k - i] for i in range(1, k + 1)])
        columns.append(target)
    raise NoTermination(f"{kind} block not annihilated by degree {_BLOCK_DEGREE[kind]}")


def _to_sympy(c):
    if isinstance(c, Fraction):
        return sympy.Rational(c.numerator, c.denominator)
    return sympy.sympify(c)


def evaluate_on_block(P: LambdaPoly, pair: BlockPair) -> sympy.Matrix:
    """P(ad C) R, exactly."""
    out = sympy.zeros(*pair.R.shape)
    B = pair.R
    for c in reversed(P.coeffs):
        out += _to_sympy(c) * B
        B = pair.C * B - B * pair.C
    return out


# ---------------------------------------------------------------- blueprint

@dataclass(frozen=True)
class BlueprintResult:
    degree: int
    poly: LambdaPoly
    residual: float
    method: str


def _commutator_iterates(C: np.ndarray, R: np.ndarray, count: int) -> list:
    out = [R]
    for _ in range(count):
        B = out[-1]
        out.append(C @ B - B @ C)
    return out


def relative_residual(P: LambdaPoly, C: np.ndarray, R: np.ndarray) -> float:
    """|P(ad C) R| / sum |a_i| |ad(C)^(k-i) R|, a backward-error measure."""
    iterates = _commutator_iterates(C, R, P.degree)
    acc = np.zeros_like(R)
    scale = 0.0
    for i, c in enumerate(P.coeffs):
        B = iterates[P.degree - i]
        acc += float(c) * B
        scale += abs(float(c)) * np.linalg.norm(B)
    return float(np.linalg.norm(acc) / scale) if scale else 0.0


def _krylov_literal(C: np.ndarray, R: np.ndarray, tau: float, max_degree: int) -> tuple:
    """Incremental stacked-iterate search with a thin-QR residual test."""
    cols = [R.ravel()]
    B = R
    for k in range(1, max_degree + 1):
        B = C @ B - B @ C
        target = B.ravel()
        basis = np.column_stack(cols)
        scale = np.linalg.norm(basis, axis=0)
        scale[scale == 0] = 1.0
        q, _ = np.linalg.qr(basis / scale)
        rest = target - q @ (q.T @ target)
        norm = np.linalg.norm(target)
        if norm == 0 or np.linalg.norm(rest) < tau * norm:
            alpha, *_ = np.linalg.lstsq(basis / scale, target, rcond=None)
            alpha = alpha / scale
            return k, [1.0] + [-float(alpha[k - i]) for i in range(1, k + 1)]
        cols.append(target)
    raise NoTermination(f"no linear dependency up to degree {max_degree}")


def _eigen_route(C: np.ndarray, R: np.ndarray, tau: float, max_degree: int) -> tuple:
    """Minimal polynomial of R under ad(C) from the eigenbasis of C.

    C is skew, so iC is Hermitian with real eigenvalues w and unitary
    eigenvectors U.  In that basis ad(C) is diagonal with eigenvalue
    i(w_a - w_b) on entry (a, b); the minimal polynomial is the product
    of (lambda - i delta) over the distinct delta carried by R.
    """
    w, U = np.linalg.eigh(1j * C)
    Rt = U.conj().T @ R @ U
    delta = np.subtract.outer(w, w).ravel()
    weight = np.abs(Rt).ravel() ** 2
    scale = max(float(np.max(np.abs(w))), 1e-300)
    keep = weight > (tau ** 2) * float(weight.sum())
    order = np.argsort(delta[keep])
    d_sorted, w_sorted = delta[keep][order], weight[keep][order]
    groups: list = []
    gap_tol = 1e-9 * scale
    for d, wt in zip(d_sorted, w_sorted):
        if groups and d - groups[-1][-1][0] <= gap_tol:
            groups[-1].append((d, wt))
            continue
        if groups and d - groups[-1][-1][0] < 10 * gap_tol:
            raise ClusterAmbiguity("ad(C) eigenvalues inside the ambiguity band")
        groups.append([(d, wt)])
    centers = [sum(d * wt for d, wt in g) / sum(wt for _, wt in g) for g in groups]
    k = len(centers)
    if k > max_degree:
        raise NoTermination(f"eigenvalue count {k} exceeds the bound {max_degree}")
    positive = sorted(c for c in centers if c > gap_tol)
    has_zero = any(abs(c) <= gap_tol for c in centers)
    if 2 * len(positive) + int(has_zero) != k:
        raise ClusterAmbiguity("ad(C) eigenvalues are not symmetric about zero")
    poly = np.array([1.0])
    for c in positive:
        poly = np.polymul(poly, [1.0, c * c])
    return LambdaPoly.from_even([float(x) for x in poly], times_lambda=has_zero)


def blueprint_minpoly(A: HTypeAlgebra, X, tau_rank: float = TAU_RANK,
                      method: str = "eigen", eps: Optional[float] = None) -> BlueprintResult:
    """Minimal annihilating polynomial of R(X) under ad(C(X)).

    ``method="krylov"`` is the literal search over stacked commutator
    iterates; ``method="eigen"`` computes the same polynomial in the
    eigenbasis of C, which stays well conditioned for large degrees.
    """
    C = c0_operator(A, X, eps)
    R = curvature_operator(A, X)
    max_degree = 3 * A.n + 4
    if method == "krylov":
        k, coeffs = _krylov_literal(C, R, tau_rank, max_degree)
        P = LambdaPoly(coeffs)
    elif method == "eigen":
        P = _eigen_route(C, R, tau_rank, max_degree)
    else:
        raise ValueError(f"unknown method {method!r}")
    return BlueprintResult(P.degree, P, relative_residual(P, C, R), method)


# ---------------------------------------------------------------- rational reconstruction

def rationalize(x: float, rel_tol: float = 1e-9, max_denominator: int = 2 ** 32) -> Fraction:
    """Simplest fraction within rel_tol of x, with denominator <= max_denominator."""
    if x == 0:
        return Fraction(0)
    target = Fraction(x)
    bound = 1
    while bound <= max_denominator:
        f = target.limit_denominator(bound)
        if abs(float(f) - x) <= rel_tol * abs(x):
            return f
        bound *= 2
    raise ValueError(f"no fraction with denominator <= {max_denominator} near {x!r}")


def rationalize_poly(P: LambdaPoly, rel_tol: float = 1e-12,
                     zero_tol: float = 1e-10) -> LambdaPoly:
    """Coefficient-wise reconstruction.

    a_i is treated as zero when |a_i| <= zero_tol rho^i with
    rho = max_j |a_j|^(1/j), the natural scale of lambda; otherwise it is
    matched to rel_tol relative to itself.
    """
    coeffs = [float(c) for c in P.coeffs]
    rho = max(abs(c) ** (1.0 / j) for j, c in enumerate(coeffs) if j) or 1.0
    out = [Fraction(1)]
    for i, c in enumerate(coeffs[1:], start=1):
        if abs(c) <= zero_tol * rho ** i:
            out.append(Fraction(0))
        else:
            out.append(rationalize(c, rel_tol))
    return LambdaPoly(out)


# ---------------------------------------------------------------- coprimality

@dataclass(frozen=True)
class CoprimalityReport:
    resultants: dict          # (i, j) -> Fraction
    all_coprime: bool

    @property
    def shared_pairs(self) -> list:
        return [pair for pair, r in self.resultants.items() if r == 0]


def coprimality_resultants(factors: Sequence[LambdaPoly]) -> CoprimalityReport:
    lam = sympy.Symbol("lam")
    polys = [P.to_sympy(lam) for P in factors]
    out = {}
    for i, j in combinations(range(len(polys)), 2):
        out[(i, j)] = _sympy_to_fraction(sympy.resultant(polys[i], polys[j], lam))
    return CoprimalityReport(out, all(r != 0 for r in out.values()))


def zero_root_locus(z2: Number, v2: Number) -> Fraction:
    """Branch value at which P_mu and P_n3 share the root 0 (z, v as squares)."""
    z2, v2 = _q(z2), _q(v2)
    return 4 * (9 * z2 + v2) ** 3 / (243 * v2 ** 2 * z2)


def imaginary_root_locus(z2: Number, v2: Number) -> Fraction:
    """Branch value at which P_mu and P_n3 share lambda^2 = -(z^2 + v^2)."""
    z2, v2 = _q(z2), _q(v2)
    return 32 * (5 * z2 - 3 * v2) ** 2 / (243 * v2 ** 2)


def exceptional_defects(z: float, v: float, branches: Sequence[float]) -> dict:
    """Signed distances to the loci where the factors can share roots.

    The factors are pairwise coprime when every entry is nonzero.
    """
    z2, v2 = z * z, v * v
    total = max(z2 + v2, 1e-300)
    out = {"z": z, "v": v, "v2_minus_18z2": (v2 - 18 * z2) / total,
           # P0# and P_n3 share lambda^2 = -(z^2 + v^2) here
           "five_z2_minus_three_v2": (5 * z2 - 3 * v2) / total}
    for i, mu in enumerate(branches):
        out[f"zero_root_{i}"] = zero_root_locus(z2, v2) - mu
        out[f"imaginary_root_{i}"] = imaginary_root_locus(z2, v2) - mu
    return out


def is_coprime_point(z: float, v: float, branches: Sequence[float], margin: float = 1e-6) -> bool:
    return all(abs(float(d)) > margin for d in exceptional_defects(z, v, branches).values())


# ---------------------------------------------------------------- symmetric expansion

def elementary_symmetric(values: Sequence[Number]) -> list:
    """sigma_0 .. sigma_l of the given values."""
    sig = [1]
    for x in values:
        sig = [a + b * x for a, b in zip(sig + [0], [0] + sig)]
    return sig


def q_coefficients(z: Number, v: Number) -> tuple:
    """(A, B, C) with Q = lambda^6 + A lambda^4 + B lambda^2 + C, the mu-free part of P_mu."""
    P = closed_factor("mu", z, v, 0)
    return P.coeffs[2], P.coeffs[4], P.coeffs[6]


def symmetric_expansion(sigma: Sequence[Number], a_coef: Number, b_coef: Number,
                        c_coef: Number, ell: int, alpha: Number = ALPHA) -> list:
    """Coefficients D_0 .. D_{3 ell} (ascending in lambda^2) of prod_i (Q - alpha mu_i).

    sigma are the elementary symmetric functions sigma_0 = 1 .. sigma_ell
    of the branch products mu_i.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if len(sigma) != ell + 1:
        raise ValueError(f"need {ell + 1} symmetric functions, got {len(sigma)}")
    if sigma[0] != 1:
        raise ValueError("sigma_0 must be 1")
    if not all(isinstance(x, (int, Fraction)) for x in (*sigma, a_coef, b_coef, c_coef, alpha)):
        alpha = float(alpha)
    out = []
    for i in range(3 * ell + 1):
        total = 0
        for j in range(0, ell - (i + 2) // 3 + 1):
            m = ell - j
            inner = 0
            for i3 in range(min(m, i // 3) + 1):
                for i2 in range(min(m - i3, (i - 3 * i3) // 2) + 1):
                    i1 = i - 3 * i3 - 2 * i2
                    i0 = m - i1 - i2 - i3
                    if i1 < 0 or i0 < 0:
                        continue
                    multinom = factorial(m) // (factorial(i0) * factorial(i1)
                                                * factorial(i2) * factorial(i3))
                    inner += multinom * c_coef ** i0 * b_coef ** i1 * a_coef ** i2
            total += (-1) ** j * alpha ** j * sigma[j] * inner
        out.append(total)
    return out


# ---------------------------------------------------------------- positivity

@dataclass(frozen=True)
class PositivityResult:
    positive: bool
    witness: Optional[int]     # index i of the first a_{2i} that is <= 0


def positivity_check(P: LambdaPoly) -> PositivityResult:
    """All even-indexed coefficients a_0, a_2, ... strictly positive."""
    if P.degree % 2 == 0:
        raise ValueError("expected an odd-degree polynomial")
    for i, c in enumerate(P.even_coefficients()):
        if not c > 0:
            return PositivityResult(False, 2 * i)
    return PositivityResult(True, None)


# ---------------------------------------------------------------- admissible sampling

def admissible_point(A: HTypeAlgebra, rng: np.random.Generator, margin: float = 1e-6,
                     max_tries: int = 1000):
    """Standard-normal X passing the spectral and coprimality rejection tests.

    Also rejects |X_z| close to |X_v|, where the lowest factor loses its
    middle term and the pointwise degree drops for n = 1.
    """
    from .spectral import is_admissible

    for _ in range(max_tries):
        X = A.random_vector(rng)
        try:
            report = spectrum(A, X)
        except (ClusterAmbiguity, DegenerateDirection):
            continue
        if not is_admissible(report, margin):
            continue
        Xz, Xv = A.split(X)
        z, v = float(np.linalg.norm(Xz)), float(np.linalg.norm(Xv))
        if abs(z * z - v * v) <= margin * (z * z + v * v):
            continue
        if not is_coprime_point(z, v, [mu for mu, _ in report.nonconstant], margin):
            continue
        return X, report
    raise ClusterAmbiguity(f"no admissible sample in {max_tries} draws")
