"""Closed-form eigenvalue branches of -K_hat(X)^2 for the low-dimensional models.

Each formula returns the nonzero eigenvalues of -K_hat(X)^2 (the
unnormalized operator) with multiplicities, so the values scale as
|X_z|^2 |X_v|^4.  Octonion products use the Cayley-Dickson table of
``algebra``; a centre vector of Im(O) with n < 8 components sits in the
coordinates e1 .. en.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import algebra
from .clifford import n9_row_matrix
from .errors import DegenerateDirection, DimensionError, ModelSpecError
from .geometry import HTypeAlgebra, geodesic_velocity

TAGS = ("n3_mixed", "n4_irr", "n5_irr", "n7_iso", "n7_mixed", "n8_irr", "n9_irr")

MODEL_SPECS = {
    "n3_mixed": "sum(irr(3,+),irr(3,-))",
    "n4_irr": "irr(4)",
    "n5_irr": "irr(5)",
    "n7_iso": "sum(irr(7,+),irr(7,+))",
    "n7_mixed": "sum(irr(7,+),irr(7,-))",
    "n8_irr": "irr(8)",
    "n9_irr": "irr(9)",
}

DISCRIMINANT_FLOOR = -1e-10


def _mul(a, b):
    return algebra.mul(a, b)


def _conj(a):
    return algebra.conj(np.asarray(a, float))


def _embed_imaginary(Z) -> np.ndarray:
    out = np.zeros(8)
    out[1:1 + len(Z)] = Z
    return out


def _basis_right(i: int) -> np.ndarray:
    return algebra.right_matrix(algebra.basis_vector(i)).astype(float)


@dataclass(frozen=True)
class BranchModel:
    """A module together with the auxiliary structures its formula needs."""

    tag: str
    algebra: HTypeAlgebra
    structures: dict = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.algebra.n


def branch_model(tag: str) -> BranchModel:
    if tag not in TAGS:
        raise ModelSpecError(f"unknown branch model {tag!r}; expected one of {TAGS}")
    A = HTypeAlgebra.from_spec(MODEL_SPECS[tag])
    structures: dict = {}
    if tag == "n4_irr":
        E = [_basis_right(i) for i in (5, 6, 7)]
        structures["I"] = (E[0] @ E[1], E[1] @ E[2], E[2] @ E[0])
    elif tag == "n5_irr":
        structures["J"] = _basis_right(6) @ _basis_right(7)
    elif tag == "n9_irr":
        structures["rows"] = np.stack([n9_row_matrix(a) for a in range(9)]).astype(float)
    return BranchModel(tag, A, structures)


def _check_shape(B: BranchModel, X) -> np.ndarray:
    X = np.asarray(X, float)
    if X.shape != (B.algebra.m,):
        raise DimensionError(f"{B.tag} expects a vector of length {B.algebra.m}, got {X.shape}")
    return X


# ---------------------------------------------------------------- formulas

def _n3_mixed(B, Xz, Xv):
    p, m = Xv[:4], Xv[4:]
    return [((Xz @ Xz) * (p @ p - m @ m) ** 2, 2)]


def _n4(B, Xz, Xv):
    prod = _mul(Xv, _embed_imaginary(Xz))
    return [(sum(float((I @ Xv) @ prod) ** 2 for I in B.structures["I"]), 2)]


def _global_unit(Xz, Xv):
    return ((Xz @ Xz) * (Xv @ Xv) ** 2, 2)


def _n5(B, Xz, Xv):
    prod = _mul(Xv, _embed_imaginary(Xz))
    return [(float(prod @ (B.structures["J"] @ Xv)) ** 2, 2), _global_unit(Xz, Xv)]


def _octonion_mixed_term(S0, S1, S2):
    """<S2* (S1 S0), (S0 S2*) S1>."""
    s2c = _conj(S2)
    return float(_mul(s2c, _mul(S1, S0)) @ _mul(_mul(S0, s2c), S1))


def _n7_iso(B, Xz, Xv):
    S0 = _embed_imaginary(Xz)
    S1, S2 = Xv[:8], Xv[8:]
    value = (S0 @ S0) * ((S1 @ S1) ** 2 + (S2 @ S2) ** 2) + 2 * _octonion_mixed_term(S0, S1, S2)
    return [(value, 4), _global_unit(Xz, Xv)]


def _n7_mixed(B, Xz, Xv):
    S0 = _embed_imaginary(Xz)
    Sp, Sm = Xv[:8], Xv[8:]
    s0 = S0 @ S0
    first = s0 * (Sp @ Sp - Sm @ Sm) ** 2
    second = s0 * ((Sp @ Sp) ** 2 + (Sm @ Sm) ** 2) - 2 * _octonion_mixed_term(S0, Sp, Sm)
    return [(first, 2), (second, 4)]


def _n8(B, Xz, Xv):
    Sp, Sm = Xv[:8], Xv[8:]
    triple = float(Sp @ _mul(Sm, Xz))
    return [(4 * ((Xz @ Xz) * (Sp @ Sp) * (Sm @ Sm) - triple ** 2), 6)]


def n9_symmetric_functions(B: BranchModel, Xz, Xv) -> tuple:
    """(mu1 + mu2, mu1 mu2) for the two multiplicity-2 branches at n = 9."""
    M = np.tensordot(Xz, B.structures["rows"], axes=1)
    re, im = Xv[:16], Xv[16:]
    gram = np.array([[re @ re, re @ im], [re @ im, im @ im]])
    H = np.array([[-(re @ (M @ im)), re @ (M @ re)],
                  [-(im @ (M @ im)), im @ (M @ re)]])
    J = np.array([[0.0, 1.0], [-1.0, 0.0]])
    s0 = Xz @ Xz
    total = 4 * (s0 * np.linalg.det(gram) + np.linalg.det(H))
    product = 4 * s0 * np.trace(gram @ J @ H) ** 2
    return float(total), float(product)


def octonion_swap_pairing(S, T) -> np.ndarray:
    """S* J0 T^T = S-* T+ + S+* T- for rows S = (S+, S-), T = (T+, T-) in O^2."""
    return _mul(_conj(S[8:]), T[:8]) + _mul(_conj(S[:8]), T[8:])


def _spinor_pairing(rows, a, b, c, d) -> float:
    """sum_E <a M(E), b> <c M(E), d> over an orthonormal basis E of R + O.

    For a, c in the +1 and b, d in the -1 eigenspace of M(S0) only the
    directions orthogonal to S0 contribute, and at S0 = 1 this equals
    <a* J0 b^T, c* J0 d^T> with the octonionic pairing above.
    """
    return float(sum(((t @ a) @ b) * ((t @ c) @ d) for t in rows))


def n9_third_branch(B: BranchModel, Xz, Xv, total: Optional[float] = None) -> float:
    """The multiplicity-4 branch, built from the eigenspace projections of M(S0 / |S0|)."""
    rows = B.structures["rows"]
    s0 = float(Xz @ Xz)
    if s0 == 0:
        return 0.0
    M = np.tensordot(Xz / np.sqrt(s0), rows, axes=1)
    re, im = Xv[:16], Xv[16:]
    if total is None:
        total, _ = n9_symmetric_functions(B, Xz, Xv)
    re_p, im_p = re + M @ re, im + M @ im
    re_m, im_m = re - M @ re, im - M @ im
    first = _spinor_pairing(rows, re_p, re_m, im_p, im_m)
    second = _spinor_pairing(rows, re_p, im_m, im_p, re_m)
    return float(0.5 * total + 0.25 * s0 * (second - first))


def _n9(B, Xz, Xv):
    total, product = n9_symmetric_functions(B, Xz, Xv)
    disc = total * total - 4 * product
    scale = max(total * total, 1e-300)
    if disc < DISCRIMINANT_FLOOR * scale:
        raise ArithmeticError(f"negative discriminant {disc:.3e} in the n = 9 branch pair")
    root = np.sqrt(max(disc, 0.0))
    large = (total + root) / 2
    # product / large avoids cancellation in (total - root) / 2
    small = product / large if large > 0 else 0.0
    return [(small, 2), (large, 2),
            (n9_third_branch(B, Xz, Xv, total), 4)]


_FORMULAS: dict[str, Callable] = {
    "n3_mixed": _n3_mixed, "n4_irr": _n4, "n5_irr": _n5, "n7_iso": _n7_iso,
    "n7_mixed": _n7_mixed, "n8_irr": _n8, "n9_irr": _n9,
}


def explicit_branch_values(B: BranchModel, X) -> list:
    """Nonzero eigenvalues of -K_hat(X)^2 with multiplicities, from the closed forms."""
    X = _check_shape(B, X)
    Xz, Xv = B.algebra.split(X)
    return [(float(val), mult) for val, mult in _FORMULAS[B.tag](B, Xz, Xv)]


def _invariants(B: BranchModel, X) -> np.ndarray:
    """Polynomial quantities that must be constant along geodesics."""
    Xz, Xv = B.algebra.split(X)
    if B.tag == "n9_irr":
        total, product = n9_symmetric_functions(B, Xz, Xv)
        return np.array([total, product, n9_third_branch(B, Xz, Xv, total)])
    return np.array([val for val, _ in _FORMULAS[B.tag](B, Xz, Xv)])


def killing_deviation(B: BranchModel, X, grid_points: int = 64) -> float:
    """Max change of the branch polynomials along the geodesic with initial velocity X.

    The grid covers one period [0, 2 pi / |X_z|].  Each invariant of
    degree 2 in X_z and 4 in X_v (degree 12 for the n = 9 product) is
    divided by the matching power of |X_z|^2 |X_v|^4 so the result is
    scale free.
    """
    X = _check_shape(B, X)
    if grid_points < 2:
        raise ValueError("grid_points must be >= 2")
    Xz, Xv = B.algebra.split(X)
    z = float(np.linalg.norm(Xz))
    if z <= 1e-12 * max(float(np.linalg.norm(X)), 1.0):
        raise DegenerateDirection("the geodesic period needs X_z != 0")
    unit = z * z * float(Xv @ Xv) ** 2
    start = _invariants(B, X)
    weights = np.full(start.shape, unit)
    if B.tag == "n9_irr":
        weights[1] = unit * unit
    worst = 0.0
    for t in np.linspace(0.0, 2 * np.pi / z, grid_points):
        vals = _invariants(B, geodesic_velocity(B.algebra, X, t))
        worst = max(worst, float(np.max(np.abs(vals - start) / weights)))
    return worst


def eigensolver_branch_values(B: BranchModel, X, tau: float = 1e-9) -> list:
    """Reference: clustered nonzero eigenvalues of -K_hat(X)^2."""
    from .spectral import cluster, k_hat, squared_singular_values

    X = _check_shape(B, X)
    K = k_hat(B.algebra, X)
    Xz, Xv = B.algebra.split(X)
    unit = float(Xz @ Xz) * float(Xv @ Xv) ** 2
    raw = squared_singular_values(K) / unit
    groups = cluster(raw, tau)
    return [(val * unit, m) for val, m in groups if val > tau]


def eigensolver_spectrum(B: BranchModel, X) -> np.ndarray:
    """Reference: all eigenvalues of -K_hat(X)^2, ascending, without clustering."""
    from .spectral import k_hat, squared_singular_values

    return squared_singular_values(k_hat(B.algebra, _check_shape(B, X)))


def match_spectrum(explicit: list, raw) -> float:
    """Max relative error between the expanded explicit values and a raw spectrum.

    The explicit list covers the nonzero eigenvalues; the remaining
    smallest raw values must vanish and count relative to the largest.
    Multiplicities enter through the entrywise comparison, so near-ties
    that defeat clustering are still compared.
    """
    raw = np.sort(np.asarray(raw, float))
    expanded = np.sort([v for v, m in explicit for _ in range(m)])
    extra = raw.size - expanded.size
    if extra < 0:
        return float("inf")
    top = max(abs(raw[-1]), 1e-300)
    zeros = float(np.max(np.abs(raw[:extra]), initial=0.0)) / top
    rel = np.abs(expanded - raw[extra:]) / np.maximum(np.abs(raw[extra:]), 1e-300 * top)
    return max(zeros, float(np.max(rel, initial=0.0)))


def match_branches(explicit: list, reference: list) -> float:
    """Max relative error between two (value, multiplicity) lists.

    Returns inf when the multiplicity patterns differ.
    """
    if sorted(m for _, m in explicit) != sorted(m for _, m in reference):
        return float("inf")
    a = sorted(v for v, m in explicit for _ in range(m))
    b = sorted(v for v, m in reference for _ in range(m))
    return max((abs(x - y) / max(abs(y), 1e-300) for x, y in zip(a, b)), default=0.0)
