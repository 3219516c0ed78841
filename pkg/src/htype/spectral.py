"""The operator families K_hat(X), K_check(X) on z and their spectra."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import (BranchTrackingError, ClusterAmbiguity, DegenerateDirection,
                     InconsistentSamples)
from .geometry import DEFAULT_EPS, HTypeAlgebra

TAU_CLUSTER = 1e-9
ZERO_TOL = 1e-9


def k_hat(A: HTypeAlgebra, X) -> np.ndarray:
    """K_hat(X) Z = X_v * (Z . X_z . X_v), as an n x n skew matrix.

    Entry (j, i) is <e_i . X_z . X_v, e_j . X_v>.
    """
    Xz, Xv = A.split(X)
    w = A.act(Xz, Xv)
    return A.orbit_matrix(Xv).T @ A.orbit_matrix(w)


def _norms(A: HTypeAlgebra, X, eps: Optional[float]) -> tuple[float, float]:
    Xz, Xv = A.split(X)
    z, v = np.linalg.norm(Xz), np.linalg.norm(Xv)
    tol = (DEFAULT_EPS if eps is None else eps) * max(np.linalg.norm(X), 1.0)
    if z <= tol or v <= tol:
        raise DegenerateDirection("K_check needs X_z != 0 and X_v != 0")
    return z, v


def k_check(A: HTypeAlgebra, X, eps: Optional[float] = None) -> np.ndarray:
    """K_hat(X) / (|X_z| |X_v|^2); -K_check^2 has spectrum in [0, 1]."""
    z, v = _norms(A, X, eps)
    return k_hat(A, X) / (z * v * v)


def decompose_image(A: HTypeAlgebra, X, Z, eps: Optional[float] = None):
    """Split |X_v|^2 Z . X_z . X_v = U + (K_hat Z) . X_v.

    Returns (U, K_hat Z) with U orthogonal to z . X_v.
    """
    Xz, Xv = A.split(X)
    if np.linalg.norm(Xv) <= (DEFAULT_EPS if eps is None else eps) * max(np.linalg.norm(X), 1.0):
        raise DegenerateDirection("X_v must be nonzero")
    Z = np.asarray(Z, float)
    KZ = k_hat(A, X) @ Z
    lhs = (Xv @ Xv) * A.act(Z, A.act(Xz, Xv))
    return lhs - A.act(KZ, Xv), KZ


# ---------------------------------------------------------------- spectrum

@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: tuple            # ((value, multiplicity), ...) ascending
    m0: int
    has_unit: bool
    m1: int
    nonconstant: tuple            # ((value, multiplicity), ...) strictly inside (0, 1)
    raw: np.ndarray = field(repr=False, default=None)

    @property
    def n(self) -> int:
        return sum(m for _, m in self.eigenvalues)

    @property
    def signature(self) -> tuple:
        return (self.m0, self.m1, tuple(sorted(m for _, m in self.nonconstant)))


def squared_singular_values(K: np.ndarray) -> np.ndarray:
    """Eigenvalues of K^T K, ascending, via the SVD of K.

    Forming K^T K first squares the condition number and loses the small
    eigenvalues; the singular values keep them to relative accuracy.
    """
    return np.sort(np.linalg.svd(K, compute_uv=False) ** 2)


def cluster(values: Sequence[float], tau: float = TAU_CLUSTER) -> list[tuple[float, int]]:
    """Group sorted values whose neighbour gaps are <= tau (relative to max(1, |x|)).

    Gaps in the band (tau, 10 tau) raise ClusterAmbiguity.
    """
    vals = np.sort(np.asarray(values, float))
    groups: list[list[float]] = []
    for x in vals:
        if groups:
            gap = x - groups[-1][-1]
            scale = max(1.0, abs(x))
            if gap <= tau * scale:
                groups[-1].append(x)
                continue
            if gap < 10 * tau * scale:
                raise ClusterAmbiguity(f"eigenvalue gap {gap:.3e} is inside the ambiguity band")
        groups.append([x])
    return [(float(np.mean(g)), len(g)) for g in groups]


def spectrum(A: HTypeAlgebra, X, tau: float = TAU_CLUSTER,
             eps: Optional[float] = None) -> SpectrumReport:
    """Clustered spectrum of -K_check(X)^2."""
    K = k_check(A, X, eps)
    raw = squared_singular_values(K)
    groups = cluster(raw, tau)
    m0 = sum(m for val, m in groups if abs(val) <= ZERO_TOL)
    m1 = sum(m for val, m in groups if abs(val - 1) <= ZERO_TOL)
    inner = tuple((val, m) for val, m in groups
                  if abs(val) > ZERO_TOL and abs(val - 1) > ZERO_TOL)
    return SpectrumReport(tuple(groups), m0, m1 > 0, m1, inner, raw)


def is_admissible(report: SpectrumReport, margin: float = 1e-6) -> bool:
    """Reject points near the ramification locus or near the global values."""
    values = [v for v, _ in report.nonconstant]
    if any(v < margin or v > 1 - margin for v in values):
        return False
    values = sorted(values + [0.0, 1.0])
    return all(b - a > margin for a, b in zip(values, values[1:]))


def admissible_sample(A: HTypeAlgebra, rng: np.random.Generator, margin: float = 1e-6,
                      unit_parts: bool = True, max_tries: int = 1000):
    """Draw X until its spectrum is cleanly separated; returns (X, report)."""
    for _ in range(max_tries):
        X = A.random_vector(rng, unit_parts=unit_parts)
        try:
            report = spectrum(A, X)
        except ClusterAmbiguity:
            continue
        if is_admissible(report, margin):
            return X, report
    raise ClusterAmbiguity(f"no admissible sample in {max_tries} draws")


# ---------------------------------------------------------------- gradient identity

def _branch_value(A: HTypeAlgebra, X, target: float, window: float) -> float:
    raw = squared_singular_values(k_check(A, X))
    groups = cluster(raw)
    dist = [abs(v - target) for v, _ in groups]
    best = int(np.argmin(dist))
    if dist[best] > window:
        raise BranchTrackingError("branch moved further than the cluster separation")
    others = [d for i, d in enumerate(dist) if i != best]
    if others and min(others) < 2 * dist[best]:
        raise BranchTrackingError("ambiguous branch match")
    return groups[best][0]


def gradient_identity_residual(A: HTypeAlgebra, X, branch: int = 0, h: float = 1e-5) -> float:
    """|1 - mu(X) - |X_v|^2 / 4 |(grad sqrt mu)_v|^2| for a nonconstant branch.

    ``branch`` indexes the nonconstant clusters of the spectrum in
    ascending order.  The v-gradient uses central differences of step h.
    """
    report = spectrum(A, X)
    if not report.nonconstant:
        raise BranchTrackingError("no nonconstant branch at X")
    mu, _ = report.nonconstant[branch]
    values = [v for v, _ in report.eigenvalues]
    gaps = [abs(v - mu) for v in values if v != mu]
    window = 0.5 * min(gaps) if gaps else 0.5
    X = np.asarray(X, float)
    grad = np.zeros(A.d)
    for j in range(A.d):
        step = np.zeros(A.m)
        step[A.n + j] = h
        up = _branch_value(A, X + step, mu, window)
        down = _branch_value(A, X - step, mu, window)
        grad[j] = (np.sqrt(up) - np.sqrt(down)) / (2 * h)
    _, Xv = A.split(X)
    return float(abs(1 - mu - (Xv @ Xv) / 4 * (grad @ grad)))


# ---------------------------------------------------------------- classification

@dataclass(frozen=True)
class Classification:
    ell: int
    m0: int
    has_unit: bool
    m1: int
    multiplicities: tuple       # nonconstant branches, ascending
    samples_used: int
    votes: dict

    @property
    def degree(self) -> int:
        """Degree of the minimal polynomial implied by the factor structure."""
        k = 3 + 6 * self.ell
        if self.m0 >= 2:
            k += 4
        if self.m1 >= 2:
            k += 2
        return k


def classify(A: HTypeAlgebra, samples: int = 10, seed: int = 0,
             strict: bool = True) -> Classification:
    """Spectral signature of the module by voting over random admissible X."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    votes: Counter = Counter()
    for _ in range(samples):
        _, report = admissible_sample(A, rng)
        votes[report.signature] += 1
    (sig, count), = votes.most_common(1)
    if strict and len(votes) > 1:
        raise InconsistentSamples(f"samples disagree: {dict(votes)}")
    m0, m1, mults = sig
    return Classification(len(mults), m0, m1 > 0, m1, mults, samples, dict(votes))
