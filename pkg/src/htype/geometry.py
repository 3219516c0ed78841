"""Riemannian data of the H-type Lie algebra n = z + v.

Tangent vectors are flat arrays of length m = n + d with the z-part first.
All endomorphisms are dense m x m matrices acting on such arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .clifford import CliffordModule, build_module
from .errors import DegenerateDirection, DimensionError, TransportAccuracyError

DEFAULT_EPS = 1e-12


@dataclass(frozen=True, eq=False)
class HTypeAlgebra:
    module: CliffordModule

    @classmethod
    def from_spec(cls, spec: str) -> "HTypeAlgebra":
        return cls(build_module(spec))

    @property
    def n(self) -> int:
        return self.module.n

    @property
    def d(self) -> int:
        return self.module.d

    @property
    def m(self) -> int:
        return self.module.n + self.module.d

    @property
    def G(self) -> np.ndarray:
        return self._float_gens

    def __post_init__(self):
        object.__setattr__(self, "_float_gens", self.module.float_generators)

    # -- vector plumbing

    def split(self, X) -> tuple[np.ndarray, np.ndarray]:
        X = np.asarray(X, dtype=float)
        if X.shape[-1] != self.m:
            raise DimensionError(f"expected vectors of length {self.m}, got {X.shape[-1]}")
        return X[..., :self.n], X[..., self.n:]

    def join(self, Xz, Xv) -> np.ndarray:
        return np.concatenate([np.asarray(Xz, float), np.asarray(Xv, float)], axis=-1)

    def act(self, Z, S) -> np.ndarray:
        """Z . S in floating point."""
        return np.einsum("...i,ijk,...k->...j", Z, self.G, S)

    def star(self, S1, S2) -> np.ndarray:
        """Spinor product S1 * S2."""
        return np.einsum("...j,ijk,...k->...i", S2, self.G, S1)

    def act_matrix(self, Z) -> np.ndarray:
        """d x d matrix of S -> Z . S."""
        return np.einsum("i,ijk->jk", Z, self.G)

    def orbit_matrix(self, S) -> np.ndarray:
        """d x n matrix of Z -> Z . S (its transpose is T -> S * T)."""
        return np.einsum("ijk,k->ji", self.G, S)

    def random_vector(self, rng: np.random.Generator, unit_parts: bool = False) -> np.ndarray:
        X = rng.normal(size=self.m)
        if unit_parts:
            Xz, Xv = self.split(X)
            X = self.join(Xz / np.linalg.norm(Xz), Xv / np.linalg.norm(Xv))
        return X


def _require_generic(A: HTypeAlgebra, X, eps: Optional[float]) -> tuple[np.ndarray, np.ndarray]:
    Xz, Xv = A.split(X)
    scale = np.linalg.norm(X)
    tol = (DEFAULT_EPS if eps is None else eps) * max(scale, 1.0)
    if np.linalg.norm(Xz) <= tol or np.linalg.norm(Xv) <= tol:
        raise DegenerateDirection("both X_z and X_v must be nonzero")
    return Xz, Xv


# ---------------------------------------------------------------- bracket and connection

def lie_bracket(A: HTypeAlgebra, X, Y) -> np.ndarray:
    """[X, Y] = X_v * Y_v (+) 0."""
    _, Xv = A.split(X)
    _, Yv = A.split(Y)
    return A.join(A.star(Xv, Yv), np.zeros(A.d))


def levi_civita(A: HTypeAlgebra, X, Y) -> np.ndarray:
    """nabla_X Y for left-invariant fields."""
    Xz, Xv = A.split(X)
    Yz, Yv = A.split(Y)
    return A.join(0.5 * A.star(Xv, Yv), -0.5 * (A.act(Xz, Yv) + A.act(Yz, Xv)))


def connection_matrix(A: HTypeAlgebra, X) -> np.ndarray:
    """Matrix of Y -> nabla_X Y (skew-symmetric)."""
    Xz, Xv = A.split(X)
    n = A.n
    out = np.zeros((A.m, A.m))
    out[:n, n:] = 0.5 * A.orbit_matrix(Xv).T
    out[n:, n:] = -0.5 * A.act_matrix(Xz)
    out[n:, :n] = -0.5 * A.orbit_matrix(Xv)
    return out


# ---------------------------------------------------------------- curvature

def curvature_apply(A: HTypeAlgebra, X, Y) -> np.ndarray:
    """Symmetrized curvature R(X)Y = R(Y, X)X of the H-type metric."""
    Xz, Xv = A.split(X)
    Yz, Yv = A.split(Y)
    w = A.act(Xz, Xv)
    zz, vv = Xz @ Xz, Xv @ Xv
    v_part = (-0.75 * A.act(A.star(Xv, Yv), Xv) + 0.25 * zz * Yv
              + 0.75 * A.act(Yz, w) + 0.5 * (Xz @ Yz) * Xv)
    z_part = 0.25 * vv * Yz - 0.75 * A.star(Yv, w) + 0.5 * (Xv @ Yv) * Xz
    return A.join(z_part, v_part)


def curvature_operator(A: HTypeAlgebra, X) -> np.ndarray:
    """Matrix of Y -> R(X)Y."""
    Xz, Xv = A.split(X)
    n = A.n
    w = A.act(Xz, Xv)
    Ov = A.orbit_matrix(Xv)          # Z -> Z . X_v
    Ow = A.orbit_matrix(w)           # Z -> Z . (X_z . X_v)
    out = np.zeros((A.m, A.m))
    # v <- v:  -3/4 (X_v * Y_v) . X_v + 1/4 |X_z|^2 Y_v
    out[n:, n:] = -0.75 * Ov @ Ov.T + 0.25 * (Xz @ Xz) * np.eye(A.d)
    # v <- z:  3/4 Y_z . w + 1/2 <X_z, Y_z> X_v
    out[n:, :n] = 0.75 * Ow + 0.5 * np.outer(Xv, Xz)
    # z <- z:  1/4 |X_v|^2 Y_z
    out[:n, :n] = 0.25 * (Xv @ Xv) * np.eye(n)
    # z <- v:  -3/4 Y_v * w + 1/2 <X_v, Y_v> X_z, and Y_v * w = -Ow^T Y_v
    out[:n, n:] = 0.75 * Ow.T + 0.5 * np.outer(Xz, Xv)
    return out


def curvature_polarized(A: HTypeAlgebra, X, Xp) -> np.ndarray:
    """R(X, X') with 2 R(X, X') = R(X + X') - R(X) - R(X')."""
    X, Xp = np.asarray(X, float), np.asarray(Xp, float)
    return 0.5 * (curvature_operator(A, X + Xp) - curvature_operator(A, X)
                  - curvature_operator(A, Xp))


def ad_adjoint(A: HTypeAlgebra, X, Y) -> np.ndarray:
    """ad(X)^* Y = Y_z . X_v (+ 0 in z)."""
    _, Xv = A.split(X)
    Yz, _ = A.split(Y)
    return A.join(np.zeros(A.n), A.act(Yz, Xv))


def curvature_general_oracle(A: HTypeAlgebra, X, Y) -> float:
    """<R(X)Y, Y> from the general formula for left-invariant metrics.

    Uses only the bracket and ad^*; the nested-bracket term vanishes for
    2-step nilpotent algebras but is kept for fidelity.
    """
    XY = lie_bracket(A, X, Y)
    adXX = ad_adjoint(A, X, X)
    adYY = ad_adjoint(A, Y, Y)
    sym = ad_adjoint(A, X, Y) + ad_adjoint(A, Y, X)
    nested = (lie_bracket(A, XY, X) @ Y) + (lie_bracket(A, -XY, Y) @ X)
    return float(-0.75 * XY @ XY - adXX @ adYY + 0.25 * sym @ sym + 0.5 * nested)


def ricci(A: HTypeAlgebra, X, Y) -> float:
    Xz, Xv = A.split(X)
    Yz, Yv = A.split(Y)
    return float(A.d / 4 * (Xz @ Yz) - A.n / 2 * (Xv @ Yv))


# ---------------------------------------------------------------- geodesics

def geodesic_velocity(A: HTypeAlgebra, X, t: float) -> np.ndarray:
    """Left-trivialized velocity X(t) of the geodesic through e with X(0) = X."""
    Xz, Xv = A.split(X)
    z = np.linalg.norm(Xz)
    if z == 0:
        return np.array(X, dtype=float)
    Xv_t = np.cos(t * z) * Xv + np.sin(t * z) / z * A.act(Xz, Xv)
    return A.join(Xz, Xv_t)


# ---------------------------------------------------------------- C0 structure

def _orthonormal_basis(spanning: np.ndarray, rtol: float = 1e-10) -> np.ndarray:
    """Orthonormal basis (columns) of the column span."""
    if spanning.shape[1] == 0:
        return spanning
    u, s, _ = np.linalg.svd(spanning, full_matrices=False)
    rank = int(np.sum(s > rtol * s[0])) if s.size and s[0] > 0 else 0
    return u[:, :rank]


def complement_basis(v: np.ndarray) -> np.ndarray:
    """Orthonormal basis (columns) of the orthogonal complement of a vector."""
    q, _ = np.linalg.qr(np.column_stack([v, np.eye(v.size)]))
    return q[:, 1:v.size]


@dataclass(frozen=True)
class SubspaceDecomposition:
    """Orthonormal bases (columns, in n) of the invariant blocks at X."""

    n3: np.ndarray       # span{X_z, X_v, X_z . X_v}
    h_hat: np.ndarray    # span{Z, Z . X_v, Z . X_z . X_v : Z perp X_z}
    z_perp: np.ndarray   # v-vectors orthogonal to z . X_v and z . X_z . X_v

    @property
    def h_projector(self) -> np.ndarray:
        return self.h_hat @ self.h_hat.T


def decompose(A: HTypeAlgebra, X, eps: Optional[float] = None) -> SubspaceDecomposition:
    Xz, Xv = _require_generic(A, X, eps)
    n, m = A.n, A.m
    w = A.act(Xz, Xv)
    h = complement_basis(Xz)
    cols = []
    for Z in h.T:
        cols.append(A.join(Z, np.zeros(A.d)))
        cols.append(A.join(np.zeros(n), A.act(Z, Xv)))
        cols.append(A.join(np.zeros(n), A.act(Z, w)))
    h_hat = _orthonormal_basis(np.array(cols).T.reshape(m, -1))
    n3 = _orthonormal_basis(np.column_stack([
        A.join(Xz, np.zeros(A.d)), A.join(np.zeros(n), Xv), A.join(np.zeros(n), w)]))
    # the rest of v: orthogonal complement of everything above
    used = np.hstack([h_hat, n3])
    q, _ = np.linalg.qr(np.hstack([used, np.eye(m)[:, n:]]))
    rest = q[:, used.shape[1]:m]
    return SubspaceDecomposition(n3, h_hat, rest)


def _clifford_left(A: HTypeAlgebra, Xz) -> np.ndarray:
    """Matrix of Y -> (0, X_z . Y_v)."""
    out = np.zeros((A.m, A.m))
    out[A.n:, A.n:] = A.act_matrix(Xz)
    return out


def c0_operator(A: HTypeAlgebra, X, eps: Optional[float] = None,
                decomposition: Optional[SubspaceDecomposition] = None) -> np.ndarray:
    """The skew endomorphism C(X) of the canonical C0-structure.

    On h_hat:          Y -> -3/2 X_z . Y_v - 1/2 Y_z . X_v + 1/2 X_v * Y_v
    on the complement: Y ->  1/2 X_z . Y_v - 1/2 Y_z . X_v + 1/2 X_v * Y_v
    """
    Xz, Xv = _require_generic(A, X, eps)
    dec = decomposition or decompose(A, X, eps)
    L = _clifford_left(A, Xz)
    base = np.zeros((A.m, A.m))
    base[:A.n, A.n:] = 0.5 * A.orbit_matrix(Xv).T
    base[A.n:, :A.n] = -0.5 * A.orbit_matrix(Xv)
    return base + 0.5 * L - 2.0 * L @ dec.h_projector


def theta_operator(A: HTypeAlgebra, X, eps: Optional[float] = None,
                   decomposition: Optional[SubspaceDecomposition] = None) -> np.ndarray:
    """Theta(X): X_z . Y_v on h_hat and -X_z . Y_v on its complement."""
    Xz, _ = _require_generic(A, X, eps)
    dec = decomposition or decompose(A, X, eps)
    L = _clifford_left(A, Xz)
    return -L + 2.0 * L @ dec.h_projector


# ---------------------------------------------------------------- parallel transport

@dataclass(frozen=True)
class TransportResult:
    times: np.ndarray
    frames: np.ndarray      # F(t), columns = transported initial basis
    jacobi: np.ndarray      # F(t)^T R(X(t)) F(t)
    c0: np.ndarray          # F(t)^T C(X(t)) F(t)
    max_orthonormality_error: float


def parallel_frame_oracle(A: HTypeAlgebra, X, t_max: float, steps: int,
                          tol: float = 1e-8, with_c0: bool = True) -> TransportResult:
    """Integrate dF/dt = -nabla_{X(t)} F along the geodesic with classical RK4.

    Returns the Jacobi operator and C0 operator expressed in the parallel
    frame at each grid time.  Negative t_max integrates backwards.
    """
    if steps < 2:
        raise ValueError("steps must be >= 2")
    Xz, _ = A.split(X)
    if np.linalg.norm(Xz) == 0:
        raise DegenerateDirection("transport oracle needs X_z != 0")
    h = t_max / steps
    times = np.linspace(0.0, t_max, steps + 1)
    rhs = lambda t, F: -connection_matrix(A, geodesic_velocity(A, X, t)) @ F
    F = np.eye(A.m)
    frames = [F]
    worst = 0.0
    for i in range(steps):
        t = times[i]
        k1 = rhs(t, F)
        k2 = rhs(t + h / 2, F + h / 2 * k1)
        k3 = rhs(t + h / 2, F + h / 2 * k2)
        k4 = rhs(t + h, F + h * k3)
        F = F + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        err = np.abs(F.T @ F - np.eye(A.m)).max()
        worst = max(worst, err)
        if err > tol:
            raise TransportAccuracyError(
                f"frame orthonormality drifted to {err:.2e} at t={times[i + 1]:.4g}")
        frames.append(F)
    frames = np.array(frames)
    jac, c0 = [], []
    for t, F in zip(times, frames):
        Xt = geodesic_velocity(A, X, t)
        jac.append(F.T @ curvature_operator(A, Xt) @ F)
        if with_c0:
            c0.append(F.T @ c0_operator(A, Xt) @ F)
    return TransportResult(times, frames, np.array(jac),
                           np.array(c0) if with_c0 else np.empty(0), worst)


def transported_jacobi_derivative(A: HTypeAlgebra, X, h: float = 1e-4) -> np.ndarray:
    """Central difference of the transported Jacobi operator at t = 0."""
    fwd = parallel_frame_oracle(A, X, h, 2, with_c0=False).jacobi[-1]
    bwd = parallel_frame_oracle(A, X, -h, 2, with_c0=False).jacobi[-1]
    return (fwd - bwd) / (2 * h)
