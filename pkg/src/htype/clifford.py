"""Orthogonal Clifford modules given by explicit generator matrices.

A module over Cl(z), z = R^n, is stored as n skew d x d integer matrices
G_1..G_n with G_i^2 = -I and G_i G_j = -G_j G_i.  Clifford multiplication
is Z . S = sum Z_i G_i S, and the spinor product is its adjoint,
<Z, S1 * S2> = <Z . S1, S2>.

Models
------
irr(1)        complex structure on R^2
irr(2)        quaternions, right multiplication by span(e1, e2)
irr(3,+/-)    quaternions, S . T = +/- T S
irr(4..6)     octonions, right multiplication by span(e1 .. en) in Im O
irr(7,+/-)    octonions, S . T = +/- T S
irr(8)        z = O, v = O + O, S0 . (S+, S-) = (S- S0, -S+ S0*)
irr(9)        z = R + O, v = O^2 (x) C, S0 . S1 = i S1 M(S0)
irr(n>9)      tensor(irr(8), irr(n-8))
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import algebra
from .errors import DimensionError, ModelSpecError

# minimal module dimension for n = 0 .. 8, then d_{n+8} = 16 d_n
_BASE_DIMS = (1, 2, 4, 4, 8, 8, 8, 8, 16)


def irreducible_dimension(n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n <= 8:
        return _BASE_DIMS[n]
    return 16 * irreducible_dimension(n - 8)


@dataclass(frozen=True, eq=False)
class CliffordModule:
    """Generators of an orthogonal Cl(R^n)-module on R^d.

    ``summands`` lists (model tag, sign) for each irreducible piece.
    ``grading`` is an involution anticommuting with every generator, when
    the model carries one (needed as the left factor of a tensor product).
    """

    n: int
    d: int
    generators: np.ndarray  # shape (n, d, d)
    summands: tuple = ()
    grading: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        gens = np.asarray(self.generators)
        if gens.shape != (self.n, self.d, self.d):
            raise DimensionError(
                f"generators have shape {gens.shape}, expected {(self.n, self.d, self.d)}")
        gens = gens.copy()
        gens.setflags(write=False)
        object.__setattr__(self, "generators", gens)

    @property
    def is_exact(self) -> bool:
        return np.issubdtype(self.generators.dtype, np.integer)

    @property
    def float_generators(self) -> np.ndarray:
        return self.generators.astype(float)

    def _key(self):
        return (self.n, self.d, tuple(sorted(Counter(self.summands).items())))

    def __eq__(self, other):
        # equal up to isomorphism: the summand multiset decides
        if not isinstance(other, CliffordModule):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"CliffordModule(n={self.n}, d={self.d}, summands={list(self.summands)})"

    def act(self, Z, S) -> np.ndarray:
        return clifford_act(self, Z, S)

    def spinor_product(self, S1, S2) -> np.ndarray:
        return spinor_product(self, S1, S2)

    def volume_element(self) -> np.ndarray:
        """G_1 G_2 ... G_n."""
        out = np.eye(self.d, dtype=self.generators.dtype)
        for g in self.generators:
            out = out @ g
        return out


def _check_vector(v, size: int, what: str) -> np.ndarray:
    arr = np.asarray(v)
    if arr.shape[-1:] != (size,):
        raise DimensionError(f"{what} has trailing dimension {arr.shape[-1:]}, expected {size}")
    return arr


def clifford_act(M: CliffordModule, Z, S) -> np.ndarray:
    """Z . S, bilinear in (Z, S); broadcasts over leading axes."""
    Z = _check_vector(Z, M.n, "Z")
    S = _check_vector(S, M.d, "S")
    gens = M.generators if M.is_exact and _is_exact(Z, S) else M.float_generators
    return np.einsum("...i,ijk,...k->...j", Z, gens, S)


def spinor_product(M: CliffordModule, S1, S2) -> np.ndarray:
    """S1 * S2 in z, defined by <Z, S1 * S2> = <Z . S1, S2>."""
    S1 = _check_vector(S1, M.d, "S1")
    S2 = _check_vector(S2, M.d, "S2")
    gens = M.generators if M.is_exact and _is_exact(S1, S2) else M.float_generators
    return np.einsum("...j,ijk,...k->...i", S2, gens, S1)


def _is_exact(*arrays) -> bool:
    return all(np.asarray(a).dtype == object or np.issubdtype(np.asarray(a).dtype, np.integer)
               for a in arrays)


# ---------------------------------------------------------------- models

def _right_mult_model(table: np.ndarray, imaginary: Sequence[int], sign: int) -> np.ndarray:
    dim = table.shape[0]
    return np.stack([sign * algebra.right_matrix(algebra.basis_vector(i, dim), table)
                     for i in imaginary])


def _model_complex() -> CliffordModule:
    g = np.array([[[0, -1], [1, 0]]], dtype=np.int64)
    return CliffordModule(1, 2, g, (("complex", 1),))


def _model_quaternion(n: int, sign: int) -> CliffordModule:
    gens = _right_mult_model(algebra.QUATERNION_TABLE, range(1, n + 1), sign)
    tag = "quaternion" if n == 3 else f"quaternion_{n}"
    return CliffordModule(n, 4, gens, ((tag, sign),))


def _model_octonion(n: int, sign: int) -> CliffordModule:
    gens = _right_mult_model(algebra.OCTONION_TABLE, range(1, n + 1), sign)
    tag = "octonion" if n == 7 else f"octonion_{n}"
    return CliffordModule(n, 8, gens, ((tag, sign),))


def _model_octonion_pair() -> CliffordModule:
    """z = O acting on O + O by S0 . (S+, S-) = (S- S0, -S+ S0*)."""
    gens = []
    for a in range(8):
        e = algebra.basis_vector(a)
        g = np.zeros((16, 16), dtype=np.int64)
        g[:8, 8:] = algebra.right_matrix(e)
        g[8:, :8] = -algebra.right_matrix(algebra.conj(e))
        gens.append(g)
    grading = np.diag([1] * 8 + [-1] * 8).astype(np.int64)
    return CliffordModule(8, 16, np.stack(gens), (("octonion_pair", 1),), grading)


def n9_row_matrix(a: int) -> np.ndarray:
    """Real 16 x 16 matrix of the row action S -> S M(E_a) on O^2.

    a = 0 is the real unit of R + O, a = 1..8 are 1, e1, .., e7 of O.
    """
    t = np.zeros((16, 16), dtype=np.int64)
    if a == 0:
        t[:8, :8] = np.eye(8, dtype=np.int64)
        t[8:, 8:] = -np.eye(8, dtype=np.int64)
        return t
    e = algebra.basis_vector(a - 1)
    # (S+, S-) M = (S- Z, S+ Z*)
    t[:8, 8:] = algebra.right_matrix(e)
    t[8:, :8] = algebra.right_matrix(algebra.conj(e))
    return t


def _model_complex_octonion_pair() -> CliffordModule:
    """z = R + O on O^2 (x) C, coordinates (Re S+, Re S-, Im S+, Im S-)."""
    gens = []
    for a in range(9):
        t = n9_row_matrix(a)
        g = np.zeros((32, 32), dtype=np.int64)
        # multiplication by i: (re, im) -> (-im, re)
        g[:16, 16:] = -t
        g[16:, :16] = t
        gens.append(g)
    return CliffordModule(9, 32, np.stack(gens), (("complex_octonion_pair", 1),))


def tensor_module(left: CliffordModule, right: CliffordModule) -> CliffordModule:
    """Graded tensor product: (Z' + Z'') . (S' x S'') = Z'.S' x S'' + G S' x Z''.S''."""
    if left.grading is None:
        raise ModelSpecError("left tensor factor must carry a grading (use irr(8))")
    eye = np.eye(right.d, dtype=np.int64)
    gens = [np.kron(g, eye) for g in left.generators]
    gens += [np.kron(left.grading, g) for g in right.generators]
    summands = tuple((f"tensor[{lt}|{rt}]", rs)
                     for lt, _ in left.summands for rt, rs in right.summands)
    grading = None
    if right.grading is not None:
        grading = np.kron(left.grading, right.grading)
    return CliffordModule(left.n + right.n, left.d * right.d, np.stack(gens), summands, grading)


def direct_sum(*modules: CliffordModule) -> CliffordModule:
    if not modules:
        raise ModelSpecError("empty direct sum")
    n = modules[0].n
    if any(m.n != n for m in modules):
        raise ModelSpecError("direct-sum summands must share n")
    d = sum(m.d for m in modules)
    gens = np.zeros((n, d, d), dtype=np.result_type(*[m.generators for m in modules]))
    offset = 0
    for m in modules:
        gens[:, offset:offset + m.d, offset:offset + m.d] = m.generators
        offset += m.d
    grading = None
    if all(m.grading is not None for m in modules):
        grading = np.zeros((d, d), dtype=np.int64)
        offset = 0
        for m in modules:
            grading[offset:offset + m.d, offset:offset + m.d] = m.grading
            offset += m.d
    summands = tuple(s for m in modules for s in m.summands)
    return CliffordModule(n, d, gens, summands, grading)


def irreducible(n: int, sign: Optional[int] = None) -> CliffordModule:
    """The irreducible model for z = R^n; sign selects the class when n = 3 mod 4."""
    if n < 1:
        raise ModelSpecError("n must be positive")
    if sign is not None and n % 4 != 3:
        raise ModelSpecError(f"a sign is only meaningful for n = 3 mod 4, got n={n}")
    if sign not in (None, 1, -1):
        raise ModelSpecError("sign must be +1 or -1")
    eps = 1 if sign is None else sign
    if n == 1:
        return _model_complex()
    if n == 2:
        return _model_quaternion(2, 1)
    if n == 3:
        return _model_quaternion(3, eps)
    if n in (4, 5, 6):
        return _model_octonion(n, 1)
    if n == 7:
        return _model_octonion(7, eps)
    if n == 8:
        return _model_octonion_pair()
    if n == 9:
        return _model_complex_octonion_pair()
    return tensor_module(_model_octonion_pair(), irreducible(n - 8, sign))


# ---------------------------------------------------------------- spec parser

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]+)|([(),+\-]))")


def _tokenize(text: str) -> list:
    tokens, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ModelSpecError(f"unexpected character at {pos} in {text!r}")
        tokens.append(next(g for g in m.groups() if g is not None))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ModelSpecError(f"expected {expected or 'token'} in {self.text!r}, got {tok!r}")
        self.i += 1
        return tok

    def parse(self) -> CliffordModule:
        module = self.spec()
        if self.peek() is not None:
            raise ModelSpecError(f"trailing input in {self.text!r}")
        return module

    def spec(self) -> CliffordModule:
        head = self.take()
        self.take("(")
        if head == "irr":
            n = self.take()
            if not n.isdigit():
                raise ModelSpecError(f"irr() needs an integer, got {n!r}")
            sign = None
            if self.peek() == ",":
                self.take(",")
                sign = {"+": 1, "-": -1}.get(self.take())
                if sign is None:
                    raise ModelSpecError("sign must be + or -")
            self.take(")")
            return irreducible(int(n), sign)
        if head in ("sum", "tensor"):
            parts = [self.spec()]
            while self.peek() == ",":
                self.take(",")
                parts.append(self.spec())
            self.take(")")
            if head == "sum":
                return direct_sum(*parts)
            if len(parts) != 2 or parts[0].n != 8:
                raise ModelSpecError("tensor(spec8, spec) needs an n=8 left factor")
            return tensor_module(parts[0], parts[1])
        raise ModelSpecError(f"unknown model tag {head!r}")


def build_module(spec: str, n: Optional[int] = None) -> CliffordModule:
    """Parse ``irr(n[,+|-])``, ``sum(spec,...)`` or ``tensor(spec8, spec)``."""
    module = _Parser(spec).parse()
    if n is not None and module.n != n:
        raise ModelSpecError(f"spec {spec!r} has n={module.n}, expected n={n}")
    return module


# ---------------------------------------------------------------- verification

@dataclass(frozen=True)
class RelationReport:
    skew: float
    square: float
    anticommute: float
    isometry: float
    exact: bool

    @property
    def max_residual(self) -> float:
        return max(self.skew, self.square, self.anticommute, self.isometry)


def _exact_residuals(M: CliffordModule, trials: int, rng) -> RelationReport:
    # integer matrices and integer samples keep every product exact in int64;
    # rational samples reduce to these by clearing denominators
    G = M.generators.astype(np.int64)
    eye = np.eye(M.d, dtype=np.int64)
    skew = max(int(np.abs(g + g.T).max()) for g in G)
    square = max(int(np.abs(g @ g + eye).max()) for g in G)
    anti = 0
    for i in range(M.n):
        for j in range(i + 1, M.n):
            anti = max(anti, int(np.abs(G[i] @ G[j] + G[j] @ G[i]).max()))
    iso = 0
    for _ in range(trials):
        Z = rng.integers(-9, 10, M.n)
        S = rng.integers(-9, 10, M.d)
        ZS = np.einsum("i,ijk,k->j", Z, G, S)
        iso = max(iso, abs(int(ZS @ ZS) - int(Z @ Z) * int(S @ S)))
    return RelationReport(float(skew), float(square), float(anti), float(iso), True)


def _unit(rows: np.ndarray) -> np.ndarray:
    return rows / np.linalg.norm(rows, axis=1, keepdims=True)


def verify_relations(M: CliffordModule, trials: int = 100, seed: int = 0,
                     exact: Optional[bool] = None) -> RelationReport:
    """Maximum residuals of the module axioms over sampled inputs.

    Exact mode (default for integer generators) checks the generator
    relations completely and the isometry law on random rational samples.
    Floating mode samples unit vectors Z, S, Z1, Z2 and evaluates the identities
    Z.S . S' + S . Z.S' = 0, Z.Z.S + |Z|^2 S = 0,
    Z1.Z2.S + Z2.Z1.S + 2<Z1,Z2> S = 0 and |Z.S| = |Z||S|.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    if exact is None:
        exact = M.is_exact
    if exact:
        return _exact_residuals(M, trials, rng)
    G = M.float_generators
    skew = square = anti = iso = 0.0
    for _ in range(trials):
        Z, Z1, Z2 = _unit(rng.normal(size=(3, M.n)))
        S, T = _unit(rng.normal(size=(2, M.d)))
        act = lambda z, s: np.einsum("i,ijk,k->j", z, G, s)
        skew = max(skew, abs(act(Z, S) @ T + S @ act(Z, T)))
        square = max(square, np.abs(act(Z, act(Z, S)) + (Z @ Z) * S).max())
        anti = max(anti, np.abs(act(Z1, act(Z2, S)) + act(Z2, act(Z1, S))
                                + 2 * (Z1 @ Z2) * S).max())
        ZS = act(Z, S)
        iso = max(iso, abs(ZS @ ZS - (Z @ Z) * (S @ S)))
    return RelationReport(skew, square, anti, iso, False)
