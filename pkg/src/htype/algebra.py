"""Quaternions and octonions via the Cayley-Dickson doubling.

The doubling rule used throughout is

    (a, b)(c, d) = (ac - d*b, da + bc*)

applied recursively to pairs of coordinate tuples, so the basis of the
octonions is e0 = 1, e1 .. e7 with e1..e3 spanning the imaginary
quaternions inside the first half.  Structure constants are precomputed
once as integer tables and checked for alternativity on import.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np


def _cd_conj(x: tuple) -> tuple:
    if len(x) == 1:
        return x
    h = len(x) // 2
    return _cd_conj(x[:h]) + tuple(-c for c in x[h:])


def _cd_mul(x: tuple, y: tuple) -> tuple:
    """Multiply two Cayley-Dickson elements given as coordinate tuples."""
    if len(x) == 1:
        return (x[0] * y[0],)
    h = len(x) // 2
    a, b = x[:h], x[h:]
    c, d = y[:h], y[h:]
    left = tuple(p - q for p, q in zip(_cd_mul(a, c), _cd_mul(_cd_conj(d), b)))
    right = tuple(p + q for p, q in zip(_cd_mul(d, a), _cd_mul(b, _cd_conj(c))))
    return left + right


def _structure_table(dim: int) -> np.ndarray:
    """T[i, j, k] = coefficient of e_k in e_i e_j."""
    table = np.zeros((dim, dim, dim), dtype=np.int64)
    basis = [tuple(int(i == k) for k in range(dim)) for i in range(dim)]
    for i, j in product(range(dim), repeat=2):
        table[i, j] = _cd_mul(basis[i], basis[j])
    return table


QUATERNION_TABLE = _structure_table(4)
OCTONION_TABLE = _structure_table(8)


def mul(a: np.ndarray, b: np.ndarray, table: np.ndarray = OCTONION_TABLE) -> np.ndarray:
    """Product of (batches of) algebra elements stored in the last axis."""
    return np.einsum("...i,...j,ijk->...k", a, b, table)


def conj(a: np.ndarray) -> np.ndarray:
    out = -np.asarray(a)
    out[..., 0] = -out[..., 0]
    return out


def left_matrix(a: Sequence, table: np.ndarray = OCTONION_TABLE) -> np.ndarray:
    """Matrix of S -> a S."""
    return np.einsum("i,ijk->kj", np.asarray(a), table)


def right_matrix(a: Sequence, table: np.ndarray = OCTONION_TABLE) -> np.ndarray:
    """Matrix of S -> S a."""
    return np.einsum("j,ijk->ki", np.asarray(a), table)


def basis_vector(i: int, dim: int = 8) -> np.ndarray:
    e = np.zeros(dim, dtype=np.int64)
    e[i] = 1
    return e


def _check_alternative(table: np.ndarray) -> None:
    dim = table.shape[0]
    for i, j in product(range(dim), repeat=2):
        ei, ej = basis_vector(i, dim), basis_vector(j, dim)
        s = ei + ej
        # linearized alternativity on basis pairs suffices for a bilinear law
        lhs = mul(mul(s, s, table), ej, table)
        rhs = mul(s, mul(s, ej, table), table)
        if not np.array_equal(lhs, rhs):
            raise AssertionError(f"alternativity fails on e{i}, e{j}")


_check_alternative(QUATERNION_TABLE)
_check_alternative(OCTONION_TABLE)


class _CayleyDickson:
    """Shared arithmetic for the value types below."""

    __slots__ = ()
    _table: np.ndarray
    _dim: int

    @property
    def coords(self) -> tuple:
        raise NotImplementedError

    @classmethod
    def _wrap(cls, coords):
        raise NotImplementedError

    def __mul__(self, other):
        if isinstance(other, type(self)):
            return self._wrap(_cd_mul(self.coords, other.coords))
        return self._wrap(tuple(c * other for c in self.coords))

    def __rmul__(self, other):
        return self._wrap(tuple(other * c for c in self.coords))

    def __add__(self, other):
        return self._wrap(tuple(p + q for p, q in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return self._wrap(tuple(p - q for p, q in zip(self.coords, other.coords)))

    def __neg__(self):
        return self._wrap(tuple(-c for c in self.coords))

    def conj(self):
        return self._wrap(_cd_conj(self.coords))

    def norm_squared(self):
        return sum(c * c for c in self.coords)

    def norm(self) -> float:
        return math.sqrt(self.norm_squared())

    def inner(self, other):
        return sum(p * q for p, q in zip(self.coords, other.coords))

    def real(self):
        return self.coords[0]

    def to_array(self) -> np.ndarray:
        return np.array(self.coords)


@dataclass(frozen=True, slots=True)
class Quaternion(_CayleyDickson):
    w: float = 0
    x: float = 0
    y: float = 0
    z: float = 0

    @property
    def coords(self) -> tuple:
        return (self.w, self.x, self.y, self.z)

    @classmethod
    def _wrap(cls, coords):
        return cls(*coords)


@dataclass(frozen=True, slots=True)
class Octonion(_CayleyDickson):
    c: tuple = (0,) * 8

    def __post_init__(self):
        if len(self.c) != 8:
            raise ValueError("an octonion has 8 coordinates")
        object.__setattr__(self, "c", tuple(self.c))

    @property
    def coords(self) -> tuple:
        return self.c

    @classmethod
    def _wrap(cls, coords):
        return cls(tuple(coords))

    @classmethod
    def from_quaternions(cls, a: Quaternion, b: Quaternion) -> "Octonion":
        return cls(a.coords + b.coords)
