"""The four real normed division algebras as signed multiplication tables.

Every product of two basis elements is a signed basis element, so a table is
stored as two integer arrays: ``index[i, j] = k`` and ``sign[i, j] = s`` with
``e_i * e_j = s * e_k``. Dense left-multiplication matrices are derived views.

Quaternions are read off the explicit Hamilton product; complexes come from
doubling the reals and octonions from doubling the quaternions with
``(a, b)(c, d) = (ac - d* b, da + b c*)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DimensionMismatchError, DivisionAlgebraError

ALGEBRA_DIMS = {"reals": 1, "complexes": 2, "quaternions": 4, "octonions": 8}
NAME_BY_DIM = {d: name for name, d in ALGEBRA_DIMS.items()}


@dataclass(frozen=True)
class AlgebraElement:
    coeffs: tuple[float, ...]

    def __post_init__(self):
        c = tuple(float(x) for x in self.coeffs)
        if len(c) not in NAME_BY_DIM:
            raise DimensionMismatchError(f"no division algebra of dimension {len(c)}")
        if not all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def basis(cls, n: int, i: int) -> AlgebraElement:
        c = [0.0] * n
        c[i] = 1.0
        return cls(tuple(c))

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coeffs)

    def norm2(self) -> float:
        return float(np.dot(self.coeffs, self.coeffs))

    def norm(self) -> float:
        return float(np.sqrt(self.norm2()))


@dataclass(frozen=True, eq=False)
class MultiplicationTable:
    name: str
    index: np.ndarray = field(repr=False)
    sign: np.ndarray = field(repr=False)

    def __post_init__(self):
        idx = np.array(self.index, dtype=np.int64)
        sgn = np.array(self.sign, dtype=np.int64)
        if idx.shape != sgn.shape or idx.ndim != 2 or idx.shape[0] != idx.shape[1]:
            raise DivisionAlgebraError("index and sign must be matching square arrays")
        if not np.all(np.isin(sgn, (-1, 1))):
            raise DivisionAlgebraError("signs must be +1 or -1")
        if idx.min() < 0 or idx.max() >= idx.shape[0]:
            raise DivisionAlgebraError("target index out of range")
        idx.setflags(write=False)
        sgn.setflags(write=False)
        object.__setattr__(self, "index", idx)
        object.__setattr__(self, "sign", sgn)

    @property
    def dim(self) -> int:
        return self.index.shape[0]

    def __eq__(self, other):
        if not isinstance(other, MultiplicationTable):
            return NotImplemented
        return np.array_equal(self.index, other.index) and np.array_equal(self.sign, other.sign)

    def __hash__(self):
        return hash((self.index.tobytes(), self.sign.tobytes()))

    def entries(self) -> list[dict]:
        """Flat audit form: one ``{i, j, k, sign}`` record per basis pair."""
        n = self.dim
        return [
            {"i": i, "j": j, "k": int(self.index[i, j]), "sign": int(self.sign[i, j])}
            for i in range(n)
            for j in range(n)
        ]

    def structure_tensor(self) -> np.ndarray:
        """``T[i, j, k]`` with ``e_i * e_j = sum_k T[i, j, k] e_k``."""
        n = self.dim
        T = np.zeros((n, n, n), dtype=np.int64)
        i, j = np.indices((n, n))
        T[i, j, self.index] = self.sign
        return T


def _table_from_product(name: str, n: int, product) -> MultiplicationTable:
    """Tabulate a bilinear product whose basis products are signed basis vectors."""
    index = np.zeros((n, n), dtype=np.int64)
    sign = np.zeros((n, n), dtype=np.int64)
    eye = np.eye(n)
    for i in range(n):
        for j in range(n):
            c = np.asarray(product(eye[i], eye[j]))
            nz = np.flatnonzero(c)
            if len(nz) != 1 or abs(c[nz[0]]) != 1:
                raise DivisionAlgebraError(f"e_{i} * e_{j} is not a signed basis element")
            index[i, j] = nz[0]
            sign[i, j] = int(np.sign(c[nz[0]]))
    return MultiplicationTable(name, index, sign)


def hamilton_product(a, b) -> np.ndarray:
    """Quaternion product written out component by component."""
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return np.array(
        [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ]
    )


def _conj(c: np.ndarray) -> np.ndarray:
    out = -np.asarray(c, dtype=float)
    out[0] = -out[0]
    return out


def _product_fn(t: MultiplicationTable):
    T = t.structure_tensor()

    def product(a, b):
        return np.einsum("i,j,ijk->k", np.asarray(a, dtype=float), np.asarray(b, dtype=float), T)

    return product


def cayley_dickson_double(t: MultiplicationTable, name: str) -> MultiplicationTable:
    """Table of pairs ``(a, b)`` with ``(a, b)(c, d) = (ac - d* b, da + b c*)``."""
    m = t.dim
    mul = _product_fn(t)

    def product(x, y):
        a, b = x[:m], x[m:]
        c, d = y[:m], y[m:]
        return np.concatenate([mul(a, c) - mul(_conj(d), b), mul(d, a) + mul(b, _conj(c))])

    return _table_from_product(name, 2 * m, product)


@lru_cache(maxsize=None)
def standard_table(name: str) -> MultiplicationTable:
    if name == "reals":
        return MultiplicationTable("reals", [[0]], [[1]])
    if name == "complexes":
        return cayley_dickson_double(standard_table("reals"), "complexes")
    if name == "quaternions":
        return _table_from_product("quaternions", 4, hamilton_product)
    if name == "octonions":
        return cayley_dickson_double(standard_table("quaternions"), "octonions")
    raise KeyError(f"unknown algebra {name!r}; choose from {sorted(ALGEBRA_DIMS)}")


def table_for_dim(n: int) -> MultiplicationTable:
    if n not in NAME_BY_DIM:
        raise DimensionMismatchError(f"no normed division algebra of dimension {n}")
    return standard_table(NAME_BY_DIM[n])


def multiply(t: MultiplicationTable, A: AlgebraElement, B: AlgebraElement) -> AlgebraElement:
    if A.dim != t.dim or B.dim != t.dim:
        raise DimensionMismatchError(f"table has dimension {t.dim}, operands {A.dim} and {B.dim}")
    return AlgebraElement(tuple(_product_fn(t)(A.array, B.array)))


def left_mult_matrix(t: MultiplicationTable, i: int) -> np.ndarray:
    """Integer matrix ``L_i`` with ``L_i @ y == e_i * y``."""
    n = t.dim
    if not 0 <= i < n:
        raise IndexError(f"basis index {i} out of range for dimension {n}")
    L = np.zeros((n, n), dtype=np.int64)
    L[t.index[i], np.arange(n)] = t.sign[i]
    return L


def check_table_laws(t: MultiplicationTable) -> None:
    """Raise if ``t`` breaks the identity, permutation, or norm-product laws."""
    n = t.dim
    ar = np.arange(n)
    if not (np.array_equal(t.index[0], ar) and np.all(t.sign[0] == 1)):
        raise DivisionAlgebraError("e_0 is not a left identity")
    if not (np.array_equal(t.index[:, 0], ar) and np.all(t.sign[:, 0] == 1)):
        raise DivisionAlgebraError("e_0 is not a right identity")
    for i in range(n):
        if sorted(t.index[i]) != list(ar):
            raise DivisionAlgebraError(f"row {i} of the table is not a permutation")
    residual = norm_multiplicativity_residual(t, samples=32, rng=np.random.default_rng(0))
    if residual > 1e-12:
        raise DivisionAlgebraError(f"norm is not multiplicative (residual {residual:.3e})")


def norm_multiplicativity_residual(t: MultiplicationTable, samples: int, rng: np.random.Generator) -> float:
    """Max of ``| |AB|^2 - |A|^2 |B|^2 |`` over random unit-scale pairs."""
    mul = _product_fn(t)
    worst = 0.0
    for _ in range(samples):
        a = rng.standard_normal(t.dim)
        b = rng.standard_normal(t.dim)
        a /= np.linalg.norm(a)
        b /= np.linalg.norm(b)
        c = mul(a, b)
        worst = max(worst, abs(np.dot(c, c) - np.dot(a, a) * np.dot(b, b)))
    return worst
