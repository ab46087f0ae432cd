"""Euclidean geometric algebra restricted to grades 1 and 2.

Vectors are plain 1-D numpy arrays. Bivectors are stored densely over the
canonical pairs (1,2), (1,3), ..., (1,n), (2,3), ..., (n-1,n); the value for a
pair i > j is the negation of the (j, i) entry and is never stored.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import DimensionError

__all__ = [
    "Bivector",
    "as_vector",
    "basis_vector",
    "dot",
    "left_contract",
    "norm_bivec",
    "norm_vec",
    "pair_index",
    "pair_labels",
    "wedge",
    "wedge_rows",
]


@lru_cache(maxsize=None)
def _pairs(dim: int) -> tuple[np.ndarray, np.ndarray]:
    rows, cols = np.triu_indices(dim, k=1)
    rows.flags.writeable = False
    cols.flags.writeable = False
    return rows, cols


def pair_index(i: int, j: int, dim: int) -> int:
    """Storage offset of the 0-based pair (i, j), i < j."""
    if not 0 <= i < j < dim:
        raise IndexError(f"pair ({i}, {j}) is not canonical for dim {dim}")
    return i * dim - i * (i + 1) // 2 + (j - i - 1)


def pair_labels(dim: int, prefix: str = "e") -> list[str]:
    """Human-readable 1-based labels, e.g. ``e12, e13, e23`` for dim 3."""
    sep = "" if dim < 10 else "_"
    rows, cols = _pairs(dim)
    return [f"{prefix}{i + 1}{sep}{j + 1}" for i, j in zip(rows, cols)]


def as_vector(a, dim: int | None = None) -> np.ndarray:
    arr = np.asarray(a, dtype=float)
    if arr.ndim != 1:
        raise DimensionError(f"expected a 1-D vector, got shape {arr.shape}")
    if arr.shape[0] < 2:
        raise DimensionError("vectors need at least 2 components")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionError(f"expected dim {dim}, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector has non-finite components")
    return arr


def basis_vector(i: int, dim: int) -> np.ndarray:
    """The 0-based basis vector sigma_{i+1}."""
    out = np.zeros(dim)
    out[i] = 1.0
    return out


def _check_same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")


class Bivector:
    """Grade-2 element in ``dim`` Euclidean dimensions.

    Instances are immutable; arithmetic returns new objects.
    """

    __slots__ = ("dim", "comps")

    def __init__(self, dim: int, comps=None):
        dim = int(dim)
        if dim < 2:
            raise DimensionError("bivectors need dim >= 2")
        size = dim * (dim - 1) // 2
        if comps is None:
            arr = np.zeros(size)
        else:
            arr = np.array(comps, dtype=float).reshape(-1)
            if arr.shape[0] != size:
                raise DimensionError(
                    f"dim {dim} bivector has {size} components, got {arr.shape[0]}"
                )
            if not np.all(np.isfinite(arr)):
                raise ValueError("bivector has non-finite components")
        arr.flags.writeable = False
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "comps", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Bivector is immutable")

    @classmethod
    def zero(cls, dim: int) -> "Bivector":
        return cls(dim)

    @classmethod
    def from_matrix(cls, mat) -> "Bivector":
        """Build from an antisymmetric matrix; only the upper triangle is read."""
        mat = np.asarray(mat, dtype=float)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DimensionError("expected a square matrix")
        rows, cols = _pairs(mat.shape[0])
        return cls(mat.shape[0], mat[rows, cols])

    def matrix(self) -> np.ndarray:
        """Antisymmetric matrix M with M[i, j] = B_ij."""
        rows, cols = _pairs(self.dim)
        mat = np.zeros((self.dim, self.dim))
        mat[rows, cols] = self.comps
        mat[cols, rows] = -self.comps
        return mat

    def component(self, i: int, j: int) -> float:
        """0-based B_ij with the antisymmetric extension."""
        if i == j:
            return 0.0
        if i > j:
            return -self.comps[pair_index(j, i, self.dim)]
        return float(self.comps[pair_index(i, j, self.dim)])

    def norm(self) -> float:
        return float(np.sqrt(np.dot(self.comps, self.comps)))

    def transformed(self, rot) -> "Bivector":
        """Image under the outermorphism of the linear map ``rot``."""
        rot = np.asarray(rot, dtype=float)
        return Bivector.from_matrix(rot @ self.matrix() @ rot.T)

    def _coerce(self, other) -> np.ndarray:
        if not isinstance(other, Bivector):
            return NotImplemented
        if other.dim != self.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return other.comps

    def __add__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return Bivector(self.dim, self.comps + c)

    def __sub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return Bivector(self.dim, self.comps - c)

    def __neg__(self):
        return Bivector(self.dim, -self.comps)

    def __mul__(self, scalar):
        if isinstance(scalar, Bivector):
            return NotImplemented
        return Bivector(self.dim, self.comps * float(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Bivector(self.dim, self.comps / float(scalar))

    def __eq__(self, other):
        if not isinstance(other, Bivector):
            return NotImplemented
        return self.dim == other.dim and np.array_equal(self.comps, other.comps)

    def __hash__(self):
        return hash((self.dim, self.comps.tobytes()))

    def __repr__(self):
        terms = ", ".join(
            f"{lab}={c:.6g}" for lab, c in zip(pair_labels(self.dim), self.comps)
        )
        return f"Bivector({terms})"


def dot(a, b) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    _check_same_dim(a, b)
    return float(np.dot(a, b))


def wedge(a, b) -> Bivector:
    """Outer product a ^ b with components a_i b_j - a_j b_i for i < j."""
    a = as_vector(a)
    b = as_vector(b)
    _check_same_dim(a, b)
    rows, cols = _pairs(a.shape[0])
    return Bivector(a.shape[0], a[rows] * b[cols] - a[cols] * b[rows])


def wedge_rows(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise outer products of two (N, dim) arrays as (N, dim(dim-1)/2)
    component arrays in canonical pair order."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    rows, cols = _pairs(a.shape[-1])
    return a[..., rows] * b[..., cols] - a[..., cols] * b[..., rows]


def left_contract(a, B: Bivector) -> np.ndarray:
    """Left contraction a _| B, i.e. (a _| B)_k = sum_i a_i B_ik.

    Satisfies a _| (x ^ y) = (a . x) y - (a . y) x.
    """
    a = as_vector(a)
    if a.shape[0] != B.dim:
        raise DimensionError(f"dimension mismatch: {a.shape[0]} vs {B.dim}")
    return a @ B.matrix()


def norm_vec(a) -> float:
    a = np.asarray(a, dtype=float)
    return float(np.sqrt(np.dot(a, a)))


def norm_bivec(B: Bivector) -> float:
    return B.norm()
