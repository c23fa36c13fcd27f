"""Exact dense linear algebra over a prime field F_p.

Everything here returns canonical objects: reduced row-echelon forms,
RREF-derived kernel bases and column-RREF subspace bases, so that equality of
subspaces is literal equality of matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import AmbientMismatch, DimensionMismatch, NoSolution, NotPrime

_INT64_LIMIT = 2**63 - 1


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The prime field F_p, 2 <= p < 2**31."""

    p: int

    def __post_init__(self):
        _check_modulus(self.p)


def _check_modulus(p) -> None:
    if not isinstance(p, int) or isinstance(p, bool) or not 2 <= p < 2**31 or not is_prime(p):
        raise NotPrime(f"{p!r} is not a prime in [2, 2**31)")


class Matrix:
    """An immutable rows x cols matrix with entries reduced mod p.

    Zero-row and zero-column matrices are legal and behave as expected under
    multiplication and stacking.
    """

    __slots__ = ("p", "_a", "_hash")

    def __init__(self, p: int, rows: Iterable[Iterable[int]], shape: tuple[int, int] | None = None):
        _check_modulus(p)
        data = [[int(x) % p for x in row] for row in rows]
        if shape is None:
            ncols = len(data[0]) if data else 0
            shape = (len(data), ncols)
        if len(data) != shape[0] or any(len(row) != shape[1] for row in data):
            raise DimensionMismatch(f"entries do not form a {shape[0]}x{shape[1]} matrix")
        a = np.zeros(shape, dtype=np.int64)
        if shape[0] and shape[1]:
            a[:, :] = data
        self._set(p, a)

    def _set(self, p: int, a: np.ndarray) -> None:
        a.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "_a", a)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _wrap(cls, p: int, a: np.ndarray) -> "Matrix":
        m = cls.__new__(cls)
        m._set(p, a)
        return m

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "Matrix":
        return cls._wrap(p, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, p: int, n: int) -> "Matrix":
        return cls._wrap(p, np.eye(n, dtype=np.int64))

    @classmethod
    def from_array(cls, p: int, a) -> "Matrix":
        _check_modulus(p)
        arr = np.asarray(a)
        if arr.ndim != 2:
            raise DimensionMismatch("matrix data must be two-dimensional")
        if arr.dtype == object:
            arr = np.array([[int(x) % p for x in row] for row in arr.tolist()], dtype=np.int64).reshape(arr.shape)
        else:
            arr = np.mod(arr.astype(np.int64), p)
        return cls._wrap(p, arr)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # shape and access

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def field(self) -> FieldSpec:
        return FieldSpec(self.p)

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the underlying int64 array."""
        return self._a

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self._a.ravel())

    def __getitem__(self, idx) -> int:
        return int(self._a[idx])

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self._a]

    def is_zero(self) -> bool:
        return not self._a.any()

    # arithmetic

    def _check_field(self, other: "Matrix") -> None:
        if not isinstance(other, Matrix) or other.p != self.p:
            raise DimensionMismatch("matrices over different fields")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        p = self.p
        if self.cols * (p - 1) ** 2 <= _INT64_LIMIT:
            prod = (self._a @ other._a) % p
        else:
            prod = (self._a.astype(object) @ other._a.astype(object)) % p
            prod = prod.astype(np.int64).reshape(self.rows, other.cols)
        return Matrix._wrap(p, prod)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix._wrap(self.p, (self._a + other._a) % self.p)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {other.shape} from {self.shape}")
        return Matrix._wrap(self.p, (self._a - other._a) % self.p)

    def __neg__(self) -> "Matrix":
        return Matrix._wrap(self.p, (-self._a) % self.p)

    def scale(self, c: int) -> "Matrix":
        return Matrix._wrap(self.p, (self._a * (int(c) % self.p)) % self.p)

    @property
    def T(self) -> "Matrix":
        return Matrix._wrap(self.p, np.ascontiguousarray(self._a.T))

    def hstack(self, *others: "Matrix") -> "Matrix":
        for o in others:
            self._check_field(o)
            if o.rows != self.rows:
                raise DimensionMismatch("hstack needs equal row counts")
        return Matrix._wrap(self.p, np.hstack([self._a] + [o._a for o in others]))

    def vstack(self, *others: "Matrix") -> "Matrix":
        for o in others:
            self._check_field(o)
            if o.cols != self.cols:
                raise DimensionMismatch("vstack needs equal column counts")
        return Matrix._wrap(self.p, np.vstack([self._a] + [o._a for o in others]))

    def column(self, j: int) -> "Matrix":
        return Matrix._wrap(self.p, self._a[:, j : j + 1].copy())

    # comparison

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.p == other.p and self._a.shape == other._a.shape and np.array_equal(self._a, other._a)

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.p, self._a.shape, self._a.tobytes())))
        return self._hash

    def __repr__(self) -> str:
        return f"Matrix(p={self.p}, {self.tolist()}, shape={self.shape})"


def block_diag(p: int, blocks: Sequence[Matrix]) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    a = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for b in blocks:
        a[r : r + b.rows, c : c + b.cols] = b.array
        r += b.rows
        c += b.cols
    return Matrix._wrap(p, a)


def _rref_array(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = np.array(a, dtype=np.int64, copy=True)
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col)
        if others.size:
            a[others] = (a[others] - np.outer(col[others], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int], int]:
    """Reduced row-echelon form, pivot columns and rank."""
    a, pivots = _rref_array(m.array, m.p)
    return Matrix._wrap(m.p, a), pivots, len(pivots)


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_rref_array(m.array, m.p)[1])


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form the canonical basis of the right null space of ``m``.

    One column per free variable, in increasing index order; the free variable
    is set to 1, the other free variables to 0.
    """
    p = m.p
    a, pivots = _rref_array(m.array, p)
    n = m.cols
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    k = np.zeros((n, len(free)), dtype=np.int64)
    for t, f in enumerate(free):
        k[f, t] = 1
        for row, c in enumerate(pivots):
            k[c, t] = (-a[row, f]) % p
    return Matrix._wrap(p, k)


def solve(a: Matrix, b: Matrix) -> Matrix:
    """Canonical particular solution X of a @ X = b (free variables set to 0)."""
    if a.rows != b.rows:
        raise DimensionMismatch(f"solve needs equal row counts, got {a.shape} and {b.shape}")
    p = a.p
    n = a.cols
    aug = np.hstack([a.array, b.array])
    r, pivots = _rref_array(aug, p)
    if pivots and pivots[-1] >= n:
        raise NoSolution("system is inconsistent")
    x = np.zeros((n, b.cols), dtype=np.int64)
    for row, c in enumerate(pivots):
        x[c] = r[row, n:]
    return Matrix._wrap(p, x)


def solve_left(a: Matrix, b: Matrix) -> Matrix:
    """Canonical X with X @ a = b."""
    return solve(a.T, b.T).T


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols or rank(m) != m.rows:
        raise NoSolution("matrix is not invertible")
    return solve(m, Matrix.identity(m.p, m.rows))


def column_space(m: Matrix) -> Matrix:
    """Canonical basis of the column space: the transpose of rref(m.T) without zero rows."""
    a, pivots = _rref_array(m.array.T, m.p)
    return Matrix._wrap(m.p, np.ascontiguousarray(a[: len(pivots)].T))


def subspace_meet_join(u: Matrix, v: Matrix) -> tuple[Matrix, Matrix]:
    """Canonical bases of the intersection and the sum of two column spans."""
    if u.rows != v.rows:
        raise AmbientMismatch(f"ambient dimensions differ: {u.rows} vs {v.rows}")
    join = column_space(u.hstack(v))
    ker = kernel_basis(u.hstack(-v))
    top = Matrix._wrap(u.p, np.ascontiguousarray(ker.array[: u.cols]))
    meet = column_space(u @ top)
    return meet, join
