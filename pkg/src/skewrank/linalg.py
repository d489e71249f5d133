"""Exact linear algebra over the int-coded finite fields of :mod:`skewrank.gf`.

Scalar routines work on lists of rows with any :class:`~skewrank.gf.FiniteField`.
Because K-codes are L-codes, a K-matrix may be handled with the ops of L; ranks,
kernels and solutions do not depend on the field used.

:func:`batch_rank` is a numpy Gauss-Jordan over many small matrices at once,
driven by the field's lookup tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DivisionByZeroError, ShapeMismatchError
from .gf import FiniteField

__all__ = ["Matrix", "rref", "rank", "nullspace", "solve", "inverse", "det", "span_contains",
           "same_span", "batch_rank"]

Rows = list[list[int]]


def rref(rows: Sequence[Sequence[int]], F: FiniteField) -> tuple[Rows, list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = [list(r) for r in rows]
    if not A:
        return A, []
    ncols = len(A[0])
    pivots: list[int] = []
    r = 0
    add, mul, inv, neg = F.add, F.mul, F.inv, F.neg
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        s = inv(A[r][c])
        if s != 1:
            A[r] = [mul(s, x) for x in A[r]]
        pr = A[r]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = neg(A[i][c])
                row = A[i]
                A[i] = [add(x, mul(f, y)) if y else x for x, y in zip(row, pr)]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A, pivots


def rank(rows: Sequence[Sequence[int]], F: FiniteField) -> int:
    return len(rref(rows, F)[1])


def nullspace(rows: Sequence[Sequence[int]], F: FiniteField, ncols: int | None = None) -> Rows:
    """Basis of {x : A x = 0}, one vector per free column, in column order."""
    if not rows:
        if ncols is None:
            raise ShapeMismatchError("ncols needed for an empty matrix")
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    ncols = len(rows[0])
    R, piv = rref(rows, F)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(piv):
            v[pc] = F.neg(R[i][f])
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence[int]], rhs: Sequence[int], F: FiniteField) -> list[int] | None:
    """One solution of A x = b, or None when inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0])
    R, piv = rref(aug, F)
    if ncols in piv:
        return None
    x = [0] * ncols
    for i, pc in enumerate(piv):
        x[pc] = R[i][ncols]
    return x


def inverse(rows: Sequence[Sequence[int]], F: FiniteField) -> Rows:
    n = len(rows)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(rows)]
    R, piv = rref(aug, F)
    if piv[:n] != list(range(n)):
        raise DivisionByZeroError("matrix is singular")
    return [r[n:] for r in R]


def det(rows: Sequence[Sequence[int]], F: FiniteField) -> int:
    A = [list(r) for r in rows]
    n = len(A)
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = F.neg(d)
        d = F.mul(d, A[c][c])
        s = F.inv(A[c][c])
        for i in range(c + 1, n):
            if A[i][c]:
                f = F.neg(F.mul(A[i][c], s))
                A[i] = [F.add(x, F.mul(f, y)) for x, y in zip(A[i], A[c])]
    return d


def span_contains(basis: Sequence[Sequence[int]], vecs: Sequence[Sequence[int]], F: FiniteField) -> bool:
    r = rank(basis, F) if basis else 0
    return all(rank(list(basis) + [v], F) == r for v in vecs)


def same_span(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], F: FiniteField) -> bool:
    ra = rank(A, F) if A else 0
    rb = rank(B, F) if B else 0
    if ra != rb:
        return False
    if not A:
        return True
    return rank(list(A) + list(B), F) == ra


@dataclass(frozen=True)
class Matrix:
    """An immutable matrix of field codes together with the field used for elimination."""

    field: FiniteField
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, field: FiniteField, rows: Sequence[Sequence[int]]) -> Matrix:
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise ShapeMismatchError("ragged rows")
        return cls(field, rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def rank(self) -> int:
        return rank(self.rows, self.field)

    def nullity(self) -> int:
        return self.shape[1] - self.rank()

    def nullspace(self) -> Rows:
        return nullspace(self.rows, self.field, self.shape[1])

    def det(self) -> int:
        return det(self.rows, self.field)

    def inverse(self) -> Matrix:
        return Matrix.of(self.field, inverse(self.rows, self.field))

    @property
    def T(self) -> Matrix:
        return Matrix(self.field, tuple(zip(*self.rows)))

    def map(self, f) -> Matrix:
        return Matrix(self.field, tuple(tuple(f(x) for x in r) for r in self.rows))

    def __matmul__(self, other: Matrix) -> Matrix:
        F = self.field
        if self.shape[1] != other.shape[0]:
            raise ShapeMismatchError(f"{self.shape} @ {other.shape}")
        cols = list(zip(*other.rows))
        return Matrix(F, tuple(
            tuple(F.sum(F.mul(a, b) for a, b in zip(r, c)) for c in cols) for r in self.rows))

    def __sub__(self, other: Matrix) -> Matrix:
        F = self.field
        return Matrix(F, tuple(tuple(F.sub(a, b) for a, b in zip(r, s))
                               for r, s in zip(self.rows, other.rows)))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> Rows:
        return [list(r) for r in self.rows]


def batch_rank(A: np.ndarray, F: FiniteField) -> np.ndarray:
    """Ranks of a stack of matrices with shape (N, r, c) over ``F``."""
    add, mul, neg, inv = F.np_tables()
    A = np.array(A, dtype=np.int32, copy=True)
    N, r, c = A.shape
    used = np.zeros((N, r), dtype=bool)
    rk = np.zeros(N, dtype=np.int64)
    ar = np.arange(N)
    for col in range(c):
        cand = (A[:, :, col] != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = cand.argmax(axis=1)
        pval = A[ar, piv, col]
        scale = inv[pval]
        prow = mul[scale[:, None], A[ar, piv, :]]  # normalised pivot row
        factor = A[:, :, col].copy()
        factor[ar, piv] = 0
        factor[~has] = 0
        sub = mul[factor[:, :, None], prow[:, None, :]]
        A = add[A, neg[sub]]
        used[ar[has], piv[has]] = True
        rk += has
    return rk
