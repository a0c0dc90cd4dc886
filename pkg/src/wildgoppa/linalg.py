"""Exact dense linear algebra over constructed fields.

Matrices hold integer element codes in numpy arrays; all row operations go
through the owning field's lookup tables, so elimination over F_8 or F_512
vectorises the same way as over F_2. Row reduction uses first-nonzero
pivoting (no pivot choice freedom), which makes the reduced row echelon
form, and everything derived from it, fully deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .gf import Field

__all__ = [
    "MatrixGF",
    "RrefResult",
    "rref",
    "rank",
    "basis_rows",
    "kernel",
    "row_space_equal",
    "intersect_row_spaces",
    "matmul",
    "reduce_row",
    "in_row_space",
]

_DT = np.int16


def _as_array(field: Field, rows) -> np.ndarray:
    arr = np.array(rows, dtype=np.int64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-d array of codes, got shape {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= field.order):
        raise ValueError(f"entry out of range for {field!r}")
    return arr.astype(_DT)


class MatrixGF:
    """An immutable matrix of element codes over a :class:`Field`."""

    __slots__ = ("field", "array")

    def __init__(self, field: Field, rows):
        self.field = field
        arr = _as_array(field, rows)
        arr.setflags(write=False)
        self.array = arr

    @classmethod
    def _wrap(cls, field: Field, arr: np.ndarray) -> "MatrixGF":
        self = object.__new__(cls)
        self.field = field
        a = arr.astype(_DT, copy=False)
        a.setflags(write=False)
        self.array = a
        return self

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "MatrixGF":
        return cls._wrap(field, np.zeros((nrows, ncols), dtype=_DT))

    @classmethod
    def identity(cls, field: Field, n: int) -> "MatrixGF":
        return cls._wrap(field, np.eye(n, dtype=_DT))

    @classmethod
    def vstack(cls, matrices: Sequence["MatrixGF"]) -> "MatrixGF":
        if not matrices:
            raise ValueError("nothing to stack")
        field = matrices[0].field
        for m in matrices:
            if m.field != field:
                raise ValueError("mixed fields in vstack")
        return cls._wrap(field, np.vstack([m.array for m in matrices]))

    @property
    def shape(self) -> tuple[int, int]:
        return self.array.shape

    @property
    def nrows(self) -> int:
        return self.array.shape[0]

    @property
    def ncols(self) -> int:
        return self.array.shape[1]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MatrixGF)
            and other.field == self.field
            and other.array.shape == self.array.shape
            and np.array_equal(other.array, self.array)
        )

    def __hash__(self) -> int:
        return hash((self.field.params, self.array.shape, self.array.tobytes()))

    def __repr__(self) -> str:
        return f"MatrixGF({self.nrows}x{self.ncols} over GF({self.field.order}))"


@dataclass(frozen=True)
class RrefResult:
    matrix: MatrixGF
    rank: int
    pivots: tuple[int, ...]


def _rref_array(field: Field, W: np.ndarray) -> tuple[np.ndarray, int, tuple[int, ...]]:
    """In-place RREF of a writable int array of codes."""
    add, mul = field.add_table, field.mul_table
    neg, inv = field.neg_table, field.inv_table
    nrows, ncols = W.shape
    r = 0
    pivots: list[int] = []
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(W[r:, col])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            W[[r, pr]] = W[[pr, r]]
        pv = int(W[r, col])
        if pv != 1:
            W[r] = mul[int(inv[pv]), W[r]]
        colvals = W[:, col].copy()
        colvals[r] = 0
        rows_nz = np.nonzero(colvals)[0]
        if rows_nz.size:
            factors = neg[colvals[rows_nz]]
            W[rows_nz] = add[W[rows_nz], mul[factors[:, None], W[r][None, :]]]
        pivots.append(col)
        r += 1
    return W, r, tuple(pivots)


def rref(M: MatrixGF) -> RrefResult:
    """Reduced row echelon form with first-nonzero pivoting."""
    W, rk, piv = _rref_array(M.field, M.array.astype(_DT, copy=True))
    return RrefResult(MatrixGF._wrap(M.field, W), rk, piv)


def rank(M: MatrixGF) -> int:
    return rref(M).rank


def basis_rows(M: MatrixGF) -> MatrixGF:
    """Canonical basis of the row space: nonzero rows of the RREF."""
    res = rref(M)
    return MatrixGF._wrap(M.field, res.matrix.array[: res.rank])


def kernel(M: MatrixGF) -> MatrixGF:
    """Canonical (RREF) basis of the right null space, as rows.

    For a matrix with no rows the kernel is the whole ambient space.
    """
    field = M.field
    n = M.ncols
    res = rref(M)
    piv = list(res.pivots)
    free = [c for c in range(n) if c not in set(piv)]
    nf = len(free)
    B = np.zeros((nf, n), dtype=_DT)
    if nf:
        B[np.arange(nf), free] = 1
        if res.rank:
            R = res.matrix.array
            B[:, piv] = field.neg_table[R[: res.rank, free]].T
    W, rk, _ = _rref_array(field, B)
    return MatrixGF._wrap(field, W[:rk])


def row_space_equal(A: MatrixGF, B: MatrixGF) -> bool:
    if A.field != B.field or A.ncols != B.ncols:
        raise ValueError("row spaces live in different ambient spaces")
    ra, rb = rref(A), rref(B)
    return ra.rank == rb.rank and np.array_equal(
        ra.matrix.array[: ra.rank], rb.matrix.array[: rb.rank]
    )


def intersect_row_spaces(A: MatrixGF, B: MatrixGF) -> MatrixGF:
    """Canonical basis of (row space of A) intersect (row space of B).

    Uses duality: the intersection is the kernel of the stacked kernels.
    """
    if A.field != B.field or A.ncols != B.ncols:
        raise ValueError("row spaces live in different ambient spaces")
    ka, kb = kernel(A), kernel(B)
    stacked = np.vstack([ka.array, kb.array])
    return kernel(MatrixGF._wrap(A.field, stacked.astype(_DT)))


def matmul(A: MatrixGF, B: MatrixGF) -> MatrixGF:
    """Exact matrix product over the field (small sizes; used for checks)."""
    if A.field != B.field:
        raise ValueError("mixed fields in matmul")
    if A.ncols != B.nrows:
        raise ValueError(f"shape mismatch {A.shape} x {B.shape}")
    field = A.field
    add, mul = field.add_table, field.mul_table
    C = np.zeros((A.nrows, B.ncols), dtype=_DT)
    for k in range(A.ncols):
        colk = A.array[:, k]
        if not colk.any():
            continue
        C = add[C, mul[colk[:, None], B.array[k][None, :]]]
    return MatrixGF._wrap(field, C)


def reduce_row(R: MatrixGF, pivots: Sequence[int], row: np.ndarray) -> np.ndarray:
    """Residual of a single row vector after elimination against RREF rows.

    The result is zero exactly when the row lies in the span of R.
    """
    field = R.field
    add, mul, neg = field.add_table, field.mul_table, field.neg_table
    v = np.asarray(row, dtype=_DT).copy()
    for j, p in enumerate(pivots):
        c = int(v[p])
        if c:
            v = add[v, mul[np.int16(neg[c]), R.array[j]]]
    return v


def in_row_space(R: MatrixGF, pivots: Sequence[int], row: np.ndarray) -> bool:
    return not reduce_row(R, pivots, row).any()
