"""Row reduction, kernels, and row-space operations over small fields."""

from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wildgoppa.gf import build_tower
from wildgoppa.linalg import (
    MatrixGF,
    basis_rows,
    in_row_space,
    intersect_row_spaces,
    kernel,
    matmul,
    rank,
    reduce_row,
    row_space_equal,
    rref,
)

F2 = build_tower(2, 1, 1)
F4 = build_tower(2, 1, 2)
F8 = build_tower(2, 1, 3)
F9 = build_tower(3, 1, 2)


def enumerate_row_space(M: MatrixGF) -> set[tuple[int, ...]]:
    """All vectors in the row space, by brute combination (tiny inputs)."""
    field = M.field
    k, n = M.shape
    out = set()
    for coeffs in itertools.product(range(field.order), repeat=k):
        v = np.zeros(n, dtype=np.int64)
        for c, row in zip(coeffs, M.array):
            v = field.add_table[v, field.mul_table[np.int64(c), row.astype(np.int64)]]
        out.add(tuple(int(x) for x in v))
    return out


def matrix_strategy(field, max_rows=4, max_cols=5):
    def build(data):
        rows, cols, flat = data
        return MatrixGF(field, np.array(flat, dtype=np.int64).reshape(rows, cols))

    return st.tuples(
        st.integers(1, max_rows), st.integers(1, max_cols)
    ).flatmap(
        lambda rc: st.tuples(
            st.just(rc[0]),
            st.just(rc[1]),
            st.lists(
                st.integers(0, field.order - 1),
                min_size=rc[0] * rc[1],
                max_size=rc[0] * rc[1],
            ),
        )
    ).map(build)


class TestRref:
    def test_f2_rank_example(self):
        M = MatrixGF(F2, [[1, 1, 0], [0, 1, 1], [1, 0, 1]])
        assert rank(M) == 2

    def test_rref_shape_properties(self):
        M = MatrixGF(F9, [[0, 2, 1], [0, 4, 2], [1, 1, 1]])
        res = rref(M)
        R, rk, piv = res.matrix.array, res.rank, res.pivots
        assert list(piv) == sorted(piv)
        for j, p in enumerate(piv):
            assert R[j, p] == 1
            col = R[:, p]
            assert col.sum() == 1  # zeros above and below the pivot
            assert not R[j, :p].any()  # first nonzero entry is the pivot

    @given(matrix_strategy(F4))
    @settings(max_examples=60, deadline=None)
    def test_rref_preserves_row_space(self, M):
        res = rref(M)
        assert enumerate_row_space(M) == enumerate_row_space(
            MatrixGF(F4, res.matrix.array[: res.rank])
            if res.rank
            else MatrixGF.zeros(F4, 1, M.ncols)
        )

    @given(matrix_strategy(F8, 3, 4))
    @settings(max_examples=40, deadline=None)
    def test_rref_idempotent(self, M):
        res = rref(M)
        again = rref(res.matrix)
        assert np.array_equal(res.matrix.array, again.matrix.array)
        assert res.rank == again.rank

    def test_immutability(self):
        M = MatrixGF(F2, [[1, 0], [0, 1]])
        with pytest.raises(ValueError):
            M.array[0, 0] = 0

    def test_entry_range_checked(self):
        with pytest.raises(ValueError):
            MatrixGF(F2, [[0, 2]])


class TestKernel:
    @given(matrix_strategy(F4, 3, 4))
    @settings(max_examples=60, deadline=None)
    def test_kernel_annihilates(self, M):
        K = kernel(M)
        assert K.nrows == M.ncols - rank(M)
        if K.nrows:
            prod = matmul(M, MatrixGF(F4, K.array.T))
            assert not prod.array.any()

    def test_kernel_of_zero_rows_is_identity(self):
        K = kernel(MatrixGF.zeros(F4, 0, 3))
        assert np.array_equal(K.array, np.eye(3, dtype=np.int16))

    def test_kernel_of_full_rank_square_is_empty(self):
        K = kernel(MatrixGF.identity(F9, 4))
        assert K.nrows == 0 and K.ncols == 4

    @given(matrix_strategy(F9, 3, 4))
    @settings(max_examples=40, deadline=None)
    def test_kernel_is_canonical(self, M):
        K = kernel(M)
        res = rref(K)
        assert np.array_equal(res.matrix.array[: res.rank], K.array)

    def test_kernel_exhaustive_small(self):
        M = MatrixGF(F2, [[1, 1, 1, 0], [0, 0, 1, 1]])
        K = kernel(M)
        brute = {
            v
            for v in itertools.product(range(2), repeat=4)
            if all(
                sum(m * x for m, x in zip(row, v)) % 2 == 0 for row in M.array.tolist()
            )
        }
        assert enumerate_row_space(K) == brute


class TestRowSpaces:
    def test_equality_invariant_to_presentation(self):
        A = MatrixGF(F4, [[1, 2, 3], [0, 1, 1]])
        # row-scaled and summed presentation of the same space
        B = MatrixGF(
            F4,
            [
                (F4.mul_table[2, A.array[0]]).tolist(),
                F4.add_table[A.array[0], A.array[1]].tolist(),
            ],
        )
        assert row_space_equal(A, B)
        C = MatrixGF(F4, [[1, 0, 0], [0, 1, 0]])
        assert not row_space_equal(A, C)

    def test_intersection_example(self):
        A = MatrixGF(F2, [[1, 0, 0], [0, 1, 0]])
        B = MatrixGF(F2, [[0, 1, 0], [0, 0, 1]])
        I = intersect_row_spaces(A, B)
        assert I.nrows == 1
        assert np.array_equal(I.array, [[0, 1, 0]])

    @given(matrix_strategy(F4, 3, 4), matrix_strategy(F4, 3, 4))
    @settings(max_examples=30, deadline=None)
    def test_intersection_by_enumeration(self, A, B):
        if A.ncols != B.ncols:
            return
        I = intersect_row_spaces(A, B)
        expected = enumerate_row_space(A) & enumerate_row_space(B)
        got = enumerate_row_space(I) if I.nrows else {tuple([0] * A.ncols)}
        assert got == expected

    def test_basis_rows_strips_zeros(self):
        M = MatrixGF(F2, [[1, 1], [1, 1], [0, 0]])
        B = basis_rows(M)
        assert B.shape == (1, 2)


class TestReduceRow:
    def test_membership(self):
        M = MatrixGF(F9, [[1, 0, 2], [0, 1, 5]])
        res = rref(M)
        member = F9.add_table[
            F9.mul_table[3, res.matrix.array[0]], F9.mul_table[7, res.matrix.array[1]]
        ]
        assert in_row_space(res.matrix, res.pivots, member)
        assert not in_row_space(res.matrix, res.pivots, np.array([0, 0, 1]))

    def test_residual_is_zero_only_for_members(self):
        M = MatrixGF(F2, [[1, 0, 1]])
        res = rref(M)
        assert not reduce_row(res.matrix, res.pivots, np.array([1, 0, 1])).any()
        assert reduce_row(res.matrix, res.pivots, np.array([1, 1, 1])).any()


class TestMatmul:
    def test_identity(self):
        M = MatrixGF(F8, [[1, 2, 3], [4, 5, 6]])
        assert matmul(M, MatrixGF.identity(F8, 3)) == M

    def test_against_scalar_computation(self):
        A = MatrixGF(F4, [[1, 2], [3, 0]])
        B = MatrixGF(F4, [[2, 1], [1, 3]])
        C = matmul(A, B)
        for i in range(2):
            for j in range(2):
                acc = F4.zero
                for k in range(2):
                    acc = acc + F4.element(int(A.array[i, k])) * F4.element(
                        int(B.array[k, j])
                    )
                assert int(C.array[i, j]) == acc.code

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            matmul(MatrixGF.zeros(F2, 2, 3), MatrixGF.zeros(F2, 2, 3))


def test_large_elimination_is_fast():
    """511-column elimination over F_512 stays well under a second."""
    import time

    F512 = build_tower(2, 3, 3)
    rng = np.random.default_rng(1)
    M = MatrixGF(F512, rng.integers(0, 512, size=(220, 511)))
    t0 = time.time()
    res = rref(M)
    K = kernel(M)
    elapsed = time.time() - t0
    assert res.rank == 220
    assert K.nrows == 511 - 220
    assert elapsed < 5.0
