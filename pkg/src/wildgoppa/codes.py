"""Linear codes over constructed fields.

A :class:`LinearCode` stores the reduced row echelon form of a generator
matrix, which is the canonical representative of its row space: two codes
are equal exactly when their canonical generators are identical arrays over
equal fields. All constructions (duals, shortenings, subfield subcodes,
trace codes, intersections) therefore compose without bookkeeping.

The minimum distance routine is exhaustive and budgeted: it either returns
the exact value or None when the enumeration would exceed the budget, never
an estimate.
"""

from __future__ import annotations

import json
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .gf import Field, build_tower
from .linalg import MatrixGF

__all__ = [
    "LinearCode",
    "subfield_kernel",
    "expand_over_subfield",
    "DEFAULT_DISTANCE_BUDGET",
]

DEFAULT_DISTANCE_BUDGET = 10**7


class LinearCode:
    """A linear code, canonicalised as the RREF of its generator matrix."""

    __slots__ = ("field", "n", "k", "generator")

    def __init__(self, field: Field, n: int, rows=None, *, _canonical=None):
        if n < 1:
            raise ValueError("code length must be >= 1")
        self.field = field
        self.n = n
        if _canonical is not None:
            G = _canonical
        else:
            if rows is None:
                rows = np.zeros((0, n), dtype=np.int16)
            M = MatrixGF(field, rows)
            if M.ncols not in (n, 0):
                raise ValueError(f"rows have length {M.ncols}, expected {n}")
            if M.nrows == 0:
                G = np.zeros((0, n), dtype=np.int16)
            else:
                res = linalg.rref(M)
                G = res.matrix.array[: res.rank]
        G = G.astype(np.int16, copy=False)
        G.setflags(write=False)
        self.generator = G
        self.k = int(G.shape[0])

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_span(cls, field: Field, rows) -> "LinearCode":
        rows = np.asarray(rows)
        if rows.ndim != 2:
            raise ValueError("expected a 2-d array of generator rows")
        return cls(field, rows.shape[1], rows)

    @classmethod
    def zero_code(cls, field: Field, n: int) -> "LinearCode":
        return cls(field, n)

    @classmethod
    def full_code(cls, field: Field, n: int) -> "LinearCode":
        return cls(field, n, np.eye(n, dtype=np.int16))

    # -- identity ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LinearCode)
            and other.field == self.field
            and other.n == self.n
            and other.generator.shape == self.generator.shape
            and np.array_equal(other.generator, self.generator)
        )

    def __hash__(self) -> int:
        return hash((self.field.params, self.n, self.generator.tobytes()))

    def __repr__(self) -> str:
        return f"LinearCode[n={self.n}, k={self.k}] over GF({self.field.order})"

    @property
    def matrix(self) -> MatrixGF:
        return MatrixGF._wrap(self.field, self.generator)

    # -- constructions ---------------------------------------------------_---

    def dual(self) -> "LinearCode":
        """The dual code under the standard inner product."""
        K = linalg.kernel(self.matrix) if self.k else MatrixGF.identity(self.field, self.n)
        return LinearCode(self.field, self.n, _canonical=K.array)

    def parity_check(self) -> MatrixGF:
        """A parity check matrix (generator of the dual)."""
        return self.dual().matrix

    def shorten(self, positions: Iterable[int]) -> "LinearCode":
        """Codewords vanishing on the given 0-based positions, restricted to
        the complement, in the original coordinate order."""
        S = sorted(set(int(p) for p in positions))
        if S and (S[0] < 0 or S[-1] >= self.n):
            raise ValueError(f"positions out of range for length {self.n}")
        keep = [c for c in range(self.n) if c not in set(S)]
        if not keep:
            raise ValueError("cannot shorten away every coordinate")
        if self.k == 0:
            return LinearCode.zero_code(self.field, len(keep))
        # permute shortened positions to the front, reduce, and keep the rows
        # whose pivots fall outside them: those rows vanish on S.
        perm = S + keep
        res = linalg.rref(MatrixGF._wrap(self.field, self.generator[:, perm]))
        ns = len(S)
        rows = [j for j, p in enumerate(res.pivots) if p >= ns]
        sub = res.matrix.array[rows][:, ns:] if rows else None
        return LinearCode(self.field, len(keep), sub)

    def puncture(self, positions: Iterable[int]) -> "LinearCode":
        """Delete the given 0-based positions from every codeword."""
        S = set(int(p) for p in positions)
        keep = [c for c in range(self.n) if c not in S]
        if not keep:
            raise ValueError("cannot puncture away every coordinate")
        if self.k == 0:
            return LinearCode.zero_code(self.field, len(keep))
        return LinearCode(self.field, len(keep), self.generator[:, keep])

    def subfield_subcode(self) -> "LinearCode":
        """Codewords with every entry in the scalar level F_q, read as a code
        over F_q. Requires a proper tower (m >= 2)."""
        field = self.field
        if field.m < 2:
            raise ValueError("subfield subcode needs a proper tower (m >= 2)")
        H = self.parity_check().array
        return subfield_kernel(field, H)

    def trace_code(self) -> "LinearCode":
        """Coordinate-wise trace image over F_q. Requires m >= 2."""
        field = self.field
        if field.m < 2:
            raise ValueError("trace code needs a proper tower (m >= 2)")
        sub = field.subfield
        if self.k == 0:
            return LinearCode.zero_code(sub, self.n)
        # trace is F_q-linear, so images of z^l * row span the whole image
        blocks = []
        G64 = self.generator.astype(np.int64)
        for l in range(field.m):
            zl = (field.gen**l).code
            blocks.append(field.trace_table[field.mul_table[np.int64(zl), G64]])
        return LinearCode(sub, self.n, np.vstack(blocks))

    def intersect(self, other: "LinearCode") -> "LinearCode":
        if other.field != self.field or other.n != self.n:
            raise ValueError("codes live in different ambient spaces")
        I = linalg.intersect_row_spaces(self.matrix, other.matrix)
        return LinearCode(self.field, self.n, _canonical=I.array)

    def contains(self, other: "LinearCode") -> bool:
        if other.field != self.field or other.n != self.n:
            raise ValueError("codes live in different ambient spaces")
        if other.k > self.k:
            return False
        stacked = np.vstack([self.generator, other.generator])
        return linalg.rank(MatrixGF._wrap(self.field, stacked)) == self.k

    def codewords(self) -> np.ndarray:
        """All q^k codewords as an array (message enumeration order)."""
        field = self.field
        total = field.order**self.k
        out = np.zeros((total, self.n), dtype=np.int16)
        if self.k == 0:
            return out
        add, mul = field.add_table, field.mul_table
        idx = np.arange(total)
        for j in range(self.k):
            digit = (idx // field.order**j) % field.order
            out = add[out, mul[digit[:, None].astype(np.int16), self.generator[j][None, :]]]
        return out

    def min_distance(self, budget: int = DEFAULT_DISTANCE_BUDGET) -> int | None:
        """Exact minimum distance by full enumeration, or None if the number
        of codewords exceeds the budget. Never an estimate."""
        if self.k == 0:
            raise ValueError("minimum distance of the zero code is undefined")
        field = self.field
        total = field.order**self.k
        if total - 1 > budget:
            return None
        add, mul = field.add_table, field.mul_table
        G = self.generator
        best = self.n + 1
        batch = max(1, min(total, 1 << 16))
        for start in range(0, total, batch):
            idx = np.arange(start, min(start + batch, total))
            cw = np.zeros((idx.size, self.n), dtype=np.int16)
            for j in range(self.k):
                digit = ((idx // field.order**j) % field.order).astype(np.int16)
                cw = add[cw, mul[digit[:, None], G[j][None, :]]]
            w = (cw != 0).sum(axis=1)
            if start == 0:
                w = w[1:]  # drop the zero codeword
            if w.size:
                best = min(best, int(w.min()))
        return best

    # -- serialisation ---------------------------------------------------------

    def to_json(self) -> str:
        return json.dumps(
            {
                "field": {"p": self.field.p, "a": self.field.a, "m": self.field.m},
                "n": self.n,
                "k": self.k,
                "generator": [[int(c) for c in row] for row in self.generator],
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "LinearCode":
        data = json.loads(text)
        field = build_tower(data["field"]["p"], data["field"]["a"], data["field"]["m"])
        code = cls(field, data["n"], np.array(data["generator"], dtype=np.int64).reshape(-1, data["n"]) if data["generator"] else None)
        if code.k != data["k"]:
            raise ValueError("generator rows were not a basis of the stated dimension")
        return code


def expand_over_subfield(field: Field, H: np.ndarray) -> np.ndarray:
    """Expand a matrix over F_(q^m) into coordinates over F_q, row-wise.

    Each row h becomes m rows: the j-th holds the j-th tower coordinate of
    every entry. Because F_q scalars act coordinate-wise, a vector over F_q
    satisfies h . c = 0 exactly when it satisfies all m expanded rows.
    """
    if field.m < 2:
        raise ValueError("expansion needs a proper tower (m >= 2)")
    H = np.asarray(H, dtype=np.int64)
    blocks = []
    for j in range(field.m):
        blocks.append((H // field.q**j) % field.q)
    return np.vstack(blocks).astype(np.int16)


def subfield_kernel(field: Field, H: np.ndarray) -> LinearCode:
    """The F_q-kernel of a parity matrix over F_(q^m), as a code over F_q."""
    H = np.asarray(H)
    n = H.shape[1] if H.ndim == 2 else 0
    if n == 0:
        raise ValueError("parity matrix must have at least one column")
    expanded = expand_over_subfield(field, H)
    K = linalg.kernel(MatrixGF(field.subfield, expanded))
    return LinearCode(field.subfield, n, _canonical=K.array)
