"""Exact arithmetic in two-level towers of finite fields.

A tower F_p < F_q < F_(q^m), with q = p^a, is built from deterministically
chosen moduli, so the same (p, a, m) always yields the same field and the
same element encoding. Elements are plain integers: an element of F_(p^a)
with power-basis coordinates (c_0, ..., c_(a-1)) over F_p is encoded as
sum(c_i * p^i), and an element of the top field with coordinates
(e_0, ..., e_(m-1)) over F_q is encoded as sum(enc(e_j) * q^j). The overall
encoding is therefore positional base p, and addition is digitwise.

Arithmetic is backed by full lookup tables (numpy arrays), which keeps both
scalar work and vectorised linear algebra exact and fast for the field sizes
this library targets (a few hundred elements). Towers whose top field would
exceed ``ORDER_CAP`` elements are rejected.
"""

from __future__ import annotations

import functools
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "Field",
    "FieldElement",
    "build_tower",
    "trace",
    "norm",
    "hilbert90",
    "ORDER_CAP",
]

# Tables are order x order; 1024 keeps the worst case (int16 entries) at 2 MB
# per table while covering every field the verifiers need (largest is 512).
ORDER_CAP = 1024

_TABLE_DTYPE = np.int16


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n >= 1, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Construction-time polynomial helpers.
#
# These operate on coefficient lists (low degree first, no trailing zeros)
# whose entries are integer codes of some scalar level, with the level's
# add/sub/mul supplied as callables. They are only used while building a
# Field; everything afterwards goes through the lookup tables.
# ---------------------------------------------------------------------------


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _cp_mul(a: Sequence[int], b: Sequence[int], add, mul) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] = add(out[i + j], mul(ai, bj))
    return _trim(out)


def _cp_rem_monic(a: Sequence[int], b: Sequence[int], sub, mul) -> list[int]:
    """Remainder of a by monic b (requires b monic, deg b >= 1)."""
    r = list(a)
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        lead = r[-1]
        shift = len(r) - 1 - db
        if lead:
            for j, bj in enumerate(b[:-1]):
                if bj:
                    r[shift + j] = sub(r[shift + j], mul(lead, bj))
        r.pop()
        _trim(r)
    return r


def _cp_is_irreducible(f: Sequence[int], order: int, add, sub, mul) -> bool:
    """Trial-division irreducibility for monic f over a field of given order.

    Candidate divisors are enumerated by degree then by encoded coefficient
    vector; fine for the tiny degrees met during field construction.
    """
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if f[0] == 0:  # divisible by x
        return False
    for ddiv in range(1, d // 2 + 1):
        for idx in range(order**ddiv):
            b = []
            k = idx
            for _ in range(ddiv):
                b.append(k % order)
                k //= order
            b.append(1)  # monic
            if not _cp_rem_monic(f, b, sub, mul):
                return False
    return True


def _min_irreducible(degree: int, order: int, add, sub, mul) -> list[int]:
    """Monic irreducible of given degree, minimal by the encoded integer of
    its non-leading coefficient vector."""
    for idx in range(order**degree):
        c = []
        k = idx
        for _ in range(degree):
            c.append(k % order)
            k //= order
        c.append(1)
        if _cp_is_irreducible(c, order, add, sub, mul):
            return c
    raise RuntimeError("no irreducible polynomial found; unreachable")


class Field:
    """A finite field presented as a two-level tower F_p < F_q < F_(q^m).

    Construct through :func:`build_tower`, which caches instances. The field
    of scalars F_q is itself a Field (``self.subfield``), so matrices over
    either level share one code path. For m == 1 the tower is degenerate and
    the field is its own scalar level.

    Attributes of interest: ``p``, ``a``, ``m``, ``q = p**a``,
    ``order = q**m``, ``base_modulus_coeffs`` (the degree-a modulus over F_p,
    as a tuple of ints), ``top_modulus_coeffs`` (the degree-m modulus over
    F_q, as a tuple of F_q codes).
    """

    def __init__(self, p: int, a: int, m: int):
        if not _is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        if a < 1 or m < 1:
            raise ValueError("tower degrees must be >= 1")
        order = p ** (a * m)
        if order > ORDER_CAP:
            raise ValueError(
                f"field with {order} elements exceeds the table-backed "
                f"cap of {ORDER_CAP}"
            )
        self.p = p
        self.a = a
        self.m = m
        self.q = p**a
        self.order = order

        # Level 1: modulus over F_p. Codes of F_p are the residues.
        padd = lambda x, y: (x + y) % p
        psub = lambda x, y: (x - y) % p
        pmul = lambda x, y: (x * y) % p
        base_mod = _min_irreducible(a, p, padd, psub, pmul)
        self.base_modulus_coeffs: tuple[int, ...] = tuple(base_mod)

        # Scalar ops on F_q codes via base-p digits and the level-1 modulus.
        q = self.q

        def qdigits(x: int) -> list[int]:
            out = []
            for _ in range(a):
                out.append(x % p)
                x //= p
            return out

        def qencode(c: Sequence[int]) -> int:
            v = 0
            for d in reversed(list(c)):
                v = v * p + d
            return v

        def qadd(x: int, y: int) -> int:
            return qencode([(u + v) % p for u, v in zip(qdigits(x), qdigits(y))])

        def qsub(x: int, y: int) -> int:
            return qencode([(u - v) % p for u, v in zip(qdigits(x), qdigits(y))])

        def qmul(x: int, y: int) -> int:
            prod = _cp_mul(_trim(qdigits(x)), _trim(qdigits(y)), padd, pmul)
            rem = _cp_rem_monic(prod, base_mod, psub, pmul)
            rem += [0] * (a - len(rem))
            return qencode(rem)

        # Level 2: modulus over F_q.
        top_mod = _min_irreducible(m, q, qadd, qsub, qmul)
        self.top_modulus_coeffs: tuple[int, ...] = tuple(top_mod)

        # Scalar multiply on top-field codes (base-q digits, level-2 modulus).
        def tdigits(x: int) -> list[int]:
            out = []
            for _ in range(m):
                out.append(x % q)
                x //= q
            return out

        def tencode(c: Sequence[int]) -> int:
            v = 0
            for d in reversed(list(c)):
                v = v * q + d
            return v

        def tmul(x: int, y: int) -> int:
            prod = _cp_mul(_trim(tdigits(x)), _trim(tdigits(y)), qadd, qmul)
            rem = _cp_rem_monic(prod, top_mod, qsub, qmul)
            rem += [0] * (m - len(rem))
            return tencode(rem)

        self._scalar_mul = tmul

        # Multiplicative generator: smallest code whose order is order - 1.
        n1 = order - 1
        gen = 1
        if n1 > 1:
            checks = [n1 // ell for ell in _prime_factors(n1)]
            for cand in range(2, order):
                if all(self._pow_slow(cand, e) != 1 for e in checks):
                    gen = cand
                    break
            else:
                raise RuntimeError("no generator found; unreachable")
        self.generator_code = gen

        # Discrete exp/log, then the dense tables.
        exp = np.zeros(max(n1, 1), dtype=np.int64)
        exp[0] = 1
        acc = 1
        for i in range(1, n1):
            acc = tmul(acc, gen)
            exp[i] = acc
        log = np.zeros(order, dtype=np.int64)
        log[exp] = np.arange(max(n1, 1))
        self._exp = exp
        self._log = log

        codes = np.arange(order, dtype=np.int64)
        add_t = np.zeros((order, order), dtype=np.int64)
        for k in range(a * m):
            dk = (codes // p**k) % p
            add_t += ((dk[:, None] + dk[None, :]) % p) * p**k
        self.add_table = add_t.astype(_TABLE_DTYPE)

        if n1 > 0:
            mul_t = exp[(log[:, None] + log[None, :]) % n1]
        else:
            mul_t = np.zeros((1, 1), dtype=np.int64)
        mul_t[0, :] = 0
        mul_t[:, 0] = 0
        self.mul_table = mul_t.astype(_TABLE_DTYPE)

        neg = np.zeros(order, dtype=np.int64)
        for k in range(a * m):
            neg += ((p - (codes // p**k) % p) % p) * p**k
        self.neg_table = neg.astype(_TABLE_DTYPE)

        inv = np.zeros(order, dtype=np.int64)
        if n1 > 0:
            inv[exp] = exp[(-np.arange(n1)) % n1]
        self.inv_table = inv.astype(_TABLE_DTYPE)  # inv[0] is a dummy 0

        # x -> x^q, and the trace / norm down to F_q.
        if n1 > 0:
            frob = exp[(log * q) % n1]
            frob[0] = 0
        else:
            frob = codes.copy()
        self.frobenius_table = frob.astype(_TABLE_DTYPE)

        tr = codes.copy()
        nrm = codes.copy()
        cur = codes.copy()
        for _ in range(m - 1):
            cur = frob[cur]
            tr = add_t[tr, cur]
            nrm = mul_t[nrm, cur]
        if not (tr < q).all() or not (nrm < q).all():
            raise RuntimeError("trace/norm left the scalar level; unreachable")
        self.trace_table = tr.astype(_TABLE_DTYPE)
        self.norm_table = nrm.astype(_TABLE_DTYPE)

        for t in (
            self.add_table,
            self.mul_table,
            self.neg_table,
            self.inv_table,
            self.frobenius_table,
            self.trace_table,
            self.norm_table,
        ):
            t.setflags(write=False)

        # Python nested lists: faster than numpy for scalar-at-a-time work.
        self._add_py = self.add_table.tolist()
        self._mul_py = self.mul_table.tolist()
        self._neg_py = self.neg_table.tolist()
        self._inv_py = self.inv_table.tolist()

    def _pow_slow(self, x: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._scalar_mul(r, x)
            x = self._scalar_mul(x, x)
            e >>= 1
        return r

    # -- identity ----------------------------------------------------------

    @property
    def params(self) -> tuple[int, int, int]:
        return (self.p, self.a, self.m)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and self.params == other.params

    def __hash__(self) -> int:
        return hash(("Field", self.params))

    def __repr__(self) -> str:
        return f"Field(p={self.p}, a={self.a}, m={self.m})"

    # -- structure ---------------------------------------------------------

    @property
    def subfield(self) -> "Field":
        """The scalar level F_q; for m == 1 this is the field itself."""
        if self.m == 1:
            return self
        return build_tower(self.p, self.a, 1)

    @property
    def norm_exponent(self) -> int:
        """(order - 1)/(q - 1): x -> x**norm_exponent is the norm to F_q."""
        return (self.order - 1) // (self.q - 1)

    # -- elements ----------------------------------------------------------

    def element(self, code: int) -> "FieldElement":
        if not 0 <= code < self.order:
            raise ValueError(f"code {code} out of range for {self!r}")
        return FieldElement(self, code)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """Class of the variable of the top modulus (code q); for m == 1 the
        class of the level-1 variable (code p)."""
        if self.m > 1:
            return FieldElement(self, self.q)
        return FieldElement(self, self.p if self.a > 1 else 1)

    def elements(self) -> Iterator["FieldElement"]:
        for c in range(self.order):
            yield FieldElement(self, c)

    def from_coordinates(self, coords: Sequence["FieldElement | int"]) -> "FieldElement":
        """Element with the given coordinates over F_q, low power first."""
        if len(coords) > self.m:
            raise ValueError("too many coordinates")
        code = 0
        for c in reversed([_subfield_code(self, c) for c in coords]):
            code = code * self.q + c
        return FieldElement(self, code)

    def embed(self, x: "FieldElement | int") -> "FieldElement":
        """Image of an F_q element in the top field (same code by encoding)."""
        return FieldElement(self, _subfield_code(self, x))


def _subfield_code(field: Field, x: "FieldElement | int") -> int:
    if isinstance(x, FieldElement):
        if x.field != field.subfield:
            raise ValueError(f"{x!r} is not in the scalar level of {field!r}")
        return x.code
    code = int(x)
    if not 0 <= code < field.q:
        raise ValueError(f"scalar code {code} out of range for F_{field.q}")
    return code


class FieldElement:
    """An element of a :class:`Field`, identified by its integer code."""

    __slots__ = ("field", "code")

    def __init__(self, field: Field, code: int):
        self.field = field
        self.code = code

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement) or other.field != self.field:
            raise ValueError(f"cannot combine {self!r} with {other!r}")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field, self.field._add_py[self.code][other.code])

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        f = self.field
        return FieldElement(f, f._add_py[self.code][f._neg_py[other.code]])

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, self.field._neg_py[self.code])

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field, self.field._mul_py[self.code][other.code])

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        if other.code == 0:
            raise ZeroDivisionError("division by the zero element")
        f = self.field
        return FieldElement(f, f._mul_py[self.code][f._inv_py[other.code]])

    def inverse(self) -> "FieldElement":
        if self.code == 0:
            raise ZeroDivisionError("zero has no inverse")
        return FieldElement(self.field, self.field._inv_py[self.code])

    def __pow__(self, e: int) -> "FieldElement":
        f = self.field
        if self.code == 0:
            if e < 0:
                raise ZeroDivisionError("zero has no inverse")
            return f.one if e == 0 else f.zero
        n1 = f.order - 1
        if n1 == 0:
            return f.one
        return FieldElement(f, int(f._exp[(int(f._log[self.code]) * e) % n1]))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldElement)
            and other.field == self.field
            and other.code == self.code
        )

    def __hash__(self) -> int:
        return hash((self.field.params, self.code))

    def __bool__(self) -> bool:
        return self.code != 0

    def __int__(self) -> int:
        return self.code

    def __repr__(self) -> str:
        return f"<{self.code} in GF({self.field.order})>"

    # -- tower structure ----------------------------------------------------

    def coordinates(self) -> tuple["FieldElement", ...]:
        """Coordinates over F_q, low power first, as subfield elements."""
        f = self.field
        sub = f.subfield
        x = self.code
        out = []
        for _ in range(f.m):
            out.append(FieldElement(sub, x % f.q))
            x //= f.q
        return tuple(out)

    @property
    def in_subfield(self) -> bool:
        """Whether the element lies in F_q (fixed by x -> x^q; by the
        encoding this is exactly code < q)."""
        return self.code < self.field.q

    def as_subfield(self) -> "FieldElement":
        if not self.in_subfield:
            raise ValueError(f"{self!r} is not in the scalar level")
        return FieldElement(self.field.subfield, self.code)

    def frobenius(self) -> "FieldElement":
        """x -> x^q."""
        return FieldElement(self.field, int(self.field.frobenius_table[self.code]))

    def trace(self) -> "FieldElement":
        """Trace to F_q: sum of x^(q^i) for 0 <= i < m."""
        return FieldElement(self.field.subfield, int(self.field.trace_table[self.code]))

    def norm(self) -> "FieldElement":
        """Norm to F_q: product of x^(q^i) for 0 <= i < m; equals
        x^((q^m-1)/(q-1)) on nonzero x."""
        return FieldElement(self.field.subfield, int(self.field.norm_table[self.code]))


@functools.lru_cache(maxsize=None)
def build_tower(p: int, a: int, m: int) -> Field:
    """The tower F_p < F_(p^a) < F_(p^(a*m)) with deterministic moduli.

    Instances are cached by (p, a, m); equality on Field compares those
    parameters, so a cache-bypassing rebuild still compares equal.
    """
    return Field(p, a, m)


def trace(x: FieldElement) -> FieldElement:
    """Trace of x down to the scalar level F_q."""
    return x.trace()


def norm(x: FieldElement) -> FieldElement:
    """Norm of x down to the scalar level F_q."""
    return x.norm()


def hilbert90(alpha: FieldElement) -> FieldElement:
    """First beta (in encoding order) with beta - beta^q == alpha.

    Requires trace(alpha) == 0; the additive Hilbert 90 theorem guarantees a
    solution exactly in that case.
    """
    field = alpha.field
    if int(field.trace_table[alpha.code]) != 0:
        raise ValueError(f"{alpha!r} has nonzero trace; no solution exists")
    codes = np.arange(field.order)
    diff = field.add_table[codes, field.neg_table[field.frobenius_table[codes]]]
    hits = np.nonzero(diff == alpha.code)[0]
    if hits.size == 0:
        raise RuntimeError("additive Hilbert 90 failed; unreachable")
    return FieldElement(field, int(hits[0]))
