"""Univariate polynomial arithmetic over constructed fields.

Coefficients are stored low degree first as integer element codes, with no
trailing zeros, so two polynomials are equal exactly when their coefficient
tuples are. The zero polynomial has an empty tuple and degree minus infinity
(``NEG_INF``), which makes the usual degree inequalities hold without
special cases.

Also provides quotient rings F[x]/(f) for residue arithmetic; when f is
irreducible of degree r this realises the extension field of order
``|F|**r`` without needing lookup tables for it.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

import numpy as np

from .gf import Field, FieldElement

__all__ = [
    "NEG_INF",
    "Polynomial",
    "QuotientRing",
    "gcd",
    "ext_gcd",
    "pow_mod",
    "ev_support",
    "is_irreducible",
    "find_irreducible",
    "count_distinct_roots",
    "is_squarefree",
    "irreducible_power",
    "parse_poly_spec",
]

NEG_INF = float("-inf")


def _as_code(field: Field, c) -> int:
    if isinstance(c, FieldElement):
        if c.field != field:
            raise ValueError(f"coefficient {c!r} not in {field!r}")
        return c.code
    code = int(c)
    if not 0 <= code < field.order:
        raise ValueError(f"coefficient code {code} out of range for {field!r}")
    return code


class Polynomial:
    """A polynomial over a :class:`Field`, coefficients low degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        cs = [_as_code(field, c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs: tuple[int, ...] = tuple(cs)

    @classmethod
    def _raw(cls, field: Field, coeffs: list[int]) -> "Polynomial":
        # internal: coeffs already codes, possibly with trailing zeros
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self = object.__new__(cls)
        self.field = field
        self.coeffs = tuple(coeffs)
        return self

    @classmethod
    def zero(cls, field: Field) -> "Polynomial":
        return cls._raw(field, [])

    @classmethod
    def one(cls, field: Field) -> "Polynomial":
        return cls._raw(field, [1])

    @classmethod
    def x(cls, field: Field) -> "Polynomial":
        return cls._raw(field, [0, 1])

    @classmethod
    def constant(cls, field: Field, c) -> "Polynomial":
        return cls._raw(field, [_as_code(field, c)])

    @classmethod
    def monomial(cls, field: Field, degree: int, c=1) -> "Polynomial":
        code = _as_code(field, c)
        if code == 0:
            return cls.zero(field)
        return cls._raw(field, [0] * degree + [code])

    # -- basic structure ----------------------------------------------------

    @property
    def degree(self):
        """Degree as an int, or NEG_INF for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def leading_coefficient(self) -> FieldElement:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.field.element(self.coeffs[-1])

    def coefficient(self, i: int) -> FieldElement:
        code = self.coeffs[i] if 0 <= i < len(self.coeffs) else 0
        return self.field.element(code)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Polynomial)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field.params, self.coeffs))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(f"{c}")
            elif i == 1:
                parts.append("x" if c == 1 else f"{c}*x")
            else:
                parts.append(f"x^{i}" if c == 1 else f"{c}*x^{i}")
        return "Poly(" + " + ".join(parts) + f" over GF({self.field.order}))"

    def _check(self, other: "Polynomial") -> None:
        if not isinstance(other, Polynomial) or other.field != self.field:
            raise ValueError(f"cannot combine {self!r} with {other!r}")

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        add = self.field._add_py
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = add[out[i]][c]
        return Polynomial._raw(self.field, out)

    def __neg__(self) -> "Polynomial":
        neg = self.field._neg_py
        return Polynomial._raw(self.field, [neg[c] for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, FieldElement):
            return self.scale(other)
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial.zero(self.field)
        add = self.field._add_py
        mul = self.field._mul_py
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            mrow = mul[ai]
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = add[out[i + j]][mrow[bj]]
        return Polynomial._raw(self.field, out)

    def scale(self, c) -> "Polynomial":
        code = _as_code(self.field, c)
        mrow = self.field._mul_py[code]
        return Polynomial._raw(self.field, [mrow[ci] for ci in self.coeffs])

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        add, mul, neg, inv = f._add_py, f._mul_py, f._neg_py, f._inv_py
        db = len(other.coeffs) - 1
        lead_inv = inv[other.coeffs[-1]]
        r = list(self.coeffs)
        q = [0] * max(len(r) - db, 0)
        while len(r) - 1 >= db and r:
            c = mul[r[-1]][lead_inv]
            shift = len(r) - 1 - db
            q[shift] = c
            mc = mul[neg[c]]
            for j, bj in enumerate(other.coeffs[:-1]):
                if bj:
                    r[shift + j] = add[r[shift + j]][mc[bj]]
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        return Polynomial._raw(f, q), Polynomial._raw(f, r)

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero:
            raise ValueError("zero polynomial cannot be made monic")
        if self.coeffs[-1] == 1:
            return self
        return self.scale(self.field.element(self.field._inv_py[self.coeffs[-1]]))

    def derivative(self) -> "Polynomial":
        f = self.field
        p = f.p
        out = []
        for i in range(1, len(self.coeffs)):
            k = i % p
            c = self.coeffs[i]
            acc = 0
            for _ in range(k):  # k < p, tiny
                acc = f._add_py[acc][c]
            out.append(acc)
        return Polynomial._raw(f, out)

    # -- evaluation ----------------------------------------------------------

    def __call__(self, x) -> FieldElement:
        f = self.field
        code = _as_code(f, x)
        add, mul = f._add_py, f._mul_py
        acc = 0
        for c in reversed(self.coeffs):
            acc = add[mul[acc][code]][c]
        return f.element(acc)

    def evaluate_codes(self, codes: np.ndarray) -> np.ndarray:
        """Vectorised Horner evaluation at an array of element codes."""
        f = self.field
        xs = np.asarray(codes, dtype=np.int64)
        acc = np.zeros_like(xs)
        for c in reversed(self.coeffs):
            acc = f.add_table[f.mul_table[acc, xs], np.int64(c)].astype(np.int64)
        return acc


# ---------------------------------------------------------------------------
# Module-level operations.
# ---------------------------------------------------------------------------


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor; gcd(0, 0) = 0."""
    a._check(b)
    while not b.is_zero:
        a, b = b, a % b
    return a.monic() if not a.is_zero else a


def ext_gcd(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial, Polynomial]:
    """(g, u, v) with g = gcd(a, b) monic and u*a + v*b = g."""
    a._check(b)
    f = a.field
    r0, r1 = a, b
    u0, u1 = Polynomial.one(f), Polynomial.zero(f)
    v0, v1 = Polynomial.zero(f), Polynomial.one(f)
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if r0.is_zero:
        return r0, u0, v0
    lead_inv = r0.leading_coefficient.inverse()
    return r0.scale(lead_inv), u0.scale(lead_inv), v0.scale(lead_inv)


def pow_mod(base: Polynomial, e: int, modulus: Polynomial) -> Polynomial:
    """base**e mod modulus, by square and multiply; e may be huge."""
    if e < 0:
        raise ValueError("negative exponent")
    if modulus.degree == NEG_INF:
        raise ZeroDivisionError("zero modulus")
    result = Polynomial.one(base.field) % modulus
    base = base % modulus
    while e:
        if e & 1:
            result = (result * base) % modulus
        base = (base * base) % modulus
        e >>= 1
    return result


def ev_support(f: Polynomial, support: Sequence) -> tuple[FieldElement, ...]:
    """Evaluate f at each support point, in order."""
    field = f.field
    codes = np.array([_as_code(field, s) for s in support], dtype=np.int64)
    vals = f.evaluate_codes(codes)
    return tuple(field.element(int(v)) for v in vals)


def is_irreducible(f: Polynomial) -> bool:
    """Deterministic irreducibility over the coefficient field.

    Uses the standard criterion: f of degree d is irreducible iff
    x^(Q^d) == x mod f and gcd(x^(Q^(d/ell)) - x, f) = 1 for each prime
    ell dividing d, with Q the field order.
    """
    d = f.degree
    if d is NEG_INF or d == 0:
        return False
    if d == 1:
        return True
    Q = f.field.order
    fm = f.monic()
    x = Polynomial.x(f.field)
    if pow_mod(x, Q**d, fm) != x % fm:
        return False
    for ell in _prime_divisors(d):
        h = pow_mod(x, Q ** (d // ell), fm) - x
        if gcd(h, fm).degree != 0:
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def find_irreducible(field: Field, degree: int) -> Polynomial:
    """Monic irreducible of the given degree, minimal in the deterministic
    order (non-leading coefficient vector read as a base-|F| integer)."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    order = field.order
    for idx in range(order**degree):
        coeffs = []
        k = idx
        for _ in range(degree):
            coeffs.append(k % order)
            k //= order
        coeffs.append(1)
        cand = Polynomial._raw(field, coeffs)
        if is_irreducible(cand):
            return cand
    raise RuntimeError("no irreducible polynomial of requested degree; unreachable")


def count_distinct_roots(g: Polynomial) -> int:
    """Number of distinct roots of g in its coefficient field.

    Computed as deg gcd(g, x^Q - x) without factoring; multiplicities are
    ignored by construction.
    """
    if g.is_zero:
        raise ValueError("zero polynomial has every element as a root")
    if g.degree == 0:
        return 0
    Q = g.field.order
    gm = g.monic()
    x = Polynomial.x(g.field)
    h = pow_mod(x, Q, gm) - x % gm
    r = gcd(h, gm)
    # gcd(0, gm) = gm occurs when x^Q == x mod g, i.e. g splits completely.
    d = r.degree
    return 0 if d is NEG_INF else int(d)


def is_squarefree(g: Polynomial) -> bool:
    """Whether g has no repeated irreducible factor.

    Over a perfect field a zero derivative means g is in F[x^p], hence a
    p-th power, hence not squarefree for positive degree; otherwise g is
    squarefree iff gcd(g, g') is constant.
    """
    d = g.degree
    if d is NEG_INF:
        raise ValueError("zero polynomial is not squarefree nor squareful")
    if d == 0:
        return True
    dg = g.derivative()
    if dg.is_zero:
        return False
    return gcd(g, dg).degree == 0


def irreducible_power(g: Polynomial) -> tuple[Polynomial, int] | None:
    """Decompose g (up to a leading unit) as h**s with h monic irreducible.

    Returns (h, s) or None when g is not a power of a single irreducible.
    Uses a distinct-degree sieve: gcd(g, x^(Q^d) - x) is the product of the
    distinct irreducible factors of g of degree dividing d, so the first
    degree where it is nonconstant isolates the smallest-degree factor; for
    a pure power that factor is the whole radical.
    """
    d = g.degree
    if d is NEG_INF or d == 0:
        return None
    g = g.monic()
    Q = g.field.order
    x = Polynomial.x(g.field)
    for dh in range(1, int(d) + 1):
        w = gcd(g, pow_mod(x, Q**dh, g) - x % g)
        if w.degree == 0:
            continue
        # w is the product of the distinct factors of degree exactly dh, so
        # a pure power demands deg w == dh (a single factor) and w^s == g.
        if int(w.degree) != dh or int(d) % dh != 0:
            return None
        s = int(d) // dh
        return (w, s) if w**s == g else None
    return None


def parse_poly_spec(field: Field, text: str) -> Polynomial:
    """Parse a polynomial description.

    Accepts either an explicit coefficient list "c0,c1,...,cd" of element
    codes (low degree first) or the shorthand "irreducible:d" for the
    deterministic minimal monic irreducible of degree d.
    """
    text = text.strip()
    if text.startswith("irreducible:"):
        try:
            degree = int(text.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad irreducible degree in {text!r}") from None
        return find_irreducible(field, degree)
    try:
        codes = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ValueError(f"bad coefficient list {text!r}") from None
    return Polynomial(field, codes)


class QuotientRing:
    """The residue ring F[x]/(modulus), modulus monic of degree >= 1.

    Residues are represented by :class:`Polynomial` values of degree less
    than the modulus degree. When the modulus is irreducible the ring is the
    field with ``|F|**deg`` elements, and ``inv`` works on every nonzero
    residue. Elements enumerate in the encoding order induced by reading the
    coefficient vector as a base-|F| integer.
    """

    def __init__(self, modulus: Polynomial):
        if modulus.degree is NEG_INF or modulus.degree < 1:
            raise ValueError("modulus must have degree >= 1")
        if not modulus.is_monic:
            raise ValueError("modulus must be monic")
        self.field = modulus.field
        self.modulus = modulus
        self.degree = int(modulus.degree)
        self.size = self.field.order**self.degree

    def __repr__(self) -> str:
        return f"QuotientRing({self.modulus!r})"

    @property
    def is_field(self) -> bool:
        return is_irreducible(self.modulus)

    def reduce(self, a: Polynomial) -> Polynomial:
        a._check(self.modulus)
        return a % self.modulus

    def add(self, a: Polynomial, b: Polynomial) -> Polynomial:
        return a + b

    def sub(self, a: Polynomial, b: Polynomial) -> Polynomial:
        return a - b

    def mul(self, a: Polynomial, b: Polynomial) -> Polynomial:
        return (a * b) % self.modulus

    def pow(self, a: Polynomial, e: int) -> Polynomial:
        if e < 0:
            return self.pow(self.inv(a), -e)
        return pow_mod(a, e, self.modulus)

    def inv(self, a: Polynomial) -> Polynomial:
        g, u, _ = ext_gcd(self.reduce(a), self.modulus)
        if g.degree != 0:
            raise ZeroDivisionError(f"{a!r} is not invertible mod {self.modulus!r}")
        return self.reduce(u)

    def element_at(self, k: int) -> Polynomial:
        if not 0 <= k < self.size:
            raise ValueError(f"index {k} out of range")
        order = self.field.order
        coeffs = []
        for _ in range(self.degree):
            coeffs.append(k % order)
            k //= order
        return Polynomial._raw(self.field, coeffs)

    def index_of(self, a: Polynomial) -> int:
        a = self.reduce(a)
        idx = 0
        for c in reversed(a.coeffs):
            idx = idx * self.field.order + c
        return idx

    def elements(self) -> Iterator[Polynomial]:
        for k in range(self.size):
            yield self.element_at(k)
