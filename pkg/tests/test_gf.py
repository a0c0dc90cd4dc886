"""Field tower construction and arithmetic."""

from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wildgoppa.gf import (
    ORDER_CAP,
    Field,
    FieldElement,
    build_tower,
    hilbert90,
    norm,
    trace,
)

SMALL_TOWERS = [(2, 1, 1), (3, 1, 1), (2, 1, 2), (2, 2, 1), (3, 1, 2),
                (2, 2, 2), (2, 1, 3), (5, 1, 2), (2, 2, 3), (2, 1, 4)]


def root_in_scalar_level(field: Field, coeffs: tuple[int, ...]) -> bool:
    """Whether the polynomial with the given F_q coefficient codes has a root
    in F_q, by brute evaluation inside the top field. An independent check on
    the top modulus: a cubic with no F_q root is irreducible over F_q."""
    for x in field.elements():
        if not x.in_subfield:
            continue
        acc = field.zero
        for c in reversed(coeffs):
            acc = acc * x + field.embed(c)
        if acc.code == 0:
            return True
    return False


class TestConstruction:
    def test_f4_modulus(self):
        F = build_tower(2, 1, 2)
        assert F.top_modulus_coeffs == (1, 1, 1)  # x^2 + x + 1
        assert F.base_modulus_coeffs == (0, 1)
        assert (F.q, F.order) == (2, 4)

    def test_f25_modulus(self):
        F = build_tower(5, 1, 2)
        assert F.top_modulus_coeffs == (2, 0, 1)  # x^2 + 2

    def test_f64_tower_moduli(self):
        F = build_tower(2, 2, 3)
        assert F.base_modulus_coeffs == (1, 1, 1)
        # x^3 + w, with w the class of the base variable (code 2): every
        # earlier candidate (x^3, x^3 + 1) has a root in F_4 already.
        assert F.top_modulus_coeffs == (2, 0, 0, 1)
        assert root_in_scalar_level(F, (0, 0, 0, 1))
        assert root_in_scalar_level(F, (1, 0, 0, 1))
        assert not root_in_scalar_level(F, (2, 0, 0, 1))

    def test_determinism_without_cache(self):
        fresh = Field(2, 2, 3)
        cached = build_tower(2, 2, 3)
        assert fresh == cached
        assert fresh.base_modulus_coeffs == cached.base_modulus_coeffs
        assert fresh.top_modulus_coeffs == cached.top_modulus_coeffs
        assert np.array_equal(fresh.mul_table, cached.mul_table)

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            build_tower(4, 1, 2)  # p not prime
        with pytest.raises(ValueError):
            build_tower(2, 0, 2)
        with pytest.raises(ValueError):
            build_tower(2, 1, 11)  # order 2048 > cap
        assert 2**11 > ORDER_CAP

    def test_subfield_identity(self):
        F = build_tower(2, 2, 3)
        sub = F.subfield
        assert sub.params == (2, 2, 1)
        assert sub.subfield is sub
        assert sub.order == F.q

    def test_norm_exponent(self):
        assert build_tower(2, 3, 3).norm_exponent == 73
        assert build_tower(3, 1, 2).norm_exponent == 4
        assert build_tower(2, 2, 3).norm_exponent == 21


@pytest.mark.parametrize("p,a,m", SMALL_TOWERS)
class TestAxioms:
    """Exhaustive checks on every tower small enough to enumerate."""

    def test_field_axioms_sampled(self, p, a, m):
        F = build_tower(p, a, m)
        els = list(F.elements())
        rng = np.random.default_rng(7)
        idx = rng.integers(0, len(els), size=(60, 3))
        for i, j, k in idx:
            x, y, z = els[i], els[j], els[k]
            assert (x + y) + z == x + (y + z)
            assert (x * y) * z == x * (y * z)
            assert x * (y + z) == x * y + x * z
            assert x + y == y + x
            assert x * y == y * x

    def test_units_and_inverses(self, p, a, m):
        F = build_tower(p, a, m)
        for x in F.elements():
            assert x + F.zero == x
            assert x * F.one == x
            assert (x - x).code == 0
            if x.code:
                assert (x * x.inverse()).code == 1
                assert (x / x).code == 1

    def test_fermat(self, p, a, m):
        F = build_tower(p, a, m)
        for x in F.elements():
            assert x ** F.order == x

    def test_subfield_membership_is_frobenius_fixed(self, p, a, m):
        F = build_tower(p, a, m)
        for x in F.elements():
            assert x.in_subfield == (x.frobenius() == x)

    def test_coordinates_round_trip(self, p, a, m):
        F = build_tower(p, a, m)
        for x in F.elements():
            assert F.from_coordinates(x.coordinates()) == x

    def test_trace_properties(self, p, a, m):
        F = build_tower(p, a, m)
        sub = F.subfield
        for x in F.elements():
            tx = trace(x)
            assert tx.field == sub
            assert trace(x.frobenius()) == tx
        els = list(F.elements())
        rng = np.random.default_rng(11)
        for i, j in rng.integers(0, len(els), size=(40, 2)):
            assert trace(els[i] + els[j]) == trace(els[i]) + trace(els[j])
        for c in sub.elements():
            for x in els[:6]:
                assert trace(F.embed(c) * x) == c * trace(x)

    def test_norm_properties(self, p, a, m):
        F = build_tower(p, a, m)
        e = F.norm_exponent
        for x in F.elements():
            nx = norm(x)
            assert nx.field == F.subfield
            if x.code:
                assert nx == (x**e).as_subfield()
            else:
                assert nx.code == 0
        els = [x for x in F.elements() if x.code]
        rng = np.random.default_rng(13)
        for i, j in rng.integers(0, len(els), size=(40, 2)):
            assert norm(els[i] * els[j]) == norm(els[i]) * norm(els[j])

    def test_trace_and_norm_are_surjective(self, p, a, m):
        F = build_tower(p, a, m)
        traces = {trace(x).code for x in F.elements()}
        assert traces == set(range(F.q))
        norms = {norm(x).code for x in F.elements() if x.code}
        assert norms == {c for c in range(1, F.q)} or F.order == F.q
        if F.m > 1:
            # nonzero norm fibers all have size (order-1)/(q-1)
            from collections import Counter
            fibers = Counter(norm(x).code for x in F.elements() if x.code)
            assert set(fibers.values()) == {F.norm_exponent}


class TestSpecificValues:
    def test_f4_arithmetic(self):
        F = build_tower(2, 1, 2)
        w = F.element(2)
        assert (w * w).code == 3  # w^2 = w + 1
        assert (w * w * w).code == 1
        assert trace(w).code == 1 and trace(F.one).code == 0

    def test_trace_zero_count_q2_m2(self):
        F = build_tower(2, 1, 2)
        zeros = [x.code for x in F.elements() if trace(x).code == 0]
        assert zeros == [0, 1]

    def test_norm_fibers_q3_m2(self):
        F = build_tower(3, 1, 2)
        from collections import Counter
        fibers = Counter(norm(x).code for x in F.elements() if x.code)
        assert fibers == {1: 4, 2: 4}

    def test_embed_is_ring_hom(self):
        F = build_tower(2, 2, 3)
        sub = F.subfield
        for x in sub.elements():
            for y in sub.elements():
                assert F.embed(x * y) == F.embed(x) * F.embed(y)
                assert F.embed(x + y) == F.embed(x) + F.embed(y)
                assert F.embed(x).in_subfield

    def test_cross_field_operations_rejected(self):
        F4 = build_tower(2, 1, 2)
        F8 = build_tower(2, 1, 3)
        with pytest.raises(ValueError):
            F4.one + F8.one
        with pytest.raises(ValueError):
            F8.embed(F4.element(1))  # subfield of F8 is F2, not F4

    def test_zero_division(self):
        F = build_tower(3, 1, 2)
        with pytest.raises(ZeroDivisionError):
            F.one / F.zero
        with pytest.raises(ZeroDivisionError):
            F.zero.inverse()
        with pytest.raises(ZeroDivisionError):
            F.zero ** (-1)
        assert (F.zero**0).code == 1


class TestHilbert90:
    def test_spec_example(self):
        F = build_tower(2, 1, 2)
        assert hilbert90(F.one).code == 2  # beta = w

    def test_rejects_nonzero_trace(self):
        F = build_tower(2, 1, 2)
        with pytest.raises(ValueError):
            hilbert90(F.element(2))  # trace(w) = 1

    @pytest.mark.parametrize("p,a,m", [(2, 1, 2), (2, 1, 3), (3, 1, 2),
                                       (2, 2, 2), (5, 1, 2), (2, 2, 3)])
    def test_solves_and_is_first(self, p, a, m):
        F = build_tower(p, a, m)
        for alpha in F.elements():
            if trace(alpha).code != 0:
                continue
            beta = hilbert90(alpha)
            assert beta - beta.frobenius() == alpha
            earlier = [b for b in F.elements()
                       if b.code < beta.code and b - b.frobenius() == alpha]
            assert not earlier


class TestTables:
    @pytest.mark.parametrize("p,a,m", [(2, 2, 2), (3, 1, 2), (2, 3, 3)])
    def test_tables_match_scalar_ops(self, p, a, m):
        F = build_tower(p, a, m)
        rng = np.random.default_rng(5)
        for i, j in rng.integers(0, F.order, size=(80, 2)):
            x, y = F.element(int(i)), F.element(int(j))
            assert int(F.add_table[i, j]) == (x + y).code
            assert int(F.mul_table[i, j]) == (x * y).code
            assert int(F.neg_table[i]) == (-x).code
            if i:
                assert int(F.inv_table[i]) == x.inverse().code

    def test_tables_read_only(self):
        F = build_tower(2, 1, 2)
        with pytest.raises(ValueError):
            F.mul_table[0, 0] = 1


@given(st.integers(min_value=0, max_value=511), st.integers(min_value=0, max_value=511))
@settings(max_examples=60, deadline=None)
def test_f512_commutativity(i, j):
    F = build_tower(2, 3, 3)
    x, y = F.element(i), F.element(j)
    assert x * y == y * x
    assert x + y == y + x
    assert ((x * y) ** 7).code == ((x**7) * (y**7)).code
