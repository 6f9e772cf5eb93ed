from __future__ import annotations

import random

import pytest

from cyclolambda.cyclotomic import CycRational
from cyclolambda.dirichlet import (
    TwistedChar,
    char_group,
    conductor,
    enumerate_characters,
    evaluate,
    evaluate_twist_padic,
    is_even,
    parse_label,
    trivial_zero_flag,
)
from cyclolambda.numutil import euler_phi, gcd
from cyclolambda.padic import build_extension


class TestEnumeration:
    def test_mod5_orders(self):
        assert sorted(c.order for c in enumerate_characters(5)) == [1, 2, 4, 4]

    def test_mod8_orders(self):
        orders = [c.order for c in enumerate_characters(8)]
        assert len(orders) == 4 and max(orders) == 2

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 8, 9, 12, 15, 16, 24, 35, 40])
    def test_count_is_phi(self, n):
        assert len(enumerate_characters(n)) == euler_phi(n)

    def test_deterministic_order(self):
        labels = [c.label for c in enumerate_characters(12)]
        assert labels == sorted(labels, key=lambda s: [int(x) for x in s.split(".")])

    def test_filters(self):
        evens = enumerate_characters(20, parity_filter="even")
        assert all(c.is_even for c in evens)
        prim = enumerate_characters(20, primitive_only=True)
        assert all(c.conductor == 20 for c in prim)


class TestValues:
    def test_at_one(self):
        for n in (3, 8, 15):
            for chi in enumerate_characters(n):
                assert chi.evaluate(1) == 1

    def test_shared_factor_gives_zero(self):
        chi = enumerate_characters(15)[3]
        assert chi.evaluate(5).is_zero() and chi.evaluate(3).is_zero()

    def test_quadratic_mod4(self, chi_m4):
        assert chi_m4.evaluate(3) == -1

    def test_multiplicative(self):
        rng = random.Random(3)
        for n in (5, 8, 21):
            for chi in enumerate_characters(n):
                for _ in range(5):
                    a, b = rng.randrange(1, 60), rng.randrange(1, 60)
                    assert chi.evaluate(a * b) == chi.evaluate(a) * chi.evaluate(b)

    def test_orthogonality(self):
        for n in (5, 8, 9, 12):
            for chi in enumerate_characters(n):
                if chi.is_trivial:
                    continue
                total = CycRational.zero(chi.order)
                for a in range(n):
                    total = total + chi.evaluate(a)
                assert total.is_zero()

    def test_half_are_even(self):
        for n in (5, 8, 9, 15, 16):
            chars = enumerate_characters(n)
            assert sum(c.is_even for c in chars) * 2 == len(chars)


class TestConductor:
    def test_trivial(self):
        for n in (1, 6, 10):
            triv = [c for c in enumerate_characters(n) if c.is_trivial][0]
            assert conductor(triv) == 1

    def test_primitive_quadratic_mod5(self, chi_5):
        assert conductor(chi_5) == 5 and chi_5.is_primitive

    def test_lifted_character(self, chi_3):
        lifted = chi_3.lift_to(9)
        assert conductor(lifted) == 3
        assert lifted.primitive_char() == chi_3
        lifted12 = chi_3.lift_to(12)
        assert conductor(lifted12) == 3

    def test_power_divides(self):
        rng = random.Random(5)
        for n in (5, 16, 21, 40):
            for chi in enumerate_characters(n):
                k = rng.randrange(1, 6)
                assert conductor(chi) % conductor(chi**k) == 0

    def test_two_power_conductors(self):
        by_cond = {}
        for chi in enumerate_characters(16):
            by_cond.setdefault(chi.conductor, 0)
            by_cond[chi.conductor] += 1
        assert by_cond == {1: 1, 4: 1, 8: 2, 16: 4}

    def test_label_roundtrip(self):
        for n in (1, 5, 8, 12, 45):
            for chi in enumerate_characters(n):
                assert parse_label(chi.label) == chi


class TestProducts:
    def test_product_across_moduli(self, chi_3, chi_5):
        prod = chi_3 * chi_5
        assert prod.modulus == 15 and prod.order == 2
        for a in (1, 2, 4, 7, 8, 11, 13, 14):
            assert prod.evaluate(a) == chi_3.evaluate(a) * chi_5.evaluate(a)


class TestTwists:
    def test_even_flags(self, trivial_char, chi_m4):
        tc = TwistedChar(trivial_char, 0, 5)
        assert is_even(tc) and not trivial_zero_flag(tc)
        tc = TwistedChar(chi_m4, 1, 5)
        assert is_even(tc) and trivial_zero_flag(tc)
        tc = TwistedChar(chi_m4, 1, 3)
        assert is_even(tc) and not trivial_zero_flag(tc)

    def test_order_and_residue_degree(self, chi_m4):
        tc = TwistedChar(chi_m4, 1, 5)
        assert tc.order == 4 and tc.residue_degree == 1
        chis3 = enumerate_characters(7, order_filter=3, primitive_only=True)
        tc = TwistedChar(chis3[0], 0, 5)
        assert tc.residue_degree == 2  # 5 is inert mod 3

    def test_ramified_rejected(self, chi_5):
        with pytest.raises(ValueError):
            TwistedChar(chi_5, 0, 5)

    def test_padic_value_at_one(self, chi_m4):
        fld = build_extension(5, 2, 6)
        assert evaluate_twist_padic(TwistedChar(chi_m4, 1, 5), 1, fld) == fld.one()

    def test_zero_twist_is_plain_embedding(self, chi_3):
        fld = build_extension(7, 2, 6)
        tc = TwistedChar(chi_3, 0, 7)
        val = evaluate_twist_padic(tc, 2, fld)
        assert val == fld.from_scalar(-1)

    def test_shared_factor_returns_zero(self, chi_m4):
        fld = build_extension(5, 2, 6)
        tc = TwistedChar(chi_m4, 1, 5)
        assert evaluate_twist_padic(tc, 2, fld).is_zero_at_precision
        assert evaluate_twist_padic(tc, 10, fld).is_zero_at_precision

    def test_mod3_twist_value(self, chi_3):
        # theta(2) omega(2) = -omega(2) = -7 = 18 mod 25
        fld = build_extension(5, 2, 2)
        tc = TwistedChar(chi_3, 1, 5)
        val = evaluate_twist_padic(tc, 2, fld, 2)
        assert val.coeffs[0].residue(2) == 18

    def test_twist_multiplicative(self, chi_3):
        fld = build_extension(5, 2, 8)
        tc = TwistedChar(chi_3, 3, 5)
        rng = random.Random(1)
        for _ in range(8):
            a, b = rng.randrange(1, 200), rng.randrange(1, 200)
            if gcd(a * b, 15) != 1:
                continue
            lhs = evaluate_twist_padic(tc, a * b, fld)
            rhs = evaluate_twist_padic(tc, a, fld) * evaluate_twist_padic(tc, b, fld)
            assert lhs == rhs
