from __future__ import annotations

import math
from fractions import Fraction

import pytest

from cyclolambda.bernoulli import (
    BernoulliCache,
    bernoulli_number,
    bernoulli_polynomial,
    bulk_bernoulli,
    generalized_bernoulli,
    generalized_bernoulli_definition,
)
from cyclolambda.cyclotomic import valuation_at_residue
from cyclolambda.dirichlet import enumerate_characters
from cyclolambda.numutil import fraction_valuation
from cyclolambda.padic import build_extension


class TestPlain:
    @pytest.mark.parametrize(
        "n,value",
        [
            (0, Fraction(1)),
            (1, Fraction(-1, 2)),
            (2, Fraction(1, 6)),
            (3, Fraction(0)),
            (12, Fraction(-691, 2730)),
        ],
    )
    def test_values(self, n, value):
        assert bernoulli_number(n) == value

    def test_odd_vanish(self):
        assert all(bernoulli_number(n) == 0 for n in range(3, 40, 2))

    def test_von_staudt_clausen(self):
        # (p-1) | n forces a simple pole mod p
        for p, n in [(3, 12), (5, 12), (7, 12), (13, 12), (3, 16), (5, 16), (11, 20), (37, 36)]:
            assert (p - 1) % 1 == 0
            if n % (p - 1) == 0:
                assert fraction_valuation(bernoulli_number(n), p) == -1

    def test_polynomials(self):
        assert bernoulli_polynomial(0) == [Fraction(1)]
        assert bernoulli_polynomial(1) == [Fraction(-1, 2), Fraction(1)]
        assert bernoulli_polynomial(2) == [Fraction(1, 6), Fraction(-1), Fraction(1)]


class TestGeneralized:
    def test_odd_quadratic_mod4_n1(self, chi_m4):
        val = generalized_bernoulli(1, chi_m4)
        assert val.rational_value() == Fraction(-1, 2)
        # closed form (1/d) sum chi(a) a
        closed = sum(
            Fraction(a) * (1 if a % 4 == 1 else -1) for a in (1, 3)
        ) / 4
        assert closed == Fraction(-1, 2)

    def test_parity_vanishing(self, chi_m4, chi_5):
        for n in (0, 2, 4, 6):
            assert generalized_bernoulli(n, chi_m4).is_zero()
        for n in (1, 3, 5):
            assert generalized_bernoulli(n, chi_5).is_zero()

    def test_quadratic_mod5_n2(self, chi_5):
        assert generalized_bernoulli(2, chi_5).rational_value() == Fraction(4, 5)

    def test_trivial_reproduces_plain(self, trivial_char):
        for n in range(2, 16):
            assert generalized_bernoulli(n, trivial_char).rational_value() == bernoulli_number(n)

    def test_trivial_n1_is_plus_half(self, trivial_char):
        assert generalized_bernoulli(1, trivial_char).rational_value() == Fraction(1, 2)

    def test_imprimitive_uses_conductor(self, chi_3):
        lifted = chi_3.lift_to(9)
        assert generalized_bernoulli(5, lifted) == generalized_bernoulli(5, chi_3)

    @pytest.mark.parametrize("modulus,order", [(4, 2), (5, 2), (7, 3), (8, 2), (16, 4), (9, 3)])
    def test_series_matches_defining_sum(self, modulus, order):
        chi = enumerate_characters(modulus, order_filter=order, primitive_only=True)[0]
        for n in range(0, 14):
            assert generalized_bernoulli(n, chi) == generalized_bernoulli_definition(n, chi)

    def test_kummer_congruence_spot_checks(self):
        # (1 - theta(p) p^(n-1)) B_n/n = same at n' mod the uniformizer,
        # for n = n' != 0 mod (p-1), matching parity, p coprime to everything
        cases = [
            (enumerate_characters(5, order_filter=2)[0], 7, 2, 8),
            (enumerate_characters(4).pop(), 7, 3, 9),
            (enumerate_characters(7, order_filter=3, primitive_only=True)[0], 5, 2, 6),
        ]
        for theta, p, n, n_prime in cases:
            fld = build_extension(p, theta.order, 10)
            diff = _regularized(theta, p, n) - _regularized(theta, p, n_prime)
            v = valuation_at_residue(diff, fld) if not diff.is_zero() else math.inf
            assert v >= 1


def _regularized(theta, p, n):
    euler = 1 - theta.evaluate(p) * Fraction(p) ** (n - 1)
    return euler * generalized_bernoulli(n, theta) / n


class TestCache:
    def test_empty_list(self, chi_m4, cache):
        assert bulk_bernoulli(chi_m4, [], cache) == []

    def test_roundtrip_and_no_recompute(self, chi_m4, cache):
        first = bulk_bernoulli(chi_m4, range(1, 21), cache)
        computed_once = cache.computations
        again = bulk_bernoulli(chi_m4, range(1, 21), cache)
        assert first == again
        assert cache.computations == computed_once
        assert cache.hits > 0

    def test_matches_defining_sums(self, chi_m4, cache):
        values = bulk_bernoulli(chi_m4, range(1, 21), cache)
        for n, val in zip(range(1, 21), values):
            assert val == generalized_bernoulli_definition(n, chi_m4)

    def test_corrupt_block_recovers(self, chi_m4, tmp_path):
        cache = BernoulliCache(tmp_path)
        bulk_bernoulli(chi_m4, [3], cache)
        block = next((tmp_path / "bernoulli").rglob("*.txt"))
        block.write_text("garbage ::: not a fraction\n")
        with pytest.warns(UserWarning, match="corrupt"):
            vals = bulk_bernoulli(chi_m4, [3], BernoulliCache(tmp_path))
        assert vals[0] == generalized_bernoulli_definition(3, chi_m4)

    def test_no_cache_path(self, chi_m4):
        vals = bulk_bernoulli(chi_m4, [1, 5, 9], None)
        assert [v.rational_value() for v in vals][0] == Fraction(-1, 2)
