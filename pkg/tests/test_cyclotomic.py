from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclolambda.cyclotomic import (
    CycRational,
    cyclotomic_polynomial,
    root_of_unity_power,
    valuation_at_residue,
)
from cyclolambda.numutil import euler_phi, gcd
from cyclolambda.padic import build_extension, embed_cyclotomic


class TestCyclotomicPolynomial:
    @pytest.mark.parametrize(
        "m,expected",
        [
            (1, (-1, 1)),
            (2, (1, 1)),
            (3, (1, 1, 1)),
            (6, (1, -1, 1)),
            (12, (1, 0, -1, 0, 1)),
        ],
    )
    def test_known(self, m, expected):
        assert cyclotomic_polynomial(m) == expected

    def test_degree_is_phi(self):
        for m in range(1, 40):
            assert len(cyclotomic_polynomial(m)) - 1 == euler_phi(m)


class TestRootsOfUnity:
    def test_zero_power(self):
        for m in (1, 2, 3, 8):
            assert root_of_unity_power(m, 0) == CycRational.one(m)

    def test_i_squared(self):
        assert root_of_unity_power(4, 2) == -1

    def test_zeta3_squared(self):
        z2 = root_of_unity_power(3, 2)
        assert z2.coeffs == (Fraction(-1), Fraction(-1))

    def test_exact_order(self):
        for m in (3, 4, 5, 6, 8, 12):
            for k in range(1, m):
                if gcd(k, m) != 1:
                    continue
                acc = z = root_of_unity_power(m, k)
                for _ in range(1, m):
                    assert acc != 1
                    acc = acc * z
                assert acc == 1


_coeff = st.fractions(min_value=-10, max_value=10, max_denominator=12)


@given(st.sampled_from([3, 4, 5, 8]), st.data())
@settings(max_examples=50, deadline=None)
def test_ring_axioms(m, data):
    phi = euler_phi(m)
    vecs = [
        CycRational(m, data.draw(st.lists(_coeff, min_size=phi, max_size=phi)))
        for _ in range(3)
    ]
    a, b, c = vecs
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == CycRational.zero(m)


@given(st.sampled_from([(7, 3), (5, 4), (11, 3)]), st.data())
@settings(max_examples=25, deadline=None)
def test_embedding_is_ring_hom(pm, data):
    p, m = pm
    phi = euler_phi(m)
    fld = build_extension(p, m, 8)
    a = CycRational(m, data.draw(st.lists(_coeff, min_size=phi, max_size=phi)))
    b = CycRational(m, data.draw(st.lists(_coeff, min_size=phi, max_size=phi)))
    assert embed_cyclotomic(a * b, fld) == embed_cyclotomic(a, fld) * embed_cyclotomic(b, fld)
    assert embed_cyclotomic(a + b, fld) == embed_cyclotomic(a, fld) + embed_cyclotomic(b, fld)


class TestValuation:
    def test_zero_is_infinite(self):
        fld = build_extension(7, 2, 8)
        assert valuation_at_residue(CycRational.zero(2), fld) is math.inf

    def test_p_has_valuation_one(self):
        fld = build_extension(7, 2, 8)
        assert valuation_at_residue(CycRational.from_rational(2, 7), fld) == 1

    def test_unit_fraction(self):
        fld = build_extension(7, 2, 8)
        assert valuation_at_residue(CycRational.from_rational(2, Fraction(4, 5)), fld) == 0

    def test_negative_for_p_denominator(self):
        fld = build_extension(7, 2, 8)
        assert valuation_at_residue(CycRational.from_rational(2, Fraction(3, 49)), fld) == -2

    def test_retry_on_deep_valuation(self):
        fld = build_extension(5, 2, 3)  # element valuation exceeds field precision
        assert valuation_at_residue(CycRational.from_rational(2, 5**7), fld) == 7
