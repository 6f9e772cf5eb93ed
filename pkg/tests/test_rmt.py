from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from cyclolambda.rmt import (
    DegreeHistogram,
    FqMatrix,
    SmallCaseCounts,
    assoc_poly_degree,
    batched_rank_modp,
    enumerate_small,
    exact_distribution,
    fq_field,
    gl_size,
    montecarlo,
    rho,
)

PAPER_PRED_ROWS = {
    3: [0.5601, 0.2801, 0.1050, 0.0364, 0.0123, 0.0041, 0.0014, 0.0005],
    5: [0.7603, 0.1901, 0.0396],
    7: [0.8368, 0.1395, 0.0203, 0.0029],
    9: [0.8766, 0.1096, 0.0123],
    11: [0.9008, 0.0901, 0.0083],
    13: [0.9172, 0.0764, 0.0059],
    25: [0.9584, 0.0399],
    121: [0.9917, 0.0083],
}


class TestRho:
    def test_paper_rows(self):
        for q, row in PAPER_PRED_ROWS.items():
            for r, want in enumerate(row):
                assert abs(float(rho(q, r)) - want) < 5e-5, (q, r)

    def test_sums_to_one(self):
        for q in (2, 3, 5, 9, 25):
            total = sum(rho(q, r) for r in range(80))
            assert abs(float(total) - 1) < 1e-12

    def test_recursion_identity(self):
        # rho(q, r+1) = rho(q, r) * q^-1 / (1 - q^-(r+1))
        for q in (3, 7, 25):
            for r in range(5):
                lhs = rho(q, r + 1)
                rhs = rho(q, r) / q / (1 - mpmath.mpf(q) ** -(r + 1))
                assert abs(float(lhs - rhs)) < 1e-15


class TestExactDistribution:
    def test_gl22(self):
        assert exact_distribution(2, 2) == [Fraction(1, 3), Fraction(0), Fraction(2, 3)]

    def test_gl1(self):
        for q in (2, 3, 5, 7, 9):
            assert exact_distribution(1, q) == [Fraction(q - 2, q - 1), Fraction(1, q - 1)]

    def test_sums_to_one_exactly(self):
        for n, q in [(2, 2), (3, 3), (5, 2), (8, 3), (4, 5)]:
            assert sum(exact_distribution(n, q)) == 1

    def test_gap_to_rho_shrinks_monotonically(self):
        for q in (2, 3, 5):
            for r in (0, 1, 2):
                gaps = []
                for n in range(max(r, 1), 9):
                    gaps.append(abs(float(exact_distribution(n, q)[r]) - float(rho(q, r))))
                # strictly decreasing until double rounding bottoms out
                assert all(a > b or a < 1e-12 for a, b in zip(gaps, gaps[1:]))
                assert gaps[-1] < 1e-3


class TestAssocDegree:
    def test_identity(self):
        for n, q in [(2, 2), (3, 3), (2, 9)]:
            eye = FqMatrix.from_array(q, np.eye(n, dtype=int))
            assert assoc_poly_degree(eye) == n

    def test_no_unipotent_part(self):
        comp = FqMatrix.from_array(2, [[0, 1], [1, 1]])  # char poly x^2 + x + 1
        assert assoc_poly_degree(comp) == 0

    def test_swap_matrix(self):
        swap = FqMatrix.from_array(2, [[0, 1], [1, 0]])
        assert assoc_poly_degree(swap) == 2  # (A - I)^2 = 0 over F_2

    def test_singular_rejected(self):
        with pytest.raises(ValueError):
            assoc_poly_degree(FqMatrix.from_array(3, [[1, 1], [1, 1]]))

    def test_conjugation_invariance(self):
        rng = np.random.default_rng(123)
        for q in (2, 3, 9):
            field = fq_field(q)
            n = 4
            for _ in range(12):
                a = rng.integers(0, q, (n, n))
                s = rng.integers(0, q, (n, n))
                A, S = FqMatrix.from_array(q, a), FqMatrix.from_array(q, s)
                try:
                    dA = assoc_poly_degree(A)
                except ValueError:
                    continue
                # conjugate via exact code arithmetic: S A S^-1 needs S invertible
                from cyclolambda.rmt import _mat_power_fq, _matmul_fq, _rank_fq

                arr = np.stack([a])
                if _rank_fq(field, np.stack([s]))[0] != n:
                    continue
                s_inv = _invert(field, s)
                conj = _matmul_fq(field, _matmul_fq(field, np.stack([s]), arr), np.stack([s_inv]))[0]
                assert assoc_poly_degree(FqMatrix.from_array(q, conj)) == dA


def _invert(field, s):
    """Inverse over F_q by Gauss-Jordan on the blown-up F_p matrix, then
    read back codes; simplest correct route for tests."""
    n = s.shape[0]
    q = field.q
    # brute force via adjugate-free search is fine at n = 4 over tiny q:
    # solve S X = I column by column using numpy over F_p blowup
    blow = field.blowup[s].transpose(0, 2, 1, 3).reshape(n * field.f, n * field.f)
    p = field.p
    aug = np.concatenate([blow % p, np.eye(n * field.f, dtype=np.int64)], axis=1)
    m = aug.shape[0]
    row = 0
    for col in range(m):
        piv = None
        for rr in range(row, m):
            if aug[rr, col] % p:
                piv = rr
                break
        if piv is None:
            raise ValueError
        aug[[row, piv]] = aug[[piv, row]]
        aug[row] = aug[row] * pow(int(aug[row, col]), -1, p) % p
        for rr in range(m):
            if rr != row and aug[rr, col] % p:
                aug[rr] = (aug[rr] - aug[rr, col] * aug[row]) % p
        row += 1
    inv_blow = aug[:, m:]
    # decode: column blocks of the first basis column give the code digits
    out = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            digits = inv_blow[i * field.f : (i + 1) * field.f, j * field.f]
            code = 0
            for k in range(field.f - 1, -1, -1):
                code = code * p + int(digits[k])
            out[i, j] = code
    return out


class TestEnumeration:
    def test_gl_sizes(self):
        assert enumerate_small(2, 2).gl_size == 6
        assert enumerate_small(2, 3).gl_size == 48
        assert enumerate_small(3, 2).gl_size == 168
        assert gl_size(2, 3) == 48 and gl_size(3, 2) == 168

    def test_unipotent_counts_match_formula(self):
        for n, q in [(2, 2), (2, 3), (3, 2)]:
            counts = enumerate_small(n, q).unipotent_counts
            for r in range(n + 1):
                assert counts[r] == q ** (r * r - r)

    def test_decomposition_counts(self):
        sc = enumerate_small(2, 3)
        assert sc.decomposition_counts == [1, gl_size(2, 3) // (gl_size(1, 3) ** 2), 1]

    def test_matches_exact_distribution(self):
        for n, q in [(2, 2), (2, 3), (3, 2)]:
            assert enumerate_small(n, q).proportions == exact_distribution(n, q)

    def test_budget(self):
        with pytest.raises(ValueError):
            enumerate_small(4, 5)


class TestMonteCarlo:
    def test_deterministic(self):
        a = montecarlo(4, 3, 4000, seed=99)
        b = montecarlo(4, 3, 4000, seed=99)
        assert a.counts == b.counts and a.attempts == b.attempts

    def test_three_sigma_against_exact(self):
        samples = 30_000
        hist = montecarlo(6, 3, samples, seed=31415)
        exact = exact_distribution(6, 3)
        for r in range(7):
            pr = float(exact[r])
            sigma = math.sqrt(max(pr * (1 - pr), 1e-12) * samples)
            assert abs(hist.counts[r] - pr * samples) <= 3 * sigma + 1, r

    def test_acceptance_rate(self):
        hist = montecarlo(5, 3, 20_000, seed=7)
        expected = 1.0
        for i in range(1, 6):
            expected *= 1 - 3.0**-i
        rate = hist.samples / hist.attempts
        sigma = math.sqrt(expected * (1 - expected) / hist.attempts)
        assert abs(rate - expected) < 4 * sigma + 0.01


class TestBatchedRank:
    def test_against_exhaustive_2x2(self):
        mats = np.array([[[a, b], [c, d]] for a in range(3) for b in range(3) for c in range(3) for d in range(3)])
        ranks = batched_rank_modp(mats, 3)
        for M, r in zip(mats, ranks):
            det = (M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]) % 3
            if det:
                assert r == 2
            elif M.any():
                assert r == 1
            else:
                assert r == 0
