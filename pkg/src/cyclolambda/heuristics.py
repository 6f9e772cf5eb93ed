"""Analytic predictions: pentagonal-series products, prime sums of rho,
and the three conjectured probabilities.

Asymptotic statements are always exposed as a pair (exact finite sum,
predicted leading term) so tests can assert bands instead of limits.
All real arithmetic runs at 60 significant digits; the 4-decimal table
matching downstream must not be at the mercy of double rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import mpmath

from .numutil import euler_phi, gcd, multiplicative_order, primes_up_to
from .rmt import rho

_DPS = 60


@dataclass(frozen=True)
class PrimeSieve:
    bound: int
    primes: tuple[int, ...]

    @classmethod
    def up_to(cls, bound: int) -> "PrimeSieve":
        return _sieve_cached(bound)

    def count(self) -> int:
        return len(self.primes)

    def in_class(self, m: int, a: int) -> list[int]:
        """Primes p <= bound with p = a mod m."""
        if m == 1:
            return list(self.primes)
        if gcd(a, m) != 1:
            raise ValueError(f"{a} is not a unit mod {m}")
        a %= m
        return [p for p in self.primes if p % m == a]


@lru_cache(maxsize=16)
def _sieve_cached(bound: int) -> PrimeSieve:
    return PrimeSieve(bound, tuple(primes_up_to(bound)))


def pentagonal_product(y, terms: int | None = None) -> mpmath.mpf:
    """prod_{t>=1} (1 - y^t) via the pentagonal-number series
    1 + sum_k (-1)^k (y^(k(3k-1)/2) + y^(k(3k+1)/2))."""
    with mpmath.workdps(_DPS):
        y = mpmath.mpf(y)
        if not 0 < y < 1:
            raise ValueError("need 0 < y < 1")
        total = mpmath.mpf(1)
        k = 1
        while True:
            e1 = k * (3 * k - 1) // 2
            e2 = k * (3 * k + 1) // 2
            term = y**e1 + y**e2
            if k % 2:
                total -= term
            else:
                total += term
            if term < mpmath.mpf(10) ** -25 or (terms is not None and k >= terms):
                break
            k += 1
        return total


def predicted_lambda_distribution(p: int, m: int, r_max: int = 8):
    """(f, [rho(p^f, r) for r < r_max]) for order-m characters at p."""
    if m >= 1 and p >= 2 and m % p == 0:
        raise ValueError("p divides the character order: the extension is ramified")
    f = multiplicative_order(p, m)
    q = p**f
    return f, [rho(q, r) for r in range(r_max)]


def predicted_regular_proportion(m: int) -> mpmath.mpf:
    """1 + (e^(-1/2) - 1)/phi(m): conjectured proportion of chi-regular
    primes for characters of order m."""
    with mpmath.workdps(_DPS):
        return 1 + (mpmath.exp(mpmath.mpf(-1) / 2) - 1) / euler_phi(m)


def predicted_field_regular(m_list, p: int, assume_p_regular: bool = False) -> mpmath.mpf:
    """exp(-prod_i gcd(m_i, p-1) / 2) for a totally real abelian field whose
    Galois group is the product of cyclic groups of the given orders; with
    assume_p_regular (cyclic case only) the trivial character's contribution
    is dropped: exp(-(gcd(m, p-1) - 1)/2)."""
    m_list = list(m_list)
    total = 1
    for m in m_list:
        if m % p == 0:
            raise ValueError("p divides a cyclic order")
        total *= gcd(m, p - 1)
    with mpmath.workdps(_DPS):
        if assume_p_regular:
            if len(m_list) != 1:
                raise ValueError("the modified prediction is stated for cyclic groups")
            return mpmath.exp(-(mpmath.mpf(total) - 1) / 2)
        return mpmath.exp(-mpmath.mpf(total) / 2)


def split_character_count(m_list, p: int) -> int:
    """Number of characters of prod C_{m_i} whose cyclotomic field splits p
    completely: prod_i gcd(m_i, p-1)."""
    total = 1
    for m in m_list:
        if m % p == 0:
            raise ValueError("p divides a cyclic order")
        total *= gcd(m, p - 1)
    return total


def partial_sum_rho(bound: int, m: int, a: int, f: int, r: int) -> mpmath.mpf:
    """sum of rho(p^f, r) over primes p <= bound with p = a mod m (exact
    finite sum, not the asymptotic)."""
    sieve = PrimeSieve.up_to(bound)
    with mpmath.workdps(_DPS):
        total = mpmath.mpf(0)
        for p in sieve.in_class(m, a) if m > 1 else sieve.primes:
            total += rho(p**f, r)
        return total


def predicted_partial_sum_rho(bound: int, m: int, f: int, r: int):
    """The predicted leading term for partial_sum_rho, or None where the
    statement only asserts boundedness."""
    sieve = PrimeSieve.up_to(bound)
    pi_x = sieve.count()
    with mpmath.workdps(_DPS):
        loglog = mpmath.log(mpmath.log(bound))
        phi = euler_phi(m)
        if f == 1 and r == 0:
            return (pi_x - loglog) / phi
        if f == 1 and r == 1:
            return loglog / phi
        if f >= 2 and r == 0:
            return mpmath.mpf(pi_x) / phi
        return None


def tot_thm_sum(bound: int, m: int):
    """(sum over p <= bound, p coprime to m, of rho(p^f_p, 0)^((p-1)/2),
    ratio to pi(bound)) where f_p is the order of p mod m."""
    sieve = PrimeSieve.up_to(bound)
    with mpmath.workdps(_DPS):
        total = mpmath.mpf(0)
        for p in sieve.primes:
            if m > 1 and m % p == 0:
                continue
            f_p = multiplicative_order(p, m)
            total += rho(p**f_p, 0) ** (mpmath.mpf(p - 1) / 2)
        pi_x = sieve.count()
        return total, total / pi_x if pi_x else mpmath.mpf(0)


def hurwitz_prime_zeta_partial(s, m: int, a: int, bound: int) -> mpmath.mpf:
    """Partial sum of p^(-s) over the sieved class p = a mod m, p <= bound."""
    if not s > 1:
        raise ValueError("need s > 1")
    sieve = PrimeSieve.up_to(bound)
    with mpmath.workdps(_DPS):
        total = mpmath.mpf(0)
        for p in sieve.in_class(m, a) if m > 1 else sieve.primes:
            total += mpmath.mpf(p) ** (-s)
        return total
