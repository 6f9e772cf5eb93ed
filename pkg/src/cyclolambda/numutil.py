"""Small integer-arithmetic helpers shared across the package.

Everything here is exact: Python ints and ``fractions.Fraction`` only.
Scales are modest (moduli below ~10^5, exponents below a few thousand),
so trial division and dense sieves are entirely adequate.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond 64-bit inputs we use."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(bound: int) -> list[int]:
    """All primes <= bound by a plain sieve of Eratosthenes."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, int(bound**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = b"\x00" * len(sieve[p * p :: p])
    return [i for i in range(bound + 1) if sieve[i]]


def nth_primes_from(start: int, count: int, predicate=None) -> list[int]:
    """First ``count`` primes >= start satisfying ``predicate`` (default: all)."""
    out: list[int] = []
    n = max(2, start)
    while len(out) < count:
        if is_prime(n) and (predicate is None or predicate(n)):
            out.append(n)
        n += 1
    return out


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization by trial division, as ((p, e), ...)."""
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    phi = 1
    for p, e in factorize(n):
        phi *= (p - 1) * p ** (e - 1)
    return phi


def multiplicative_order(a: int, n: int) -> int:
    """Order of a in (Z/nZ)^*; n = 1 gives 1."""
    if n == 1:
        return 1
    a %= n
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    order = euler_phi(n)
    for p, _ in factorize(order):
        while order % p == 0 and pow(a, order // p, n) == 1:
            order //= p
    return order


def gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def lcm(a: int, b: int) -> int:
    return abs(a * b) // gcd(a, b) if a and b else 0


@lru_cache(maxsize=None)
def smallest_primitive_root(q: int) -> int:
    """Smallest primitive root modulo an odd prime power q."""
    fac = factorize(q)
    if len(fac) != 1 or fac[0][0] == 2:
        raise ValueError(f"{q} is not an odd prime power")
    p, e = fac[0]
    phi_p = p - 1
    g = 2
    while multiplicative_order(g, p) != phi_p:
        g += 1
    if e == 1:
        return g
    # g lifts to a primitive root mod p^e iff g^(p-1) != 1 mod p^2.
    if pow(g, p - 1, p * p) == 1:
        g += p
    return g


def int_valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 requested")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def fraction_valuation(x: Fraction, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of 0 requested")
    return int_valuation(x.numerator, p) - int_valuation(x.denominator, p)
