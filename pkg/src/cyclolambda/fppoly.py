"""Dense univariate polynomial arithmetic over Z/m, plus the two nontrivial
routines the p-adic layer needs: equal-degree factorization over F_p and
Hensel lifting of a factor to Z/p^K.

Polynomials are lists of ints, constant coefficient first, trailing zeros
stripped ([] is the zero polynomial).  Degrees here are tiny (phi(m) for
cyclotomic orders m below a few hundred), so everything is quadratic-time.
"""

from __future__ import annotations

import random


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a, b, m):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % m
    return trim(out)


def sub(a, b, m):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % m
    return trim(out)


def mul(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % m
    return trim(out)


def scalar_mul(a, c, m):
    return trim([x * c % m for x in a])


def divmod_poly(a, b, m):
    """Quotient and remainder of a by b over Z/m; leading coeff of b must be
    a unit mod m (we only ever divide by monic polynomials)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = b[-1]
    inv_lead = pow(lead, -1, m)
    r = [x % m for x in a]
    trim(r)
    q = [0] * max(len(r) - len(b) + 1, 0)
    while len(r) >= len(b):
        shift = len(r) - len(b)
        coef = r[-1] * inv_lead % m
        q[shift] = coef
        for i, cb in enumerate(b):
            r[shift + i] = (r[shift + i] - coef * cb) % m
        trim(r)
    return trim(q), r


def mod_poly(a, b, m):
    return divmod_poly(a, b, m)[1]


def monic(a, m):
    if not a:
        return []
    inv = pow(a[-1], -1, m)
    return [c * inv % m for c in a]


def gcd_poly(a, b, p):
    a, b = [c % p for c in a], [c % p for c in b]
    trim(a)
    trim(b)
    while b:
        a, b = b, mod_poly(a, b, p)
    return monic(a, p)


def ext_gcd_poly(a, b, p):
    """(g, s, t) with s*a + t*b = g = monic gcd, over F_p."""
    r0, r1 = [c % p for c in a], [c % p for c in b]
    trim(r0)
    trim(r1)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_poly(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r0:
        raise ValueError("gcd of zero polynomials")
    lead_inv = pow(r0[-1], -1, p)
    return (monic(r0, p), scalar_mul(s0, lead_inv, p), scalar_mul(t0, lead_inv, p))


def powmod(a, e, modulus, m):
    result = [1]
    base = mod_poly(a, modulus, m)
    while e:
        if e & 1:
            result = mod_poly(mul(result, base, m), modulus, m)
        base = mod_poly(mul(base, base, m), modulus, m)
        e >>= 1
    return result


def evaluate(a, x, m):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % m
    return acc


def is_irreducible(a, p) -> bool:
    """Rabin irreducibility test over F_p (used for small auxiliary fields)."""
    n = len(a) - 1
    if n <= 0:
        return False
    a = monic(a, p)
    x = [0, 1]
    # x^(p^n) == x mod a, and gcd(x^(p^(n/l)) - x, a) == 1 for prime l | n.
    from .numutil import factorize

    for ell, _ in factorize(n) if n > 1 else ():
        h = x
        for _ in range(n // ell):
            h = powmod(h, p, a, p)
        g = gcd_poly(sub(h, x, p), a, p)
        if g != [1]:
            return False
    h = x
    for _ in range(n):
        h = powmod(h, p, a, p)
    return sub(h, x, p) == []


def equal_degree_factors(poly, f, p, seed=None) -> list[list[int]]:
    """All monic irreducible factors of a squarefree polynomial over F_p whose
    irreducible factors all have the known degree f (Cantor-Zassenhaus).

    The splitting order is randomized; callers needing determinism sort the
    returned factors themselves.  p must be odd.
    """
    poly = monic(poly, p)
    n = len(poly) - 1
    if n % f != 0:
        raise ValueError("degree is not a multiple of the factor degree")
    rng = random.Random(seed)
    exponent = (p**f - 1) // 2
    out: list[list[int]] = []
    stack = [poly]
    while stack:
        cur = stack.pop()
        d = len(cur) - 1
        if d == f:
            out.append(monic(cur, p))
            continue
        while True:
            a = [rng.randrange(p) for _ in range(d)]
            trim(a)
            if not a:
                continue
            g = gcd_poly(a, cur, p)
            if len(g) - 1 == 0:
                b = powmod(a, exponent, cur, p)
                g = gcd_poly(sub(b, [1], p), cur, p)
            dg = len(g) - 1
            if 0 < dg < d:
                stack.append(g)
                stack.append(divmod_poly(cur, g, p)[0])
                break
    return out


def hensel_lift_factor(full, g1, p, prec) -> list[int]:
    """Lift a monic factor g1 of the monic integer polynomial ``full`` from
    mod p to mod p^prec (one linear Newton step per digit).

    Requires full === g1*h1 mod p with gcd(g1, h1) = 1 in F_p[x].
    """
    g1 = monic([c % p for c in g1], p)
    h1, rem = divmod_poly([c % p for c in full], g1, p)
    if rem:
        raise ValueError("g1 does not divide the polynomial mod p")
    gcd_g_h, s, t = ext_gcd_poly(g1, h1, p)
    if gcd_g_h != [1]:
        raise ValueError("factor is not coprime to its cofactor mod p")
    g, h = list(g1), list(h1)
    pk = p
    for _ in range(prec - 1):
        mod_next = pk * p
        err = sub([c % mod_next for c in full], mul(g, h, mod_next), mod_next)
        if all(c % pk == 0 for c in err):
            e_over = [(c // pk) % p for c in err]
        else:  # pragma: no cover - would indicate a logic error upstream
            raise ArithmeticError("Hensel invariant violated")
        trim(e_over)
        dg = mod_poly(mul(t, e_over, p), g1, p)
        num = sub(e_over, mul(h1, dg, p), p)
        dh, rem = divmod_poly(num, g1, p)
        if rem:  # pragma: no cover
            raise ArithmeticError("non-exact division during Hensel lift")
        g = add(g, scalar_mul(dg, pk, mod_next), mod_next)
        h = add(h, scalar_mul(dh, pk, mod_next), mod_next)
        pk = mod_next
    return g
