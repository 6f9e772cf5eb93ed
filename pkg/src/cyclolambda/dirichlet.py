"""Dirichlet characters mod N as exponent vectors on canonical generators.

(Z/NZ)^* is decomposed into cyclic factors: for each odd prime power piece
the smallest primitive root, and for a 2-power piece 2^a (a >= 3) the pair
-1, 5.  A character is the vector of exponents of its values on these
generators; values are exact roots of unity in Q(zeta_ord).

Teichmuller twists theta * omega^i stay symbolic as (theta, i) pairs: omega
is Z_p-valued, so the twist only ever meets theta inside a p-adic field.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .cyclotomic import CycRational, root_of_unity_power
from .numutil import (
    euler_phi,
    factorize,
    gcd,
    lcm,
    multiplicative_order,
    smallest_primitive_root,
)


@dataclass(frozen=True)
class _CyclicFactor:
    piece: int       # the prime power through which this factor evaluates
    generator: int   # residue mod piece
    order: int
    kind: str        # "odd", "minus" (the -1 factor), or "five"


class CharGroup:
    """The character group of (Z/NZ)^*, with shared discrete-log tables."""

    def __init__(self, modulus: int):
        if modulus < 1:
            raise ValueError("modulus must be >= 1")
        self.modulus = modulus
        factors: list[_CyclicFactor] = []
        for p, e in factorize(modulus) if modulus > 1 else ():
            q = p**e
            if p == 2:
                if e == 1:
                    continue  # (Z/2)^* is trivial
                factors.append(_CyclicFactor(q, q - 1, 2, "minus"))
                if e >= 3:
                    factors.append(_CyclicFactor(q, 5, 2 ** (e - 2), "five"))
            else:
                factors.append(_CyclicFactor(q, smallest_primitive_root(q), (p - 1) * p ** (e - 1), "odd"))
        self.factors = tuple(factors)
        self._tables: dict[int, dict[int, int]] = {}
        assert self.order() == euler_phi(modulus)

    def order(self) -> int:
        n = 1
        for f in self.factors:
            n *= f.order
        return n

    def _table(self, idx: int) -> dict[int, int]:
        if idx not in self._tables:
            f = self.factors[idx]
            tab, x = {}, 1
            for k in range(f.order):
                tab[x] = k
                x = x * f.generator % f.piece
            self._tables[idx] = tab
        return self._tables[idx]

    def dlog_vector(self, a: int) -> tuple[int, ...] | None:
        """Exponents of a on the canonical generators, or None if gcd(a, N) > 1."""
        if gcd(a, self.modulus) != 1:
            return None
        out = []
        i = 0
        while i < len(self.factors):
            f = self.factors[i]
            r = a % f.piece
            if f.kind == "minus" and i + 1 < len(self.factors) and self.factors[i + 1].kind == "five":
                five_tab = self._table(i + 1)
                if r in five_tab:
                    out.append(0)
                    out.append(five_tab[r])
                else:
                    out.append(1)
                    out.append(five_tab[(-r) % f.piece])
                i += 2
                continue
            out.append(self._table(i)[r])
            i += 1
        return tuple(out)

    def character(self, exponents) -> "DirichletChar":
        return DirichletChar(self, tuple(int(e) % f.order for e, f in zip(exponents, self.factors)))

    def __iter__(self):
        for exps in itertools.product(*(range(f.order) for f in self.factors)):
            yield self.character(exps)

    def generator_residues(self) -> list[int]:
        """For each factor, the residue mod N that is the factor's generator on
        its prime-power piece and 1 on every other piece."""
        out = []
        for f in self.factors:
            rest = self.modulus // f.piece
            x = _crt(f.generator % f.piece, f.piece, 1 % rest if rest > 1 else 0, rest)
            out.append(x % self.modulus)
        return out


def _crt(a1: int, m1: int, a2: int, m2: int) -> int:
    if m2 == 1:
        return a1 % m1
    inv = pow(m1 % m2, -1, m2)
    return (a1 + m1 * ((a2 - a1) * inv % m2)) % (m1 * m2)


@lru_cache(maxsize=512)
def char_group(modulus: int) -> CharGroup:
    return CharGroup(modulus)


@dataclass(frozen=True)
class DirichletChar:
    group: CharGroup
    exponents: tuple[int, ...]

    @property
    def modulus(self) -> int:
        return self.group.modulus

    @cached_property
    def order(self) -> int:
        m = 1
        for e, f in zip(self.exponents, self.group.factors):
            m = lcm(m, f.order // gcd(f.order, e)) if e else m
        return max(m, 1)

    def value_exponent(self, a: int) -> int | None:
        """t with chi(a) = zeta_order^t, or None when gcd(a, N) > 1."""
        dl = self.group.dlog_vector(a % self.modulus if self.modulus > 1 else 0)
        if dl is None:
            return None
        m = self.order
        t = 0
        for k, e, f in zip(dl, self.exponents, self.group.factors):
            if e:
                t += k * (e * m // f.order)
        return t % m

    def evaluate(self, a: int) -> CycRational:
        t = self.value_exponent(a)
        if t is None:
            return CycRational.zero(self.order)
        return root_of_unity_power(self.order, t)

    __call__ = evaluate

    @cached_property
    def is_even(self) -> bool:
        t = self.value_exponent(-1)
        return t == 0

    @cached_property
    def conductor(self) -> int:
        cond = 1
        i = 0
        facs = self.group.factors
        while i < len(facs):
            f = facs[i]
            e = self.exponents[i]
            if f.kind == "odd":
                t = f.order // gcd(f.order, e) if e else 1
                if t > 1:
                    p = factorize(f.piece)[0][0]
                    s = 0
                    tt = t
                    while tt % p == 0:
                        tt //= p
                        s += 1
                    cond *= p ** (s + 1)
                i += 1
            elif f.kind == "minus":
                eps = e % 2
                if i + 1 < len(facs) and facs[i + 1].kind == "five":
                    e5 = self.exponents[i + 1]
                    t5 = facs[i + 1].order // gcd(facs[i + 1].order, e5) if e5 else 1
                    if t5 > 1:
                        cond *= 4 * t5
                    elif eps:
                        cond *= 4
                    i += 2
                else:
                    if eps:
                        cond *= 4
                    i += 1
            else:  # pragma: no cover
                raise AssertionError("orphan 2-power factor")
        return cond

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @property
    def is_trivial(self) -> bool:
        return all(e == 0 for e in self.exponents)

    @property
    def label(self) -> str:
        return ".".join([str(self.modulus)] + [str(e) for e in self.exponents])

    def __mul__(self, other: "DirichletChar") -> "DirichletChar":
        if other.group is self.group or other.modulus == self.modulus:
            return self.group.character(tuple(a + b for a, b in zip(self.exponents, other.exponents)))
        big = lcm(self.modulus, other.modulus)
        return self.lift_to(big) * other.lift_to(big)

    def __pow__(self, k: int) -> "DirichletChar":
        return self.group.character(tuple(e * (k % self.order) for e in self.exponents))

    def lift_to(self, modulus: int) -> "DirichletChar":
        """The character mod `modulus` (a multiple of N) induced by this one."""
        if modulus == self.modulus:
            return self
        if modulus % self.modulus:
            raise ValueError("can only lift to a multiple of the modulus")
        target = char_group(modulus)
        exps = []
        m = self.order
        for g_res, f in zip(target.generator_residues(), target.factors):
            t = self.value_exponent(g_res)  # gcd(g_res, L) = 1 implies gcd(., N) = 1
            assert t is not None
            num = t * f.order
            assert num % m == 0, "lift exponent is not integral"
            exps.append(num // m)
        return target.character(exps)

    def primitive_char(self) -> "DirichletChar":
        """The primitive character of the same conductor inducing this one."""
        cond = self.conductor
        if cond == self.modulus:
            return self
        target = char_group(cond)
        exps = []
        m = self.order
        for g_res, f in zip(target.generator_residues(), target.factors):
            a = _coprime_representative(g_res, cond, self.modulus)
            t = self.value_exponent(a)
            assert t is not None
            num = t * f.order
            assert num % m == 0
            exps.append(num // m)
        return target.character(exps)

    def __repr__(self):
        return f"DirichletChar({self.label})"


def _coprime_representative(a: int, small: int, big: int) -> int:
    """Residue x = a mod small with gcd(x, big) = 1 (exists since gcd(a, small) = 1)."""
    if small == 1:
        return 1
    x = a % small
    if x == 0:
        x = small
    while gcd(x, big) != 1:
        x += small
    return x


def parse_label(label: str) -> DirichletChar:
    parts = label.split(".")
    modulus = int(parts[0])
    exps = tuple(int(x) for x in parts[1:])
    grp = char_group(modulus)
    if len(exps) != len(grp.factors):
        raise ValueError(f"label {label!r} has {len(exps)} exponents, group needs {len(grp.factors)}")
    return grp.character(exps)


def enumerate_characters(
    modulus: int,
    order_filter: int | None = None,
    parity_filter: str | None = None,
    primitive_only: bool = False,
):
    """All characters mod `modulus` in lexicographic exponent order.

    parity_filter: "even", "odd" or None.
    """
    out = []
    for chi in char_group(modulus):
        if order_filter is not None and chi.order != order_filter:
            continue
        if parity_filter == "even" and not chi.is_even:
            continue
        if parity_filter == "odd" and chi.is_even:
            continue
        if primitive_only and not chi.is_primitive:
            continue
        out.append(chi)
    return out


def evaluate(chi: DirichletChar, a: int) -> CycRational:
    return chi.evaluate(a)


def conductor(chi: DirichletChar) -> int:
    return chi.conductor


@dataclass(frozen=True)
class TwistedChar:
    """chi = theta * omega^i with p not dividing cond(theta) (first kind)."""

    theta: DirichletChar
    i: int
    p: int

    def __post_init__(self):
        if self.p == 2:
            raise ValueError("p must be odd")
        if self.theta.conductor % self.p == 0:
            raise ValueError("theta must have conductor prime to p")
        if not self.theta.is_primitive:
            object.__setattr__(self, "theta", self.theta.primitive_char())
        object.__setattr__(self, "i", self.i % (self.p - 1))

    @property
    def order(self) -> int:
        """ord(chi) = lcm(ord(theta), ord(omega^i))."""
        omega_order = (self.p - 1) // gcd(self.i, self.p - 1) if self.i else 1
        return lcm(self.theta.order, omega_order)

    @property
    def residue_degree(self) -> int:
        """f for O_chi; equals the order of p mod ord(theta) because the
        omega-part of the image already lives in Z_p."""
        return multiplicative_order(self.p, self.theta.order)

    @property
    def is_even(self) -> bool:
        return self.theta.is_even == (self.i % 2 == 0)

    @property
    def is_trivial(self) -> bool:
        return self.theta.is_trivial and self.i == 0

    @property
    def trivial_zero(self) -> bool:
        if self.i % (self.p - 1) != 1 or self.theta.is_even:
            return False
        return self.theta.value_exponent(self.p) == 0

    @property
    def label(self) -> str:
        return f"{self.theta.label}@w{self.i}"

    def __repr__(self):
        return f"TwistedChar({self.label}, p={self.p})"


def is_even(tc: TwistedChar) -> bool:
    return tc.is_even


def trivial_zero_flag(tc: TwistedChar) -> bool:
    return tc.trivial_zero


def evaluate_twist_padic(tc: TwistedChar, a: int, field, prec: int | None = None):
    """embed(theta(a)) * omega(a)^i in the given extension; 0 on shared factors."""
    from . import padic

    k = field.prec if prec is None else prec
    if gcd(a, tc.p * tc.theta.conductor) != 1:
        return field.zero(k)
    emb = padic.embed_cyclotomic(tc.theta.evaluate(a), field, k)
    w = padic.teichmuller(a, tc.p, k) ** tc.i
    return emb * w
