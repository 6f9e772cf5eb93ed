"""Exact arithmetic in the cyclotomic field Q(zeta_m).

Elements are dense vectors of phi(m) rationals over the power basis
1, x, ..., x^(phi(m)-1) of Q[x]/(Phi_m).  Conductors in play stay below
10^5 and orders below a few hundred, so dense exact vectors are fine.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .numutil import divisors, euler_phi


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, constant term first, via
    Phi_m(x) = (x^m - 1) / prod_{d | m, d < m} Phi_d(x)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        return (-1, 1)
    num = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in divisors(m):
        if d < m:
            num = _exact_int_div(num, cyclotomic_polynomial(d))
    return tuple(num)


def _exact_int_div(num, den) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for shift in range(len(out) - 1, -1, -1):
        coef = num[shift + len(den) - 1] // den[-1]
        out[shift] = coef
        for i, c in enumerate(den):
            num[shift + i] -= coef * c
    if any(num):
        raise ArithmeticError("non-exact cyclotomic division")
    return out


@lru_cache(maxsize=None)
def _reduction_rows(m: int) -> tuple[tuple[int, ...], ...]:
    """Row t: coefficients of x^(phi(m)+t) reduced mod Phi_m (integer vectors)."""
    phi = euler_phi(m)
    rows = []
    cur = [-c for c in cyclotomic_polynomial(m)[:phi]]  # x^phi = -(lower part)
    rows.append(tuple(cur))
    for _ in range(phi - 2):
        nxt = [0] + cur[:-1]
        if cur[-1]:
            top = cur[-1]
            nxt = [a + top * b for a, b in zip(nxt, rows[0])]
        rows.append(tuple(nxt))
        cur = nxt
    return tuple(rows)


class CycRational:
    """An element of Q(zeta_m), exact."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        phi = euler_phi(order)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != phi:
            raise ValueError(f"need exactly {phi} coefficients for order {order}")
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def from_rational(cls, order: int, value) -> "CycRational":
        phi = euler_phi(order)
        return cls(order, (Fraction(value),) + (Fraction(0),) * (phi - 1))

    @classmethod
    def zero(cls, order: int) -> "CycRational":
        return cls.from_rational(order, 0)

    @classmethod
    def one(cls, order: int) -> "CycRational":
        return cls.from_rational(order, 1)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def _check(self, other) -> "CycRational":
        if isinstance(other, CycRational):
            if other.order != self.order:
                raise ValueError("mixed cyclotomic orders")
            return other
        return CycRational.from_rational(self.order, other)

    def __add__(self, other):
        o = self._check(other)
        return CycRational(self.order, (a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycRational(self.order, (-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycRational(self.order, (a * other for a in self.coeffs))
        o = self._check(other)
        phi = len(self.coeffs)
        conv = [Fraction(0)] * (2 * phi - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        conv[i + j] += a * b
        out = conv[:phi]
        if phi > 1:
            rows = _reduction_rows(self.order)
            for t in range(phi - 1):
                c = conv[phi + t]
                if c:
                    row = rows[t]
                    out = [x + c * r for x, r in zip(out, row)]
        return CycRational(self.order, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError
            return CycRational(self.order, (a / other for a in self.coeffs))
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = CycRational.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycRational.from_rational(self.order, other)
        if not isinstance(other, CycRational):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"CycRational(order={self.order}, coeffs={[str(c) for c in self.coeffs]})"


def root_of_unity_power(m: int, k: int) -> CycRational:
    """The class of zeta_m^k, i.e. x^(k mod m) reduced mod Phi_m."""
    phi = euler_phi(m)
    k %= m
    if k < phi:
        coeffs = [Fraction(0)] * phi
        coeffs[k] = Fraction(1)
        return CycRational(m, coeffs)
    # reduce x^k by repeated use of the precomputed reduction rows
    vec = [Fraction(0)] * phi
    vec[phi - 1] = Fraction(1)
    rows = _reduction_rows(m)
    for _ in range(k - phi + 1):
        top = vec[-1]
        vec = [Fraction(0)] + vec[:-1]
        if top:
            vec = [a + top * b for a, b in zip(vec, rows[0])]
    return CycRational(m, vec)


def valuation_at_residue(x: CycRational, field) -> int | float:
    """The normalized p-adic valuation of x embedded in Q_q through `field`.

    Returns math.inf for x = 0.  If the working precision of the field cannot
    separate x from 0, the computation retries at doubled precision a few
    times before giving up (x != 0 has a finite valuation, but it could in
    principle exceed any fixed cap).
    """
    from . import padic

    if x.is_zero():
        return math.inf
    fld = field
    for _ in range(6):
        emb = padic.embed_cyclotomic(x, fld)
        try:
            return emb.valuation()
        except padic.PrecisionError:
            fld = padic.build_extension(field.p, field.m, 2 * fld.prec, field.factor_index)
    raise padic.PrecisionError(
        f"could not determine valuation of {x!r} below precision {fld.prec}"
    )
