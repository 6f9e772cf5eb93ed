"""Capped-precision arithmetic in Z_p, Q_p and unramified extensions.

A scalar is stored as p^v * u + O(p^(v+prec)) with u a unit mod p^prec;
a "zero at precision" value keeps only the O(p^v) bound (unit = 0, prec = 0).
Every operation propagates the tightest precision the inputs justify, so a
computed digit is a correct digit: losing track of precision here is the
classic way to get silently wrong lambda-invariants (division by p-divisible
integers eats digits).

Extensions O = Z_p[zeta_m] with gcd(p, m) = 1 are represented as
Z_p[x]/(ghat) where ghat is a Hensel lift of a fixed irreducible degree-f
factor g of the m-th cyclotomic polynomial mod p.  The factor is chosen
lexicographically smallest (coefficients compared constant-term first), so
builds are reproducible; an alternative factor index can be requested to
exercise Galois-conjugate embeddings.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import fppoly
from .numutil import (
    fraction_valuation,
    gcd,
    int_valuation,
    is_prime,
    multiplicative_order,
)


class PrecisionError(ArithmeticError):
    """A result would require digits the inputs do not determine."""


class DomainError(ValueError):
    """Inputs outside an operation's mathematical domain."""


class PadicScalar:
    """An element of Q_p known to finitely many significant p-adic digits."""

    __slots__ = ("p", "v", "unit", "prec")

    def __init__(self, p: int, v: int, unit: int, prec: int):
        self.p = p
        if unit == 0:
            self.v = v  # v is the absolute precision bound: value = O(p^v)
            self.unit = 0
            self.prec = 0
        else:
            unit %= p**prec
            if unit % p == 0:
                raise ValueError("unit part must be coprime to p")
            self.p = p
            self.v = v
            self.unit = unit
            self.prec = prec

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, p: int, abs_prec: int) -> "PadicScalar":
        return cls(p, abs_prec, 0, 0)

    @classmethod
    def from_int(cls, n: int, p: int, prec: int) -> "PadicScalar":
        """Exact integer with `prec` significant digits retained."""
        if n == 0:
            return cls.zero(p, prec)
        v = int_valuation(n, p)
        return cls(p, v, (n // p**v) % p**prec, prec)

    @classmethod
    def from_int_mod(cls, residue: int, p: int, abs_prec: int) -> "PadicScalar":
        """Value known only as a residue mod p^abs_prec."""
        residue %= p**abs_prec
        if residue == 0:
            return cls.zero(p, abs_prec)
        v = int_valuation(residue, p)
        return cls(p, v, residue // p**v, abs_prec - v)

    @classmethod
    def from_fraction(cls, x, p: int, prec: int) -> "PadicScalar":
        x = Fraction(x)
        if x == 0:
            return cls.zero(p, prec)
        v = fraction_valuation(x, p)
        num, den = x.numerator, x.denominator
        num //= p ** max(0, v)
        den //= p ** max(0, -v)
        unit = num * pow(den, -1, p**prec) % p**prec
        return cls(p, v, unit, prec)

    # -- inspection --------------------------------------------------------

    @property
    def is_zero_at_precision(self) -> bool:
        return self.unit == 0

    @property
    def abs_precision(self) -> int:
        return self.v + self.prec

    def valuation(self) -> int:
        if self.unit == 0:
            raise PrecisionError(f"value is O({self.p}^{self.v}); valuation unknown")
        return self.v

    @property
    def valuation_lower_bound(self) -> int:
        return self.v

    def is_unit(self) -> bool:
        return self.unit != 0 and self.v == 0

    def lift(self) -> int:
        """Smallest non-negative integer representative (needs v >= 0)."""
        if self.unit == 0:
            return 0
        if self.v < 0:
            raise DomainError("negative valuation: no integer lift")
        return self.p**self.v * self.unit % self.p**self.abs_precision

    def residue(self, k: int) -> int:
        """The value mod p^k; requires k digits to actually be known."""
        if self.abs_precision < k:
            raise PrecisionError(f"only O({self.p}^{self.abs_precision}) known, need mod {self.p}^{k}")
        if self.unit == 0:
            return 0
        if self.v < 0:
            raise DomainError("negative valuation has no residue mod p^k")
        return self.p**self.v * self.unit % self.p**k

    def truncate(self, prec: int) -> "PadicScalar":
        """Keep at most `prec` significant digits."""
        if self.unit == 0:
            return self
        k = min(self.prec, prec)
        return PadicScalar(self.p, self.v, self.unit % self.p**k, k)

    # -- internal helpers ----------------------------------------------------

    def lift_scaled(self, w: int, abs_prec: int) -> int:
        """Integer representing self / p^w mod p^(abs_prec - w); needs v >= w."""
        if self.unit == 0:
            return 0
        if self.v < w:
            raise ValueError("scaling below valuation")
        return self.p ** (self.v - w) * self.unit % self.p ** (abs_prec - w)

    def _coerce(self, other):
        if isinstance(other, PadicScalar):
            if other.p != self.p:
                raise DomainError("mixed primes")
            return other
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return PadicScalar.zero(self.p, self.abs_precision + 5)
            v = fraction_valuation(Fraction(other), self.p)
            rel = max(1, self.abs_precision - v + 5)
            return PadicScalar.from_fraction(other, self.p, rel)
        return NotImplemented

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a = min(self.abs_precision, other.abs_precision)
        w = min(self.v, other.v)
        s = (self.lift_scaled(w, a) + other.lift_scaled(w, a)) % self.p ** (a - w)
        if s == 0:
            return PadicScalar.zero(self.p, a)
        v = int_valuation(s, self.p) + w
        return PadicScalar(self.p, v, s // self.p ** (v - w), a - v)

    __radd__ = __add__

    def __neg__(self):
        if self.unit == 0:
            return self
        return PadicScalar(self.p, self.v, (-self.unit) % self.p**self.prec, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.unit == 0 or other.unit == 0:
            return PadicScalar.zero(self.p, self.v + other.v)
        k = min(self.prec, other.prec)
        return PadicScalar(self.p, self.v + other.v, self.unit * other.unit % self.p**k, k)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.unit == 0:
            raise ZeroDivisionError("division by a value indistinguishable from 0")
        if self.unit == 0:
            return PadicScalar.zero(self.p, self.v - other.v)
        k = min(self.prec, other.prec)
        inv = pow(other.unit, -1, self.p**k)
        return PadicScalar(self.p, self.v - other.v, self.unit * inv % self.p**k, k)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, e: int):
        if e < 0:
            return (PadicScalar.from_int(1, self.p, self.prec) / self) ** (-e)
        if self.unit == 0:
            if e == 0:
                raise PrecisionError("0^0 with zero-at-precision base")
            return PadicScalar.zero(self.p, self.v * e)
        return PadicScalar(self.p, self.v * e, pow(self.unit, e, self.p**self.prec), self.prec)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero_at_precision

    def __hash__(self):  # pragma: no cover - identity-free value semantics
        raise TypeError("PadicScalar compares at precision and is unhashable")

    def __repr__(self):
        if self.unit == 0:
            return f"O({self.p}^{self.v})"
        return f"{self.p}^{self.v}*{self.unit} + O({self.p}^{self.abs_precision})"


def teichmuller(a: int, p: int, prec: int) -> PadicScalar:
    """The (p-1)-st root of unity in Z_p congruent to a mod p.

    Computed as a^(p^(prec-1)) mod p^prec, the stable limit of repeated
    p-th powering.
    """
    _check_odd_prime(p)
    if prec < 1:
        raise DomainError("precision must be >= 1")
    if a % p == 0:
        raise DomainError(f"{a} is divisible by {p}")
    w = pow(a, p ** (prec - 1), p**prec)
    return PadicScalar(p, 0, w, prec)


def principal_unit(a: int, p: int, prec: int) -> PadicScalar:
    """<a> = a * omega(a)^(-1), the 1-unit part of a in Z_p^*."""
    w = teichmuller(a, p, prec)
    return PadicScalar.from_int(a, p, prec) / w


def padic_log(u: PadicScalar) -> PadicScalar:
    """Logarithm sum_{k>=1} -(-1)^k (u-1)^k / k on principal units.

    The result carries the same absolute precision as the input: term k is
    computed with v_p(k) guard digits so that dividing by k never silently
    promotes garbage into reported digits.
    """
    p = u.p
    if u.is_zero_at_precision or u.v != 0 or u.unit % p != 1:
        raise DomainError("padic_log requires u = 1 mod p")
    a = u.abs_precision
    z = (u.lift() - 1) % p**a
    if z == 0:
        return PadicScalar.zero(p, a)
    t = int_valuation(z, p)
    # largest k that can still contribute below p^a satisfies k*t - log_p k < a
    kmax = 1
    while kmax * t - _ilog(kmax, p) < a:
        kmax += 1
    guard = _ilog(kmax, p) + 1
    big = p ** (a + guard)
    total = 0
    zk = 1
    for k in range(1, kmax + 1):
        zk = zk * z % big
        vk = int_valuation(k, p) if k % p == 0 else 0
        term = (zk // p**vk) * pow(k // p**vk, -1, big) % big
        if k % 2 == 0:
            term = -term
        total += term
    return PadicScalar.from_int_mod(total % p**a, p, a)


def _ilog(n: int, p: int) -> int:
    out = 0
    while n >= p:
        n //= p
        out += 1
    return out


def _check_odd_prime(p: int) -> None:
    if p == 2 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")


class UnramifiedField:
    """Z_p[x]/(ghat): the valuation ring O = Z_p[zeta_m], residue field F_{p^f}."""

    def __init__(self, p: int, m: int, prec: int, g, ghat, factor_count: int, factor_index: int):
        self.p = p
        self.m = m
        self.f = len(g) - 1
        self.prec = prec
        self.g = tuple(g)
        self.ghat = tuple(ghat)
        self.factor_count = factor_count
        self.factor_index = factor_index
        self._zeta_int_pows: list[list[int]] = []

    @property
    def q(self) -> int:
        return self.p**self.f

    def __repr__(self):
        return f"UnramifiedField(p={self.p}, m={self.m}, f={self.f}, prec={self.prec})"

    def __eq__(self, other):
        return (
            isinstance(other, UnramifiedField)
            and (self.p, self.m, self.prec, self.ghat) == (other.p, other.m, other.prec, other.ghat)
        )

    def __hash__(self):
        return hash((self.p, self.m, self.prec, self.ghat))

    # -- element constructors ---------------------------------------------

    def zero(self, abs_prec: int | None = None) -> "UnramifiedElem":
        a = self.prec if abs_prec is None else abs_prec
        return UnramifiedElem(self, tuple(PadicScalar.zero(self.p, a) for _ in range(self.f)))

    def one(self) -> "UnramifiedElem":
        return self.from_scalar(PadicScalar.from_int(1, self.p, self.prec))

    def from_scalar(self, s: PadicScalar | int | Fraction) -> "UnramifiedElem":
        if not isinstance(s, PadicScalar):
            s = PadicScalar.from_fraction(Fraction(s), self.p, self.prec)
        coeffs = [s] + [PadicScalar.zero(self.p, s.abs_precision) for _ in range(self.f - 1)]
        return UnramifiedElem(self, tuple(coeffs))

    def from_int_vector(self, vec, abs_prec: int) -> "UnramifiedElem":
        vec = list(vec) + [0] * (self.f - len(vec))
        return UnramifiedElem(
            self, tuple(PadicScalar.from_int_mod(c, self.p, abs_prec) for c in vec[: self.f])
        )

    def zeta(self) -> "UnramifiedElem":
        """The image of zeta_m (the class of x when f > 1, the lifted root when f = 1)."""
        return self.from_int_vector(self._zeta_power_int(1), self.prec)

    def _zeta_power_int(self, t: int) -> list[int]:
        """Integer coefficient vector of zeta^t mod (ghat, p^prec)."""
        mod = self.p**self.prec
        while len(self._zeta_int_pows) <= t:
            if not self._zeta_int_pows:
                self._zeta_int_pows.append([1] + [0] * (self.f - 1))
                continue
            prev = self._zeta_int_pows[-1]
            nxt = fppoly.mod_poly([0] + list(prev), list(self.ghat), mod)
            nxt = list(nxt) + [0] * (self.f - len(nxt))
            self._zeta_int_pows.append(nxt)
        return self._zeta_int_pows[t]


class UnramifiedElem:
    """Element of an UnramifiedField as f scalar coordinates on 1, x, ..., x^(f-1).

    Because the extension is unramified, the valuation of an element is the
    minimum of its coordinate valuations, which keeps precision bookkeeping
    coordinate-wise.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: UnramifiedField, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != field.f:
            raise ValueError("coefficient vector has wrong length")
        self.field = field
        self.coeffs = coeffs

    # -- inspection ---------------------------------------------------------

    @property
    def abs_precision(self) -> int:
        return min(c.abs_precision for c in self.coeffs)

    @property
    def is_zero_at_precision(self) -> bool:
        return all(c.is_zero_at_precision for c in self.coeffs)

    @property
    def valuation_lower_bound(self) -> int:
        return min(c.v for c in self.coeffs)

    def is_unit(self) -> bool:
        if self.abs_precision < 1:
            raise PrecisionError("no digits available to test unitness")
        return any(not c.is_zero_at_precision and c.v == 0 for c in self.coeffs)

    def is_provably_nonzero(self) -> bool:
        return any(not c.is_zero_at_precision for c in self.coeffs)

    def valuation(self) -> int:
        nz = [c.v for c in self.coeffs if not c.is_zero_at_precision]
        if not nz:
            raise PrecisionError("element is indistinguishable from 0")
        v = min(nz)
        if any(c.is_zero_at_precision and c.v < v for c in self.coeffs):
            raise PrecisionError("valuation not determined at this precision")
        return v

    def residue_vector(self) -> tuple[int, ...]:
        return tuple(c.residue(1) for c in self.coeffs)

    def __repr__(self):
        return f"UnramifiedElem({list(self.coeffs)!r})"

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, UnramifiedElem):
            if other.field != self.field:
                raise DomainError("elements of different extensions")
            return other
        if isinstance(other, (int, Fraction, PadicScalar)):
            return None  # scalar fast path
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            o = self.field.from_scalar(other)
        return UnramifiedElem(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return UnramifiedElem(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            o = self.field.from_scalar(other)
        return UnramifiedElem(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def _scaled(self):
        """(w, int vector of self/p^w, relative precision)."""
        w = self.valuation_lower_bound
        a = self.abs_precision
        return w, [c.lift_scaled(w, a) for c in self.coeffs], a - w

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            s = other if isinstance(other, PadicScalar) else PadicScalar.from_fraction(
                Fraction(other), self.field.p, self.field.prec
            )
            return UnramifiedElem(self.field, tuple(c * s for c in self.coeffs))
        if self.is_zero_at_precision or o.is_zero_at_precision:
            return self.field.zero(self.valuation_lower_bound + o.valuation_lower_bound)
        p = self.field.p
        w1, x, r1 = self._scaled()
        w2, y, r2 = o._scaled()
        r = min(r1, r2)
        mod = p**r
        prod = fppoly.mod_poly(fppoly.mul(x, y, mod), [c % mod for c in self.field.ghat], mod)
        prod = list(prod) + [0] * (self.field.f - len(prod))
        coeffs = []
        for c in prod:
            s = PadicScalar.from_int_mod(c, p, r)
            coeffs.append(PadicScalar(p, s.v + w1 + w2, s.unit, s.prec) if s.unit else PadicScalar.zero(p, s.v + w1 + w2))
        return UnramifiedElem(self.field, tuple(coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "UnramifiedElem":
        if not self.is_provably_nonzero():
            raise ZeroDivisionError("inverting a value indistinguishable from 0")
        w = self.valuation()  # raises PrecisionError when ambiguous
        p = self.field.p
        a = self.abs_precision
        r = a - w
        vec = [c.lift_scaled(w, a) for c in self.coeffs]
        inv = _invert_unit_vector(vec, self.field, r)
        coeffs = []
        for c in inv:
            s = PadicScalar.from_int_mod(c, p, r)
            coeffs.append(PadicScalar(p, s.v - w, s.unit, s.prec) if s.unit else PadicScalar.zero(p, s.v - w))
        return UnramifiedElem(self.field, tuple(coeffs))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            s = other if isinstance(other, PadicScalar) else PadicScalar.from_fraction(
                Fraction(other), self.field.p, self.field.prec
            )
            return UnramifiedElem(self.field, tuple(c / s for c in self.coeffs))
        return self * o.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, PadicScalar)):
            other = self.field.from_scalar(other)
        if not isinstance(other, UnramifiedElem):
            return NotImplemented
        return (self - other).is_zero_at_precision

    def __hash__(self):  # pragma: no cover
        raise TypeError("UnramifiedElem compares at precision and is unhashable")


def _invert_unit_vector(vec, field: UnramifiedField, rel: int):
    p = field.p
    g = [c % p for c in field.g]
    v0 = [c % p for c in vec]
    gcd_poly, s, _ = fppoly.ext_gcd_poly(v0, g, p)
    if gcd_poly != [1]:
        raise ZeroDivisionError("vector is not a unit in the residue field")
    z = s  # inverse mod (g, p)
    k = 1
    while k < rel:
        k = min(2 * k, rel)
        mod = p**k
        ghat = [c % mod for c in field.ghat]
        vz = fppoly.mod_poly(fppoly.mul(vec, z, mod), ghat, mod)
        two_minus = fppoly.sub([2], vz, mod)
        z = fppoly.mod_poly(fppoly.mul(z, two_minus, mod), ghat, mod)
    z = list(z) + [0] * (field.f - len(z))
    return z[: field.f]


@lru_cache(maxsize=64)
def build_extension(p: int, m: int, prec: int, factor_index: int = 0) -> UnramifiedField:
    """Construct Z_p[zeta_m] at the given precision.

    Factors the m-th cyclotomic polynomial over F_p (all factors share the
    degree f = ord of p mod m), picks the lexicographically smallest factor
    unless another index is requested, and Hensel-lifts it.
    """
    _check_odd_prime(p)
    if m < 1:
        raise DomainError("m must be >= 1")
    if m % p == 0:
        raise DomainError(f"p = {p} divides m = {m}: the extension would be ramified")
    from .cyclotomic import cyclotomic_polynomial

    f = multiplicative_order(p, m)
    phi_m = [c % p for c in cyclotomic_polynomial(m)]
    factors = fppoly.equal_degree_factors(phi_m, f, p, seed=p * 1_000_003 + m)
    factors.sort(key=lambda poly: tuple(poly))
    if not 0 <= factor_index < len(factors):
        raise DomainError(f"factor index {factor_index} out of range (have {len(factors)})")
    g = factors[factor_index]
    ghat = fppoly.hensel_lift_factor(list(cyclotomic_polynomial(m)), g, p, prec)
    return UnramifiedField(p, m, prec, g, ghat, len(factors), factor_index)


def embed_cyclotomic(x, field: UnramifiedField, abs_prec: int | None = None) -> UnramifiedElem:
    """Canonical embedding Q(zeta_m) -> Q_q determined by the chosen factor.

    Denominators divisible by p are allowed and produce negative-valuation
    coordinates.
    """
    if x.order != field.m:
        raise DomainError(f"element of Q(zeta_{x.order}) cannot embed in Q(zeta_{field.m})-field")
    a = field.prec if abs_prec is None else abs_prec
    p = field.p
    out = [PadicScalar.zero(p, a) for _ in range(field.f)]
    for t, coeff in enumerate(x.coeffs):
        if coeff == 0:
            continue
        s = PadicScalar.from_fraction(coeff, p, a + max(0, -fraction_valuation(coeff, p)))
        zt = field._zeta_power_int(t)
        for j in range(field.f):
            if zt[j]:
                out[j] = out[j] + s * PadicScalar.from_int_mod(zt[j], p, a)
    return UnramifiedElem(field, tuple(out))
