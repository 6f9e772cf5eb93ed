"""chi-regularity of primes via twisted-Bernoulli divisibility, total
lambda-invariants, and regularity for totally real abelian fields.

A prime p is chi-regular when every even twist chi*omega^j has corrected
lambda zero; by the interpolation formula this is equivalent to p dividing
none of the relevant B_{n,chi} numerators, which is what gets tested here
(the lambda engine provides the independent cross-check).  For an odd
character with chi(p) = 1 the branch n = 1 carries a forced trivial zero,
and B_{1,chi} is tested anyway: that is the generalized-regularity
convention, and it matches the corrected invariant.

For the trivial character the branch j = 0 is the zeta pole and is excluded,
which also drops n = p-1 from the Bernoulli test (B_{p-1} always has
valuation -1 by von Staudt-Clausen; it belongs to the pole branch, not to
regularity).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from . import padic
from .bernoulli import bulk_bernoulli
from .cyclotomic import valuation_at_residue
from .dirichlet import DirichletChar, TwistedChar
from .lambda_engine import LambdaResult, lambda_crosscheck
from .numutil import gcd, multiplicative_order


class NonIntegralBernoulli(ArithmeticError):
    """A tested B_{n,theta} had negative valuation: report, never classify."""


@dataclass
class RegularityReport:
    label: str
    p: int
    residue_degree: int
    witnesses: list[tuple[int, int]]  # (n, valuation > 0)
    notes: list[str] = dc_field(default_factory=list)

    @property
    def regular(self) -> bool:
        return not self.witnesses

    @property
    def verdict(self) -> str:
        return "regular" if self.regular else "irregular"


def _test_indices(theta: DirichletChar, p: int) -> list[int]:
    if theta.is_trivial:
        return list(range(2, p - 2, 2))  # skip the pole branch n = p-1
    if theta.is_even:
        return list(range(2, p, 2))
    return list(range(1, p - 1, 2))


def is_chi_regular(theta: DirichletChar, p: int, cache=None, strict: bool = False) -> RegularityReport:
    """Bernoulli-divisibility regularity test for the first-kind twists of theta.

    strict=True additionally requires every Galois conjugate of theta to pass
    (equivalently: tests all primes above p, a strictly stronger condition).
    """
    theta = theta.primitive_char()
    if p == 2 or not _is_odd_prime(p):
        raise padic.DomainError("p must be an odd prime")
    if theta.conductor % p == 0 or theta.order % p == 0:
        raise padic.DomainError("p must be prime to cond(theta) and ord(theta)")
    conjugates = [theta]
    if strict:
        conjugates = [theta**a for a in range(1, theta.order + 1) if gcd(a, theta.order) == 1]
    f = multiplicative_order(p, theta.order)
    fld = padic.build_extension(p, theta.order, 12)
    witnesses: list[tuple[int, int]] = []
    notes: list[str] = []
    ns = _test_indices(theta, p)
    if not theta.is_even and theta.value_exponent(p) == 0:
        notes.append("n=1 sits on a trivial-zero branch; tested per the corrected invariant")
    for conj in conjugates:
        bvals = bulk_bernoulli(conj, ns, cache)
        for n, b in zip(ns, bvals):
            v = valuation_at_residue(b, fld)
            if v is math.inf:
                raise ArithmeticError(f"B_{{{n},{conj.label}}} vanished unexpectedly")
            if v < 0:
                raise NonIntegralBernoulli(
                    f"B_{{{n},{conj.label}}} has valuation {v} < 0 at p={p}"
                )
            if v > 0:
                witnesses.append((n, v))
    if (
        witnesses
        and not theta.is_even
        and theta.value_exponent(p) == 0
        and all(n == 1 for n, _ in witnesses)
    ):
        notes.append(
            "irregular solely through B_1 on the trivial-zero branch; "
            "the corrected total lambda-invariant may still vanish"
        )
    return RegularityReport(label=theta.label, p=p, residue_degree=f, witnesses=witnesses, notes=notes)


def _is_odd_prime(p: int) -> bool:
    from .numutil import is_prime

    return p % 2 == 1 and is_prime(p)


def even_twist_exponents(theta: DirichletChar, p: int) -> list[int]:
    """j in 0..p-2 with theta*omega^j even, the fully trivial branch removed."""
    start = 0 if theta.is_even else 1
    out = [j for j in range(start, p - 1, 2)]
    if theta.is_trivial:
        out = [j for j in out if j != 0]
    return out


def lambda_tot(theta: DirichletChar, p: int, engine=None, cache=None) -> int:
    """Total lambda: sum of corrected lambda over the even twists of theta."""
    theta = theta.primitive_char()
    engine = engine or (lambda th, j, pp: lambda_crosscheck(th, j, pp, cache=cache))
    total = 0
    for j in even_twist_exponents(theta, p):
        res: LambdaResult = engine(theta, j, p)
        if res.lower_bound_only:
            raise padic.PrecisionError(
                f"lambda of {theta.label}@w{j} unresolved; total invariant unavailable"
            )
        if res.lam_corr < 0:
            raise AssertionError("corrected lambda must be non-negative")
        total += res.lam_corr
    return total


@dataclass(frozen=True)
class FieldSpec:
    """A totally real abelian field given by generating even characters."""

    generators: tuple[DirichletChar, ...]

    def __post_init__(self):
        gens = tuple(g.primitive_char() for g in self.generators)
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if not g.is_even:
                raise ValueError(f"{g.label} is odd: the fixed field would not be totally real")

    @property
    def cyclic_orders(self) -> tuple[int, ...]:
        return tuple(g.order for g in self.generators)

    @property
    def degree(self) -> int:
        return len(self.characters())

    def characters(self) -> list[DirichletChar]:
        """All characters of Gal(F/Q): the subgroup generated, as primitive
        characters, deduplicated, in label order (trivial included)."""
        import itertools

        from .dirichlet import char_group

        trivial = char_group(1).character(())
        seen: dict[str, DirichletChar] = {}
        for exps in itertools.product(*(range(g.order) for g in self.generators)):
            chi = trivial
            for g, e in zip(self.generators, exps):
                chi = chi * g**e
            prim = chi.primitive_char()
            seen.setdefault(prim.label, prim)
        return [seen[k] for k in sorted(seen, key=_label_key)]

    @property
    def conductor(self) -> int:
        from .numutil import lcm

        c = 1
        for chi in self.characters():
            c = lcm(c, chi.conductor)
        return c


def _label_key(label: str):
    return tuple(int(x) for x in label.split("."))


def lambda_tot_field(spec: FieldSpec, p: int, engine=None, cache=None) -> int:
    """Sum of corrected lambda over all even twists of all characters of
    Gal(F/Q), the single fully trivial character excluded (zeta pole)."""
    chars = spec.characters()
    for chi in chars:
        if chi.conductor % p == 0 or chi.order % p == 0:
            raise padic.DomainError(
                f"p = {p} meets the conductor or order of {chi.label}; field scan skips it"
            )
    total = 0
    for chi in chars:
        total += lambda_tot(chi, p, engine=engine, cache=cache)
    return total


def is_field_regular(spec: FieldSpec, p: int, cache=None) -> bool:
    """p is F-regular iff it is chi-regular for every character of Gal(F/Q)."""
    return all(is_chi_regular(chi, p, cache=cache).regular for chi in spec.characters())
