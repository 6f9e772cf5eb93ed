"""Plain and character-twisted Bernoulli numbers, exactly.

The defining value for a character of conductor d is
    B_{n,chi} = d^(n-1) * sum_{a=1..d} chi(a) B_n(a/d),
always taken over the primitive incarnation (imprimitive moduli would insert
spurious Euler factors into the L-values built on top of these numbers).

Evaluating that sum term by term costs d polynomial evaluations per n, which
is far too slow for the scans (d up to 10^3-10^5, n up to several hundred).
Production path instead divides exponential generating functions:

    sum_n B_{n,chi} t^n / n!  =  P(t) / D(t),
    P(t) = sum_{a=1..d} chi(a) e^{at},   D(t) = (e^{dt} - 1) / t,

one series division delivering all indices up to a bound at once.  The
term-by-term defining sum is kept as `generalized_bernoulli_definition` and
pinned against the fast path in the tests.

A write-through text cache persists the twisted numbers per character in
blocks of 64 indices, so rescans at new primes reuse old work.
"""

from __future__ import annotations

import math
import os
import warnings
from fractions import Fraction
from pathlib import Path

from .cyclotomic import CycRational
from .dirichlet import DirichletChar, parse_label
from .numutil import euler_phi

_BLOCK = 64

_plain: list[Fraction] = [Fraction(1)]


def bernoulli_number(n: int) -> Fraction:
    """B_n with the convention B_1 = -1/2 (recurrence sum C(n+1,k) B_k = 0)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    while len(_plain) <= n:
        m = len(_plain)
        acc = Fraction(0)
        for k in range(m):
            acc += math.comb(m + 1, k) * _plain[k]
        _plain.append(-acc / (m + 1))
    return _plain[n]


def bernoulli_polynomial(n: int) -> list[Fraction]:
    """Coefficients of B_n(x), constant term first."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return [math.comb(n, k) * bernoulli_number(k) for k in range(n, -1, -1)]


def _eval_poly(coeffs: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def generalized_bernoulli_definition(n: int, chi: DirichletChar) -> CycRational:
    """B_{n,chi} straight from the defining sum (slow; test oracle)."""
    chi = chi.primitive_char()
    d = chi.conductor
    poly = bernoulli_polynomial(n)
    acc = CycRational.zero(chi.order)
    for a in range(1, d + 1):
        val = chi.evaluate(a)
        if not val.is_zero():
            acc = acc + val * _eval_poly(poly, Fraction(a, d))
    return acc * Fraction(d) ** (n - 1)


class _SeriesCache:
    """In-memory EGF series per primitive character, grown on demand."""

    def __init__(self):
        self._store: dict[str, list[CycRational]] = {}

    def values(self, chi: DirichletChar, n_max: int) -> list[CycRational]:
        chi = chi.primitive_char()
        key = chi.label
        have = self._store.get(key)
        if have is None or len(have) <= n_max:
            self._store[key] = _egf_values(chi, max(n_max, 2 * len(have or []) or 16))
        return self._store[key]


def _egf_values(chi: DirichletChar, n_max: int) -> list[CycRational]:
    """B_{0,chi} .. B_{n_max,chi} by one exponential-series division."""
    d = chi.conductor
    m = chi.order
    one = CycRational.one(m)
    # P(t) = sum_a chi(a) e^{at}: p_j = (sum_a chi(a) a^j) / j!
    powers = [(a, chi.evaluate(a)) for a in range(1, d + 1) if chi.value_exponent(a) is not None]
    p: list[CycRational] = []
    fact = Fraction(1)
    cur = {a: 1 for a, _ in powers}
    for j in range(n_max + 1):
        if j:
            fact *= j
        acc = CycRational.zero(m)
        for a, val in powers:
            acc = acc + val * cur[a]
            cur[a] *= a
        p.append(acc / fact)
    # D(t) = (e^{dt} - 1)/t: d_k = d^(k+1) / (k+1)!
    dk: list[Fraction] = []
    fact = Fraction(1)
    dpow = Fraction(d)
    for k in range(n_max + 1):
        fact *= k + 1
        dk.append(dpow / fact)
        dpow *= d
    # beta_n from p_j = sum_{k=0..j} dk[k] * beta_{j-k}
    beta: list[CycRational] = []
    for j in range(n_max + 1):
        acc = p[j]
        for k in range(1, j + 1):
            acc = acc - beta[j - k] * dk[k]
        beta.append(acc / dk[0])
    fact = Fraction(1)
    out = []
    for n, b in enumerate(beta):
        if n:
            fact *= n
        out.append(b * fact)
    return out


_series = _SeriesCache()


def generalized_bernoulli(n: int, chi: DirichletChar) -> CycRational:
    """B_{n,chi}, exact, over the conductor of chi.

    For the trivial character this reproduces the plain numbers for n != 1
    and gives B_{1,1} = +1/2 (the value the defining sum takes at d = 1).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    return _series.values(chi, n)[n]


class BernoulliCache:
    """Persistent text cache: cache/bernoulli/<modulus>/<label>/<block>.txt.

    Each line is "n:c0;c1;...;c_{phi-1}" with exact rationals.  Values are
    deterministic, so concurrent last-writer-wins rewrites are harmless.
    """

    def __init__(self, root: str | os.PathLike | None = None):
        if root is None:
            root = os.environ.get("CYCLOLAMBDA_CACHE_DIR", "cache")
        self.root = Path(root) / "bernoulli"
        self.hits = 0
        self.computations = 0

    def _block_path(self, chi: DirichletChar, block: int) -> Path:
        return self.root / str(chi.modulus) / chi.label / f"{block:06d}.txt"

    def _load_block(self, chi: DirichletChar, block: int) -> dict[int, CycRational] | None:
        path = self._block_path(chi, block)
        if not path.exists():
            return None
        phi = euler_phi(chi.order)
        out: dict[int, CycRational] = {}
        try:
            for line in path.read_text().splitlines():
                if not line.strip():
                    continue
                head, rest = line.split(":")
                coeffs = [Fraction(t) for t in rest.split(";")]
                if len(coeffs) != phi:
                    raise ValueError("wrong coefficient count")
                out[int(head)] = CycRational(chi.order, coeffs)
        except (ValueError, ArithmeticError) as exc:
            warnings.warn(f"corrupt Bernoulli cache block {path}: {exc}; recomputing")
            return None
        if set(out) != set(range(block * _BLOCK, (block + 1) * _BLOCK)):
            warnings.warn(f"incomplete Bernoulli cache block {path}; recomputing")
            return None
        return out

    def _store_block(self, chi: DirichletChar, block: int, values: dict[int, CycRational]) -> None:
        path = self._block_path(chi, block)
        path.parent.mkdir(parents=True, exist_ok=True)
        lines = []
        for n in range(block * _BLOCK, (block + 1) * _BLOCK):
            lines.append(f"{n}:" + ";".join(str(c) for c in values[n].coeffs))
        tmp = path.with_suffix(f".tmp{os.getpid()}")
        tmp.write_text("\n".join(lines) + "\n")
        tmp.replace(path)


def bulk_bernoulli(
    theta: DirichletChar, n_list, cache: BernoulliCache | None
) -> list[CycRational]:
    """All B_{n,theta} for n in n_list, via the cache when one is given."""
    theta = theta.primitive_char()
    ns = list(n_list)
    if not ns:
        return []
    if cache is None:
        vals = _series.values(theta, max(ns))
        return [vals[n] for n in ns]
    blocks_needed = sorted({n // _BLOCK for n in ns})
    table: dict[int, CycRational] = {}
    missing: list[int] = []
    for b in blocks_needed:
        got = cache._load_block(theta, b)
        if got is None:
            missing.append(b)
        else:
            cache.hits += 1
            table.update(got)
    if missing:
        cache.computations += 1
        vals = _series.values(theta, (max(missing) + 1) * _BLOCK - 1)
        for b in missing:
            block_vals = {n: vals[n] for n in range(b * _BLOCK, (b + 1) * _BLOCK)}
            cache._store_block(theta, b, block_vals)
            table.update(block_vals)
    return [table[n] for n in ns]


def parse_character(label: str) -> DirichletChar:
    return parse_label(label)
