"""Finite-field random-matrix statistics.

For an invertible matrix A over F_q the quantity of interest is
r = dim of the generalized 1-eigenspace, computed as n - rank((A - I)^n);
its distribution over uniform GL(n, F_q) tends to

    rho(q, r) = q^(-r) * prod_{t > r} (1 - q^(-t))

as n grows, with the finite-n proportion given exactly by

    q^(-r) / prod_{1<=i<=r}(1 - q^(-i))
        * (1 + sum_{i=1..n-r} (-1)^i / ((q-1)(q^2-1)...(q^i-1))).

F_q elements are coded as integers in [0, q): the code of a polynomial over
F_p is its base-p digit string.  Matrix work is vectorized over sample
batches; ranks over F_q reduce to F_p ranks of the f-fold blow-up in which
each entry becomes its multiplication matrix on the F_p-basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from . import fppoly
from .numutil import factorize, is_prime

_DPS = 60


@lru_cache(maxsize=65536)
def rho(q: int, r: int) -> mpmath.mpf:
    """q^(-r) * prod_{t>r} (1 - q^(-t)) with the tail truncated below 1e-18."""
    if q < 2 or r < 0:
        raise ValueError("need q >= 2 and r >= 0")
    with mpmath.workdps(_DPS):
        qm = mpmath.mpf(1) / q
        prod = mpmath.mpf(1)
        t = r + 1
        term = qm**t
        while term > mpmath.mpf(10) ** -18:
            prod *= 1 - term
            t += 1
            term *= qm
        return qm**r * prod


def gl_size(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def exact_distribution(n: int, q: int) -> list[Fraction]:
    """Exact proportion of A in GL(n, F_q) with deg P_A = r, for r = 0..n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = []
    for r in range(n + 1):
        head = Fraction(1, q**r)
        for i in range(1, r + 1):
            head /= 1 - Fraction(1, q**i)
        tail = Fraction(1)
        sign = 1
        denom = 1
        for i in range(1, n - r + 1):
            sign = -sign
            denom *= q**i - 1
            tail += Fraction(sign, denom)
        out.append(head * tail)
    return out


# ---------------------------------------------------------------------------
# F_q arithmetic tables
# ---------------------------------------------------------------------------


@lru_cache(maxsize=32)
def fq_field(q: int) -> "FqTables":
    fac = factorize(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    p, f = fac[0]
    return FqTables(p, f)


@lru_cache(maxsize=64)
def _smallest_irreducible(p: int, f: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree f over F_p."""
    if f == 1:
        return (0, 1)
    for code in range(p**f):
        coeffs = []
        c = code
        for _ in range(f):
            coeffs.append(c % p)
            c //= p
        poly = coeffs + [1]
        if fppoly.is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FqTables:
    """Add/mul/inverse tables for F_q plus the F_p blow-up of each element."""

    def __init__(self, p: int, f: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p, self.f, self.q = p, f, p**f
        self.poly = _smallest_irreducible(p, f)
        q = self.q
        codes = np.arange(q)
        digits = np.zeros((q, f), dtype=np.int64)
        c = codes.copy()
        for k in range(f):
            digits[:, k] = c % p
            c //= p
        self.digits = digits
        self.add_table = self._encode((digits[:, None, :] + digits[None, :, :]) % p)
        self.neg_table = self._encode((-digits) % p)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            pa = list(digits[a])
            for b in range(q):
                prod = fppoly.mod_poly(fppoly.mul(pa, list(digits[b]), p), list(self.poly), p)
                mul[a, b] = self._encode_one(prod)
        self.mul_table = mul
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            row = mul[a]
            inv[a] = int(np.nonzero(row == 1)[0][0])
        self.inv_table = inv
        # blow-up: element a -> f x f matrix of multiplication by a on the basis
        blow = np.zeros((q, f, f), dtype=np.int64)
        for a in range(q):
            for k in range(f):
                basis_code = self._encode_one([0] * k + [1])
                blow[a, :, k] = digits[mul[a, basis_code]]
        self.blowup = blow

    def _encode_one(self, coeffs) -> int:
        out = 0
        for c in reversed(list(coeffs)):
            out = out * self.p + int(c)
        return out

    def _encode(self, digit_array: np.ndarray) -> np.ndarray:
        out = np.zeros(digit_array.shape[:-1], dtype=np.int64)
        for k in range(self.f - 1, -1, -1):
            out = out * self.p + digit_array[..., k]
        return out


@dataclass(frozen=True)
class FqMatrix:
    """n x n matrix over F_q, entries as integer codes."""

    q: int
    codes: tuple  # tuple of row tuples

    @property
    def n(self) -> int:
        return len(self.codes)

    def to_array(self) -> np.ndarray:
        return np.array(self.codes, dtype=np.int64)

    @classmethod
    def from_array(cls, q: int, arr) -> "FqMatrix":
        return cls(q, tuple(tuple(int(x) for x in row) for row in np.asarray(arr)))


def batched_rank_modp(mats: np.ndarray, p: int) -> np.ndarray:
    """Ranks over F_p of a (B, rows, cols) stack by masked Gauss elimination."""
    A = np.ascontiguousarray(mats, dtype=np.int64) % p
    B, nrow, ncol = A.shape
    inv_tab = np.array([0] + [pow(v, -1, p) for v in range(1, p)], dtype=np.int64)
    pivot_row = np.zeros(B, dtype=np.int64)
    rows = np.arange(nrow)
    batch = np.arange(B)
    for col in range(ncol):
        eligible = (A[:, :, col] != 0) & (rows[None, :] >= pivot_row[:, None])
        has = eligible.any(axis=1)
        if not has.any():
            continue
        piv = np.argmax(eligible, axis=1)
        b = batch[has]
        pr, pv = pivot_row[b], piv[b]
        # swap pivot candidate into the pivot row
        tmp = A[b, pr, :].copy()
        A[b, pr, :] = A[b, pv, :]
        A[b, pv, :] = tmp
        # normalize pivot row and eliminate everything below it
        A[b, pr, :] = A[b, pr, :] * inv_tab[A[b, pr, col]][:, None] % p
        below = rows[None, :] > pr[:, None]
        factors = A[b, :, col] * below
        A[b] = (A[b] - factors[:, :, None] * A[b, pr, None, :]) % p
        pivot_row[b] += 1
    return pivot_row


def _rank_fq(field: FqTables, mats: np.ndarray) -> np.ndarray:
    """Ranks over F_q of a (B, n, n) stack of code matrices."""
    if field.f == 1:
        return batched_rank_modp(mats, field.p)
    B, n, _ = mats.shape
    blown = field.blowup[mats]  # (B, n, n, f, f)
    blown = blown.transpose(0, 1, 3, 2, 4).reshape(B, n * field.f, n * field.f)
    return batched_rank_modp(blown, field.p) // field.f


def _matmul_fq(field: FqTables, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """(B, n, n) stacks of code matrices multiplied over F_q."""
    p, f = field.p, field.f
    if f == 1:
        return np.matmul(X, Y) % p
    xd = field.digits[X]  # (B, n, n, f)
    yd = field.digits[Y]
    B, n, _, _ = xd.shape
    conv = np.zeros((B, n, n, 2 * f - 1), dtype=np.int64)
    for a in range(f):
        for b in range(f):
            conv[..., a + b] += np.matmul(xd[..., a], yd[..., b])
    conv %= p
    red = _reduction_rows_fq(field)
    for t in range(2 * f - 2, f - 1, -1):
        top = conv[..., t]
        for s in range(f):
            if red[t - f][s]:
                conv[..., s] = (conv[..., s] + top * red[t - f][s]) % p
        conv[..., t] = 0
    out = np.zeros((B, n, n), dtype=np.int64)
    for k in range(f - 1, -1, -1):
        out = out * p + conv[..., k]
    return out


@lru_cache(maxsize=32)
def _reduction_rows_fq(field: FqTables):
    """Row t: x^(f+t) reduced mod the field polynomial, as digit tuples."""
    p, f = field.p, field.f
    rows = []
    for t in range(f - 1):
        vec = fppoly.mod_poly([0] * (f + t) + [1], list(field.poly), p)
        vec = list(vec) + [0] * (f - len(vec))
        rows.append(tuple(vec))
    return tuple(rows)


def assoc_poly_degree(A: FqMatrix) -> int:
    """deg of the distinguished factor of det((1+T)I - A): the dimension of
    the generalized 1-eigenspace, n - rank((A - I)^n)."""
    field = fq_field(A.q)
    arr = A.to_array()[None, :, :]
    n = A.n
    if _rank_fq(field, arr)[0] != n:
        raise ValueError("matrix is singular")
    ami = _sub_identity(field, arr)
    power = _mat_power_fq(field, ami, n)
    return n - int(_rank_fq(field, power)[0])


def _sub_identity(field: FqTables, mats: np.ndarray) -> np.ndarray:
    out = mats.copy()
    n = mats.shape[1]
    idx = np.arange(n)
    diag = out[:, idx, idx]
    out[:, idx, idx] = field.add_table[diag, field.neg_table[1]]
    return out


def _mat_power_fq(field: FqTables, mats: np.ndarray, e: int) -> np.ndarray:
    B, n, _ = mats.shape
    result = np.zeros_like(mats)
    result[:, np.arange(n), np.arange(n)] = 1
    base = mats
    while e:
        if e & 1:
            result = _matmul_fq(field, result, base)
        base = _matmul_fq(field, base, base)
        e >>= 1
    return result


def _degrees_of_batch(field: FqTables, mats: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(invertible mask, assoc degrees) for a stack of code matrices."""
    n = mats.shape[1]
    inv = _rank_fq(field, mats) == n
    ami = _sub_identity(field, mats)
    power = _mat_power_fq(field, ami, n)
    degs = n - _rank_fq(field, power)
    return inv, degs


@dataclass
class DegreeHistogram:
    n: int
    q: int
    samples: int
    seed: int
    counts: list[int]  # index r = 0..n
    attempts: int

    def proportions(self) -> list[float]:
        return [c / self.samples for c in self.counts]


def montecarlo(n: int, q: int, samples: int, seed: int, batch: int = 8192) -> DegreeHistogram:
    """Uniform GL(n, F_q) by rejection from uniform matrices; deterministic
    for a fixed seed (fixed batch size, single stream)."""
    field = fq_field(q)
    rng = np.random.default_rng(seed)
    counts = [0] * (n + 1)
    accepted = 0
    attempts = 0
    while accepted < samples:
        mats = rng.integers(0, q, size=(batch, n, n), dtype=np.int64)
        inv, degs = _degrees_of_batch(field, mats)
        need = samples - accepted
        cum = np.cumsum(inv)
        if cum.size and cum[-1] >= need:
            used = int(np.searchsorted(cum, need)) + 1  # draws consumed this batch
            got = degs[:used][inv[:used]]
            attempts += used
        else:
            got = degs[inv]
            attempts += batch
        for r, c in zip(*np.unique(got, return_counts=True)):
            counts[int(r)] += int(c)
        accepted += got.size
    return DegreeHistogram(n=n, q=q, samples=samples, seed=seed, counts=counts, attempts=attempts)


@dataclass
class SmallCaseCounts:
    n: int
    q: int
    gl_size: int
    proportions: list[Fraction]
    unipotent_counts: list[int]       # r x r unipotent matrices, r = 0..n
    no_fixed_eigen_counts: list[int]  # k x k with A, A-I invertible, k = 0..n
    decomposition_counts: list[int]   # GL(n)/(GL(r) x GL(n-r)), r = 0..n


def enumerate_small(n: int, q: int, budget: int = 40_000) -> SmallCaseCounts:
    """Exhaustive enumeration of GL(n, F_q) (q^(n^2) <= budget) together with
    the three counting quantities of the finite-n product formula."""
    if q ** (n * n) > budget:
        raise ValueError(f"q^(n^2) = {q**(n*n)} exceeds budget {budget}")
    field = fq_field(q)
    total = q ** (n * n)
    mats = np.zeros((total, n, n), dtype=np.int64)
    codes = np.arange(total)
    c = codes.copy()
    for idx in range(n * n):
        mats[:, idx // n, idx % n] = c % q
        c //= q
    inv, degs = _degrees_of_batch(field, mats)
    gl = int(inv.sum())
    hist = [0] * (n + 1)
    for r, cnt in zip(*np.unique(degs[inv], return_counts=True)):
        hist[int(r)] += int(cnt)
    proportions = [Fraction(h, gl) for h in hist]

    unipotent = [1]  # r = 0: the empty matrix
    no_fixed = [1]
    for k in range(1, n + 1):
        sub_total = q ** (k * k)
        sub = np.zeros((sub_total, k, k), dtype=np.int64)
        c = np.arange(sub_total)
        for idx in range(k * k):
            sub[:, idx // k, idx % k] = c % q
            c //= q
        sub_inv = _rank_fq(field, sub) == k
        ami = _sub_identity(field, sub)
        nilpotent = _rank_fq(field, _mat_power_fq(field, ami, k)) == 0
        unipotent.append(int((sub_inv & nilpotent).sum()))
        shifted_inv = _rank_fq(field, ami) == k
        no_fixed.append(int((sub_inv & shifted_inv).sum()))
    decomposition = [gl_size(n, q) // (gl_size(r, q) * gl_size(n - r, q)) for r in range(n + 1)]
    return SmallCaseCounts(
        n=n,
        q=q,
        gl_size=gl,
        proportions=proportions,
        unipotent_counts=unipotent,
        no_fixed_eigen_counts=no_fixed,
        decomposition_counts=decomposition,
    )
