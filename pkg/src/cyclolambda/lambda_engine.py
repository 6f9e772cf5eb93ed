"""The lambda-invariant engine.

For an even nontrivial first-kind character chi = theta * omega^i the Iwasawa
series G_chi(T) has mu = 0, so lambda is the index of its first unit
coefficient.  Two independent routes compute it:

Method "interpolation": evaluate G at the points (1+p)^(n-1) - 1 for C
exponents n = i + k(p-1) through the exact twisted-Bernoulli values
    G((1+p)^(n-1) - 1) = -(1 - theta(p) p^(n-1)) * B_{n,theta} / n,
then Lagrange-interpolate by divided differences over Q_q.  Coefficient j of
the interpolating polynomial matches the series coefficient to C - j digits,
so lambda-invariants below C are read off mod the uniformizer.  (The Euler
factor reads theta(p): the twist omega^{-n} trivializes on the nodes.)

Method "dirichlet-series": the regularized series expansion
    -(1 - theta omega^i(c) <c> (1+T)^l(c)) G(T)
      = sum_{a<=F, p∤a} eps_c(a) theta omega^{i-1}(a) (1+T)^l(a) + O(F/p^2),
with F = cond(theta) * p^depth, l(x) = -log<x>/log(1+p*cond) and
eps_c(a) = (c-1)/2 - (c*(c^{-1}a mod F) - a)/F  (for c = 2 this is the
classical (-1)^a/2).  Expanding binomially gives the initial coefficients of
the product series mod p^(depth-2); lambda of G is the first-unit index of
the product minus that of the regularization factor (lambda is additive and
only lambda is wanted, so no power-series division).  The regularization
point c must be invertible mod F, so even conductors fall back from 2 to the
smallest admissible c.

The two methods share nothing beyond the character code and the base p-adic
ops; their agreement is the primary correctness oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import padic
from .bernoulli import bulk_bernoulli
from .cyclotomic import CycRational
from .dirichlet import DirichletChar, TwistedChar
from .numutil import gcd, int_valuation
from .padic import PadicScalar, PrecisionError, build_extension, embed_cyclotomic

DEFAULT_POINTS = 15
DEFAULT_DEPTH = 4


class PrecisionExhausted(PrecisionError):
    """Every consulted coefficient is indistinguishable from zero."""


class MethodDisagreement(AssertionError):
    """The two lambda methods returned different invariants."""

    def __init__(self, message, result_one=None, result_two=None):
        super().__init__(message)
        self.result_one = result_one
        self.result_two = result_two


class LambdaRangeError(ArithmeticError):
    """lambda exceeds what the requested parameters can resolve."""


@dataclass
class PowerSeriesApprox:
    """Initial coefficients of G_chi with per-coefficient guaranteed digits."""

    field: padic.UnramifiedField
    coeffs: list
    guarantees: list[int]

    def evaluate(self, t: PadicScalar):
        acc = self.field.zero(self.field.prec)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc


@dataclass(frozen=True)
class LambdaResult:
    lam: int
    trivial_zero: bool
    order: int
    residue_degree: int
    method: str
    params: tuple
    lower_bound_only: bool = False
    agreement: bool | None = None
    series: PowerSeriesApprox | None = dc_field(default=None, compare=False, repr=False)

    @property
    def lam_corr(self) -> int:
        return self.lam - 1 if self.trivial_zero else self.lam

    def describe(self) -> str:
        mark = ">=" if self.lower_bound_only else "="
        return f"lambda {mark} {self.lam} (corr {mark} {self.lam_corr})"


def _validate(tc: TwistedChar) -> None:
    if not tc.is_even:
        raise padic.DomainError(f"{tc!r} is odd: lambda is defined for even characters")
    if tc.is_trivial:
        raise padic.DomainError("the trivial character has a pole, not a lambda-invariant")
    if tc.theta.order % tc.p == 0:
        raise padic.DomainError("p divides ord(theta): the extension would be ramified")


def interpolation_nodes(p: int, i: int, points: int, prec: int):
    """The first `points` pairs (n_k, t_k) with n_k = i + k(p-1), k >= 1,
    and t_k = (1+p)^(n_k - 1) - 1 as a scalar with at least `prec` digits."""
    if not 0 <= i <= p - 2:
        raise padic.DomainError("twist exponent out of range")
    if points < 2:
        raise padic.DomainError("need at least two interpolation points")
    buffer = prec + 8
    out = []
    k = 1
    while len(out) < points:
        n = i + k * (p - 1)
        k += 1
        if n < 1:
            continue
        t = (pow(1 + p, n - 1, p**buffer) - 1) % p**buffer
        out.append((n, PadicScalar.from_int_mod(t, p, buffer)))
    return out


def lvalue_at_node(theta: DirichletChar, i: int, n: int, fld, prec: int | None = None, cache=None):
    """-(1 - theta(p) p^(n-1)) * B_{n,theta} / n embedded in O_chi."""
    p = fld.p
    theta = theta.primitive_char()
    if theta.conductor % p == 0:
        raise padic.DomainError("p divides cond(theta)")
    if n < 1 or (n - i) % (p - 1) != 0:
        raise padic.DomainError("node exponent must be >= 1 and = i mod p-1")
    k = fld.prec if prec is None else prec
    bval = bulk_bernoulli(theta, [n], cache)[0]
    emb = embed_cyclotomic(bval, fld, k)
    theta_p = embed_cyclotomic(theta.evaluate(p), fld, k)
    euler = fld.one() - theta_p * PadicScalar(p, n - 1, 1, k)
    return -(euler * emb) / PadicScalar.from_int(n, p, k + int_valuation(n, p) + 1)


def _lambda_from_coefficients(coeffs, guarantees):
    """(lambda, lower_bound_only) by the first-unit rule; PrecisionExhausted
    when nothing is distinguishable from zero."""
    any_nonzero = False
    for j, (cj, ej) in enumerate(zip(coeffs, guarantees)):
        if min(ej, cj.abs_precision) < 1:
            if any_nonzero:
                return j, True  # lambda is at least j but undecidable here
            raise PrecisionExhausted(
                f"coefficient {j} carries no trusted digits (guarantee {ej})"
            )
        if cj.is_unit():
            return j, False
        if cj.is_provably_nonzero():
            any_nonzero = True
    if not any_nonzero:
        raise PrecisionExhausted("all consulted coefficients are indistinguishable from 0")
    return len(coeffs), True


def lambda_method_one(
    theta: DirichletChar,
    i: int,
    p: int,
    points: int = DEFAULT_POINTS,
    prec: int | None = None,
    cache=None,
    factor_index: int = 0,
) -> LambdaResult:
    """Bernoulli-interpolation route."""
    tc = TwistedChar(theta, i, p)
    _validate(tc)
    theta = tc.theta
    C = points
    K = (C + 10) if prec is None else prec
    fld = build_extension(p, theta.order, K, factor_index)
    nodes = interpolation_nodes(p, i, C, K)
    ns = [n for n, _ in nodes]
    ts = [t for _, t in nodes]
    bvals = bulk_bernoulli(theta, ns, cache)
    ys = []
    for (n, _), bval in zip(nodes, bvals):
        emb = embed_cyclotomic(bval, fld, K)
        theta_p = embed_cyclotomic(theta.evaluate(p), fld, K)
        euler = fld.one() - theta_p * PadicScalar(p, n - 1, 1, K)
        ys.append(-(euler * emb) / PadicScalar.from_int(n, p, K + int_valuation(n, p) + 1))

    # divided differences: dd[j] ends as f[t_0..t_j]
    dd = list(ys)
    for level in range(1, C):
        for k in range(C - 1, level - 1, -1):
            dd[k] = (dd[k] - dd[k - 1]) / (ts[k] - ts[k - level])

    # Newton form -> monomial coefficients
    coeffs = [fld.zero(K) for _ in range(C)]
    basis = [PadicScalar.from_int(1, p, K + 8)]
    for j in range(C):
        for t_idx, b in enumerate(basis):
            coeffs[t_idx] = coeffs[t_idx] + dd[j] * b
        if j < C - 1:
            new_basis = [PadicScalar.zero(p, K + 8) for _ in range(len(basis) + 1)]
            for t_idx, b in enumerate(basis):
                new_basis[t_idx + 1] = new_basis[t_idx + 1] + b
                new_basis[t_idx] = new_basis[t_idx] - b * ts[j]
            basis = new_basis

    guarantees = [min(C - j, coeffs[j].abs_precision) for j in range(C)]
    lam, lower = _lambda_from_coefficients(coeffs, guarantees)
    series = PowerSeriesApprox(fld, coeffs, guarantees)
    return LambdaResult(
        lam=lam,
        trivial_zero=tc.trivial_zero,
        order=tc.order,
        residue_degree=tc.residue_degree,
        method="interpolation",
        params=(("points", C), ("precision", K)),
        lower_bound_only=lower,
        series=series,
    )


# ---------------------------------------------------------------------------
# Method II: regularized p-adic Dirichlet series
# ---------------------------------------------------------------------------


def _choose_reg_point(F: int) -> int:
    c = 2
    while gcd(c, F) != 1:
        c += 1
    return c


def _vector_log(u: np.ndarray, p: int, w: int) -> np.ndarray:
    """log of principal units, elementwise, correct mod p^(w - guard) where
    guard covers the division valuations; callers pass w with headroom."""
    mod = p**w
    z = (u - 1) % mod
    kmax = 1
    while kmax - (int_valuation(kmax, p) if kmax % p == 0 else 0) < w:
        kmax += 1
    zk = z.copy()
    total = z % mod
    for k in range(2, kmax + 1):
        zk = zk * z % mod
        vk = int_valuation(k, p) if k % p == 0 else 0
        term = zk // p**vk * pow(k // p**vk, -1, mod) % mod
        if k % 2 == 0:
            total = (total - term) % mod
        else:
            total = (total + term) % mod
    return total


class _SeriesTensor:
    """Twist-independent part of Method II for one (theta, p): the tensor
    R[s*p + r, j] = sum over a <= F with theta-exponent s, a = r mod p of
    2 eps_c(a) binom(l(a), j), reduced mod p^trust."""

    def __init__(self, theta: DirichletChar, p: int, depth: int, J: int, c: int | None):
        d = theta.conductor
        m = theta.order
        F = d * p**depth
        if c is None:
            c = _choose_reg_point(F)
        if gcd(c, F) != 1:
            raise padic.DomainError(f"regularization point {c} shares a factor with F = {F}")
        self.theta, self.p, self.depth, self.J, self.c = theta, p, depth, J, c
        self.trust = depth - 2
        if self.trust < 1:
            raise padic.DomainError("series depth must be at least 3")
        vJ = _fact_val(J - 1, p)
        L = self.trust + vJ  # l(a) precision needed for all binomials
        guard = 1
        while True:  # enough headroom for the k-divisions inside the log series
            w_u = L + 1 + guard
            kmax = 1
            while kmax - (int_valuation(kmax, p) if kmax % p == 0 else 0) < w_u:
                kmax += 1
            worst = max(
                (int_valuation(k, p) for k in range(p, kmax + 1, p)), default=0
            )
            if worst <= guard:
                break
            guard = worst
        if p ** (2 * w_u) > 2**62:
            raise padic.DomainError("working modulus too large for vectorized path")
        mod_u = p**w_u
        mod_l = p**L

        om = [0] * p
        om_inv = [0] * p
        for r in range(1, p):
            om[r] = padic.teichmuller(r, p, w_u).lift()
            om_inv[r] = pow(om[r], -1, mod_u)
        om_inv_arr = np.array(om_inv, dtype=np.int64)

        theta_exp = np.full(d, -1, dtype=np.int64)
        for a in range(d):
            e = theta.value_exponent(a)
            if e is not None:
                theta_exp[a] = e
        if d == 1:
            theta_exp[0] = 0

        log_1pd = padic.padic_log(PadicScalar.from_int(1 + p * d, p, w_u + 2))
        ell_inv = pow(log_1pd.residue(L + 1) // p, -1, mod_l)
        c_inv_F = pow(c, -1, F)

        R = np.zeros((m * p, J), dtype=np.int64)
        chunk = 1 << 18
        for lo in range(1, F + 1, chunk):
            hi = min(lo + chunk, F + 1)
            a = np.arange(lo, hi, dtype=np.int64)
            keep = (a % p != 0) & (theta_exp[a % d] >= 0)
            a = a[keep]
            if a.size == 0:
                continue
            u = a % mod_u * om_inv_arr[a % p] % mod_u
            lg = _vector_log(u, p, w_u)
            l_arr = lg % p ** (L + 1) // p * ell_inv % mod_l
            t_arr = (c * (c_inv_F * a % F) - a) // F
            w2 = (c - 1) - 2 * t_arr  # 2 * eps_c(a)
            key = theta_exp[a % d] * p + a % p
            bj = np.ones(a.size, dtype=np.int64)
            lj = L
            for j in range(J):
                if j > 0:
                    bj = bj * ((l_arr - (j - 1)) % mod_l) % mod_l
                    vj = int_valuation(j, p) if j % p == 0 else 0
                    bj = bj % p**lj // p**vj * pow(j // p**vj, -1, mod_l) % p ** (lj - vj)
                    lj -= vj
                contrib = np.bincount(
                    key, weights=(w2 * (bj % p**self.trust)).astype(np.float64), minlength=m * p
                )
                R[:, j] = (R[:, j] + contrib.astype(np.int64)) % p**self.trust
        self.R = R % p**self.trust


def _fact_val(n: int, p: int) -> int:
    v = 0
    q = p
    while q <= n:
        v += n // q
        q *= p
    return v


_tensor_cache: dict[tuple, _SeriesTensor] = {}


def _series_tensor(theta: DirichletChar, p: int, depth: int, J: int, c: int | None) -> _SeriesTensor:
    key = (theta.label, p, depth, J, c)
    if key not in _tensor_cache:
        if len(_tensor_cache) > 8:
            _tensor_cache.clear()
        _tensor_cache[key] = _SeriesTensor(theta, p, depth, J, c)
    return _tensor_cache[key]


def dirichlet_series_coefficients(
    theta: DirichletChar,
    i: int,
    p: int,
    depth: int = DEFAULT_DEPTH,
    coeff_count: int | None = None,
    reg_point: int | None = None,
    factor_index: int = 0,
):
    """(product-series coefficients a_j, factor coefficients b_j, c) of the
    regularized expansion; a_j are trusted mod p^(depth-2)."""
    tc = TwistedChar(theta, i, p)
    _validate(tc)
    theta = tc.theta
    J = (p + 2) if coeff_count is None else coeff_count
    tensor = _series_tensor(theta, p, depth, J, reg_point)
    c = tensor.c
    trust = tensor.trust
    m = theta.order
    fld = build_extension(p, m, max(trust + 2, 6), factor_index)

    # assemble a_j = (1/2) sum_{s,r} zeta^s omega(r)^(i-1) R[s*p+r, j]
    mod_t = p**trust
    e_om = (i - 1) % (p - 1)
    om_pow = [0] * p
    for r in range(1, p):
        om_pow[r] = pow(padic.teichmuller(r, p, trust).lift(), e_om, mod_t)
    half = PadicScalar.from_fraction(Fraction(1, 2), p, trust)
    emb_zeta = [embed_cyclotomic(_zeta_power(m, s), fld, trust) for s in range(m)]
    avals = []
    for j in range(J):
        acc = fld.zero(trust)
        for s in range(m):
            scalar = 0
            for r in range(1, p):
                scalar = (scalar + om_pow[r] * tensor.R[s * p + r, j]) % mod_t
            if scalar:
                acc = acc + emb_zeta[s] * PadicScalar.from_int_mod(scalar, p, trust)
        avals.append(acc * half)

    # regularization factor b_j = [j=0] - theta omega^i(c) <c> binom(l(c), j)
    wb = trust + 6
    fldb = build_extension(p, m, wb, factor_index)
    theta_c = embed_cyclotomic(theta.evaluate(c), fldb, wb)
    om_c_i = padic.teichmuller(c, p, wb) ** i
    pc = padic.principal_unit(c, p, wb)
    log_c = padic.padic_log(pc)
    log_1pd = padic.padic_log(PadicScalar.from_int(1 + p * theta.conductor, p, wb + 2))
    lc = -(log_c / log_1pd)
    head = theta_c * om_c_i * pc
    bvals = []
    binom = PadicScalar.from_int(1, p, wb)
    for j in range(J):
        if j > 0:
            binom = binom * (lc - (j - 1)) / PadicScalar.from_int(j, p, wb)
        term = -(head * binom)
        bvals.append(term + 1 if j == 0 else term)
    return avals, bvals, c


def lambda_method_two(
    theta: DirichletChar,
    i: int,
    p: int,
    depth: int = DEFAULT_DEPTH,
    coeff_count: int | None = None,
    reg_point: int | None = None,
    factor_index: int = 0,
) -> LambdaResult:
    """p-adic Dirichlet series route."""
    tc = TwistedChar(theta, i, p)
    _validate(tc)
    J = (p + 2) if coeff_count is None else coeff_count
    avals, bvals, c = dirichlet_series_coefficients(
        theta, i, p, depth=depth, coeff_count=coeff_count, reg_point=reg_point, factor_index=factor_index
    )
    trust = depth - 2
    lam_fac, fac_lower = _lambda_from_coefficients(bvals, [10**9] * J)
    if fac_lower:
        raise PrecisionExhausted("regularization factor has no unit coefficient in range")
    lam_lhs, lhs_lower = _lambda_from_coefficients(avals, [trust] * J)
    if not lhs_lower and lam_lhs < lam_fac:
        raise MethodDisagreement(
            f"product series has lambda {lam_lhs} below the factor's {lam_fac}"
        )
    lam = lam_lhs - lam_fac
    return LambdaResult(
        lam=lam,
        trivial_zero=tc.trivial_zero,
        order=tc.order,
        residue_degree=tc.residue_degree,
        method="dirichlet-series",
        params=(("depth", depth), ("coeff_count", J), ("reg_point", c), ("lambda_factor", lam_fac)),
        lower_bound_only=lhs_lower,
    )


def _zeta_power(m: int, s: int) -> CycRational:
    from .cyclotomic import root_of_unity_power

    return root_of_unity_power(m, s)


def lambda_crosscheck(
    theta: DirichletChar,
    i: int,
    p: int,
    points: int = DEFAULT_POINTS,
    depth: int = DEFAULT_DEPTH,
    prec: int | None = None,
    cache=None,
    factor_index: int = 0,
) -> LambdaResult:
    """Run both methods and insist they agree; this is the primary oracle."""
    r1 = lambda_method_one(theta, i, p, points=points, prec=prec, cache=cache, factor_index=factor_index)
    r2 = lambda_method_two(theta, i, p, depth=depth, factor_index=factor_index)
    if r2.lower_bound_only and not r1.lower_bound_only and r1.lam >= r2.lam:
        # default coefficient window cannot see this far; widen once
        r2 = lambda_method_two(
            theta, i, p, depth=depth, coeff_count=r1.lam + p + 4, factor_index=factor_index
        )
    if r1.lower_bound_only or r2.lower_bound_only:
        if r1.lower_bound_only and r2.lower_bound_only:
            raise LambdaRangeError(
                f"lambda of {theta.label}@w{i} (p={p}) exceeds both methods' range"
            )
        numeric, bound = (r1, r2) if r2.lower_bound_only else (r2, r1)
        if numeric.lam < bound.lam:
            raise MethodDisagreement(
                f"numeric lambda {numeric.lam} below other method's bound {bound.lam}",
                r1,
                r2,
            )
        raise LambdaRangeError(
            f"lambda of {theta.label}@w{i} (p={p}) resolved by one method only"
        )
    if r1.lam != r2.lam:
        raise MethodDisagreement(
            f"methods disagree for {theta.label}@w{i}, p={p}: "
            f"interpolation gives {r1.lam}, series gives {r2.lam}",
            r1,
            r2,
        )
    return LambdaResult(
        lam=r1.lam,
        trivial_zero=r1.trivial_zero,
        order=r1.order,
        residue_degree=r1.residue_degree,
        method="crosscheck",
        params=r1.params + r2.params,
        agreement=True,
        series=r1.series,
    )
