"""Catalytic state conversion under thermal operations.

Gibbs vectors, the integer-multiplicity embedding channel, Renyi divergences
and generalized free energies, rational approximation of irrational thermal
spectra with the accompanying slack factors, and the two checkers: an exact
one for rational Gibbs vectors and a slack-adjusted one for irrational
spectra approximated within an l1 distance eps.

Convention: all vectors here are descending-sorted and paired index-wise
(entry i of a state vector corresponds to entry i of the Gibbs vector).
Callers whose spectra are not aligned this way must permute before building
the vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import mpmath
from mpmath import mpf

from .context import (
    DEFAULT_CONTEXT,
    Context,
    Number,
    Scalar,
    confirmed_less,
    is_zero,
    to_mpf,
    workprec,
)
from .errors import (
    DimMismatch,
    DegreeCapExceeded,
    EpsNonPositive,
    GibbsZeroEntry,
    InputError,
    SupportViolation,
)
from .majorization import CONSISTENT, REFUTED as ORACLE_REFUTED, GridSpec, OracleFailure
from .sympoly import STRICT_GREATER, STRICT_LESS, ComparisonReport, compare_F_family
from .trumping import (
    ExponentPair,
    H1Evidence,
    FULL_WEIGHT,
    WEIGHT_LESS,
    _bar,
)
from .vectors import ProbVector, _build, pointwise_power, shannon_entropy, uniform

SUFFICIENT = "sufficient"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"

RATIONAL_EXACT = "rational_exact"
SLACK_ADJUSTED = "slack_adjusted"

POS_INF = mpf("+inf")


@dataclass(frozen=True)
class ThermalSpec:
    """Energy spectrum, inverse temperature, partition function, Gibbs vector."""

    energies: Optional[Tuple[Scalar, ...]]
    beta: Optional[Scalar]
    Z: Scalar
    g: ProbVector


def gibbs_vector(energies: Sequence[Number], beta: Number,
                 ctx: Context = DEFAULT_CONTEXT) -> ThermalSpec:
    """Gibbs vector g_i proportional to exp(-beta E_i), sorted descending.

    beta = 0 gives the uniform vector exactly (rational in the exact
    backend); otherwise the entries are mpf at the context precision.
    """
    if len(energies) == 0:
        raise InputError("need at least one energy level")
    beta = Fraction(beta) if isinstance(beta, (int, str)) else beta
    if not beta >= 0:
        raise InputError("beta must be nonnegative")
    n = len(energies)
    if beta == 0:
        g = uniform(n, ctx)
        z = Fraction(n) if ctx.exact else mpf(n)
        with workprec(ctx):
            es = tuple(to_mpf(e, ctx) for e in energies)
        return ThermalSpec(es, Fraction(0) if ctx.exact else mpf(0), z, g)
    with workprec(ctx):
        es = tuple(to_mpf(e, ctx) for e in energies)
        bf = to_mpf(beta, ctx)
        weights = [mpmath.exp(-bf * e) for e in es]
        z = mpmath.fsum(weights)
        entries = [w / z for w in weights]
        g = _build(entries, False, ctx)
    return ThermalSpec(es, bf, z, g)


def thermal_from_gibbs(g: ProbVector) -> ThermalSpec:
    """Wrap a directly supplied Gibbs vector (log Z taken as 0)."""
    one = Fraction(1) if g.exact else mpf(1)
    return ThermalSpec(None, None, one, g)


@dataclass(frozen=True)
class EmbeddingSpec:
    """Integer multiplicities nu_i (summing to N) defining the embedding map.

    g_eps is the rational vector (nu_i / N); eps is the achieved l1 distance
    to the Gibbs vector it approximates.
    """

    nu: Tuple[int, ...]
    N: int
    g_eps: ProbVector
    eps: Scalar

    def __post_init__(self):
        if sum(self.nu) != self.N:
            raise InputError("multiplicities must sum to N")
        if any(v < 1 for v in self.nu):
            raise InputError("multiplicities must be positive")


def embedding_from_rational(g_eps: ProbVector, g: Optional[ProbVector] = None,
                            ctx: Context = DEFAULT_CONTEXT) -> EmbeddingSpec:
    """Embedding spec of an exactly rational vector; eps measured against g."""
    if not g_eps.exact:
        raise InputError("g_eps must be exactly rational")
    if not g_eps.full_weight:
        raise GibbsZeroEntry("g_eps must have full weight")
    if g is not None and g.dim != g_eps.dim:
        raise DimMismatch(f"g_eps dim {g_eps.dim} != g dim {g.dim}")
    denominators = [e.denominator for e in g_eps.entries]
    n_common = math.lcm(*denominators)
    nu = tuple(int(e * n_common) for e in g_eps.entries)
    if g is None or (g.exact and g.entries == g_eps.entries):
        eps_achieved: Scalar = Fraction(0)
    elif g.exact:
        eps_achieved = sum(abs(a - b) for a, b in zip(g.entries, g_eps.entries))
    else:
        with workprec(ctx):
            eps_achieved = mpmath.fsum(
                abs(to_mpf(a, ctx) - to_mpf(b, ctx))
                for a, b in zip(g.entries, g_eps.entries))
    return EmbeddingSpec(nu, n_common, g_eps, eps_achieved)


def rational_approx(g: ProbVector, eps: Number,
                    ctx: Context = DEFAULT_CONTEXT) -> EmbeddingSpec:
    """Rational vector nu/N' within l1 distance eps of g.

    Exactly rational inputs return their reduced form with zero error.
    Otherwise the denominator N' exceeds both dim/eps and 1/g_min, entries
    are floored, and the floor deficit is distributed to the largest
    fractional parts so the multiplicities sum exactly to N'.
    """
    eps_frac = Fraction(eps) if not isinstance(eps, Fraction) else eps
    if eps_frac <= 0:
        raise EpsNonPositive(f"eps = {eps_frac} must be positive")
    if not g.full_weight:
        raise GibbsZeroEntry("Gibbs vector must have full weight")
    if g.exact:
        return embedding_from_rational(g, g, ctx)
    d = g.dim
    with workprec(ctx):
        g_min = to_mpf(g.min_nonzero, ctx)
        n_prime = max(int(d / eps_frac) + 1, int(mpmath.floor(1 / g_min)) + 1, d)
        floors = [int(mpmath.floor(to_mpf(e, ctx) * n_prime)) for e in g.entries]
        fracs = [to_mpf(e, ctx) * n_prime - f for e, f in zip(g.entries, floors)]
        deficit = n_prime - sum(floors)
        order = sorted(range(d), key=lambda i: (-fracs[i], i))
        for i in order[:deficit]:
            floors[i] += 1
        g_eps = _build([Fraction(f, n_prime) for f in floors], True,
                       ctx.with_backend("exact"))
        achieved = mpmath.fsum(abs(to_mpf(a, ctx) - to_mpf(b, ctx))
                               for a, b in zip(g.entries, g_eps.entries))
    if achieved > to_mpf(eps_frac, ctx):
        raise InputError(f"approximation missed its target: {achieved} > {eps_frac}")
    return EmbeddingSpec(tuple(floors), n_prime, g_eps, achieved)


def embed(q: ProbVector, spec: EmbeddingSpec,
          ctx: Context = DEFAULT_CONTEXT) -> ProbVector:
    """Replicate entry i into nu_i equal parts q_i/nu_i; output dim N.

    Maps g_eps itself to the uniform vector and preserves Renyi divergences
    against g_eps.
    """
    if q.dim != len(spec.nu):
        raise DimMismatch(f"vector dim {q.dim} != multiplicity count {len(spec.nu)}")
    entries = []
    for qi, vi in zip(q.entries, spec.nu):
        entries.extend([qi / vi] * vi)
    return _build(entries, q.exact, ctx)


def renyi_divergence(x: ProbVector, g: ProbVector, p: Number,
                     ctx: Context = DEFAULT_CONTEXT) -> mpf:
    """Renyi divergence of order p in bits; +inf for p < 0 off full weight.

    p = 1 is the Kullback-Leibler divergence; p = 0 the min-divergence
    -log2 of the g-mass of x's support.  Entries are paired index-wise.
    """
    if x.dim != g.dim:
        raise DimMismatch(f"dims {x.dim} and {g.dim} differ")
    for xi, gi in zip(x.entries, g.entries):
        if not is_zero(xi, ctx) and is_zero(gi, ctx):
            raise SupportViolation("support(x) must lie inside support(g)")
    with workprec(ctx):
        pf = to_mpf(p, ctx)
        pairs = [(to_mpf(xi, ctx), to_mpf(gi, ctx))
                 for xi, gi in zip(x.entries, g.entries) if not is_zero(xi, ctx)]
        if pf == 1:
            return mpmath.fsum(xi * mpmath.log(xi / gi, 2) for xi, gi in pairs)
        if pf == 0:
            return -mpmath.log(mpmath.fsum(gi for _, gi in pairs), 2)
        if pf < 0 and not x.full_weight:
            return POS_INF
        total = mpmath.fsum(xi**pf * gi ** (1 - pf) for xi, gi in pairs)
        sign = mpf(1) if pf > 0 else mpf(-1)
        return sign / (pf - 1) * mpmath.log(total, 2)


def free_energy(x: ProbVector, spec: ThermalSpec, p: Number,
                kT: Number = 1, ctx: Context = DEFAULT_CONTEXT) -> mpf:
    """Generalized free energy kT * (D_p(x || g) - log2 Z), in bits * kT."""
    with workprec(ctx):
        kt = to_mpf(kT, ctx)
        if kt == 0:
            return mpf(0)
        div = renyi_divergence(x, spec.g, p, ctx)
        return kt * (div - mpmath.log(to_mpf(spec.Z, ctx), 2))


def continuity_bound(p: Number, eps: Number, g_min: Number,
                     ctx: Context = DEFAULT_CONTEXT) -> mpf:
    """Bound on |D_p(x||g_eps) - D_p(x||g)| for ||g - g_eps||_1 <= eps."""
    with workprec(ctx):
        epsf = to_mpf(eps, ctx)
        gmin = to_mpf(g_min, ctx)
        if not (epsf >= 0 and gmin > 0):
            raise InputError("need eps >= 0 and g_min > 0")
        base = mpmath.log(1 + epsf / gmin, 2)
        pf = to_mpf(p, ctx)
        if pf == 1:
            return base
        return max(mpf(1), pf / abs(pf - 1)) * base


def slack_factors(eps: Number, g_min: Number, N: int, r_bar: int, s_bar: int,
                  ctx: Context = DEFAULT_CONTEXT) -> Tuple[mpf, mpf]:
    """Multiplicative loosenings (A_r, A_s) absorbing the approximation error."""
    with workprec(ctx):
        epsf = to_mpf(eps, ctx)
        gmin = to_mpf(g_min, ctx)
        ratio = 1 + epsf / gmin
        inv_ar = max(mpf(2) ** (-(ratio ** (2 * r_bar)) / N),
                     mpf(2) ** (-2 * epsf / (N * gmin)))
        inv_as = mpf(2) ** (-(ratio ** (2 * (1 + s_bar)) - 1) / N)
        return 1 / inv_ar, 1 / inv_as


@dataclass(frozen=True)
class DivergenceScan:
    """Sampled necessary comparisons D_p(q_rho||g) > D_p(q_sigma||g)."""

    grid: Tuple[Fraction, ...]
    failures: Tuple[OracleFailure, ...]
    kl_ok: bool
    verdict: str
    refuted_at: Optional[str] = None

    @property
    def consistent(self) -> bool:
        return self.verdict == CONSISTENT


def divergence_scan(q_rho: ProbVector, q_sigma: ProbVector, g: ProbVector,
                    grid: Optional[GridSpec] = None,
                    ctx: Context = DEFAULT_CONTEXT) -> DivergenceScan:
    """Check D_p(q_rho||g) > D_p(q_sigma||g) on the grid plus the p=1 point."""
    grid = grid or GridSpec()
    points = tuple(grid.points())
    failures = []
    with workprec(ctx):
        for p in points:
            lhs = renyi_divergence(q_rho, g, p, ctx)
            rhs = renyi_divergence(q_sigma, g, p, ctx)
            if not lhs > rhs:
                failures.append(OracleFailure(p, lhs, rhs, "divergence (need >)"))
        kl_lhs = renyi_divergence(q_rho, g, 1, ctx)
        kl_rhs = renyi_divergence(q_sigma, g, 1, ctx)
    kl_ok = bool(kl_lhs > kl_rhs)
    if not kl_ok:
        failures.append(OracleFailure(None, kl_lhs, kl_rhs, "KL (need >)"))
    refuted_at = None
    if failures:
        first = failures[0]
        refuted_at = f"p={first.p}" if first.p is not None else "KL"
    verdict = CONSISTENT if not failures else ORACLE_REFUTED
    return DivergenceScan(points, tuple(failures), kl_ok, verdict, refuted_at)


@dataclass(frozen=True)
class ThermoVerdict:
    status: str
    reasons: Tuple[str, ...]
    path: str
    embedding: Optional[EmbeddingSpec]
    slack_used: Tuple[Scalar, Scalar]
    exponents: Optional[ExponentPair]
    closure_report: Optional[ComparisonReport]
    negative_report: Optional[ComparisonReport]
    h1: Optional[H1Evidence]
    weight_branch: Optional[str]
    oracle: Optional[DivergenceScan]
    cap_hit: bool = False

    @property
    def sufficient(self) -> bool:
        return self.status == SUFFICIENT


def check_thermo(q_rho: ProbVector, q_sigma: ProbVector, spec: ThermalSpec,
                 g_eps: Optional[ProbVector] = None,
                 eps: Number = Fraction(1, 1000),
                 ctx: Context = DEFAULT_CONTEXT,
                 with_oracle: bool = True,
                 grid: Optional[GridSpec] = None) -> ThermoVerdict:
    """Sufficient-condition checker for q_rho -> q_sigma under catalytic
    thermal operations.

    An exactly rational Gibbs vector (or a supplied g_eps that matches it)
    takes the zero-slack path; otherwise g is approximated within eps (or the
    supplied g_eps is used) and the condition families run with the adjusted
    exponents and slack factors.  A dense divergence scan against the true g
    is attached; a strict failure there refutes the transformation outright.
    """
    g = spec.g
    if not (q_rho.dim == q_sigma.dim == g.dim):
        raise DimMismatch("states and Gibbs vector must share a dimension")
    if not g.full_weight:
        raise GibbsZeroEntry("Gibbs vector must have full weight")

    oracle = divergence_scan(q_rho, q_sigma, g, grid, ctx) if with_oracle else None

    if g_eps is not None:
        embedding = embedding_from_rational(g_eps, g, ctx)
    elif g.exact:
        embedding = embedding_from_rational(g, g, ctx)
    else:
        embedding = rational_approx(g, eps, ctx)
    path = RATIONAL_EXACT if embedding.eps == 0 else SLACK_ADJUSTED

    def verdict(status, reasons, exponents=None, closure=None, negative=None,
                h1=None, branch=None, slack=(Fraction(1), Fraction(1)), cap=False):
        final = status
        final_reasons = list(reasons)
        if status != SUFFICIENT and oracle is not None and not oracle.consistent:
            final = REFUTED
            final_reasons.append(
                f"divergence scan refutes a necessary condition at {oracle.refuted_at}")
        return ThermoVerdict(final, tuple(final_reasons), path, embedding,
                             slack, exponents, closure, negative, h1, branch,
                             oracle, cap)

    n_embedded = embedding.N
    if n_embedded > ctx.embed_cap:
        return verdict(INCONCLUSIVE,
                       (f"embedding too large: N={n_embedded} > cap {ctx.embed_cap}",),
                       cap=True)

    x = embed(q_rho, embedding, ctx)
    y = embed(q_sigma, embedding, ctx)
    branch = FULL_WEIGHT if x.full_weight else WEIGHT_LESS

    with workprec(ctx):
        g_min = to_mpf(g.min_nonzero, ctx)
        eps_used = to_mpf(embedding.eps, ctx)
        ratio_sq = (1 + eps_used / g_min) ** 2
        log_n = mpmath.log(n_embedded, 2)
        x_top, y_top = to_mpf(x.top, ctx), to_mpf(y.top, ctx)
        x_min, y_min = to_mpf(x.min_nonzero, ctx), to_mpf(y.min_nonzero, ctx)
        r = r_bar = s = s_bar = None
        if n_embedded > 1 and x_top > y_top * ratio_sq:
            r = log_n / (mpmath.log(x_top, 2) - mpmath.log(y_top * ratio_sq, 2))
            r_bar = _bar(r)
        if n_embedded > 1 and y.full_weight and y_min > x_min * ratio_sq:
            s = log_n / (mpmath.log(y_min, 2) - mpmath.log(x_min * ratio_sq, 2))
            s_bar = _bar(s)
        entropy_margin = 2 * mpmath.log(1 + eps_used / g_min, 2)
    exponents = ExponentPair(r, r_bar, s, s_bar)

    h1_x = shannon_entropy(x, ctx)
    h1_y = shannon_entropy(y, ctx)
    if path == RATIONAL_EXACT:
        h1_holds = confirmed_less(h1_x, h1_y, ctx)
    else:
        h1_holds = confirmed_less(h1_x, h1_y - entropy_margin, ctx)
    h1 = H1Evidence(h1_x, h1_y, h1_holds)

    if not exponents.r_defined:
        return verdict(INCONCLUSIVE, ("r undefined (adjusted top-entry ratio not > 1)",),
                       exponents, h1=h1, branch=branch)

    if path == RATIONAL_EXACT:
        slack = (Fraction(1), Fraction(1))
        condition1_slack: Scalar = Fraction(1)
    else:
        a_r, a_s = slack_factors(embedding.eps, g_min, n_embedded, r_bar,
                                 s_bar if s_bar is not None else 1, ctx)
        slack = (a_r, a_s)
        condition1_slack = 1 / a_r

    # Strict family from k = r_bar + 1 (the k = r_bar coefficients of two
    # probability vectors are identical, so strictness there cannot hold).
    try:
        closure = compare_F_family(x, y, r_bar, (r_bar + 1, n_embedded * r_bar),
                                   STRICT_LESS, condition1_slack, ctx)
    except DegreeCapExceeded as exc:
        return verdict(INCONCLUSIVE, (f"degree cap: {exc}",), exponents,
                       h1=h1, branch=branch, slack=slack, cap=True)

    reasons = []
    if not closure.all_hold:
        reasons.append(f"embedded family fails at k in {closure.failing_k()[:8]}")
    if not h1.holds:
        reasons.append("H1 condition (with slack margin) not confirmed")
    if not y.full_weight:
        reasons.append("target lacks full weight after embedding; strict "
                       "negative-order conditions cannot hold")

    negative = None
    if not reasons and branch == FULL_WEIGHT:
        if not exponents.s_defined:
            reasons.append("s undefined (adjusted min-entry ratio not > 1)")
        else:
            recip_x = pointwise_power(x, -s_bar, ctx)
            recip_y = pointwise_power(y, -s_bar, ctx)
            negative = compare_F_family(recip_x, recip_y, 1, (1, n_embedded),
                                        STRICT_GREATER, slack[1], ctx)
            if not negative.all_hold:
                reasons.append(f"reciprocal family fails at k in {negative.failing_k()[:8]}")

    if reasons:
        return verdict(INCONCLUSIVE, reasons, exponents, closure, negative,
                       h1, branch, slack)
    return verdict(SUFFICIENT, (), exponents, closure, negative, h1, branch, slack)
