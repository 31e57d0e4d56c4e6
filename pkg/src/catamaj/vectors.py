"""Probability vectors with the norm and entropy functionals used throughout.

A ``ProbVector`` stores its entries sorted in non-increasing order, tracks
its weight (number of nonzero entries) and whether the entries are exact
rationals.  All functionals here are pure; vectors are immutable and safe to
share across threads.

Conventions:

* the scaled p-norm is the power mean ((1/n) sum x_i^p)^(1/p); at p = 0 it is
  the geometric mean; for p < 0 it is 0 whenever the vector has a zero entry,
  which makes it continuous in p;
* entropies are reported in bits (base-2 logarithms) and evaluate to -inf on
  zero entries when the order is negative (or for the Burg entropy);
* 0^p = 0 for every real p in pointwise powers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

import mpmath
from mpmath import mpf

from .context import (
    DEFAULT_CONTEXT,
    Context,
    Number,
    Scalar,
    is_zero,
    parse_scalar,
    to_mpf,
    workprec,
)
from .errors import (
    EmptyInput,
    NegativeEntry,
    PZero,
    ReciprocalOfZero,
    SumNotOne,
)

NEG_INF = mpf("-inf")


@dataclass(frozen=True)
class ProbVector:
    """A probability vector, sorted non-increasing, with tracked weight."""

    entries: Tuple[Scalar, ...]
    weight: int
    exact: bool

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def top(self) -> Scalar:
        return self.entries[0]

    @property
    def min_nonzero(self) -> Scalar:
        """Smallest nonzero entry (the vector must have weight >= 1)."""
        return self.entries[self.weight - 1]

    @property
    def full_weight(self) -> bool:
        return self.weight == self.dim

    def padded(self, dim: int) -> "ProbVector":
        """Zero-pad to `dim` entries; weight is unchanged."""
        if dim <= self.dim:
            return self
        zero = Fraction(0) if self.exact else mpf(0)
        return ProbVector(self.entries + (zero,) * (dim - self.dim), self.weight, self.exact)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def _build(entries: Iterable[Scalar], exact: bool, ctx: Context) -> ProbVector:
    ordered = tuple(sorted(entries, reverse=True))
    weight = sum(1 for e in ordered if not is_zero(e, ctx))
    return ProbVector(ordered, weight, exact)


def make_prob_vector(raw: Sequence[Number], ctx: Context = DEFAULT_CONTEXT,
                     tolerate_sum: Number = None) -> ProbVector:
    """Parse, validate and sort a probability vector.

    Raises EmptyInput, NegativeEntry, or SumNotOne (exact backend requires
    the sum to be exactly one; float backend allows |sum - 1| <= sum_tol).
    `tolerate_sum` widens the sum check to the given deviation in either
    backend, for ingesting published vectors whose printed digits do not
    quite normalize; entries are kept exactly as given, never rescaled.
    """
    if len(raw) == 0:
        raise EmptyInput("probability vector needs at least one entry")
    entries = [parse_scalar(v, ctx) for v in raw]
    for e in entries:
        if e < 0:
            raise NegativeEntry(f"negative entry {e}")
    total = sum(entries)
    deviation = total - 1
    if tolerate_sum is not None:
        if abs(deviation) > parse_scalar(tolerate_sum, ctx):
            raise SumNotOne(total, deviation)
    elif ctx.exact:
        if total != 1:
            raise SumNotOne(total, deviation)
    else:
        if abs(deviation) > ctx.sum_tol:
            raise SumNotOne(total, deviation)
    return _build(entries, ctx.exact, ctx)


def uniform(dim: int, ctx: Context = DEFAULT_CONTEXT) -> ProbVector:
    """The uniform vector u_dim."""
    if dim < 1:
        raise EmptyInput("dimension must be positive")
    if ctx.exact:
        return _build([Fraction(1, dim)] * dim, True, ctx)
    with workprec(ctx):
        return _build([mpf(1) / dim] * dim, False, ctx)


def pad_pair(x: ProbVector, y: ProbVector) -> Tuple[ProbVector, ProbVector]:
    """Zero-pad the shorter vector so both share a dimension."""
    dim = max(x.dim, y.dim)
    return x.padded(dim), y.padded(dim)


def common_backend(vectors: Sequence[ProbVector], ctx: Context = DEFAULT_CONTEXT) -> Tuple[ProbVector, ...]:
    """Coerce a family of vectors to one backend (float wins over exact)."""
    if all(v.exact for v in vectors) or all(not v.exact for v in vectors):
        return tuple(vectors)
    out = []
    for v in vectors:
        if v.exact:
            entries = tuple(to_mpf(e, ctx) for e in v.entries)
            out.append(ProbVector(entries, v.weight, False))
        else:
            out.append(v)
    return tuple(out)


def tensor(x: ProbVector, y: ProbVector, ctx: Context = DEFAULT_CONTEXT) -> ProbVector:
    """Tensor product: all pairwise products, re-sorted descending."""
    x, y = common_backend((x, y), ctx)
    products = [a * b for a in x.entries for b in y.entries]
    return _build(products, x.exact and y.exact, ctx)


def pointwise_power(x: ProbVector, m: Number, ctx: Context = DEFAULT_CONTEXT) -> Tuple[Scalar, ...]:
    """Entrywise x^m with 0^m = 0, re-sorted descending; not renormalized.

    Negative m requires full weight (reciprocals of zero are rejected).
    Integer m on an exact vector stays exact; otherwise the result is mpf.
    """
    m_frac = Fraction(m) if isinstance(m, (int, float, Fraction)) else None
    negative = m_frac < 0 if m_frac is not None else to_mpf(m, ctx) < 0
    if negative and not x.full_weight:
        raise ReciprocalOfZero(f"weight {x.weight} < dim {x.dim}")
    if x.exact and m_frac is not None and m_frac.denominator == 1:
        powered = [e ** m_frac.numerator if e != 0 else Fraction(0) for e in x.entries]
        return tuple(sorted(powered, reverse=True))
    with workprec(ctx):
        me = to_mpf(m if m_frac is None else m_frac, ctx)
        powered = []
        for e in x.entries:
            fe = to_mpf(e, ctx)
            powered.append(mpf(0) if fe == 0 else fe ** me)
        return tuple(sorted(powered, reverse=True))


def pointwise_reciprocal(x: ProbVector, ctx: Context = DEFAULT_CONTEXT) -> Tuple[Scalar, ...]:
    """Entrywise 1/x, re-sorted descending; requires full weight."""
    return pointwise_power(x, -1, ctx)


def _as_entries(x: Union[ProbVector, Sequence[Scalar]]) -> Tuple[Scalar, ...]:
    if isinstance(x, ProbVector):
        return x.entries
    return tuple(x)


def _weight_of(entries: Sequence[Scalar], ctx: Context) -> int:
    return sum(1 for e in entries if not is_zero(e, ctx))


def scaled_p_norm(x: Union[ProbVector, Sequence[Scalar]], p: Number,
                  ctx: Context = DEFAULT_CONTEXT) -> mpf:
    """Power mean ((1/n) sum x_i^p)^(1/p), with the degenerate conventions.

    p = 0 gives the geometric mean; p < 0 gives 0 when some entry is zero.
    """
    entries = _as_entries(x)
    n = len(entries)
    weight = x.weight if isinstance(x, ProbVector) else _weight_of(entries, ctx)
    with workprec(ctx):
        pf = to_mpf(p, ctx)
        values = [to_mpf(e, ctx) for e in entries]
        if pf == 0:
            if weight < n:
                return mpf(0)
            return mpmath.exp(mpmath.fsum(mpmath.ln(v) for v in values) / n)
        if pf < 0 and weight < n:
            return mpf(0)
        mean = mpmath.fsum((v ** pf) for v in values if v != 0) / n
        return mean ** (1 / pf)


def renyi_entropy(x: Union[ProbVector, Sequence[Scalar]], p: Number,
                  ctx: Context = DEFAULT_CONTEXT) -> mpf:
    """Renyi entropy of order p in bits; -inf for p < 0 on deficient weight.

    p = 0 is rejected (PZero): use burg_entropy for the p -> 0 condition.
    """
    entries = _as_entries(x)
    n = len(entries)
    weight = x.weight if isinstance(x, ProbVector) else _weight_of(entries, ctx)
    with workprec(ctx):
        pf = to_mpf(p, ctx)
        if pf == 0:
            raise PZero("Renyi entropy undefined at p=0; use burg_entropy")
        values = [to_mpf(e, ctx) for e in entries]
        if pf == 1:
            return -mpmath.fsum(v * mpmath.log(v, 2) for v in values if v != 0)
        if pf < 0 and weight < n:
            return NEG_INF
        power_sum = mpmath.fsum(v ** pf for v in values if v != 0)
        sign = mpf(1) if pf > 0 else mpf(-1)
        return sign / (1 - pf) * mpmath.log(power_sum, 2)


def shannon_entropy(x: Union[ProbVector, Sequence[Scalar]],
                    ctx: Context = DEFAULT_CONTEXT) -> mpf:
    """H_1 in bits (0 log 0 = 0)."""
    return renyi_entropy(x, 1, ctx)


def burg_entropy(x: Union[ProbVector, Sequence[Scalar]],
                 ctx: Context = DEFAULT_CONTEXT) -> mpf:
    """Burg entropy (1/n) sum log2 x_i; -inf when any entry is zero."""
    entries = _as_entries(x)
    n = len(entries)
    weight = x.weight if isinstance(x, ProbVector) else _weight_of(entries, ctx)
    if weight < n:
        return NEG_INF
    with workprec(ctx):
        values = [to_mpf(e, ctx) for e in entries]
        return mpmath.fsum(mpmath.log(v, 2) for v in values) / n
