"""Scalar backends and the evaluation context.

Two scalar backends are supported.  The exact backend stores every quantity
as ``fractions.Fraction``; sums, products, integer powers and comparisons are
then free of rounding error, which is what makes the strict polynomial
inequalities decidable.  The float backend stores entries as ``mpmath.mpf``
at a configured mantissa precision (at least 128 bits).

Transcendental quantities (entropies, norms at non-integer p, divergences)
are always evaluated in mpmath at the context precision, regardless of the
backend; exactness only ever applies to rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Union

import mpmath
from mpmath import mpf

from .errors import InputError

Scalar = Union[Fraction, mpmath.mpf]
Number = Union[int, float, str, Fraction, mpmath.mpf]

EXACT = "exact"
FLOAT = "float"


@dataclass(frozen=True)
class Context:
    """Evaluation settings shared by all operations.

    backend        "exact" or "float"; controls how decimal inputs are stored.
    precision      mantissa bits for mpmath evaluation (>= 128).
    sum_tol        float-backend tolerance on |sum(entries) - 1|.
    zero_tol       float-backend threshold below which an entry counts as zero.
    rel_margin     relative margin a strict float comparison must clear before
                   it is treated as confirmed (never yields a false pass).
    lorenz_tol     slack allowed in float-backend Lorenz/majorization dominance.
    degree_cap     maximum polynomial degree n*r for coefficient families.
    embed_cap      maximum embedding dimension N.
    point_budget   maximum number of simplex grid points enumerated.
    """

    backend: str = EXACT
    precision: int = 256
    sum_tol: float = 1e-9
    zero_tol: float = 1e-15
    rel_margin: float = 1e-20
    lorenz_tol: float = 1e-12
    degree_cap: int = 4096
    embed_cap: int = 10**4
    point_budget: int = 10**7

    def __post_init__(self):
        if self.backend not in (EXACT, FLOAT):
            raise InputError(f"unknown backend {self.backend!r}")
        if self.precision < 128:
            raise InputError("float precision must be at least 128 bits")

    @property
    def exact(self) -> bool:
        return self.backend == EXACT

    def with_backend(self, backend: str) -> "Context":
        return replace(self, backend=backend)


DEFAULT_CONTEXT = Context()


def workprec(ctx: Context):
    """mpmath precision guard for every transcendental evaluation."""
    return mpmath.mp.workprec(ctx.precision)


def parse_exact(value: Number) -> Fraction:
    """Parse a number literal as an exact rational.

    Decimal strings are read digit-for-digit ("0.61" -> 61/100).  Binary
    floats are interpreted through their shortest decimal representation, so
    a literal 0.61 also becomes 61/100 rather than its binary expansion.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, mpmath.mpf):
        if not mpmath.isfinite(value):
            raise InputError(f"cannot represent {value} exactly")
        sign, man, exp, _ = value._mpf_
        frac = Fraction(man) * Fraction(2) ** exp
        return -frac if sign else frac
    raise InputError(f"cannot parse {value!r} as an exact rational")


def parse_float(value: Number, ctx: Context = DEFAULT_CONTEXT) -> mpf:
    """Parse a number literal as an mpf at the context precision."""
    with workprec(ctx):
        if isinstance(value, Fraction):
            return mpf(value.numerator) / mpf(value.denominator)
        if isinstance(value, (int, float, str, mpmath.mpf)):
            return mpf(value)
    raise InputError(f"cannot parse {value!r} as a float scalar")


def parse_scalar(value: Number, ctx: Context = DEFAULT_CONTEXT) -> Scalar:
    """Parse a number literal according to the context backend."""
    if ctx.exact:
        return parse_exact(value)
    return parse_float(value, ctx)


def to_mpf(value: Scalar, ctx: Context = DEFAULT_CONTEXT) -> mpf:
    """Lossless-enough conversion of any scalar to mpf for evaluation."""
    if isinstance(value, Fraction):
        with workprec(ctx):
            return mpf(value.numerator) / mpf(value.denominator)
    with workprec(ctx):
        return mpf(value)


def is_zero(value: Scalar, ctx: Context = DEFAULT_CONTEXT) -> bool:
    """Zero test: exact equality for rationals, threshold for floats.

    The weight of a vector decides which theorem branch applies, so the
    threshold must be unambiguous.
    """
    if isinstance(value, Fraction):
        return value == 0
    return abs(value) < ctx.zero_tol


def confirmed_greater(a: mpf, b: mpf, ctx: Context = DEFAULT_CONTEXT) -> bool:
    """True only when a > b clears the relative confirmation margin.

    Used on the sufficiency side of every float comparison: a result inside
    the margin is never promoted to a pass.  The margin scales with the
    operands (coefficients can be astronomically small), and NaN (e.g.
    inf - inf) confirms nothing.
    """
    diff = a - b
    if mpmath.isnan(diff):
        return False
    if mpmath.isinf(diff):
        return diff > 0
    scale = max(abs(a), abs(b))
    return diff > ctx.rel_margin * scale


def confirmed_less(a: mpf, b: mpf, ctx: Context = DEFAULT_CONTEXT) -> bool:
    return confirmed_greater(b, a, ctx)


def scalar_str(value: Scalar, digits: int = 36) -> str:
    """Render a scalar for reports: fractions exactly, floats to `digits`."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, mpmath.mpf):
        return mpmath.nstr(value, digits)
    return str(value)
