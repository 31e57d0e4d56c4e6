"""Ground-truth relations and the brute-force machinery around them.

Everything in this module is independent of the polynomial sufficient
conditions: Nielsen majorization, Lorenz-curve dominance against a Gibbs
vector, direct verification of a proposed catalyst, exhaustive catalyst
search over a simplex grid, and a dense p-grid oracle for the strict norm
and entropy conditions.  The checkers cite these as corroboration; tests use
them as the source of truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Tuple

from mpmath import mpf

from .context import DEFAULT_CONTEXT, Context, Scalar, workprec
from .errors import DimMismatch, GibbsZeroEntry, GridTooLarge, InputError
from .vectors import (
    ProbVector,
    burg_entropy,
    common_backend,
    pad_pair,
    scaled_p_norm,
    shannon_entropy,
    tensor,
    uniform,
)

LOCC = "locc"
THERMO = "thermo"

CONSISTENT = "consistent"
REFUTED = "refuted"


def majorizes(y: ProbVector, x: ProbVector, ctx: Context = DEFAULT_CONTEXT) -> bool:
    """True iff x is majorized by y (descending partial sums of y dominate).

    Vectors of different dimension are zero-padded.  Exact inputs are
    compared exactly; float inputs allow the Lorenz tolerance as slack.
    """
    x, y = pad_pair(x, y)
    x, y = common_backend((x, y), ctx)
    slack = 0 if (x.exact and y.exact) else ctx.lorenz_tol
    sum_x = 0
    sum_y = 0
    for xi, yi in zip(x.entries, y.entries):
        sum_x += xi
        sum_y += yi
        if sum_x > sum_y + slack:
            return False
    return True


def _lorenz_points(pairs: List[Tuple[Scalar, Scalar]],
                   exact: bool) -> List[Tuple[Scalar, Scalar]]:
    """Breakpoints of the Lorenz curve of aligned (mass, gibbs-mass) pairs.

    Pairs are ranked by mass/gibbs-mass descending; the curve runs through
    the cumulative (gibbs-mass, mass) points from (0,0) onward and is concave.
    """
    order = sorted(range(len(pairs)), key=lambda i: pairs[i][0] / pairs[i][1],
                   reverse=True)
    zero = Fraction(0) if exact else mpf(0)
    points = [(zero, zero)]
    cum_g, cum_v = zero, zero
    for i in order:
        cum_g = cum_g + pairs[i][1]
        cum_v = cum_v + pairs[i][0]
        points.append((cum_g, cum_v))
    return points


def _curve_value(points: List[Tuple[Scalar, Scalar]], a: Scalar) -> Scalar:
    """Piecewise-linear interpolation of a Lorenz curve at abscissa a."""
    g_last, v_last = points[-1]
    if a >= g_last:
        return v_last
    for (g0, v0), (g1, v1) in zip(points, points[1:]):
        if a <= g1:
            if g1 == g0:
                return v1
            return v0 + (a - g0) * (v1 - v0) / (g1 - g0)
    return v_last


def _lorenz_dominates(pairs_p, pairs_q, exact: bool, ctx: Context) -> bool:
    """Dominance of two piecewise-linear Lorenz curves, decided at the union
    of their breakpoints (exact for rational inputs)."""
    with workprec(ctx):
        curve_p = _lorenz_points(pairs_p, exact)
        curve_q = _lorenz_points(pairs_q, exact)
        abscissae = sorted({pt[0] for pt in curve_p} | {pt[0] for pt in curve_q})
        slack = 0 if exact else ctx.lorenz_tol
        for a in abscissae:
            if _curve_value(curve_p, a) < _curve_value(curve_q, a) - slack:
                return False
    return True


def thermo_majorizes(p: ProbVector, q: ProbVector, g: ProbVector,
                     ctx: Context = DEFAULT_CONTEXT) -> bool:
    """True iff p thermo-majorizes q relative to the Gibbs vector g.

    Entries are paired index-wise, so p, q and g must describe the same basis
    order (the descending-sorted convention of this package).  With uniform g
    this reduces to plain majorization.  Note that composite problems cannot
    be formed with `tensor`, which re-sorts and breaks the pairing; use
    `verify_catalyst` in thermo mode, which keeps the products aligned.
    """
    if not (p.dim == q.dim == g.dim):
        raise DimMismatch(f"dims {p.dim}, {q.dim}, {g.dim} must agree")
    if not g.full_weight:
        raise GibbsZeroEntry("Gibbs vector must have full weight")
    p, q, g = common_backend((p, q, g), ctx)
    exact = p.exact and q.exact and g.exact
    pairs_p = list(zip(p.entries, g.entries))
    pairs_q = list(zip(q.entries, g.entries))
    return _lorenz_dominates(pairs_p, pairs_q, exact, ctx)


def verify_catalyst(x: ProbVector, y: ProbVector, c: ProbVector,
                    mode: str = LOCC,
                    g: Optional[ProbVector] = None,
                    g_cat: Optional[ProbVector] = None,
                    ctx: Context = DEFAULT_CONTEXT) -> bool:
    """Check a proposed catalyst c for the transformation x -> y.

    LOCC mode: does y (x) c majorize x (x) c?  Thermo mode: does x (x) c
    thermo-majorize y (x) c relative to g (x) g_cat?  The catalyst Gibbs
    vector defaults to uniform (trivial catalyst Hamiltonian).
    """
    x, y = pad_pair(x, y)
    if mode == LOCC:
        return majorizes(tensor(y, c, ctx), tensor(x, c, ctx), ctx)
    if mode == THERMO:
        if g is None:
            raise InputError("thermo mode requires the system Gibbs vector g")
        if g.dim != x.dim:
            raise DimMismatch(f"Gibbs dim {g.dim} != state dim {x.dim}")
        if not g.full_weight:
            raise GibbsZeroEntry("Gibbs vector must have full weight")
        if g_cat is None:
            g_cat = uniform(c.dim)
        elif g_cat.dim != c.dim:
            raise DimMismatch(f"catalyst Gibbs dim {g_cat.dim} != catalyst dim {c.dim}")
        # Composite products stay index-aligned with the composite Gibbs
        # weights; sorting them independently would scramble the pairing.
        x, y, c, g, g_cat = common_backend((x, y, c, g, g_cat), ctx)
        exact = all(v.exact for v in (x, y, c, g, g_cat))
        pairs_x = [(xi * cj, gi * hj)
                   for xi, gi in zip(x.entries, g.entries)
                   for cj, hj in zip(c.entries, g_cat.entries)]
        pairs_y = [(yi * cj, gi * hj)
                   for yi, gi in zip(y.entries, g.entries)
                   for cj, hj in zip(c.entries, g_cat.entries)]
        return _lorenz_dominates(pairs_x, pairs_y, exact, ctx)
    raise InputError(f"unknown catalyst mode {mode!r}")


def _count_sorted_points(m: int, dim: int) -> int:
    # partitions of m into at most dim parts (parts may repeat, order fixed)
    table = [[0] * (m + 1) for _ in range(dim + 1)]
    table[0][0] = 1
    for parts in range(1, dim + 1):
        for total in range(m + 1):
            table[parts][total] = table[parts - 1][total]
            if total >= parts:
                table[parts][total] += table[parts][total - parts]
    return table[dim][m]


def _descending_compositions(m: int, dim: int, cap: int) -> Iterator[Tuple[int, ...]]:
    """All (k_1..k_dim), k_1 >= ... >= k_dim >= 0, sum m, k_1 <= cap.

    Emitted in lexicographically descending order.
    """
    if dim == 1:
        if m <= cap:
            yield (m,)
        return
    lo = -(-m // dim)  # ceil(m/dim) keeps the remainder packable
    for first in range(min(m, cap), lo - 1, -1):
        for rest in _descending_compositions(m - first, dim - 1, first):
            yield (first,) + rest


def _grid_vector(ks: Tuple[int, ...], m: int, ctx: Context) -> ProbVector:
    if ctx.exact:
        entries = tuple(Fraction(k, m) for k in ks)
    else:
        with workprec(ctx):
            entries = tuple(mpf(k) / m for k in ks)
    weight = sum(1 for k in ks if k > 0)
    return ProbVector(entries, weight, ctx.exact)


def search_catalyst(x: ProbVector, y: ProbVector, dim: int, resolution,
                    mode: str = LOCC,
                    g: Optional[ProbVector] = None,
                    g_cat: Optional[ProbVector] = None,
                    ctx: Context = DEFAULT_CONTEXT,
                    threads: int = 1) -> Optional[ProbVector]:
    """Exhaustive catalyst search on the sorted simplex grid.

    Enumerates descending-ordered grid points of the (dim-1)-simplex with
    entries that are multiples of `resolution`, in lexicographically
    descending order, and returns the first (hence lexicographically
    greatest) point that verifies, or None.  The trivial catalyst (1) is
    tested first, so an already-majorized pair returns it immediately.
    """
    if dim < 1:
        raise InputError("catalyst dimension must be >= 1")
    res = Fraction(resolution) if not isinstance(resolution, Fraction) else resolution
    if not 0 < res <= Fraction(1, 2):
        raise InputError("resolution must lie in (0, 1/2]")
    inv = 1 / res
    if inv.denominator != 1:
        raise InputError("1/resolution must be an integer grid count")
    m = inv.numerator

    trivial = _grid_vector((1,), 1, ctx)
    if verify_catalyst(x, y, trivial, mode, g, g_cat, ctx):
        return trivial
    if dim == 1:
        return None

    points = _count_sorted_points(m, dim)
    if points > ctx.point_budget:
        raise GridTooLarge(points, ctx.point_budget)

    if threads > 1:
        return _parallel_search(x, y, dim, m, mode, g, g_cat, ctx, threads)
    for ks in _descending_compositions(m, dim, m):
        c = _grid_vector(ks, m, ctx)
        if verify_catalyst(x, y, c, mode, g, g_cat, ctx):
            return c
    return None


def _search_chunk(args) -> Optional[Tuple[int, ...]]:
    """Best (first) passing composition with a fixed leading part, or None."""
    x, y, first, m, dim, mode, g, g_cat, ctx = args
    for rest in _descending_compositions(m - first, dim - 1, first):
        ks = (first,) + rest
        c = _grid_vector(ks, m, ctx)
        if verify_catalyst(x, y, c, mode, g, g_cat, ctx):
            return ks
    return None


def _parallel_search(x, y, dim, m, mode, g, g_cat, ctx, threads):
    """Chunked search over the leading coordinate, in descending waves.

    Chunks are processed in leading-coordinate order, so the merged result is
    identical to the sequential scan regardless of worker scheduling.
    """
    from concurrent.futures import ProcessPoolExecutor

    firsts = list(range(m, -(-m // dim) - 1, -1))
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for wave_start in range(0, len(firsts), threads):
            wave = firsts[wave_start:wave_start + threads]
            args = [(x, y, first, m, dim, mode, g, g_cat, ctx) for first in wave]
            for ks in pool.map(_search_chunk, args):
                if ks is not None:
                    return _grid_vector(ks, m, ctx)
    return None


@dataclass(frozen=True)
class GridSpec:
    """p-grid [p_min, p_max] in steps of `step`, always excluding {0, 1}.

    The oracle additionally requires the grid to straddle both branches
    (p_min < 0 and p_max > 1); plotting scans may use any range.
    """

    p_min: Fraction = Fraction(-20)
    p_max: Fraction = Fraction(20)
    step: Fraction = Fraction(1, 20)

    def __post_init__(self):
        if not (self.p_min <= self.p_max and self.step > 0):
            raise InputError("grid needs p_min <= p_max and step > 0")

    @property
    def straddles_both_branches(self) -> bool:
        return self.p_min < 0 and self.p_max > 1

    def points(self) -> List[Fraction]:
        out = []
        p = Fraction(self.p_min)
        step = Fraction(self.step)
        while p <= self.p_max:
            if p != 0 and p != 1:
                out.append(p)
            p += step
        return out

    @staticmethod
    def parse(text: str) -> "GridSpec":
        try:
            lo, hi, step = (Fraction(part) for part in text.split(":"))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad grid spec {text!r}: {exc}") from None
        return GridSpec(lo, hi, step)


@dataclass(frozen=True)
class OracleFailure:
    p: Optional[Fraction]  # None for the dedicated H1/Burg checks
    lhs: Scalar
    rhs: Scalar
    which: str


@dataclass(frozen=True)
class OracleReport:
    """Sampled necessary conditions for strict trumping of x by y.

    A failure of any strict inequality on the grid (or of the dedicated H1 /
    Burg checks) refutes membership in the strict trumping set.
    """

    grid: Tuple[Fraction, ...]
    failures: Tuple[OracleFailure, ...]
    h1_ok: bool
    burg_ok: bool
    verdict: str
    refuted_at: Optional[str] = None

    @property
    def consistent(self) -> bool:
        return self.verdict == CONSISTENT


def oracle_scan(x: ProbVector, y: ProbVector,
                grid: Optional[GridSpec] = None,
                ctx: Context = DEFAULT_CONTEXT) -> OracleReport:
    """Sample the strict norm and entropy conditions on a dense p-grid.

    Checks ||x||_p < ||y||_p for sampled p > 1, ||x||_p > ||y||_p for sampled
    p < 1 (p != 0), H1(x) > H1(y), and Burg(x) > Burg(y).
    """
    grid = grid or GridSpec()
    if not grid.straddles_both_branches:
        raise InputError("oracle grid needs p_min < 0 and p_max > 1")
    x, y = pad_pair(x, y)
    failures = []
    points = tuple(grid.points())
    with workprec(ctx):
        for p in points:
            lhs = scaled_p_norm(x, p, ctx)
            rhs = scaled_p_norm(y, p, ctx)
            if p > 1:
                if not lhs < rhs:
                    failures.append(OracleFailure(p, lhs, rhs, "norm p>1 (need <)"))
            else:
                if not lhs > rhs:
                    failures.append(OracleFailure(p, lhs, rhs, "norm p<1 (need >)"))
        h1_x, h1_y = shannon_entropy(x, ctx), shannon_entropy(y, ctx)
        burg_x, burg_y = burg_entropy(x, ctx), burg_entropy(y, ctx)
    h1_ok = bool(h1_x > h1_y)
    burg_ok = bool(burg_x > burg_y)
    if not h1_ok:
        failures.append(OracleFailure(None, h1_x, h1_y, "H1 (need >)"))
    if not burg_ok:
        failures.append(OracleFailure(None, burg_x, burg_y, "Burg (need >)"))
    if failures and failures[0].which.startswith("norm"):
        refuted_at = f"p={failures[0].p}"
    elif failures:
        refuted_at = failures[0].which.split(" ")[0]
    else:
        refuted_at = None
    verdict = CONSISTENT if not failures else REFUTED
    return OracleReport(points, tuple(failures), h1_ok, burg_ok, verdict, refuted_at)
