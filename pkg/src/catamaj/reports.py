"""JSON encoding and decoding of verdicts and evidence.

Exact rationals are rendered as fraction strings ("61/100"), so an exact-mode
report re-parses to the identical object.  Float evidence is rendered to 40
significant digits, which re-parses to the same 40-digit rendering at any
precision of 140 bits or more.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

import mpmath
from mpmath import mpf

from .context import DEFAULT_CONTEXT, Context, Scalar, workprec
from .coherence import CoherenceEntry, CoherenceReport
from .majorization import OracleFailure, OracleReport
from .sympoly import ComparisonEntry, ComparisonReport
from .thermo import DivergenceScan, EmbeddingSpec, ThermoVerdict
from .trumping import ExponentPair, H1Evidence, TrumpingVerdict
from .vectors import ProbVector, _build

SCHEMA = "catamaj/1"
FLOAT_DIGITS = 40


def scalar_to_json(value: Optional[Scalar]) -> Optional[str]:
    if value is None:
        return None
    if isinstance(value, (int, Fraction)):
        return str(Fraction(value))
    return mpmath.nstr(mpf(value), FLOAT_DIGITS)


def scalar_from_json(text: Optional[str], ctx: Context = DEFAULT_CONTEXT) -> Optional[Scalar]:
    if text is None:
        return None
    if "/" in text:
        return Fraction(text)
    if "." in text or "e" in text or "inf" in text or "nan" in text:
        with workprec(ctx):
            return mpf(text)
    return Fraction(text)


def vector_to_json(v: Optional[ProbVector]) -> Optional[list]:
    if v is None:
        return None
    return [scalar_to_json(e) for e in v.entries]


def vector_from_json(data: Optional[list], ctx: Context = DEFAULT_CONTEXT) -> Optional[ProbVector]:
    if data is None:
        return None
    entries = [scalar_from_json(e, ctx) for e in data]
    exact = all(isinstance(e, Fraction) for e in entries)
    return _build(entries, exact, ctx)


def exponents_to_json(e: Optional[ExponentPair]) -> Optional[dict]:
    if e is None:
        return None
    return {
        "r": scalar_to_json(e.r),
        "r_bar": e.r_bar,
        "s": scalar_to_json(e.s),
        "s_bar": e.s_bar,
    }


def exponents_from_json(data: Optional[dict], ctx=DEFAULT_CONTEXT) -> Optional[ExponentPair]:
    if data is None:
        return None
    return ExponentPair(scalar_from_json(data["r"], ctx), data["r_bar"],
                        scalar_from_json(data["s"], ctx), data["s_bar"])


def comparison_to_json(r: Optional[ComparisonReport]) -> Optional[dict]:
    if r is None:
        return None
    return {
        "relation": r.relation,
        "k_range": list(r.k_range),
        "per_k": [[e.k, scalar_to_json(e.lhs), scalar_to_json(e.rhs), e.holds]
                  for e in r.per_k],
        "all_hold": r.all_hold,
        "slack": scalar_to_json(r.slack),
    }


def comparison_from_json(data: Optional[dict], ctx=DEFAULT_CONTEXT) -> Optional[ComparisonReport]:
    if data is None:
        return None
    entries = tuple(ComparisonEntry(k, scalar_from_json(lhs, ctx),
                                    scalar_from_json(rhs, ctx), holds)
                    for k, lhs, rhs, holds in data["per_k"])
    return ComparisonReport(data["relation"], tuple(data["k_range"]), entries,
                            data["all_hold"], scalar_from_json(data["slack"], ctx))


def _failure_to_json(f: OracleFailure) -> list:
    p = None if f.p is None else str(Fraction(f.p))
    return [p, scalar_to_json(f.lhs), scalar_to_json(f.rhs), f.which]


def _failure_from_json(data: list, ctx) -> OracleFailure:
    p = None if data[0] is None else Fraction(data[0])
    return OracleFailure(p, scalar_from_json(data[1], ctx),
                         scalar_from_json(data[2], ctx), data[3])


def oracle_to_json(r: Optional[OracleReport]) -> Optional[dict]:
    if r is None:
        return None
    return {
        "grid": [str(p) for p in r.grid],
        "failures": [_failure_to_json(f) for f in r.failures],
        "h1_ok": r.h1_ok,
        "burg_ok": r.burg_ok,
        "verdict": r.verdict,
        "refuted_at": r.refuted_at,
    }


def oracle_from_json(data: Optional[dict], ctx=DEFAULT_CONTEXT) -> Optional[OracleReport]:
    if data is None:
        return None
    return OracleReport(tuple(Fraction(p) for p in data["grid"]),
                        tuple(_failure_from_json(f, ctx) for f in data["failures"]),
                        data["h1_ok"], data["burg_ok"], data["verdict"],
                        data["refuted_at"])


def h1_to_json(h: Optional[H1Evidence]) -> Optional[dict]:
    if h is None:
        return None
    return {"x_bits": scalar_to_json(h.x_bits), "y_bits": scalar_to_json(h.y_bits),
            "holds": h.holds}


def h1_from_json(data: Optional[dict], ctx=DEFAULT_CONTEXT) -> Optional[H1Evidence]:
    if data is None:
        return None
    return H1Evidence(scalar_from_json(data["x_bits"], ctx),
                      scalar_from_json(data["y_bits"], ctx), data["holds"])


def coherence_to_json(r: Optional[CoherenceReport]) -> Optional[dict]:
    if r is None:
        return None
    return {
        "entries": [[str(e.p), scalar_to_json(e.a_psi), scalar_to_json(e.a_phi),
                     e.non_increasing] for e in r.entries],
        "all_non_increasing": r.all_non_increasing,
    }


def coherence_from_json(data: Optional[dict], ctx=DEFAULT_CONTEXT) -> Optional[CoherenceReport]:
    if data is None:
        return None
    entries = tuple(CoherenceEntry(Fraction(p), scalar_from_json(a, ctx),
                                   scalar_from_json(b, ctx), ok)
                    for p, a, b, ok in data["entries"])
    return CoherenceReport(entries, data["all_non_increasing"])


def trumping_verdict_to_json(v: TrumpingVerdict) -> dict:
    return {
        "status": v.status,
        "reasons": list(v.reasons),
        "exponents": exponents_to_json(v.exponents),
        "closure_family": comparison_to_json(v.closure_report),
        "negative_family": comparison_to_json(v.negative_report),
        "h1": h1_to_json(v.h1),
        "weight_branch": v.weight_branch,
        "oracle": oracle_to_json(v.oracle),
        "cap_hit": v.cap_hit,
        "coherence": coherence_to_json(v.coherence),
    }


def trumping_verdict_from_json(data: dict, ctx=DEFAULT_CONTEXT) -> TrumpingVerdict:
    return TrumpingVerdict(
        data["status"], tuple(data["reasons"]),
        exponents_from_json(data["exponents"], ctx),
        comparison_from_json(data["closure_family"], ctx),
        comparison_from_json(data["negative_family"], ctx),
        h1_from_json(data["h1"], ctx), data["weight_branch"],
        oracle_from_json(data["oracle"], ctx), data["cap_hit"],
        coherence_from_json(data.get("coherence"), ctx),
    )


def embedding_to_json(e: Optional[EmbeddingSpec]) -> Optional[dict]:
    if e is None:
        return None
    return {"nu": list(e.nu), "N": e.N, "g_eps": vector_to_json(e.g_eps),
            "eps": scalar_to_json(e.eps)}


def embedding_from_json(data: Optional[dict], ctx=DEFAULT_CONTEXT) -> Optional[EmbeddingSpec]:
    if data is None:
        return None
    return EmbeddingSpec(tuple(data["nu"]), data["N"],
                         vector_from_json(data["g_eps"], ctx),
                         scalar_from_json(data["eps"], ctx))


def divergence_scan_to_json(r: Optional[DivergenceScan]) -> Optional[dict]:
    if r is None:
        return None
    return {
        "grid": [str(p) for p in r.grid],
        "failures": [_failure_to_json(f) for f in r.failures],
        "kl_ok": r.kl_ok,
        "verdict": r.verdict,
        "refuted_at": r.refuted_at,
    }


def divergence_scan_from_json(data: Optional[dict], ctx=DEFAULT_CONTEXT) -> Optional[DivergenceScan]:
    if data is None:
        return None
    return DivergenceScan(tuple(Fraction(p) for p in data["grid"]),
                          tuple(_failure_from_json(f, ctx) for f in data["failures"]),
                          data["kl_ok"], data["verdict"], data["refuted_at"])


def thermo_verdict_to_json(v: ThermoVerdict) -> dict:
    return {
        "status": v.status,
        "reasons": list(v.reasons),
        "path": v.path,
        "embedding": embedding_to_json(v.embedding),
        "slack": [scalar_to_json(v.slack_used[0]), scalar_to_json(v.slack_used[1])],
        "exponents": exponents_to_json(v.exponents),
        "closure_family": comparison_to_json(v.closure_report),
        "negative_family": comparison_to_json(v.negative_report),
        "h1": h1_to_json(v.h1),
        "weight_branch": v.weight_branch,
        "oracle": divergence_scan_to_json(v.oracle),
        "cap_hit": v.cap_hit,
    }


def thermo_verdict_from_json(data: dict, ctx=DEFAULT_CONTEXT) -> ThermoVerdict:
    return ThermoVerdict(
        data["status"], tuple(data["reasons"]), data["path"],
        embedding_from_json(data["embedding"], ctx),
        (scalar_from_json(data["slack"][0], ctx), scalar_from_json(data["slack"][1], ctx)),
        exponents_from_json(data["exponents"], ctx),
        comparison_from_json(data["closure_family"], ctx),
        comparison_from_json(data["negative_family"], ctx),
        h1_from_json(data["h1"], ctx), data["weight_branch"],
        divergence_scan_from_json(data["oracle"], ctx), data["cap_hit"],
    )
