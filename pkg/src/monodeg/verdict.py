"""Theorem-backed classification of degree-sequence behaviour.

The engine proves one of three outcomes from certified spectral facts:

* RECURRENCE_PROVEN when every eigenvalue of modulus at least 1 is real or
  belongs to a conjugate pair whose ratio is a root of unity (criterion
  THM_1_1_PART1; when those eigenvalues are all real and positive the
  characteristic polynomial itself is the recurrence, criterion
  THM_2_7_CHARPOLY);
* NO_RECURRENCE_PROVEN when the strictly largest modulus is attained by
  exactly one simple non-real conjugate pair whose ratio is not a root of
  unity (criterion PROP_3_1);
* UNKNOWN whenever neither hypothesis literally applies or a certification
  came back unresolved.  The engine never extrapolates.

For the unimodular dual sequence the same classification runs on the inverse
matrix and is labelled DUALITY_THM_1_2 (3x3), DUALITY_THM_1_3 (4x4) or
DUALITY_GENERIC.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from . import cells as cells_mod
from .cells import CellTrace, cell_trace
from .degree import DegreeSequence, degree_sequence
from .errors import RankDeficient, UnresolvedCertification, WindowTooShort
from .exact import IntMatrix, IntPoly, char_poly, det, inverse_unimodular, mat_pow
from .recur import Recurrence, check_candidate, find_recurrence
from .spectra import (
    EQ,
    GT,
    NOT_ROOT_OF_UNITY,
    ROOT_OF_UNITY,
    SpectralSummary,
    spectral_summary,
)

RECURRENCE_PROVEN = "RECURRENCE_PROVEN"
NO_RECURRENCE_PROVEN = "NO_RECURRENCE_PROVEN"
UNKNOWN = "UNKNOWN"

THM_1_1_PART1 = "THM_1_1_PART1"
THM_2_7_CHARPOLY = "THM_2_7_CHARPOLY"
PROP_3_1 = "PROP_3_1"
DUALITY_THM_1_2 = "DUALITY_THM_1_2"
DUALITY_THM_1_3 = "DUALITY_THM_1_3"
DUALITY_GENERIC = "DUALITY_GENERIC"

CONSISTENT = "CONSISTENT"
INCONSISTENT = "INCONSISTENT"


@dataclass(frozen=True)
class Verdict:
    """Classification with the criterion code and the spectral facts used."""

    classification: str
    basis: str | None
    details: dict[str, Any] = field(default_factory=dict)
    recurrence: Recurrence | None = None

    @property
    def is_unknown(self) -> bool:
        return self.classification == UNKNOWN


def _real_is_positive(summary: SpectralSummary, idx: int) -> bool:
    # the modulus partition refined real boxes until |center| > radius, so
    # the box certifies the sign of the root it contains
    box = summary.roots[idx]
    re, _ = box.center
    if re > box.radius:
        return True
    if -re > box.radius:
        return False
    raise UnresolvedCertification("sign of a real eigenvalue was not pinned")


def _modulus_ge_one_indices(summary: SpectralSummary) -> list[int]:
    out: list[int] = []
    for cls in summary.modulus_classes:
        if cls.versus_one in (GT, EQ):
            out.extend(cls.indices)
    return sorted(out)


def _power_recurrence(a: IntMatrix, tau: int) -> Recurrence:
    """Recurrence carried by char_poly(A^tau) applied with stride tau.

    Every linear functional of (A^tau)^n obeys the characteristic polynomial
    of A^tau, so chi_{A^tau}(x^tau) eventually annihilates the degree
    sequence (from the index where each residue class settles into one cell;
    the offset is recovered separately by exact verification).
    """
    chi_tau = char_poly(mat_pow(a, tau))
    stretched = [0] * (chi_tau.degree * tau + 1)
    for i, c in enumerate(chi_tau.coeffs):
        stretched[i * tau] = c
    return Recurrence.from_poly(IntPoly(stretched))


def _unity_stride(summary: SpectralSummary) -> int:
    """Least common multiple of per-eigenvalue exponents tau with
    (lambda/|lambda|)^tau = 1, over eigenvalues of modulus >= 1.

    Real positive roots need tau = 1, real negative roots tau = 2, and a pair
    whose conjugate ratio has order m needs tau = 2m (the square of
    lambda/|lambda| is the inverse ratio).
    """
    tau = 1
    ge1 = set(_modulus_ge_one_indices(summary))
    for idx in ge1:
        box = summary.roots[idx]
        if box.is_real:
            tau = math.lcm(tau, 1 if _real_is_positive(summary, idx) else 2)
        else:
            flag = summary.ratio_flags[idx]
            if flag.kind == ROOT_OF_UNITY and flag.order:
                tau = math.lcm(tau, 2 * flag.order)
    return tau


def classify_d1(a: IntMatrix, precision_bits: int = 256) -> Verdict:
    """Provable classification of the forward degree sequence."""
    if det(a) == 0:
        raise RankDeficient("classification needs a matrix of full rank")
    try:
        summary = spectral_summary(a, precision_bits)
        return _classify_from_summary(a, summary)
    except UnresolvedCertification as exc:
        return Verdict(UNKNOWN, None, {"unresolved": str(exc)})


def _classify_from_summary(a: IntMatrix, summary: SpectralSummary) -> Verdict:
    ge1 = _modulus_ge_one_indices(summary)
    detail_base: dict[str, Any] = {
        "modulus_ge_one_indices": tuple(ge1),
        "unity_orders": summary.unity_orders,
        "dominant_pair": summary.dominant_pair,
        "ge_one_ratio_flags": tuple(
            (idx, summary.ratio_flags[idx].kind, summary.ratio_flags[idx].order)
            for idx in ge1
        ),
    }
    unresolved_flags = tuple(
        i
        for i, f in enumerate(summary.ratio_flags)
        if f.kind not in (ROOT_OF_UNITY, NOT_ROOT_OF_UNITY)
    )
    if unresolved_flags:
        detail_base["unresolved_flags"] = unresolved_flags

    # Hypothesis for a proven recurrence: every eigenvalue of modulus >= 1 is
    # real or sits in a pair whose ratio is a root of unity.
    h1_unresolved = False
    h1_holds = True
    for idx in ge1:
        box = summary.roots[idx]
        if box.is_real:
            continue
        flag = summary.ratio_flags[idx]
        if flag.kind == ROOT_OF_UNITY:
            continue
        if flag.kind == NOT_ROOT_OF_UNITY:
            h1_holds = False
        else:
            h1_holds = False
            h1_unresolved = True
    if h1_holds:
        all_real_positive = all(
            summary.roots[idx].is_real and _real_is_positive(summary, idx)
            for idx in ge1
        )
        if all_real_positive:
            rec = Recurrence.from_poly(summary.char_poly)
            return Verdict(
                RECURRENCE_PROVEN,
                THM_2_7_CHARPOLY,
                {**detail_base, "recurrence_order": rec.order},
                recurrence=rec,
            )
        stride = _unity_stride(summary)
        rec = _power_recurrence(a, stride)
        return Verdict(
            RECURRENCE_PROVEN,
            THM_1_1_PART1,
            {**detail_base, "stride": stride, "recurrence_order": rec.order},
            recurrence=rec,
        )

    # Hypothesis against any recurrence: the top modulus class is exactly one
    # simple non-real conjugate pair with non-unity ratio.
    top = summary.modulus_classes[0]
    if summary.dominant_pair is not None and set(summary.dominant_pair) == set(top.indices):
        i, j = summary.dominant_pair
        both_simple = (
            summary.roots[i].multiplicity == 1 and summary.roots[j].multiplicity == 1
        )
        flag = summary.ratio_flags[i]
        if both_simple and flag.kind == NOT_ROOT_OF_UNITY:
            return Verdict(
                NO_RECURRENCE_PROVEN,
                PROP_3_1,
                {**detail_base, "top_class_versus_one": top.versus_one},
            )
        if both_simple and flag.kind not in (ROOT_OF_UNITY, NOT_ROOT_OF_UNITY):
            h1_unresolved = True

    details = dict(detail_base)
    if h1_unresolved:
        details["unresolved"] = "a needed ratio certification was unresolved"
    else:
        details["reason"] = "no implemented criterion applies to this spectrum"
    return Verdict(UNKNOWN, None, details)


def classify_dual(a: IntMatrix, precision_bits: int = 256) -> Verdict:
    """Classification of the codimension k-1 (inverse map) degree sequence.

    Requires a unimodular matrix; the result wraps the classification of the
    inverse with a dimension-specific duality criterion code.
    """
    inv = inverse_unimodular(a)  # NotUnimodular propagates
    inner = classify_d1(inv, precision_bits)
    if inner.is_unknown:
        return Verdict(UNKNOWN, None, dict(inner.details))
    wrapper = {3: DUALITY_THM_1_2, 4: DUALITY_THM_1_3}.get(a.k, DUALITY_GENERIC)
    details = dict(inner.details)
    details["inner_basis"] = inner.basis
    return Verdict(inner.classification, wrapper, details, recurrence=inner.recurrence)


@dataclass(frozen=True)
class CrossCheckReport:
    verdict: Verdict
    sequence: DegreeSequence
    recurrence: Recurrence | None
    trace: CellTrace
    status: str  # CONSISTENT | INCONSISTENT
    conflicts: tuple[str, ...]
    bounds: dict[str, int]

    @property
    def consistent(self) -> bool:
        return self.status == CONSISTENT


def cross_check(
    a: IntMatrix,
    window: int,
    max_order: int,
    precision_bits: int = 256,
) -> CrossCheckReport:
    """Empirical validation of the theorem engine on one matrix.

    A proven recurrence must actually verify on the computed sequence (the
    characteristic polynomial itself for THM_2_7_CHARPOLY); a proven
    non-recurrence must leave the bounded search empty-handed and the cell
    trace unstabilized (a stabilized trace is retried on a doubled window
    before being reported as a conflict).
    """
    verdict = classify_d1(a, precision_bits)
    seq = degree_sequence(a, window)
    guard = max(1, min(4 * max_order, window - 3 * max_order))
    if window < 2 * max_order + guard:
        guard = window - 2 * max_order
    if guard < 1:
        raise WindowTooShort(
            f"window {window} cannot accommodate max_order {max_order} with a guard"
        )
    found = find_recurrence(seq.terms, max_order, guard)
    trace = cell_trace(a, window)
    bounds = {"window": window, "max_order": max_order, "guard": guard}

    conflicts: list[str] = []
    if verdict.classification == RECURRENCE_PROVEN:
        verified = found is not None
        attached_offset = None
        if verdict.basis == THM_2_7_CHARPOLY:
            attached_offset = check_candidate(seq.terms, char_poly(a))
            if attached_offset is None:
                conflicts.append(
                    "characteristic polynomial recurrence failed exact verification"
                )
            else:
                verified = True
        elif not verified and verdict.recurrence is not None:
            if verdict.recurrence.order + 2 <= len(seq.terms):
                p = verdict.recurrence.char_poly()
                if p is not None and check_candidate(seq.terms, p) is not None:
                    verified = True
        if not verified:
            conflicts.append(
                "proven recurrence but no candidate verified within bounds"
            )
    elif verdict.classification == NO_RECURRENCE_PROVEN:
        if found is not None:
            conflicts.append(
                f"proven non-recurrence but order-{found.order} candidate verified"
            )
        if trace.status.kind == cells_mod.STABILIZED:
            retry = cell_trace(a, 2 * window)
            if retry.status.kind == cells_mod.STABILIZED:
                conflicts.append(
                    "proven non-recurrence but the cell trace stabilized "
                    "(persisted on a doubled window)"
                )
    status = CONSISTENT if not conflicts else INCONSISTENT
    return CrossCheckReport(
        verdict=verdict,
        sequence=seq,
        recurrence=found,
        trace=trace,
        status=status,
        conflicts=tuple(conflicts),
        bounds=bounds,
    )


__all__ = [
    "Verdict",
    "CrossCheckReport",
    "classify_d1",
    "classify_dual",
    "cross_check",
    "RECURRENCE_PROVEN",
    "NO_RECURRENCE_PROVEN",
    "UNKNOWN",
    "THM_1_1_PART1",
    "THM_2_7_CHARPOLY",
    "PROP_3_1",
    "DUALITY_THM_1_2",
    "DUALITY_THM_1_3",
    "DUALITY_GENERIC",
    "CONSISTENT",
    "INCONSISTENT",
]
