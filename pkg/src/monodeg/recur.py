"""Exact detection and verification of linear recurrences in integer sequences.

A recurrence of order m is stored in monic form: coefficients (a0, ..., a_{m-1})
such that

    s[n+m] + a_{m-1}*s[n+m-1] + ... + a0*s[n] = 0

for all n past some offset.  All arithmetic is over exact rationals; nothing
here ever claims nonexistence of a recurrence, it only reports what a bounded
search did or did not find.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import WindowTooShort
from .exact import IntPoly


@dataclass(frozen=True)
class Recurrence:
    """Monic linear recurrence; ``coefficients[i]`` multiplies s[n+i].

    ``valid_from`` is the least 1-based index from which the relation held on
    the window it was checked against (None when unverified).
    """

    coefficients: tuple[Fraction, ...]
    valid_from: int | None = None

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coefficients)
        if not cs:
            raise ValueError("a recurrence needs order at least 1")
        object.__setattr__(self, "coefficients", cs)

    @property
    def order(self) -> int:
        return len(self.coefficients)

    @classmethod
    def from_poly(cls, p: IntPoly, valid_from: int | None = None) -> Recurrence:
        if not p.is_monic or p.degree < 1:
            raise ValueError("recurrence polynomial must be monic of degree >= 1")
        return cls(tuple(Fraction(c) for c in p.coeffs[:-1]), valid_from)

    def char_poly(self) -> IntPoly | None:
        """Monic integer polynomial carrying the coefficients, when integral."""
        if any(c.denominator != 1 for c in self.coefficients):
            return None
        return IntPoly(tuple(int(c) for c in self.coefficients) + (1,))

    def format(self, var: str = "x") -> str:
        p = self.char_poly()
        if p is not None:
            return p.format(var)
        terms = [f"{var}^{self.order}"]
        for i in range(self.order - 1, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            mono = "1" if i == 0 else (var if i == 1 else f"{var}^{i}")
            mag = abs(c)
            coeftxt = mono if (mag == 1 and i > 0) else f"{mag}*{mono}" if i > 0 else f"{mag}"
            terms.append(f"+ {coeftxt}" if c > 0 else f"- {coeftxt}")
        return " ".join(terms)


def _clear_denominators(seq: Sequence[Fraction | int]) -> list[int]:
    """Scale a rational sequence to integers (relations are scale-invariant)."""
    if all(isinstance(x, int) for x in seq):
        return list(seq)
    fracs = [Fraction(x) for x in seq]
    scale = 1
    for x in fracs:
        scale = scale * x.denominator // math.gcd(scale, x.denominator)
    return [int(x * scale) for x in fracs]


def berlekamp_massey(seq: Sequence[Fraction | int]) -> Recurrence | None:
    """Minimal linear recurrence annihilating the whole window, over Q.

    Returns None when the minimal order exceeds floor(len/2); with fewer than
    order-many spare terms the fit carries no evidence.

    The core runs fraction-free: the connection polynomial is only defined up
    to a scalar, so updates use C <- b*C - d*x^m*B over the integers with
    content stripping, and the monic form is produced once at the end.
    """
    s = _clear_denominators(seq)
    n_terms = len(s)
    if n_terms == 0:
        raise ValueError("berlekamp_massey needs at least one term")
    c = [1]  # connection polynomial, any nonzero scalar multiple
    b = [1]
    l = 0
    m = 1
    last_disc = 1
    for n in range(n_terms):
        disc = 0
        for i in range(min(l, len(c) - 1) + 1):
            if c[i]:
                disc += c[i] * s[n - i]
        if disc == 0:
            m += 1
            continue
        new_c = [last_disc * x for x in c]
        if m + len(b) > len(new_c):
            new_c.extend([0] * (m + len(b) - len(new_c)))
        for i, x in enumerate(b):
            new_c[m + i] -= disc * x
        g = 0
        for x in new_c:
            g = math.gcd(g, x)
            if g == 1:
                break
        if g > 1:
            new_c = [x // g for x in new_c]
        if 2 * l <= n:
            l, b, last_disc, m = n + 1 - l, c, disc // g if g > 1 else disc, 1
            # the saved discrepancy must match the saved (unscaled) polynomial
            last_disc = disc
        else:
            m += 1
        c = new_c
    if l == 0:
        # all-zero window: s[n+1] = 0 is the least relation we can state
        if n_terms >= 2:
            return Recurrence((Fraction(0),), valid_from=1)
        return None
    if l > n_terms // 2:
        return None
    if len(c) < l + 1:
        c = c + [0] * (l + 1 - len(c))
    # monic recurrence: s[n+L] + (c1/c0) s[n+L-1] + ... + (cL/c0) s[n] = 0
    c0 = c[0]
    coeffs = tuple(Fraction(c[l - i], c0) for i in range(l))
    return Recurrence(coeffs, valid_from=1)


def verify_recurrence(seq: Sequence[int | Fraction], rec: Recurrence) -> int | None:
    """Least 1-based offset from which the recurrence holds through the end.

    Returns None (failure) when the verified suffix would be shorter than
    twice the order; shorter agreement is considered no evidence.
    """
    m = rec.order
    n_terms = len(seq)
    if n_terms < m + 1:
        raise ValueError("sequence too short to check this recurrence")
    s = [Fraction(x) for x in seq]
    last_bad = 0  # 1-based index of the last failing relation
    for n in range(n_terms - m):  # relation at 1-based index n+1
        val = s[n + m]
        for i in range(m):
            val += rec.coefficients[i] * s[n + i]
        if val != 0:
            last_bad = n + 1
    valid_from = last_bad + 1
    if n_terms - valid_from + 1 < 2 * m:
        return None
    return valid_from


def check_candidate(seq: Sequence[int], p: IntPoly) -> int | None:
    """Treat a monic integer polynomial as a recurrence and verify it."""
    if not p.is_monic or p.degree < 1:
        raise ValueError("candidate polynomial must be monic of degree >= 1")
    if len(seq) < p.degree + 2:
        raise ValueError("sequence too short for this candidate")
    return verify_recurrence(seq, Recurrence.from_poly(p))


def find_recurrence(
    seq: Sequence[int], max_order: int, guard: int
) -> Recurrence | None:
    """Bounded recurrence search with an exact verification tail.

    Candidates of order <= max_order are fitted on windows of length
    2*max_order (the window start may drop up to max_order head terms, for
    recurrences that only hold eventually) and each candidate is then checked
    exactly against the whole sequence; at least ``guard`` terms beyond the
    fitting window must remain for a candidate to count.  The least-order
    verified candidate wins.  None means the bounded search found nothing,
    never that no recurrence exists.
    """
    if max_order < 1 or guard < 1:
        raise ValueError("max_order and guard must be positive")
    n_terms = len(seq)
    fit_len = 2 * max_order
    if n_terms < fit_len + guard:
        raise WindowTooShort(
            f"need at least {fit_len + guard} terms "
            f"(2*max_order + guard), got {n_terms}"
        )
    max_drop = min(max_order, n_terms - fit_len - guard)
    candidates: list[tuple[int, int, Recurrence]] = []
    seen: set[tuple[Fraction, ...]] = set()
    for drop in range(max_drop + 1):
        rec = berlekamp_massey(seq[drop : drop + fit_len])
        if rec is None or rec.order > max_order:
            continue
        if rec.coefficients in seen:
            continue
        seen.add(rec.coefficients)
        candidates.append((rec.order, drop, rec))
    candidates.sort(key=lambda t: (t[0], t[1]))
    for order, drop, rec in candidates:
        valid_from = verify_recurrence(seq, rec)
        if valid_from is not None and valid_from <= drop + 1:
            return Recurrence(rec.coefficients, valid_from)
    return None


def eventually_periodic(
    symbols: Sequence, window: int
) -> tuple[int, int] | None:
    """Minimal (preperiod, period) of an eventually periodic symbol sequence.

    The periodic tail must cover at least the final ``window`` symbols and
    contain two full periods.  Period is minimised first, then preperiod.
    """
    n = len(symbols)
    if not 0 < window <= n:
        raise ValueError("window must satisfy 0 < window <= len(symbols)")
    pre_cap = n - window
    for period in range(1, n // 2 + 1):
        for pre in range(0, min(pre_cap, n - 2 * period) + 1):
            if all(symbols[i] == symbols[i + period] for i in range(pre, n - period)):
                return pre, period
    return None


__all__ = [
    "Recurrence",
    "berlekamp_massey",
    "verify_recurrence",
    "check_candidate",
    "find_recurrence",
    "eventually_periodic",
    "WindowTooShort",
]
