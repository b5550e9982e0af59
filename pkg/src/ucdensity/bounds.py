"""Bound formulas and exact certification of the density inequalities.

Every transcendental inequality is reduced to the single primitive
``coef * log2(x) <= rhs`` with non-negative integers, equivalently
``x**coef <= 2**rhs``.  Verdicts come from exact integer comparison while the
powers stay under ``BIT_BUDGET`` bits, and from outward-rounded interval
arithmetic (mpmath ``iv``) beyond that.  Floating point never decides a
verdict.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from mpmath import iv

from .errors import BadParameters, BelowDomain, NotAMember
from .family import (
    SetFamily,
    abundance_profile,
    bits_of,
    density_parts,
    popcount,
)

BIT_BUDGET = 1_000_000
INTERVAL_PRECISIONS = (128, 256, 512)
COROLLARY2_MIN_N = 16

# s_k for small k.  1..3 are the classical values; 4..6 were produced by the
# search in ``search.compute_sn`` (the test suite recomputes them).  Never
# extrapolated.
SK_TABLE: dict[int, Fraction] = {
    1: Fraction(1, 2),
    2: Fraction(1, 2),
    3: Fraction(4, 9),
    4: Fraction(2, 5),
    5: Fraction(9, 25),
    6: Fraction(1, 3),
}


class Verdict(enum.Enum):
    PROVEN = "Proven"
    REFUTED = "Refuted"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class CheckOutcome:
    verdict: Verdict
    certificate: str
    # True when the two sides were shown to be exactly equal.
    tight: bool = False

    @property
    def proven(self) -> bool:
        return self.verdict is Verdict.PROVEN

    @property
    def refuted(self) -> bool:
        return self.verdict is Verdict.REFUTED


def floor_log2(n: int) -> int:
    return n.bit_length() - 1


def ceil_log2(n: int) -> int:
    return (n - 1).bit_length()


def compare_log2(coef: int, x: int, rhs: int, budget: int = BIT_BUDGET) -> tuple[Verdict, bool, str]:
    """Certify ``coef * log2(x) <= rhs``.

    Returns ``(verdict, tight, method)``; ``tight`` means exact equality.
    """
    if coef < 0 or x < 1 or rhs < 0:
        raise BadParameters("compare_log2 needs coef >= 0, x >= 1, rhs >= 0")
    if coef == 0 or x == 1:
        return Verdict.PROVEN, rhs == 0, "lhs is 0"
    if x & (x - 1) == 0:
        lhs = coef * floor_log2(x)
        verdict = Verdict.PROVEN if lhs <= rhs else Verdict.REFUTED
        return verdict, lhs == rhs, f"exact: log2(x) = {floor_log2(x)}, {lhs} vs {rhs}"
    if coef * x.bit_length() <= budget and rhs + 1 <= budget:
        left = x ** coef
        right = 1 << rhs
        verdict = Verdict.PROVEN if left <= right else Verdict.REFUTED
        return verdict, left == right, "exact big-integer powers"
    # x is not a power of two, so x**coef != 2**rhs and some finite precision
    # separates the sides.
    # The iv context has no workprec manager, so save and restore by hand.
    saved = iv.prec
    try:
        for prec in INTERVAL_PRECISIONS:
            iv.prec = prec
            lhs = iv.mpf(coef) * iv.log(iv.mpf(x)) / iv.log(iv.mpf(2))
            if lhs.b <= rhs:
                return Verdict.PROVEN, False, f"interval @{prec} bits"
            if lhs.a > rhs:
                return Verdict.REFUTED, False, f"interval @{prec} bits"
    finally:
        iv.prec = saved
    return Verdict.UNKNOWN, False, "budget exhausted"


def _outcome(verdict, tight, method, statement):
    rel = "=" if tight else {Verdict.PROVEN: ">=", Verdict.REFUTED: "<", Verdict.UNKNOWN: "?"}[verdict]
    return CheckOutcome(verdict, f"{statement.format(rel=rel)} [{method}]", tight)


def check_density_lower(family: SetFamily, budget: int = BIT_BUDGET) -> CheckOutcome:
    """D(F) >= log2(n) / (2n), certified as 2^(2S) >= n^m."""
    total, _ = density_parts(family)
    n, m = family.n, family.m
    verdict, tight, method = compare_log2(m, n, 2 * total, budget)
    return _outcome(verdict, tight, method, f"2^(2S) {{rel}} n^m with S={total}, n={n}, m={m}")


def check_reimer(family: SetFamily, budget: int = BIT_BUDGET) -> CheckOutcome:
    """Average member size >= log2(m) / 2, certified as 4^S >= m^m."""
    total, _ = density_parts(family)
    m = family.m
    verdict, tight, method = compare_log2(m, m, 2 * total, budget)
    return _outcome(verdict, tight, method, f"4^S {{rel}} m^m with S={total}, m={m}")


def check_theorem1(
    family: SetFamily, member: int, sk_table: Mapping[int, Fraction] = SK_TABLE
) -> CheckOutcome:
    """sum_{a in S} |F_a| >= k * s_k * |F| for the member S with |S| = k."""
    if member not in family:
        raise NotAMember(f"mask {member} is not a member of the family")
    k = popcount(member)
    if k < 1:
        raise BadParameters("the abundance-sum bound needs a nonempty member")
    sk = sk_table.get(k)
    if sk is None:
        return CheckOutcome(Verdict.UNKNOWN, f"no s_{k} in table")
    counts = abundance_profile(family).counts
    lhs = sum(counts[a] for a in bits_of(member))
    m = family.m
    left = lhs * sk.denominator
    right = k * sk.numerator * m
    verdict = Verdict.PROVEN if left >= right else Verdict.REFUTED
    rel = "=" if left == right else (">=" if left >= right else "<")
    cert = f"sum|F_a| = {lhs} {rel} k*s_k*m = {k}*{sk}*{m}"
    return CheckOutcome(verdict, cert, left == right)


def check_corollary2(family: SetFamily, budget: int = BIT_BUDGET) -> CheckOutcome:
    """max_a |F_a| >= sqrt(log2(n)/n) * m / 2, via 2^(4 n max^2) >= n^(m^2)."""
    n, m = family.n, family.m
    if n < COROLLARY2_MIN_N:
        raise BelowDomain(f"the bound is stated for n >= {COROLLARY2_MIN_N}, got n={n}")
    mx = abundance_profile(family).max
    verdict, tight, method = compare_log2(m * m, n, 4 * n * mx * mx, budget)
    return _outcome(
        verdict, tight, method, f"2^(4n*max^2) {{rel}} n^(m^2) with n={n}, max={mx}, m={m}"
    )


def wojcik_density(n: int, k: int) -> Fraction:
    """Closed-form density of ``wojcik_family(n, k)`` for 0 <= k < n."""
    if not 0 <= k < n:
        raise BadParameters(f"closed form needs 0 <= k < n, got n={n}, k={k}")
    return Fraction(((k << k) >> 1) + n, n * ((1 << k) + 1))


def corollary1_upper(n: int) -> Fraction:
    if n < 1:
        raise BadParameters("n must be >= 1")
    if n == 1:
        return Fraction(1, 2)
    return wojcik_density(n, ceil_log2(n))


def conjectured_sn(n: int) -> Fraction:
    """Smallest Wojcik-family density with k = floor(log2 n) or ceil(log2 n)."""
    if n < 1:
        raise BadParameters("n must be >= 1")
    return min(wojcik_density(n, k) for k in {floor_log2(n), ceil_log2(n)})


def theorem3_lower(n: int) -> float:
    """log2(n) / (2n) as a float, for display only."""
    if n < 1:
        raise BadParameters("n must be >= 1")
    return math.log2(n) / (2 * n)


def certify_lower_le(n: int, value: Fraction, budget: int = BIT_BUDGET) -> CheckOutcome:
    """Certify log2(n) / (2n) <= value, i.e. n^q <= 2^(2np) for value = p/q."""
    p, q = value.numerator, value.denominator
    if p < 0:
        return CheckOutcome(Verdict.REFUTED, f"{value} is negative")
    verdict, tight, method = compare_log2(q, n, 2 * n * p, budget)
    return _outcome(verdict, tight, method, f"2^(2n*p) {{rel}} n^q with n={n}, p/q={value}")


def corollary2_threshold(n: int) -> float:
    if n < COROLLARY2_MIN_N:
        raise BelowDomain(f"the bound is stated for n >= {COROLLARY2_MIN_N}, got n={n}")
    return 0.5 * math.sqrt(math.log2(n) / n)


def f_forward(x: float) -> float:
    """2 x^2 / log2(x), increasing on [4, inf) with f(4) = 16."""
    return 2.0 * x * x / math.log2(x)


def g_inverse(n: float, rel_tol: float = 1e-12) -> float:
    """The x >= 4 with 2x^2 / log2(x) = n, by bisection."""
    if n < COROLLARY2_MIN_N:
        raise BelowDomain(f"g is defined for n >= {COROLLARY2_MIN_N}, got {n}")
    lo, hi = 4.0, max(4.0, float(n))
    if f_forward(lo) >= n:
        return lo
    while hi - lo > rel_tol * lo:
        mid = 0.5 * (lo + hi)
        if f_forward(mid) < n:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def proofstep_e_inequality(n: int, m: int) -> CheckOutcome:
    """(n+1)^m <= 4 n^m for 1 <= m <= n."""
    if not 1 <= m <= n:
        raise BadParameters(f"need 1 <= m <= n, got n={n}, m={m}")
    left = (n + 1) ** m
    right = 4 * n ** m
    verdict = Verdict.PROVEN if left <= right else Verdict.REFUTED
    return CheckOutcome(verdict, f"(n+1)^m {'<=' if left <= right else '>'} 4n^m with n={n}, m={m}", left == right)


def proofstep_e_sweep(n_max: int) -> tuple[int, list[tuple[int, int]]]:
    """Check (n+1)^m <= 4 n^m for all 1 <= m <= n <= n_max.

    Powers are built incrementally along m.  Returns ``(pairs_checked, failures)``.
    """
    checked = 0
    failures = []
    for n in range(1, n_max + 1):
        left, right = 1, 4
        for m in range(1, n + 1):
            left *= n + 1
            right *= n
            checked += 1
            if left > right:
                failures.append((n, m))
    return checked, failures


@dataclass(frozen=True)
class BoundTable:
    n: int
    theorem3_lower: float
    corollary1_upper_ceil: Fraction
    conjectured_sn: Fraction
    corollary2_threshold: float | None
    g_of_n: float | None
    consistency: CheckOutcome


def bound_table(n: int) -> BoundTable:
    conj = conjectured_sn(n)
    big = n >= COROLLARY2_MIN_N
    return BoundTable(
        n=n,
        theorem3_lower=theorem3_lower(n),
        corollary1_upper_ceil=corollary1_upper(n),
        conjectured_sn=conj,
        corollary2_threshold=corollary2_threshold(n) if big else None,
        g_of_n=g_inverse(n) if big else None,
        consistency=certify_lower_le(n, conj),
    )
