"""Duplicate-abundance witnesses: pairs of elements with identical columns.

``lemma2_witness`` follows the inductive argument step by step: peel off a
minimal nonempty member, recurse, and when the recursive pair splits apart
in the larger family, use the fact that one of the two elements then lies in
every nonempty member to quotient that element away and recurse again.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import InternalProofViolation, PreconditionViolated
from .family import (
    SetFamily,
    UnionClosedFamily,
    abundance_profile,
    columns,
    delete_element,
    is_union_closed,
    minimal_nonempty,
)


class Method(enum.Enum):
    DIRECT = "Direct"
    CONSTRUCTIVE = "Constructive"

    def __str__(self):
        return self.value


class Branch(enum.Enum):
    BASE_SINGLETON = "base-singleton"
    A_EQUALS_UNIVERSE = "A-equals-universe"
    FIRST_RECURSION_HIT = "first-recursion-hit"
    LEMMA1_QUOTIENT = "lemma1-quotient"
    SECOND_RECURSION_HIT = "second-recursion-hit"
    DOUBLE_LEMMA1 = "double-lemma1"

    def __str__(self):
        return self.value


class Lemma1(enum.Enum):
    A_IN_ALL = "AInAll"
    B_IN_ALL = "BInAll"
    COLUMNS_EQUAL = "ColumnsEqual"


@dataclass(frozen=True)
class TraceStep:
    depth: int
    branch: Branch
    m: int
    n: int
    # Pair produced or used at this step, in the root family's element indices.
    pair: tuple[int, int]


@dataclass(frozen=True)
class Witness:
    a: int
    b: int
    method: Method
    trace: tuple[TraceStep, ...] = ()

    @property
    def pair(self) -> tuple[int, int]:
        return self.a, self.b

    def branches(self) -> list[Branch]:
        return [step.branch for step in self.trace]


def same_column(family: SetFamily, a: int, b: int) -> bool:
    return all(((mask >> a) ^ (mask >> b)) & 1 == 0 for mask in family.members)


def equal_pair_direct(family: SetFamily) -> Witness | None:
    """Lexicographically smallest ``(a, b)``, ``a < b``, with F_a = F_b."""
    first: dict[int, int] = {}
    best = None
    for b, col in enumerate(columns(family)):
        if col in first:
            cand = (first[col], b)
            if best is None or cand < best:
                best = cand
        else:
            first[col] = b
    if best is None:
        return None
    return Witness(best[0], best[1], Method.DIRECT)


def _in_every_nonempty(family: SetFamily, x: int) -> bool:
    return all(mask >> x & 1 for mask in family.members if mask)


def lemma1_conclusion(family: SetFamily, minimal: int, a: int, b: int) -> Lemma1:
    """Which alternative holds when removing ``minimal`` made columns a, b agree."""
    if minimal not in family or minimal == 0:
        raise PreconditionViolated("A must be a nonempty member of F")
    if any(mask and mask != minimal and mask & minimal == mask for mask in family.members):
        raise PreconditionViolated("A must be an inclusion-minimal nonempty member")
    if a == b or not (0 <= a < family.n and 0 <= b < family.n):
        raise PreconditionViolated("a and b must be distinct elements")
    for mask in family.members:
        if mask != minimal and ((mask >> a) ^ (mask >> b)) & 1:
            raise PreconditionViolated("columns of a and b differ in F \\ {A}")
    if same_column(family, a, b):
        return Lemma1.COLUMNS_EQUAL
    if _in_every_nonempty(family, a):
        return Lemma1.A_IN_ALL
    if _in_every_nonempty(family, b):
        return Lemma1.B_IN_ALL
    raise InternalProofViolation(
        f"neither {a} nor {b} lies in every nonempty member although G_a = G_b, F_a != F_b"
    )


class _Lemma2:
    def __init__(self, full_recheck: bool):
        self.full_recheck = full_recheck
        self.trace: list[TraceStep] = []

    def step(self, depth, branch, family, lab, pair):
        self.trace.append(TraceStep(depth, branch, family.m, family.n, (lab[pair[0]], lab[pair[1]])))

    def run(self, family: SetFamily, lab: list[int], depth: int) -> tuple[int, int]:
        n, m = family.n, family.m
        if m == 1:
            # F = {universe}: any two elements work.
            self.step(depth, Branch.BASE_SINGLETON, family, lab, (0, 1))
            return 0, 1
        minimal = minimal_nonempty(family)
        if minimal == family.universe:
            if family.members != (0, family.universe):
                raise InternalProofViolation("A = universe but F != {empty, A}")
            self.step(depth, Branch.A_EQUALS_UNIVERSE, family, lab, (0, 1))
            return 0, 1

        rest = SetFamily._trusted(n, [x for x in family.members if x != minimal])
        if self.full_recheck and not is_union_closed(rest):
            raise InternalProofViolation("F \\ {A} is not union-closed")
        a, b = self.run(rest, lab, depth + 1)
        if same_column(family, a, b):
            self.step(depth, Branch.FIRST_RECURSION_HIT, family, lab, (a, b))
            return a, b

        try:
            side = lemma1_conclusion(family, minimal, a, b)
        except PreconditionViolated as exc:
            raise InternalProofViolation(f"two-column lemma hypotheses failed: {exc}") from exc
        if side is Lemma1.B_IN_ALL:
            a, b = b, a
        self.step(depth, Branch.LEMMA1_QUOTIENT, family, lab, (a, b))

        quotient = delete_element(rest, a)
        if not (quotient.n >= 2 and quotient.m < quotient.n):
            raise InternalProofViolation(
                f"quotient family has m={quotient.m}, n={quotient.n}; hypothesis m < n fails"
            )
        sub_lab = lab[:a] + lab[a + 1:]
        c, d = self.run(quotient, sub_lab, depth + 1)
        # Back to this level's indices: the quotient dropped position a.
        c = c + 1 if c >= a else c
        d = d + 1 if d >= a else d
        if same_column(family, c, d):
            self.step(depth, Branch.SECOND_RECURSION_HIT, family, lab, (c, d))
            return c, d
        try:
            side = lemma1_conclusion(family, minimal, c, d)
        except PreconditionViolated as exc:
            raise InternalProofViolation(f"two-column lemma hypotheses failed: {exc}") from exc
        if side is Lemma1.B_IN_ALL:
            c, d = d, c
        if not same_column(family, a, c):
            raise InternalProofViolation("both elements lie in every nonempty member yet columns differ")
        self.step(depth, Branch.DOUBLE_LEMMA1, family, lab, (a, c))
        return a, c


def lemma2_witness(family: SetFamily, full_recheck: bool = False) -> Witness:
    """Constructive duplicate-abundance pair for a union-closed F with |F| < n."""
    if family.n < 2:
        raise PreconditionViolated(f"need at least 2 elements, got n={family.n}")
    if family.m >= family.n:
        raise PreconditionViolated(f"need |F| < n, got |F|={family.m}, n={family.n}")
    if not isinstance(family, UnionClosedFamily) and not is_union_closed(family):
        raise PreconditionViolated("family is not union-closed")
    builder = _Lemma2(full_recheck)
    a, b = builder.run(family, list(range(family.n)), 0)
    if a == b or not same_column(family, a, b):
        raise InternalProofViolation(f"returned pair ({a}, {b}) does not share a column")
    a, b = min(a, b), max(a, b)
    return Witness(a, b, Method.CONSTRUCTIVE, tuple(builder.trace))


def check_frankl(family: SetFamily) -> tuple[bool, int]:
    """Whether some element lies in at least half the members, and the argmax."""
    profile = abundance_profile(family)
    return 2 * profile.max >= family.m, profile.argmax
