"""Set families over a ground set {0..n-1}, each member stored as a bitmask.

Densities are exact ``fractions.Fraction`` values; nothing here touches
floating point.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    BadParameters,
    DuplicateSet,
    ElementOutOfRange,
    EmptyUniverse,
    FamilyError,
    NoNonemptySet,
    NotUnionClosed,
    TooLarge,
    TooManyElements,
)

MAX_ELEMENTS = 64
# Largest k for which wojcik_family will materialise the 2^k subsets.
MAX_CUBE_DIM = 22


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def full_mask(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True, eq=False)
class SetFamily:
    """A finite family of distinct subsets of {0..n-1} whose union is everything.

    ``labels[i]`` is the caller's name for element ``i``; it survives
    relabelling so reports can speak in the user's terms.  Labels do not take
    part in equality.
    """

    n: int
    members: tuple[int, ...]
    labels: tuple[int, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        n = self.n
        if n < 1:
            raise EmptyUniverse("a family needs at least one element (n >= 1)")
        if n > MAX_ELEMENTS:
            raise TooManyElements(f"n={n} exceeds the {MAX_ELEMENTS}-element cap")
        members = tuple(sorted(self.members))
        if not members:
            raise FamilyError("a family needs at least one member")
        for prev, cur in zip(members, members[1:]):
            if prev == cur:
                raise DuplicateSet(f"duplicate member mask {cur}")
        if members[0] < 0 or members[-1] >> n:
            raise ElementOutOfRange(f"member masks must fit in {n} bits")
        union = 0
        for m in members:
            union |= m
        if union == 0:
            raise EmptyUniverse("all members are empty")
        if union != full_mask(n):
            raise FamilyError("union of members must be the full ground set {0..n-1}")
        labels = self.labels
        if labels is None:
            labels = tuple(range(n))
        elif len(labels) != n:
            raise FamilyError("labels must name exactly n elements")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "labels", tuple(labels))

    def __eq__(self, other):
        if not isinstance(other, SetFamily):
            return NotImplemented
        return self.n == other.n and self.members == other.members

    def __hash__(self):
        return hash((self.n, self.members))

    @classmethod
    def _trusted(cls, n, members, labels=None):
        # Internal constructor: caller guarantees sorted, distinct, full union.
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "members", tuple(members))
        object.__setattr__(obj, "labels", tuple(range(n)) if labels is None else tuple(labels))
        return obj

    @property
    def universe(self) -> int:
        return full_mask(self.n)

    @property
    def m(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, mask) -> bool:
        i = bisect_left(self.members, mask)
        return i < len(self.members) and self.members[i] == mask

    def total_size(self) -> int:
        return sum(popcount(m) for m in self.members)

    def sets(self) -> list[frozenset]:
        """Members as frozensets of the caller's labels."""
        return [frozenset(self.labels[i] for i in bits_of(m)) for m in self.members]


class UnionClosedFamily(SetFamily):
    """A SetFamily checked to be closed under pairwise union."""

    def __post_init__(self):
        super().__post_init__()
        if not is_union_closed(self):
            raise NotUnionClosed("family is not closed under union")

    @classmethod
    def from_family(cls, family: SetFamily) -> "UnionClosedFamily":
        if isinstance(family, UnionClosedFamily):
            return family
        if not is_union_closed(family):
            raise NotUnionClosed("family is not closed under union")
        return cls._trusted(family.n, family.members, family.labels)


@dataclass(frozen=True)
class AbundanceProfile:
    counts: tuple[int, ...]
    argmax: int
    total: int

    @property
    def max(self) -> int:
        return self.counts[self.argmax]


def normalize(raw: Iterable[Iterable[int]]) -> SetFamily:
    """Relabel arbitrary non-negative integer elements onto 0..n-1.

    The relabelling is order preserving, so ``[{3}, {3, 7}]`` becomes the
    family ``{0}, {0, 1}`` with labels ``(3, 7)``.
    """
    sets = [frozenset(s) for s in raw]
    if not sets:
        raise FamilyError("at least one set is required")
    elements = sorted(set().union(*sets))
    if not elements:
        raise EmptyUniverse("all sets are empty")
    if any(not isinstance(x, int) or x < 0 for x in elements):
        raise FamilyError("elements must be non-negative integers")
    if len(elements) > MAX_ELEMENTS:
        raise TooManyElements(f"{len(elements)} distinct elements exceed {MAX_ELEMENTS}")
    index = {x: i for i, x in enumerate(elements)}
    masks = []
    for s in sets:
        mask = 0
        for x in s:
            mask |= 1 << index[x]
        masks.append(mask)
    if len(set(masks)) != len(masks):
        raise DuplicateSet("the same set appears twice")
    return SetFamily(len(elements), tuple(masks), tuple(elements))


def is_union_closed(family: SetFamily) -> bool:
    # Grow the closure from join-irreducible generators (taken in popcount
    # order, so reducible members are already present when reached) and bail
    # out as soon as a union escapes the family.  Cost is
    # O(#irreducibles * |F|) rather than O(|F|^2).
    members = set(family.members)
    closure: set[int] = set()
    for g in sorted(family.members, key=popcount):
        if g in closure:
            continue
        fresh = {c | g for c in closure}
        fresh.add(g)
        if not fresh <= members:
            return False
        closure |= fresh
    return True


def closure_masks(masks: Iterable[int]) -> set[int]:
    """All unions of nonempty subcollections of ``masks``."""
    closure: set[int] = set()
    for g in masks:
        if g in closure:
            continue
        fresh = {c | g for c in closure}
        fresh.add(g)
        closure |= fresh
    return closure


def union_closure(family: SetFamily) -> UnionClosedFamily:
    """Smallest union-closed family containing ``family``."""
    closed = closure_masks(family.members)
    return UnionClosedFamily._trusted(family.n, sorted(closed), family.labels)


def density_parts(family: SetFamily) -> tuple[int, int]:
    """Unreduced ``(sum of member sizes, n * |F|)``."""
    return family.total_size(), family.n * family.m


def density(family: SetFamily) -> Fraction:
    total, denom = density_parts(family)
    return Fraction(total, denom)


def abundance_profile(family: SetFamily) -> AbundanceProfile:
    counts = [0] * family.n
    for mask in family.members:
        for a in bits_of(mask):
            counts[a] += 1
    best = max(counts)
    return AbundanceProfile(tuple(counts), counts.index(best), sum(counts))


def columns(family: SetFamily) -> list[int]:
    """``columns[a]`` is a bitmask over member indices of the members holding ``a``."""
    cols = [0] * family.n
    for i, mask in enumerate(family.members):
        for a in bits_of(mask):
            cols[a] |= 1 << i
    return cols


def remove_bit(mask: int, a: int) -> int:
    low = mask & ((1 << a) - 1)
    return low | ((mask >> (a + 1)) << a)


def delete_element(family: SetFamily, a: int) -> SetFamily:
    """Remove element ``a`` from every member, merge duplicates, and compact labels."""
    if not 0 <= a < family.n:
        raise ElementOutOfRange(f"element {a} not in 0..{family.n - 1}")
    if family.n == 1:
        raise EmptyUniverse("deleting the only element leaves an empty universe")
    members = sorted({remove_bit(m, a) for m in family.members})
    labels = family.labels[:a] + family.labels[a + 1:]
    cls = UnionClosedFamily if isinstance(family, UnionClosedFamily) else SetFamily
    return cls._trusted(family.n - 1, members, labels)


def minimal_nonempty(family: SetFamily) -> int:
    """An inclusion-minimal nonempty member: fewest elements, then smallest mask."""
    best = None
    for mask in family.members:
        if mask and (best is None or (popcount(mask), mask) < best):
            best = (popcount(mask), mask)
    if best is None:
        raise NoNonemptySet("family has no nonempty member")
    return best[1]


def permute(family: SetFamily, perm: Sequence[int]) -> SetFamily:
    """Relabel element ``i`` as ``perm[i]``."""
    out = []
    for mask in family.members:
        img = 0
        for a in bits_of(mask):
            img |= 1 << perm[a]
        out.append(img)
    return type(family)._trusted(family.n, sorted(out))


def wojcik_family(n: int, k: int) -> UnionClosedFamily:
    """All subsets of {0..k-1} together with the full set {0..n-1}."""
    if not 1 <= n <= MAX_ELEMENTS or not 0 <= k <= n:
        raise BadParameters(f"need 0 <= k <= n <= {MAX_ELEMENTS} and n >= 1, got n={n}, k={k}")
    if k > MAX_CUBE_DIM:
        raise TooLarge(f"2^{k} members is beyond the materialisation cap 2^{MAX_CUBE_DIM}")
    members = list(range(1 << k))
    if k < n:
        members.append(full_mask(n))
    return UnionClosedFamily._trusted(n, members)


def powerset_family(n: int) -> UnionClosedFamily:
    return wojcik_family(n, n)


def chain_family(n: int) -> UnionClosedFamily:
    """The nested prefixes {0}, {0,1}, ..., {0..n-1}."""
    if not 1 <= n <= MAX_ELEMENTS:
        raise BadParameters(f"need 1 <= n <= {MAX_ELEMENTS}, got {n}")
    return UnionClosedFamily._trusted(n, [full_mask(j) for j in range(1, n + 1)])


def from_sets(n: int, sets: Iterable[Iterable[int]]) -> SetFamily:
    """Build a family over {0..n-1} from explicit element lists (no relabelling)."""
    masks = []
    for s in sets:
        mask = 0
        for a in s:
            if not 0 <= a < n:
                raise ElementOutOfRange(f"element {a} not in 0..{n - 1}")
            mask |= 1 << a
        masks.append(mask)
    return SetFamily(n, tuple(masks))
