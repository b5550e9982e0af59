"""Exact minimum density s_n by isomorph-free enumeration and branch-and-bound.

Two facts shrink the pruned search:

* Every minimizer contains the empty set.  Adding the empty set to a
  union-closed family keeps it union-closed, leaves the total size unchanged
  and increases the member count, so the density strictly drops.
* Every union-closed family contains its universe.

The incumbent is seeded with the best Wojcik-family density, and Reimer's
inequality (density >= log2(m) / (2n)) caps the member count m of any family
that could tie or beat it.

Work is split into independent units, one per choice of the largest member
below the universe.  Units never share state, so results and node counts are
identical for any worker count.
"""

from __future__ import annotations

import enum
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from . import _pykernels
from .bounds import ceil_log2, conjectured_sn, floor_log2
from .errors import BadParameters, TooLarge
from .family import (
    SetFamily,
    UnionClosedFamily,
    closure_masks,
    density,
    full_mask,
    permute,
    wojcik_family,
)

try:
    from . import _ckernels
except ImportError:  # pragma: no cover - exercised only without a compiler
    _ckernels = None

BACKEND = "compiled" if _ckernels is not None else "python"
KERNEL_MAX_N = 6
CANONICAL_MAX_N = 8
FULL_ENUMERATION_MAX_N = 5
NAIVE_MAX_N = 4


class Mode(enum.Enum):
    NAIVE = "NaiveExhaustive"
    PRUNED = "PrunedBranchAndBound"

    def __str__(self):
        return self.value


@lru_cache(maxsize=None)
def get_kernel(n: int, backend: str | None = None):
    backend = backend or BACKEND
    if backend == "compiled":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not built")
        return _ckernels.FamilyKernel(n)
    if backend == "python":
        return _pykernels.FamilyKernel(n)
    raise ValueError(f"unknown backend {backend!r}")


def family_to_bits(family: SetFamily) -> int:
    bits = 0
    for mask in family.members:
        bits |= 1 << mask
    return bits


def bits_to_masks(bits: int) -> list[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Lexicographically least sorted mask list over all relabellings."""

    n: int
    masks: tuple[int, ...]

    def to_family(self) -> UnionClosedFamily | SetFamily:
        fam = SetFamily._trusted(self.n, self.masks)
        try:
            return UnionClosedFamily.from_family(fam)
        except ValueError:
            return fam


def _canonical_generic(family: SetFamily) -> tuple[int, ...]:
    best = None
    for perm in itertools.permutations(range(family.n)):
        img = tuple(permute(family, perm).members)
        if best is None or img < best:
            best = img
    return best


def canonical_form(family: SetFamily, backend: str | None = None) -> CanonicalForm:
    n = family.n
    if n > CANONICAL_MAX_N:
        raise TooLarge(f"canonical form sweeps n! relabellings; n={n} > {CANONICAL_MAX_N}")
    if n <= KERNEL_MAX_N:
        bits = get_kernel(n, backend).canonical(family_to_bits(family))
        return CanonicalForm(n, tuple(bits_to_masks(bits)))
    return CanonicalForm(n, _canonical_generic(family))


def _run_units(fn, units, workers: int):
    if workers <= 1:
        return [fn(u) for u in units]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, units))


def enumerate_ucf(
    n: int,
    max_m: int | None = None,
    workers: int = 1,
    backend: str | None = None,
) -> Iterator[UnionClosedFamily]:
    """One canonical representative per isomorphism class of union-closed
    families with universe {0..n-1}, optionally with at most ``max_m`` members.

    Output order is by member count, then by mask list.
    """
    families, _ = enumerate_ucf_counted(n, max_m, workers, backend)
    return iter(families)


def enumerate_ucf_counted(n, max_m=None, workers=1, backend=None):
    """Like ``enumerate_ucf`` but returns ``(families, labeled_nodes_visited)``."""
    if n < 1:
        raise BadParameters("n must be >= 1")
    if n > KERNEL_MAX_N or (n > FULL_ENUMERATION_MAX_N and max_m is None):
        raise TooLarge(
            f"full enumeration is limited to n <= {FULL_ENUMERATION_MAX_N}"
            f" (n = {KERNEL_MAX_N} needs max_m)"
        )
    if max_m is not None and max_m < 1:
        raise BadParameters("max_m must be >= 1")
    kernel = get_kernel(n, backend)
    universe = full_mask(n)
    root = 1 << universe
    cap = max_m or 0
    found: list[int] = []
    visited = 1
    if kernel.is_canonical(root):
        found.append(root)
    if cap != 1:
        units = list(range(universe))
        results = _run_units(lambda x: kernel.enumerate(root | 1 << x, x, cap), units, workers)
        for fams, count in results:
            found.extend(fams)
            visited += count
    masks = sorted((bits_to_masks(b) for b in found), key=lambda ms: (len(ms), ms))
    return [UnionClosedFamily._trusted(n, ms) for ms in masks], visited


@dataclass(frozen=True)
class SnRecord:
    n: int
    sn: Fraction
    minimizers: tuple[CanonicalForm, ...]
    families_explored: int
    method: Mode
    size_cap: int | None = None


def reimer_size_cap(n: int, incumbent: Fraction) -> int:
    """Largest m with log2(m) / (2n) <= incumbent, i.e. m^q <= 2^(2np)."""
    p, q = incumbent.numerator, incumbent.denominator
    limit = 1 << (2 * n * p)
    lo, hi = 1, 2
    while hi ** q <= limit:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid ** q <= limit:
            lo = mid
        else:
            hi = mid
    return lo


def _naive_union_closed(members: list[int], bits: int) -> bool:
    for i, x in enumerate(members):
        for y in members[i + 1:]:
            if not bits >> (x | y) & 1:
                return False
    return True


def _compute_sn_naive(n: int) -> SnRecord:
    universe = full_mask(n)
    best = None
    minimizers: set[tuple[int, ...]] = set()
    total_families = 1 << (1 << n)
    for bits in range(1, total_families):
        members = bits_to_masks(bits)
        union = 0
        for x in members:
            union |= x
        if union != universe or not _naive_union_closed(members, bits):
            continue
        fam = SetFamily._trusted(n, members)
        d = density(fam)
        if best is None or d < best:
            best = d
            minimizers = set()
        if d == best:
            minimizers.add(_canonical_generic(fam))
    forms = tuple(CanonicalForm(n, ms) for ms in sorted(minimizers))
    return SnRecord(n, best, forms, total_families, Mode.NAIVE)


def _compute_sn_pruned(n, max_m, workers, backend) -> SnRecord:
    kernel = get_kernel(n, backend)
    incumbent = conjectured_sn(n)
    cap = reimer_size_cap(n, incumbent)
    if max_m is not None:
        cap = min(cap, max_m)
    universe = full_mask(n)
    p, q = incumbent.numerator, incumbent.denominator
    if n == 1:
        # Universe and empty set coincide with the whole power set.
        root = 0b11
        units = []
    else:
        root = 1 << universe | 1
        units = list(range(1, universe))
    results = [kernel.search(root, 0, 2, p, q)]
    if cap > 2:
        results += _run_units(
            lambda x: kernel.search(root | 1 << x, x, cap, p, q), units, workers
        )
    best = min(Fraction(num, den) for num, den, _, _ in results)
    found = set()
    explored = 0
    for num, den, mins, count in results:
        explored += count
        if Fraction(num, den) == best:
            found.update(mins)
    forms = sorted(CanonicalForm(n, tuple(bits_to_masks(b))) for b in found)
    return SnRecord(n, best, tuple(forms), explored, Mode.PRUNED, cap)


def compute_sn(
    n: int,
    mode: Mode = Mode.PRUNED,
    workers: int = 1,
    max_m: int | None = None,
    backend: str | None = None,
) -> SnRecord:
    """Exact s_n with all canonical minimizers.

    Naive mode scans every subfamily of the power set (n <= 4).  Pruned mode
    is exact for n <= 5; at n = 6 a ``max_m`` cap is required and the result
    is the minimum over families with at most that many members (exact once
    the cap reaches the Reimer bound, 16).
    """
    if n < 1:
        raise BadParameters("n must be >= 1")
    mode = Mode(mode)
    if mode is Mode.NAIVE:
        if n > NAIVE_MAX_N:
            raise TooLarge(f"naive scan of 2^(2^n) subfamilies is limited to n <= {NAIVE_MAX_N}")
        return _compute_sn_naive(n)
    if n > KERNEL_MAX_N or (n == KERNEL_MAX_N and max_m is None):
        raise TooLarge("pruned search is limited to n <= 5 (n = 6 needs max_m)")
    if max_m is not None and max_m < 2:
        raise BadParameters("max_m must be >= 2: minimizers hold the empty set and the universe")
    return _compute_sn_pruned(n, max_m, workers, backend)


def conjecture_k_values(n: int) -> list[int]:
    return sorted({floor_log2(n), ceil_log2(n)})


@dataclass(frozen=True)
class Conjecture2Report:
    n: int
    record: SnRecord
    exists_reading: bool
    forall_reading: bool
    counterexamples: tuple[CanonicalForm, ...]
    conjectured_forms: tuple[CanonicalForm, ...]


def verify_conjecture2(
    n: int,
    mode: Mode = Mode.PRUNED,
    workers: int = 1,
    max_m: int | None = None,
    backend: str | None = None,
) -> Conjecture2Report:
    """Compare every minimizer with the Wojcik families for k = floor/ceil log2 n.

    The conjecture can be read as "some minimizer has this form" or "every
    minimizer has this form"; both readings are reported.
    """
    record = compute_sn(n, mode, workers, max_m, backend)
    targets = tuple(sorted({canonical_form(wojcik_family(n, k), backend) for k in conjecture_k_values(n)}))
    hits = [f for f in record.minimizers if f in targets]
    misses = tuple(f for f in record.minimizers if f not in targets)
    return Conjecture2Report(
        n=n,
        record=record,
        exists_reading=bool(hits),
        forall_reading=bool(record.minimizers) and not misses,
        counterexamples=misses,
        conjectured_forms=targets,
    )


# -- reproducible random families -------------------------------------------

SAMPLE_MAX_N = 24
GEOMETRIC_CONTINUE = 0.75
MAX_DRAWS = 12
_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 (Steele, Lea, Flood 2014): the whole generator state is one
    64-bit counter advanced by the golden-ratio increment, then mixed."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))


def sample_random_ucf(
    n: int, count: int, seed: int, size_bias: float = 0.3
) -> Iterator[UnionClosedFamily]:
    """Stream of union closures of random masks plus the universe.

    Per family: draw K masks where K starts at 1 and grows while a uniform
    draw is below 0.75 (capped at 12); each mask holds element a when a
    uniform draw is below ``size_bias``, elements visited in order 0..n-1.
    """
    if not 1 <= n <= SAMPLE_MAX_N:
        raise TooLarge(f"sampling is limited to 1 <= n <= {SAMPLE_MAX_N}")
    if count < 1:
        raise BadParameters("count must be >= 1")
    if not 0.0 < size_bias < 1.0:
        raise BadParameters("size_bias must lie in (0, 1)")
    rng = SplitMix64(seed)
    universe = full_mask(n)
    for _ in range(count):
        draws = 1
        while draws < MAX_DRAWS and rng.uniform() < GEOMETRIC_CONTINUE:
            draws += 1
        masks = [universe]
        for _ in range(draws):
            mask = 0
            for a in range(n):
                if rng.uniform() < size_bias:
                    mask |= 1 << a
            masks.append(mask)
        yield UnionClosedFamily._trusted(n, sorted(closure_masks(masks)))


def is_wojcik_form(family: SetFamily, backend: str | None = None) -> list[int]:
    """The k values for which ``family`` is isomorphic to ``wojcik_family(n, k)``."""
    n = family.n
    form = canonical_form(family, backend)
    hits = []
    for k in range(n + 1):
        m = (1 << k) + (1 if k < n else 0)
        if m == family.m and canonical_form(wojcik_family(n, k), backend) == form:
            hits.append(k)
    return hits


__all__ = [
    "BACKEND",
    "CanonicalForm",
    "Conjecture2Report",
    "Mode",
    "SnRecord",
    "SplitMix64",
    "canonical_form",
    "compute_sn",
    "enumerate_ucf",
    "enumerate_ucf_counted",
    "get_kernel",
    "is_wojcik_form",
    "reimer_size_cap",
    "sample_random_ucf",
    "verify_conjecture2",
]
