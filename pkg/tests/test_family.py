from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_closure
from ucdensity.errors import (
    BadParameters,
    DuplicateSet,
    ElementOutOfRange,
    EmptyUniverse,
    NoNonemptySet,
    NotUnionClosed,
    TooManyElements,
)
from ucdensity.family import (
    SetFamily,
    UnionClosedFamily,
    abundance_profile,
    chain_family,
    delete_element,
    density,
    density_parts,
    from_sets,
    is_union_closed,
    minimal_nonempty,
    normalize,
    popcount,
    powerset_family,
    union_closure,
    wojcik_family,
)
from ucdensity.witness import equal_pair_direct


@st.composite
def set_families(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    full = (1 << n) - 1
    masks = draw(st.sets(st.integers(0, full), min_size=1, max_size=12))
    masks.add(full)
    return SetFamily(n, tuple(masks))


def test_normalize_relabels_in_order():
    fam = normalize([{3}, {3, 7}])
    assert fam.n == 2
    assert fam.members == (0b01, 0b11)
    assert fam.labels == (3, 7)


def test_normalize_errors():
    with pytest.raises(EmptyUniverse):
        normalize([set()])
    with pytest.raises(DuplicateSet):
        normalize([{0}, {0}])
    with pytest.raises(TooManyElements):
        normalize([set(range(65))])


def test_setfamily_rejects_partial_union_and_duplicates():
    with pytest.raises(ValueError):
        SetFamily(3, (0b001, 0b010))
    with pytest.raises(DuplicateSet):
        SetFamily(2, (3, 3))
    with pytest.raises(ValueError):
        SetFamily(2, (0b111,))


def test_labels_do_not_affect_equality():
    assert normalize([{5}, {5, 9}]) == from_sets(2, [{0}, {0, 1}])


def test_is_union_closed_examples():
    assert not is_union_closed(from_sets(2, [{0}, {1}]))
    assert is_union_closed(powerset_family(2))
    assert is_union_closed(chain_family(3))
    with pytest.raises(NotUnionClosed):
        UnionClosedFamily(2, (1, 2))


def test_union_closure_examples():
    assert union_closure(from_sets(2, [{0}, {1}])).members == (1, 2, 3)
    fam = from_sets(3, [{0}, {1}, {2}])
    closed = union_closure(fam)
    assert set(closed.members) == brute_closure(fam.members)
    assert len(closed) == 7
    assert 0 not in closed


@settings(max_examples=200, deadline=None)
@given(set_families())
def test_closure_soundness(fam):
    closed = union_closure(fam)
    assert is_union_closed(closed)
    assert set(closed.members) == brute_closure(fam.members)
    assert union_closure(closed) == closed
    assert set(fam.members) <= set(closed.members)
    assert closed.universe in closed
    assert is_union_closed(fam) == (closed == fam)


@settings(max_examples=200, deadline=None)
@given(set_families())
def test_double_counting_and_density_range(fam):
    prof = abundance_profile(fam)
    assert prof.total == sum(popcount(m) for m in fam.members)
    assert all(1 <= c <= fam.m for c in prof.counts)
    assert prof.counts[prof.argmax] == max(prof.counts)
    assert prof.argmax == min(a for a, c in enumerate(prof.counts) if c == prof.max)
    d = density(fam)
    assert 0 < d <= 1
    assert (d == 1) == (fam.members == (fam.universe,))


def test_density_examples():
    assert density(wojcik_family(3, 1)) == Fraction(4, 9)
    assert density(SetFamily(4, (15,))) == 1
    assert density(powerset_family(3)) == Fraction(1, 2)
    assert density_parts(wojcik_family(3, 1)) == (4, 9)


def test_abundance_examples():
    prof = abundance_profile(powerset_family(2))
    assert prof.counts == (2, 2) and prof.argmax == 0
    assert abundance_profile(chain_family(3)).counts == (3, 2, 1)
    assert abundance_profile(wojcik_family(3, 1)).counts == (2, 1, 1)


def test_delete_element_examples():
    out = delete_element(chain_family(3), 0)
    assert out.members == (0b00, 0b01, 0b11)
    assert isinstance(out, UnionClosedFamily)
    assert delete_element(powerset_family(2), 1).members == (0, 1)
    with pytest.raises(ElementOutOfRange):
        delete_element(chain_family(3), 5)
    with pytest.raises(EmptyUniverse):
        delete_element(SetFamily(1, (1,)), 0)


def test_delete_element_keeps_labels():
    fam = normalize([{10, 20}, {10, 20, 30}])
    assert delete_element(fam, 1).labels == (10, 30)


@settings(max_examples=200, deadline=None)
@given(set_families(max_n=5))
def test_delete_duplicate_column_preserves_size(fam):
    fam = union_closure(fam)
    w = equal_pair_direct(fam)
    if w is None or fam.n < 2:
        return
    out = delete_element(fam, w.a)
    assert out.m == fam.m
    assert is_union_closed(out)


def test_minimal_nonempty_examples():
    assert minimal_nonempty(from_sets(3, [[], [0], [1, 2], [0, 1, 2]])) == 0b001
    assert minimal_nonempty(from_sets(3, [[], [0, 1], [1, 2], [0, 1, 2]])) == 0b011
    assert minimal_nonempty(SetFamily(1, (1,))) == 1
    fam = SetFamily._trusted(1, (0,))
    with pytest.raises(NoNonemptySet):
        minimal_nonempty(fam)


def test_wojcik_family_examples():
    assert wojcik_family(3, 1).members == (0, 1, 7)
    assert density(wojcik_family(3, 1)) == Fraction(4, 9)
    assert wojcik_family(2, 1).members == (0, 1, 3)
    assert density(wojcik_family(2, 1)) == Fraction(1, 2)
    assert len(wojcik_family(4, 2)) == 5
    assert density(wojcik_family(4, 2)) == Fraction(2, 5)
    assert wojcik_family(3, 0).members == (0, 7)
    assert len(wojcik_family(3, 3)) == 8
    for n, k in [(3, 5), (0, 0), (65, 1)]:
        with pytest.raises(BadParameters):
            wojcik_family(n, k)


@pytest.mark.parametrize("n", range(2, 13))
def test_wojcik_closed_form(n):
    for k in range(1, n):
        expected = Fraction(k * 2 ** (k - 1) + n, n * (2 ** k + 1))
        assert density(wojcik_family(n, k)) == expected


def test_chain_family_examples():
    assert chain_family(1).members == (1,)
    assert chain_family(3).members == (1, 3, 7)
    assert abundance_profile(chain_family(4)).counts == (4, 3, 2, 1)
    with pytest.raises(BadParameters):
        chain_family(0)


@pytest.mark.parametrize("n", range(1, 21))
def test_chain_columns_distinct(n):
    fam = chain_family(n)
    assert abundance_profile(fam).counts == tuple(range(n, 0, -1))
    assert fam.m == n
    assert equal_pair_direct(fam) is None


def test_sets_roundtrip_labels():
    fam = normalize([{4}, {4, 8}])
    assert fam.sets() == [frozenset({4}), frozenset({4, 8})]
