from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from ucdensity.errors import InternalProofViolation, PreconditionViolated
from ucdensity.family import (
    SetFamily,
    UnionClosedFamily,
    chain_family,
    columns,
    from_sets,
    powerset_family,
    union_closure,
    wojcik_family,
)
from ucdensity.witness import (
    Branch,
    Lemma1,
    Method,
    check_frankl,
    equal_pair_direct,
    lemma1_conclusion,
    lemma2_witness,
    same_column,
)


def column_scan(family):
    """Independent oracle: all pairs a < b with identical member columns."""
    cols = [tuple(i for i, m in enumerate(family.members) if m >> a & 1) for a in range(family.n)]
    return [(a, b) for a in range(family.n) for b in range(a + 1, family.n) if cols[a] == cols[b]]


def test_equal_pair_direct_examples():
    w = equal_pair_direct(from_sets(2, [[0, 1]]))
    assert w.pair == (0, 1) and w.method is Method.DIRECT
    assert equal_pair_direct(chain_family(3)) is None
    w = equal_pair_direct(from_sets(5, [[0, 1], [0, 1, 2], [0, 1, 2, 3, 4]]))
    assert w.pair == (0, 1)


def test_equal_pair_direct_is_lexicographically_smallest():
    fam = from_sets(5, [[2, 3], [0, 1, 2, 3, 4]])
    # columns: 0,1,4 equal; 2,3 equal
    assert column_scan(fam)[0] == equal_pair_direct(fam).pair == (0, 1)


def test_lemma2_base_branch():
    w = lemma2_witness(UnionClosedFamily(2, (3,)))
    assert w.pair == (0, 1) and w.method is Method.CONSTRUCTIVE
    assert w.branches() == [Branch.BASE_SINGLETON]


def test_lemma2_universe_branch():
    w = lemma2_witness(from_sets(3, [[], [0, 1, 2]]))
    assert w.pair == (0, 1)
    assert w.branches() == [Branch.A_EQUALS_UNIVERSE]


def test_lemma2_three_member_example():
    fam = from_sets(5, [[0, 1], [0, 1, 2], [0, 1, 2, 3, 4]])
    w = lemma2_witness(fam)
    assert w.a != w.b and w.pair in column_scan(fam)


def test_lemma2_preconditions():
    with pytest.raises(PreconditionViolated):
        lemma2_witness(chain_family(3))
    with pytest.raises(PreconditionViolated):
        lemma2_witness(SetFamily(1, (1,)))
    with pytest.raises(PreconditionViolated):
        lemma2_witness(from_sets(4, [[0], [1], [0, 1, 2, 3]]))


def test_lemma1_examples():
    fam = from_sets(2, [[], [0], [0, 1]])
    assert lemma1_conclusion(fam, 0b01, 0, 1) is Lemma1.A_IN_ALL
    with pytest.raises(PreconditionViolated):
        lemma1_conclusion(powerset_family(2), 0b01, 0, 1)
    fam = from_sets(3, [[0, 1], [0, 1, 2]])
    assert lemma1_conclusion(fam, 0b011, 0, 1) is Lemma1.COLUMNS_EQUAL


def test_lemma1_b_in_all():
    fam = from_sets(2, [[], [1], [0, 1]])
    assert lemma1_conclusion(fam, 0b10, 0, 1) is Lemma1.B_IN_ALL


def test_lemma1_rejects_non_minimal():
    fam = from_sets(2, [[0], [0, 1]])
    with pytest.raises(PreconditionViolated):
        lemma1_conclusion(fam, 0b11, 0, 1)


def test_lemma1_neither_side_is_internal_violation():
    # Not union-closed, so the two-column lemma's guarantee is void and the checker must say so.
    fam = from_sets(3, [[0], [1], [0, 1, 2]])
    with pytest.raises(InternalProofViolation):
        lemma1_conclusion(fam, 0b001, 0, 2)


def test_check_frankl_examples():
    assert check_frankl(powerset_family(2))[0]
    ok, arg = check_frankl(chain_family(6))
    assert ok and arg == 0
    ok, arg = check_frankl(wojcik_family(3, 1))
    assert ok and arg == 0


@pytest.mark.parametrize("n", range(1, 21))
def test_chain_is_tight(n):
    fam = chain_family(n)
    assert fam.m == n
    assert len(set(columns(fam))) == n
    assert equal_pair_direct(fam) is None


def test_lemma2_over_corpus(corpus_le5):
    branches = Counter()
    hyp = 0
    for fam in corpus_le5:
        assert check_frankl(fam)[0]
        if fam.n < 2 or fam.m >= fam.n:
            continue
        hyp += 1
        pairs = column_scan(fam)
        direct = equal_pair_direct(fam)
        assert direct is not None and direct.pair == pairs[0]
        w = lemma2_witness(fam, full_recheck=True)
        assert w.a != w.b and same_column(fam, w.a, w.b)
        assert w.pair in pairs
        branches.update(w.branches())
    assert hyp > 50
    assert set(branches) == set(Branch), branches


def test_trace_pairs_are_root_indices(corpus_le5):
    for fam in corpus_le5:
        if fam.n >= 2 and fam.m < fam.n:
            for step in lemma2_witness(fam).trace:
                assert all(0 <= x < fam.n for x in step.pair)
                assert step.pair[0] != step.pair[1]


def test_witness_keeps_user_labels():
    fam = UnionClosedFamily(3, (0b110, 0b111), labels=(10, 20, 30))
    w = lemma2_witness(fam)
    assert (fam.labels[w.a], fam.labels[w.b]) == (20, 30)


@st.composite
def small_closures(draw):
    n = draw(st.integers(2, 9))
    full = (1 << n) - 1
    gens = draw(st.lists(st.integers(0, full), min_size=0, max_size=3))
    masks = set(gens) | {full}
    return union_closure(SetFamily(n, tuple(masks)))


@settings(max_examples=150, deadline=None)
@given(small_closures())
def test_lemma2_random_closures(fam):
    assert check_frankl(fam)[0]
    if fam.m < fam.n:
        w = lemma2_witness(fam, full_recheck=True)
        assert w.pair in column_scan(fam)
    else:
        with pytest.raises(PreconditionViolated):
            lemma2_witness(fam)
