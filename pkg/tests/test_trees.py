import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import GOLDEN
from wangforge.errors import InvalidRequest, MalformedPredicate
from wangforge.trees import (
    FiniteTree, MembershipTable, all_sequences, from_predicate, is_ill_at_truncation, longest_path, normalize,
    str_to_seq,
)


def table(depth, branching, *words):
    return MembershipTable(depth, branching, frozenset(str_to_seq(w) for w in words))


@st.composite
def tables(draw, max_depth=4, max_branching=3):
    d = draw(st.integers(0, max_depth))
    b = draw(st.integers(1, max_branching))
    universe = list(all_sequences(d, b))
    ones = draw(st.sets(st.sampled_from(universe)))
    return MembershipTable(d, b, frozenset(ones))


def _prefix_closed(nodes):
    return all(s[:k] in nodes for s in nodes for k in range(len(s)))


def _brute_max_closed(ones):
    """Largest prefix-closed subset by checking every subset (small inputs only)."""
    ones = sorted(ones)
    best = frozenset()
    for r in range(len(ones) + 1):
        for sub in itertools.combinations(ones, r):
            s = frozenset(sub)
            if _prefix_closed(s) and (not s or () in s) and len(s) > len(best):
                best = s
    return best


def test_clean_table():
    tree, rep = normalize(table(3, 2, "", "0", "00"))
    assert tree.nodes == {(), (0,), (0, 0)} and rep.clean


def test_orphan_is_deleted():
    tree, rep = normalize(table(3, 2, "", "01"))
    assert tree.nodes == {()}
    assert not rep.clean and rep.deleted == ((0, 1),)


@given(tables())
def test_normalize_gives_a_tree(tbl):
    tree, _ = normalize(tbl)
    assert tree.nodes <= tbl.ones
    assert _prefix_closed(tree.nodes)


@given(tables())
def test_normalize_is_idempotent(tbl):
    once, _ = normalize(tbl)
    twice, rep = normalize(once.table())
    assert twice == once and rep.clean


@given(tables(max_depth=3, max_branching=2))
def test_normalize_is_the_maximal_closed_subset(tbl):
    tree, _ = normalize(tbl)
    assert tree.nodes == _brute_max_closed(tbl.ones)


def test_longest_path_examples():
    chain = FiniteTree(frozenset({(), (0,), (0, 0), (0, 0, 0)}), 3, 2)
    assert longest_path(chain) == (0, 0, 0) and is_ill_at_truncation(chain)
    bush = FiniteTree(frozenset({(), (0,), (1,)}), 3, 2)
    assert longest_path(bush) == (0,) and not is_ill_at_truncation(bush)
    full, _ = normalize(from_predicate("all", 5, 2))
    assert longest_path(full) == (0,) * 5


@given(tables())
def test_longest_path_has_no_extension(tbl):
    tree, _ = normalize(tbl)
    if not tree.nodes:
        return
    p = longest_path(tree)
    assert not tree.children(p)
    assert all(len(s) <= len(p) for s in tree.nodes)


def test_longest_path_of_empty_tree():
    with pytest.raises(InvalidRequest):
        longest_path(FiniteTree(frozenset(), 2, 2))


def test_tree_invariants_are_enforced():
    with pytest.raises(InvalidRequest):
        FiniteTree(frozenset({(), (0, 1)}), 3, 2)
    with pytest.raises(InvalidRequest):
        FiniteTree(frozenset({(), (2,)}), 3, 2)
    with pytest.raises(InvalidRequest):
        FiniteTree(frozenset({(), (0,), (0, 0)}), 1, 2)


def test_heights():
    tree = FiniteTree(frozenset({(), (0,), (1,), (1, 0)}), 3, 2)
    assert tree.heights == {(): 2, (0,): 0, (1,): 1, (1, 0): 0}


def test_single_path_predicate():
    tbl = from_predicate("single-path(010)", 3, 2)
    assert tbl.ones == {(), (0,), (0, 1), (0, 1, 0)}


def test_all_predicate():
    assert len(from_predicate("all", 3, 2).ones) == 15


def test_comb_predicate():
    tbl = from_predicate("comb(1)", 2, 2)
    assert tbl.ones == {(), (0,), (0, 0), (1,), (0, 1)}


def test_random_predicate_is_pinned():
    tbl = from_predicate("random(7, 0.5)", 4, 3)
    assert tbl.to_json() + "\n" == (GOLDEN / "random_7_0.5_d4_b3.json").read_text()
    assert from_predicate("random(7,0.5)", 4, 3) == tbl


@pytest.mark.parametrize("pred", ["nope", "single-path(2)", "random(1)", "random(1, 2.0)", "comb(x)", "all(", ""])
def test_bad_predicates(pred):
    with pytest.raises(MalformedPredicate):
        from_predicate(pred, 3, 2)


def test_table_json_round_trip():
    tbl = table(2, 3, "", "2", "21")
    assert MembershipTable.from_json(tbl.to_json()) == tbl
    assert tbl.to_dict() == {"depth": 2, "branching": 3, "ones": ["", "2", "21"]}
