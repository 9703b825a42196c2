import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wangforge.compilers.tree import compile_tree, recover_path, tree_tile_count
from wangforge.errors import CannotLocateRoot, InvalidRequest
from wangforge.solver import SolveRequest, solve_rect, solve_torus
from wangforge.tiles import WILDCARD, Tiling, is_valid_tiling
from wangforge.trees import FiniteTree, MembershipTable, all_sequences, from_predicate, longest_path, normalize


def tree_of(pred, depth, branching=2):
    return normalize(from_predicate(pred, depth, branching))[0]


def solved(ct, **kw):
    t = solve_rect(ct.request(**kw))
    if t is not None:
        assert is_valid_tiling(ct.tileset, t).ok
    return t


@st.composite
def trees(draw):
    d = draw(st.integers(1, 4))
    b = draw(st.integers(1, 3))
    ones = draw(st.sets(st.sampled_from(list(all_sequences(d, b)))))
    return normalize(MembershipTable(d, b, ones | {()}))[0]


def test_ait_single_path_tile_families():
    ct = compile_tree(tree_of("single-path(00)", 2), "ait")
    kinds = [r[0] for r in ct.roles]
    assert kinds.count("root") == 1
    assert kinds.count("up") == 2 and kinds.count("down") == 2
    assert kinds.count("mid-left") == 2 and kinds.count("mid-right") == 2
    assert max(r[2] for r in ct.roles if r[0] == "quad") == 4
    assert len(ct.tileset) == 1 + 4 + 4 * 3 + 4


def test_ait_single_path_round_trip():
    ct = compile_tree(tree_of("single-path(00)", 2), "ait")
    t = solved(ct)
    assert t is not None and t.width == t.height == 5
    assert t.at(0, 0) == ct.root_index
    assert recover_path(ct, t) == (0, 0)
    for start in [(-2, -2), (2, -1), (1, 2), (-1, 1), (-2, 0), (0, 2)]:
        assert recover_path(ct, t, start) == (0, 0)


def test_ait_fails_without_a_full_depth_node():
    ct = compile_tree(FiniteTree(frozenset({(), (0,), (1,)}), 3, 2), "ait")
    assert solved(ct) is None


def test_pit_columns_repeat():
    ct = compile_tree(tree_of("single-path(01)", 2), "pit")
    t = solved(ct, width=4, height=5)
    cols = {t.column(c) for c in range(t.width)}
    assert len(cols) == 1
    for x in range(-2, 2):
        assert recover_path(ct, t, (x, 0)) == (0, 1)


def test_pit_column_wraps_exactly_when_a_full_depth_node_exists():
    ct = compile_tree(tree_of("single-path(01)", 2), "pit")
    assert solve_torus(ct.tileset, 1, 5) is not None
    shallow = compile_tree(FiniteTree(frozenset({(), (0,)}), 3, 2), "pit")
    assert solve_torus(shallow.tileset, 1, 7) is None


def test_spokes_patch_is_a_diamond_of_the_path_length():
    tree = tree_of("comb(2)", 3)
    ct = compile_tree(tree, "spokes")
    t = solved(ct)
    placed = {c for c, v in t.items() if isinstance(v, int)}
    n = len(longest_path(tree))
    assert placed == {(x, y) for x in range(-n, n + 1) for y in range(-n, n + 1) if abs(x) + abs(y) <= n}
    assert recover_path(ct, t) == longest_path(tree)
    for arm in ((0, -1), (1, 0), (0, 1), (-1, 0)):
        assert isinstance(t.at(n * arm[0], n * arm[1]), int)
        assert t.at((n + 1) * arm[0], (n + 1) * arm[1]) in (WILDCARD, None)


@settings(max_examples=60, deadline=None)
@given(trees(), st.sampled_from(["ait", "pit", "spokes"]))
def test_tile_counts_match_closed_forms(tree, kind):
    assert len(compile_tree(tree, kind).tileset) == tree_tile_count(tree, kind)


@settings(max_examples=40, deadline=None)
@given(trees(), st.sampled_from(["ait", "pit", "spokes"]))
def test_round_trip_recovers_least_full_depth_path(tree, kind):
    ct = compile_tree(tree, kind)
    t = solved(ct)
    full = sorted(s for s in tree.nodes if len(s) == tree.depth_bound)
    if full:
        assert recover_path(ct, t) == full[0]
    elif kind == "ait":
        assert t is None


def test_path_only_keeps_the_longest_path():
    tree = tree_of("all", 2)
    ct = compile_tree(tree, "pit", path_only=True)
    assert len(ct.tileset) == 1 + 2 * 2


def test_bad_requests():
    with pytest.raises(InvalidRequest):
        compile_tree(FiniteTree(frozenset(), 2, 2), "ait")
    with pytest.raises(InvalidRequest):
        compile_tree(tree_of("all", 1), "zigzag")
    with pytest.raises(InvalidRequest):
        tree_tile_count(tree_of("all", 1), "zigzag")


def test_walk_needs_a_root():
    ct = compile_tree(tree_of("single-path(00)", 2), "ait")
    t = solved(ct)
    blank = Tiling.from_rows([[WILDCARD]])
    with pytest.raises(CannotLocateRoot):
        recover_path(ct, blank)
    # a window cut out of a quadrant has no way back to the root
    corner = Tiling.from_rows([[t.at(1, 1)]], origin=(1, 1))
    with pytest.raises(CannotLocateRoot):
        recover_path(ct, corner)


def test_serialized_layout():
    doc = json.loads(compile_tree(tree_of("single-path(0)", 1), "spokes").to_json())
    assert doc["layout"] == {"kind": "spokes", "root_cell": [0, 0], "root_tile": 0}
    assert doc["meta"]["kind"] == "spokes"
