import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wangforge.builtins import builtin
from wangforge.errors import InvalidRequest, OracleTooLarge
from wangforge.solver import (
    BACKEND, SolveRequest, block_tileable, enumerate_tilings, find_period, max_tileable_height,
    solve_rect, solve_rect_stats, solve_torus,
)
from wangforge.tiles import WILDCARD, TileSet, Tiling, WangTile, is_valid_tiling, tiles_of

T = WangTile.of
ONE = TileSet(tiles_of([(0, 0, 0, 0)]))
LONER = TileSet(tiles_of([(0, 0, 1, 0)]))

small_sets = st.lists(st.builds(T, *[st.integers(0, 2)] * 4), min_size=1, max_size=5, unique=True).map(
    lambda ts: TileSet(tuple(ts)))
dims = st.tuples(st.integers(1, 3), st.integers(1, 3))


def backends():
    return ["python", "compiled"] if BACKEND == "compiled" else ["python"]


def test_uniform_tile_fills_block():
    t = solve_rect(SolveRequest(ONE, 3, 3))
    assert t.cells == ((0, 0, 0),) * 3


def test_tile_that_cannot_sit_beside_itself():
    assert solve_rect(SolveRequest(LONER, 2, 1)) is None
    assert solve_rect(SolveRequest(LONER, 1, 2)) is not None


def test_jeandel_rao_six_by_six():
    ts = builtin("jeandel-rao11")
    t = solve_rect(SolveRequest(ts, 6, 6))
    assert t is not None and t.is_total and is_valid_tiling(ts, t).ok


@pytest.mark.parametrize("backend", backends())
@settings(max_examples=150, deadline=None)
@given(small_sets, dims)
def test_agrees_with_brute_force(backend, ts, wh):
    w, h = wh
    expected = enumerate_tilings(ts, w, h, limit=1)
    got = solve_rect_stats(SolveRequest(ts, w, h), backend=backend).tiling
    if not expected:
        assert got is None
    else:
        assert got == expected[0]
        assert is_valid_tiling(ts, got).ok


@pytest.mark.skipif(BACKEND != "compiled", reason="compiled kernel not built")
@pytest.mark.parametrize("name", ["culik13", "jeandel-rao11"])
def test_backends_explore_identically(name):
    req = SolveRequest(builtin(name), 8, 8)
    a = solve_rect_stats(req, backend="python")
    b = solve_rect_stats(req, backend="compiled")
    assert a.tiling == b.tiling
    assert a.nodes == b.nodes


def test_pins_are_respected_and_validated():
    ts = builtin("binary16")
    t = solve_rect(SolveRequest(ts, 3, 3, (((1, 1), 15),)))
    assert t.at(1, 1) == 15 and is_valid_tiling(ts, t).ok
    with pytest.raises(InvalidRequest):
        solve_rect(SolveRequest(ts, 3, 3, (((1, 1), 15), ((1, 1), 0))))
    with pytest.raises(InvalidRequest):
        solve_rect(SolveRequest(ts, 3, 3, (((3, 0), 0),)))
    with pytest.raises(InvalidRequest):
        solve_rect(SolveRequest(ts, 3, 3, (((0, 0), 16),)))
    with pytest.raises(InvalidRequest):
        solve_rect(SolveRequest(ts, 0, 3))


def test_pins_use_absolute_coordinates():
    ts = builtin("binary16")
    t = solve_rect(SolveRequest(ts, 3, 3, (((0, 0), 15),), origin=(-1, -1)))
    assert t.origin == (-1, -1) and t.at(0, 0) == 15


def test_conflicting_pins_are_unsolvable():
    assert solve_rect(SolveRequest(LONER, 2, 1, (((0, 0), 0), ((1, 0), 0)))) is None


def test_wildcards_fill_what_tiles_cannot():
    t = solve_rect(SolveRequest(LONER, 3, 1, wildcard_allowed=True))
    assert t.cells == ((0, WILDCARD, 0),)
    assert solve_rect(SolveRequest(LONER, 3, 1, wildcard_allowed=True, wildcard_budget=0)) is None
    assert solve_rect(SolveRequest(LONER, 3, 1, wildcard_allowed=True, wildcard_budget=1)) is not None


def test_connected_patch_grows_from_the_pin():
    # a 1-cell patch with everything else wild is the only connected answer for a loner pinned at the centre
    req = SolveRequest(LONER, 3, 3, (((1, 1), 0),), wildcard_allowed=True, scan="spiral", connected=True)
    t = solve_rect(req)
    placed = [c for c, v in t.items() if isinstance(v, int)]
    assert (1, 1) in placed
    assert _connected(placed)


def _connected(cells):
    cells = set(cells)
    seen, todo = set(), [next(iter(cells))]
    while todo:
        x, y = todo.pop()
        if (x, y) in seen:
            continue
        seen.add((x, y))
        todo.extend(n for n in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)) if n in cells)
    return seen == cells


def test_tie_break_permutation_changes_the_first_answer():
    ts = TileSet(tiles_of([(0, 0, 0, 0), (1, 1, 1, 1)]))
    assert solve_rect(SolveRequest(ts, 2, 2)).cells == ((0, 0), (0, 0))
    assert solve_rect(SolveRequest(ts, 2, 2, tie_break=(1, 0))).cells == ((1, 1), (1, 1))
    with pytest.raises(InvalidRequest):
        solve_rect(SolveRequest(ts, 2, 2, tie_break=(0, 0)))


def test_identical_requests_give_identical_answers(monkeypatch):
    req = SolveRequest(builtin("culik13"), 6, 6)
    first = solve_rect(req)
    monkeypatch.setenv("WANGFORGE_THREADS", "4")
    assert solve_rect(req) == first


def test_block_examples():
    assert block_tileable(ONE, 5)
    assert not block_tileable(LONER, 2)
    assert block_tileable(builtin("culik13"), 6)


@settings(max_examples=40, deadline=None)
@given(small_sets, st.integers(1, 3))
def test_block_tileability_is_monotone(ts, n):
    if block_tileable(ts, n + 1):
        assert block_tileable(ts, n)


def test_torus_examples():
    t = solve_torus(ONE, 1, 1)
    assert t.cells == ((0,),)
    assert solve_torus(builtin("binary16"), 2, 2) is not None
    assert solve_torus(LONER, 1, 1) is None


def test_binary16_two_by_two_torus_matches_exhaustive_count():
    ts = builtin("binary16")
    count = 0
    for cells in itertools.product(range(16), repeat=4):
        grid = ((cells[0], cells[1]), (cells[2], cells[3]))
        if is_valid_tiling(ts, Tiling.from_rows(grid), torus=True).ok:
            count += 1
    # every tile is fixed by its four edge bits and a 2x2 torus has 8 distinct edges
    assert count == 2**8
    assert solve_torus(ts, 2, 2) is not None


@settings(max_examples=40, deadline=None)
@given(small_sets, st.integers(1, 3), st.integers(1, 3))
def test_torus_unfolds_to_a_valid_plane_patch(ts, p, q):
    tor = solve_torus(ts, p, q)
    if tor is not None:
        assert is_valid_tiling(ts, tor.as_tiling(), torus=True).ok
        assert is_valid_tiling(ts, tor.unfold(2, 2)).ok


def test_period_examples():
    assert find_period(ONE, 3, 3).period == (1, 1)
    assert find_period(builtin("binary16"), 3, 3).period == (1, 1)
    r = find_period(builtin("culik13"), 4, 4)
    assert r.none_up_to_bound and r.period is None
    assert str(r).startswith("none-up-to-bound")


def test_period_prefers_smaller_area():
    ts = TileSet(tiles_of([(0, 0, 1, 0), (1, 0, 0, 0)]))
    r = find_period(ts, 3, 3)
    assert r.period == (2, 1)


def test_max_height_examples():
    assert max_tileable_height(ONE, 3, [((0, 0), 0)], 7) == 7
    # a tile whose bottom matches nothing stops after one row
    ts = TileSet(tiles_of([(0, 0, 0, 1)]))
    assert max_tileable_height(ts, 2, [((0, 0), 0)], 5) == 1
    with pytest.raises(InvalidRequest):
        max_tileable_height(LONER, 2, [((0, 0), 0), ((1, 0), 0)], 5)
    with pytest.raises(InvalidRequest):
        max_tileable_height(ONE, 2, [((0, 1), 0)], 5)


def test_oracle_examples_and_guard():
    assert len(enumerate_tilings(ONE, 2, 2)) == 1
    assert len(enumerate_tilings(TileSet(tiles_of([(0, 0, 0, 0), (1, 1, 1, 1)])), 1, 2)) == 2
    assert len(enumerate_tilings(builtin("binary16"), 1, 1)) == 16
    with pytest.raises(OracleTooLarge):
        enumerate_tilings(builtin("binary16"), 4, 3)
    with pytest.raises(OracleTooLarge):
        enumerate_tilings(ONE, 4, 4)


def test_pure_fallback_can_be_forced():
    import os
    import subprocess
    import sys
    code = ("from wangforge.solver import BACKEND, SolveRequest, solve_rect\n"
            "from wangforge.builtins import builtin\n"
            "print(BACKEND, solve_rect(SolveRequest(builtin('culik13'), 5, 5)).to_json())")
    env = dict(os.environ, WANGFORGE_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout
    backend, tiling = out.split(" ", 1)
    assert backend == "python"
    assert tiling.strip() == solve_rect(SolveRequest(builtin("culik13"), 5, 5)).to_json()


@pytest.mark.skipif(BACKEND != "compiled", reason="compiled kernel not built")
def test_backends_agree_beyond_one_bitset_word():
    from wangforge.compilers import compile_tree
    from wangforge.trees import from_predicate, normalize
    tree, _ = normalize(from_predicate("all", 4, 3))
    ct = compile_tree(tree, "spokes")
    assert len(ct.tileset) > 128
    a = solve_rect_stats(ct.request(), backend="python")
    b = solve_rect_stats(ct.request(), backend="compiled")
    assert a.tiling == b.tiling and a.nodes == b.nodes
