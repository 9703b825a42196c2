import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import GOLDEN
from wangforge.colors import atom
from wangforge.compilers.eca import (
    HexTiling, compile_eca_hex, compile_eca_wang, decode_eca_rows, is_valid_hex_tiling, tile_eca,
    wang_first_row_pins,
)
from wangforge.errors import DecodeError, InvalidRequest, WindowTooSmall
from wangforge.machines import eca_run
from wangforge.solver import SolveRequest, solve_rect
from wangforge.tiles import Tiling, is_valid_tiling

GEOMETRIES = {"hex": compile_eca_hex, "wang": compile_eca_wang}


def _valid(compiled, tiling):
    if isinstance(tiling, HexTiling):
        return is_valid_hex_tiling(tiling).ok
    return is_valid_tiling(compiled.tileset, tiling).ok


def test_sizes_for_every_rule():
    for n in range(256):
        assert len(compile_eca_hex(n)) == 15
        assert len(compile_eca_wang(n).tileset) == 18


def test_rule_30_hex_set_is_pinned():
    assert compile_eca_hex(30).to_json() + "\n" == (GOLDEN / "rule30_hex15.json").read_text()


def test_rule_30_hex_outputs():
    hts = compile_eca_hex(30)
    rule_hexes = [t for t in hts.tiles if t.role == "rule"]
    got = {(t.ul.text + t.top.text + t.ur.text): t.bottom.text for t in rule_hexes}
    assert got == {"111": "0", "110": "0", "101": "0", "100": "1", "011": "1", "010": "1", "001": "1", "000": "0"}


def test_rule_255_outputs_are_all_one():
    assert all(t.bottom == atom("1") for t in compile_eca_hex(255).tiles if t.role == "rule")


def test_hex_set_json_round_trip():
    hts = compile_eca_hex(110)
    doc = json.loads(hts.to_json())
    assert doc["geometry"] == "hex15"
    assert {t["role"] for t in doc["tiles"]} == {"rule", "lozenge", "init"}
    assert type(hts).from_json(hts.to_json()) == hts


@pytest.mark.parametrize("geometry", GEOMETRIES)
def test_rule_30_small_example(geometry):
    c = GEOMETRIES[geometry](30)
    t = tile_eca(c, "00100", 2)
    assert decode_eca_rows(t, c) == ["00100", "01110", "11001"]
    assert _valid(c, t)


@pytest.mark.parametrize("geometry", GEOMETRIES)
def test_rule_0_clears_after_the_input(geometry):
    c = GEOMETRIES[geometry](0)
    rows = decode_eca_rows(tile_eca(c, "1101101", 4), c)
    assert rows[0] == "1101101" and all(r == "0000000" for r in rows[1:])


@pytest.mark.parametrize("geometry", GEOMETRIES)
def test_rule_110_sixteen_rows(geometry):
    rng = random.Random(110)
    row = "".join(rng.choice("01") for _ in range(16))
    c = GEOMETRIES[geometry](110)
    t = tile_eca(c, row, 16)
    assert decode_eca_rows(t, c) == eca_run(110, row, 17)
    assert _valid(c, t)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 255), st.text("01", min_size=12, max_size=12), st.sampled_from(sorted(GEOMETRIES)))
def test_decode_replays_the_automaton(n, row, geometry):
    c = GEOMETRIES[geometry](n)
    t = tile_eca(c, row, 12)
    assert _valid(c, t)
    assert decode_eca_rows(t, c) == eca_run(n, row, 13)


@pytest.mark.parametrize("n", [30, 90, 110])
def test_solver_grows_the_same_wang_diagram(n):
    c = compile_eca_wang(n)
    row = "0010110"
    t = solve_rect(SolveRequest(c.tileset, 2 * len(row) - 1, 9, wang_first_row_pins(c, row)))
    assert decode_eca_rows(t, c) == eca_run(n, row, 5)


def test_centred_window():
    c = compile_eca_hex(30)
    t = tile_eca(c, "1", 3, width=7)
    assert decode_eca_rows(t) == eca_run(30, "0001000", 4)
    with pytest.raises(WindowTooSmall):
        tile_eca(c, "1", 4, width=7)


def test_corrupted_tilings_are_caught():
    c = compile_eca_hex(30)
    t = tile_eca(c, "00100", 2)
    rows = [list(r) for r in t.hexes]
    rows[1][2] = c.hex_index(atom("0"), atom("0"), atom("0"))
    bad = HexTiling(t.tileset, tuple(map(tuple, rows)), t.lozenges, t.halves)
    assert not is_valid_hex_tiling(bad).ok

    w = compile_eca_wang(30)
    wt = tile_eca(w, "00100", 2)
    cells = [list(r) for r in wt.cells]
    cells[2][4] = w.index(("distributor", 1 - w.roles[cells[2][4]][1]))
    assert not is_valid_tiling(w.tileset, Tiling.from_rows(cells)).ok


def test_hex_tiling_json_round_trip():
    t = tile_eca(compile_eca_hex(90), "0110", 3)
    assert HexTiling.from_dict(json.loads(json.dumps(t.to_dict()))) == t


def test_decode_errors():
    w = compile_eca_wang(30)
    wt = tile_eca(w, "00100", 2)
    with pytest.raises(DecodeError):
        decode_eca_rows(wt)
    with pytest.raises(DecodeError):
        decode_eca_rows(Tiling.from_rows([[0, 0]]), w)
    with pytest.raises(DecodeError):
        decode_eca_rows(Tiling.from_rows([[0]]), w)


def test_bad_requests():
    with pytest.raises(InvalidRequest):
        tile_eca(compile_eca_hex(30), "0101", 0)
    with pytest.raises(InvalidRequest):
        tile_eca("rule 30", "0101", 1)
    with pytest.raises(InvalidRequest):
        compile_eca_hex(300)
