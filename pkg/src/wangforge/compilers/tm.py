"""Turing machine to Wang tile set, and tilings back to configurations.

Each tiling row is one machine step.  The bottom edges of row ``r`` spell
configuration ``c_r``: plain symbols, plus one ``(s,q)`` marker under the
head.  Time runs downward.  The tile families are

* symbol tiles      <B, s, B, s>
* head tiles        <q>, s, B, (s,q)>  and  <B, s, <q, (s,q)>
* computation tiles <B, (s,q), q'>, s'> for a right move, <<q', (s,q), B, s'> for a left move
* halting tiles     <B, (s,q), H, s'> for every rule entering the halting state

Horizontal state signals carry their direction of travel (``q>`` moves
right, ``<q`` moves left).  With a single undirected state color a real
head moving left could meet a stray head moving right into the same state,
and the two would cancel, letting a halting machine tile forever.  With
directed signals a head can only appear where the row above had one.

Nothing accepts an ``H`` edge, so the row in which the machine halts cannot
be completed and a halting machine tiles only as many rows as it has steps.
Tape position ``p`` sits in column ``head_col + p``.

When ``head_col > 0`` one extra start-edge tile ``<B, blank, q0>, blank>``
feeds the start state into the row-0 head tile from the left.  With
``head_col = 0`` that edge faces the free window boundary instead.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..colors import Color, atom
from ..errors import DecodeError, InvalidRequest
from ..machines import TmConfig, TuringMachine
from ..tiles import TileSet, Tiling, WangTile

__all__ = ["CompiledTm", "compile_tm", "decode_tm_rows", "tm_tile_count", "SEPARATOR", "HALT_EDGE",
           "state_color", "symbol_color", "marker_color"]

SEPARATOR = atom("B")
HALT_EDGE = atom("H")


def state_color(q: str, heading: str = "R") -> Color:
    """Horizontal state signal travelling right (``"R"``) or left (``"L"``)."""
    # prefixed so a state called "B" or "H" can never meet the separator or halt edge
    return atom(f"q>{q}" if heading == "R" else f"q<{q}")


def symbol_color(s: str) -> Color:
    return atom(s)


def marker_color(s: str, q: str) -> Color:
    return atom(f"({s},{q})")


@dataclass(frozen=True)
class CompiledTm:
    tileset: TileSet
    first_row_pins: tuple[tuple[tuple[int, int], int], ...]
    layout: dict
    machine: TuringMachine
    roles: tuple[tuple, ...]

    @property
    def width(self) -> int:
        return self.layout["width"]

    @property
    def head_col(self) -> int:
        return self.layout["head_col"]

    def to_json(self) -> str:
        return self.tileset.to_json(layout=self.layout)


def _head_states(tm: TuringMachine, reachable_only: bool) -> list[str]:
    if not reachable_only:
        return list(tm.working_states)
    reach = {tm.start} | {q2 for (_, _, _, q2, _) in tm.rules if q2 != tm.halt}
    return [q for q in tm.working_states if q in reach]


def tm_tile_count(tm: TuringMachine, reachable_only: bool = False, start_edge: bool = False) -> int:
    """|symbols| + 2 |symbols| |head states| + one tile per rule (+1 for a start edge)."""
    q = len(_head_states(tm, reachable_only))
    return len(tm.symbols) + 2 * len(tm.symbols) * q + len(tm.rules) + int(start_edge)


def compile_tm(tm: TuringMachine, word="", *, width: int | None = None, head_col: int = 0,
               reachable_only: bool = False) -> CompiledTm:
    word = tuple(word)
    for s in word:
        if s not in tm.symbols:
            raise InvalidRequest(f"input symbol {s!r} is not a tape symbol of the machine")
    if head_col < 0:
        raise InvalidRequest("head column must be non-negative")
    if width is None:
        width = head_col + max(1, len(word))
    if width < head_col + max(1, len(word)):
        raise InvalidRequest("window is too narrow for the input")

    tiles: list[WangTile] = []
    roles: list[tuple] = []

    def add(tile, role):
        tiles.append(tile)
        roles.append(role)

    for s in tm.symbols:
        add(WangTile(SEPARATOR, symbol_color(s), SEPARATOR, symbol_color(s)), ("symbol", s))
    for q in _head_states(tm, reachable_only):
        for s in tm.symbols:
            m = marker_color(s, q)
            add(WangTile(state_color(q, "R"), symbol_color(s), SEPARATOR, m), ("head-from-left", s, q))
            add(WangTile(SEPARATOR, symbol_color(s), state_color(q, "L"), m), ("head-from-right", s, q))
    for s, q, s2, q2, move in tm.rules:
        m = marker_color(s, q)
        if q2 == tm.halt:
            add(WangTile(SEPARATOR, m, HALT_EDGE, symbol_color(s2)), ("halt", s, q))
        elif move == "R":
            add(WangTile(SEPARATOR, m, state_color(q2, "R"), symbol_color(s2)), ("compute", s, q))
        else:
            add(WangTile(state_color(q2, "L"), m, SEPARATOR, symbol_color(s2)), ("compute", s, q))
    s0 = word[0] if word else tm.blank
    if head_col > 0:
        b = symbol_color(tm.blank)
        add(WangTile(SEPARATOR, b, state_color(tm.start, "R"), b), ("start-edge",))

    ts = TileSet(
        tuple(tiles),
        f"tm-{len(tm.working_states)}x{len(tm.symbols)}",
        {"kind": "tm", "symbols": list(tm.symbols), "states": list(tm.states), "halt": tm.halt},
    )
    index = {t: k for k, t in enumerate(tiles)}

    def sym_tile(s):
        c = symbol_color(s)
        return index[WangTile(SEPARATOR, c, SEPARATOR, c)]

    pins = []
    for col in range(width):
        p = col - head_col
        if p == 0:
            t = index[WangTile(state_color(tm.start, "R"), symbol_color(s0), SEPARATOR, marker_color(s0, tm.start))]
        elif p == -1:
            t = len(tiles) - 1
        elif 0 < p < len(word):
            t = sym_tile(word[p])
        else:
            t = sym_tile(tm.blank)
        pins.append(((col, 0), t))

    layout = {
        "kind": "tm-rows",
        "width": width,
        "head_col": head_col,
        "row_to_step": "row r bottom edges spell configuration r",
    }
    return CompiledTm(ts, tuple(pins), layout, tm, tuple(roles))


def decode_tm_rows(ct: CompiledTm, t: Tiling) -> list[TmConfig]:
    """Read the bottom edge of every row back into a configuration."""
    tm = ct.machine
    symbols = {symbol_color(s): s for s in tm.symbols}
    markers = {marker_color(s, q): (s, q) for s in tm.symbols for q in tm.states}
    ox, _ = t.origin
    configs = []
    for r, row in enumerate(t.cells):
        cells = {}
        head = None
        for c, v in enumerate(row):
            if not isinstance(v, int):
                raise DecodeError(f"row {r} has an empty cell at column {c}")
            colour = ct.tileset[v].bottom
            p = ox + c - ct.head_col
            if colour in symbols:
                cells[p] = symbols[colour]
            elif colour in markers:
                if head is not None:
                    raise DecodeError(f"row {r} contains more than one head marker")
                sym, state = markers[colour]
                cells[p] = sym
                head = (p, state)
            else:
                raise DecodeError(f"row {r} column {c} has a non-tape bottom edge {colour}")
        if head is None:
            raise DecodeError(f"row {r} contains no head marker")
        configs.append(TmConfig.from_cells(cells, head[0], head[1], r, tm.blank))
    return configs
