"""Elementary cellular automata as tilings, in two geometries.

Wang (18 tiles).  Each space-time cell ``(i, j)`` (cell ``i`` at time ``j``)
is a distributor tile ``<x, x^f, x, x>`` at lattice position ``(2i, 2j)``.
Between two distributors sits a swap-top tile ``<s, B, t, (s,t)>``; below it a
swap-bottom tile ``<t, (s,t), s, B>`` hands ``t`` leftwards and ``s``
rightwards, so the rule tile ``<a, b, c, f^f>`` at ``(2i, 2j+1)`` sees its
left neighbour's bit on its left edge, its own bit from above and its right
neighbour's bit on its right edge.  A window of ``L`` cells and ``k`` updates
is ``2L - 1`` wide and ``2k + 1`` tall; the outermost rule tiles read 0 from
the open window edge.

Hexagon/lozenge (15 tiles).  Rows of flat-topped hexagons touch
horizontally at their side vertices and share full edges vertically.  A
hexagon's lower edges all carry its output bit.  The diamond gap below two
neighbouring hexagons ``k, k+1`` of row ``r`` holds a lozenge whose upper
edges take their two bits ``s, t`` and whose lower edges feed ``t`` to the
upper-right edge of hexagon ``(k, r+1)`` and ``s`` to the upper-left edge of
hexagon ``(k+1, r+1)``.  Row 0 is made of ``I`` hexagons spelling the input,
with ``I`` half-lozenges closing the notches between them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple

from ..colors import Color, atom
from ..errors import DecodeError, InvalidRequest, WindowTooSmall
from ..machines import EcaRule, _bits
from ..tiles import TileSet, Tiling, ValidationReport, WangTile

__all__ = [
    "BLANK",
    "INIT",
    "CompiledEcaWang",
    "HexTile",
    "LozengeTile",
    "HexTileSet",
    "HexTiling",
    "HexViolation",
    "compile_eca_wang",
    "compile_eca_hex",
    "tile_eca",
    "decode_eca_rows",
    "is_valid_hex_tiling",
    "wang_first_row_pins",
]

BLANK = atom("B")
INIT = atom("I")
_BIT = (atom("0"), atom("1"))


def _rule(rule) -> EcaRule:
    return rule if isinstance(rule, EcaRule) else EcaRule(int(rule))


def _out(bit: int) -> Color:
    return atom(f"{bit}^f")


def _pair(s: int, t: int) -> Color:
    return atom(f"({s},{t})")


# --------------------------------------------------------------------------- Wang geometry


@dataclass(frozen=True)
class CompiledEcaWang:
    tileset: TileSet
    layout: dict
    rule: EcaRule
    roles: tuple[tuple, ...]

    def index(self, role: tuple) -> int:
        return self.roles.index(role)

    def to_json(self) -> str:
        return self.tileset.to_json(layout=self.layout)


def compile_eca_wang(rule) -> CompiledEcaWang:
    r = _rule(rule)
    tiles: list[WangTile] = []
    roles: list[tuple] = []
    for a in (0, 1):
        for b in (0, 1):
            for c in (0, 1):
                tiles.append(WangTile(_BIT[a], _BIT[b], _BIT[c], _out(r.table(a, b, c))))
                roles.append(("rule", a, b, c))
    for s in (0, 1):
        for t in (0, 1):
            tiles.append(WangTile(_BIT[s], BLANK, _BIT[t], _pair(s, t)))
            roles.append(("swap-top", s, t))
            tiles.append(WangTile(_BIT[t], _pair(s, t), _BIT[s], BLANK))
            roles.append(("swap-bottom", s, t))
    for x in (1, 0):
        tiles.append(WangTile(_BIT[x], _out(x), _BIT[x], _BIT[x]))
        roles.append(("distributor", x))
    layout = {
        "kind": "eca-wang",
        "cell": "space-time cell (i, j) is the distributor at lattice (2i, 2j)",
        "swap_top": "(2i+1, 2j)",
        "rule": "(2i, 2j+1)",
        "swap_bottom": "(2i+1, 2j+1)",
    }
    ts = TileSet(tuple(tiles), f"eca{r.n}-wang18", {"kind": "eca18", "rule": r.n})
    return CompiledEcaWang(ts, layout, r, tuple(roles))


def wang_first_row_pins(ce: CompiledEcaWang, row: str) -> tuple[tuple[tuple[int, int], int], ...]:
    """Pins for lattice row 0: distributors spelling ``row`` with swap-tops between."""
    bits = _bits(row)
    pins = []
    for i, x in enumerate(bits):
        pins.append(((2 * i, 0), ce.index(("distributor", x))))
        if i + 1 < len(bits):
            pins.append(((2 * i + 1, 0), ce.index(("swap-top", x, bits[i + 1]))))
    return tuple(pins)


def _wang_tiling(ce: CompiledEcaWang, history: list[list[int]]) -> Tiling:
    L = len(history[0])
    grid = []
    for j, bits in enumerate(history):
        top = []
        for i, x in enumerate(bits):
            top.append(ce.index(("distributor", x)))
            if i + 1 < L:
                top.append(ce.index(("swap-top", x, bits[i + 1])))
        grid.append(top)
        if j + 1 == len(history):
            break
        mid = []
        for i, x in enumerate(bits):
            a = bits[i - 1] if i > 0 else 0
            c = bits[i + 1] if i + 1 < L else 0
            mid.append(ce.index(("rule", a, x, c)))
            if i + 1 < L:
                mid.append(ce.index(("swap-bottom", x, bits[i + 1])))
        grid.append(mid)
    return Tiling.from_rows(grid)


# --------------------------------------------------------------------------- hexagon geometry


class HexTile(NamedTuple):
    """A hexagon: upper-left, top, upper-right edges, and the colour on its three lower edges."""

    ul: Color
    top: Color
    ur: Color
    bottom: Color
    role: str

    def to_dict(self) -> dict:
        return {"shape": "hex", "role": self.role, "ul": self.ul.canonical, "top": self.top.canonical,
                "ur": self.ur.canonical, "bottom": self.bottom.canonical}


class LozengeTile(NamedTuple):
    """A diamond with edges nw, ne (upper) and sw, se (lower); half-lozenges have no upper edges."""

    nw: Color | None
    ne: Color | None
    sw: Color
    se: Color
    role: str

    @property
    def half(self) -> bool:
        return self.nw is None

    def to_dict(self) -> dict:
        d = {"shape": "half-lozenge" if self.half else "lozenge", "role": self.role,
             "sw": self.sw.canonical, "se": self.se.canonical}
        if not self.half:
            d["nw"] = self.nw.canonical
            d["ne"] = self.ne.canonical
        return d


def _tile_from_dict(d: dict):
    c = Color.parse
    if d["shape"] == "hex":
        return HexTile(c(d["ul"]), c(d["top"]), c(d["ur"]), c(d["bottom"]), d["role"])
    if d["shape"] == "lozenge":
        return LozengeTile(c(d["nw"]), c(d["ne"]), c(d["sw"]), c(d["se"]), d["role"])
    if d["shape"] == "half-lozenge":
        return LozengeTile(None, None, c(d["sw"]), c(d["se"]), d["role"])
    raise InvalidRequest(f"unknown hex-geometry shape {d['shape']!r}")


@dataclass(frozen=True)
class HexTileSet:
    tiles: tuple
    rule: EcaRule

    def __len__(self):
        return len(self.tiles)

    def __getitem__(self, k):
        return self.tiles[k]

    def hex_index(self, ul: Color, top: Color, ur: Color) -> int:
        for k, t in enumerate(self.tiles):
            if isinstance(t, HexTile) and (t.ul, t.top, t.ur) == (ul, top, ur):
                return k
        raise KeyError((ul, top, ur))

    def lozenge_index(self, s: int, t: int) -> int:
        return self.tiles.index(LozengeTile(_BIT[s], _BIT[t], _BIT[t], _BIT[s], "lozenge"))

    def init_index(self, bit: int) -> int:
        return self.tiles.index(HexTile(INIT, INIT, INIT, _BIT[bit], "init"))

    @property
    def half_index(self) -> int:
        return self.tiles.index(LozengeTile(None, None, INIT, INIT, "init"))

    def to_dict(self) -> dict:
        return {"geometry": "hex15", "name": f"eca{self.rule.n}-hex15", "meta": {"kind": "eca15", "rule": self.rule.n},
                "tiles": [t.to_dict() for t in self.tiles]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, doc: dict) -> HexTileSet:
        if doc.get("geometry") != "hex15":
            raise InvalidRequest("not a hex15 tile set")
        return cls(tuple(_tile_from_dict(d) for d in doc["tiles"]), EcaRule(doc["meta"]["rule"]))

    @classmethod
    def from_json(cls, text: str) -> HexTileSet:
        return cls.from_dict(json.loads(text))


def compile_eca_hex(rule) -> HexTileSet:
    r = _rule(rule)
    tiles: list = []
    for k in range(7, -1, -1):
        a, b, c = k >> 2, (k >> 1) & 1, k & 1
        tiles.append(HexTile(_BIT[a], _BIT[b], _BIT[c], _BIT[r.table(a, b, c)], "rule"))
    for s in (0, 1):
        for t in (0, 1):
            tiles.append(LozengeTile(_BIT[s], _BIT[t], _BIT[t], _BIT[s], "lozenge"))
    for x in (0, 1):
        tiles.append(HexTile(INIT, INIT, INIT, _BIT[x], "init"))
    tiles.append(LozengeTile(None, None, INIT, INIT, "init"))
    return HexTileSet(tuple(tiles), r)


class HexViolation(NamedTuple):
    cell: tuple[int, int]
    what: str


@dataclass(frozen=True)
class HexTiling:
    """Hexagon rows ``hexes[r][k]``; lozenges ``lozenges[r][k]`` sit below hexagons k, k+1 of row r.

    ``halves[k]`` closes the notch above hexagons k, k+1 of row 0.  Axial
    addressing: hexagon (k, r) is at column ``k``, its lozenges at ``k + 1/2``.
    """

    tileset: HexTileSet
    hexes: tuple[tuple[int, ...], ...]
    lozenges: tuple[tuple[int, ...], ...]
    halves: tuple[int, ...]

    @property
    def width(self) -> int:
        return len(self.hexes[0]) if self.hexes else 0

    @property
    def rows(self) -> int:
        return len(self.hexes)

    def to_dict(self) -> dict:
        return {"geometry": "hex15", "rule": self.tileset.rule.n, "hexes": [list(r) for r in self.hexes],
                "lozenges": [list(r) for r in self.lozenges], "halves": list(self.halves)}

    @classmethod
    def from_dict(cls, doc: dict, tileset: HexTileSet | None = None) -> HexTiling:
        ts = tileset or compile_eca_hex(doc["rule"])
        return cls(ts, tuple(map(tuple, doc["hexes"])), tuple(map(tuple, doc["lozenges"])), tuple(doc["halves"]))


def is_valid_hex_tiling(ht: HexTiling) -> ValidationReport:
    ts = ht.tileset
    n, rows = ht.width, ht.rows
    bad: list[HexViolation] = []
    total = 0

    def check(ok, where, what):
        nonlocal total
        total += 1
        if not ok:
            bad.append(HexViolation(where, what))

    if len(ht.lozenges) != max(0, rows - 1) or any(len(r) != max(0, n - 1) for r in ht.lozenges):
        raise InvalidRequest("lozenge grid does not fit the hexagon grid")
    if len(ht.halves) != max(0, n - 1):
        raise InvalidRequest("half-lozenge row does not fit the hexagon grid")
    H = [[ts[v] for v in row] for row in ht.hexes]
    for r in range(rows):
        for k in range(n):
            if not isinstance(H[r][k], HexTile):
                raise InvalidRequest(f"cell ({k}, {r}) does not hold a hexagon")
    for k, v in enumerate(ht.halves):
        half = ts[v]
        check(isinstance(half, LozengeTile) and half.half, (k, -1), "half-lozenge shape")
        check(half.sw == H[0][k].ur, (k, -1), "half-lozenge sw vs hexagon ur")
        check(half.se == H[0][k + 1].ul, (k, -1), "half-lozenge se vs hexagon ul")
    for r in range(rows - 1):
        for k in range(n):
            check(H[r + 1][k].top == H[r][k].bottom, (k, r + 1), "hexagon top vs hexagon above")
        for k in range(n - 1):
            lz = ts[ht.lozenges[r][k]]
            check(isinstance(lz, LozengeTile) and not lz.half, (k, r), "lozenge shape")
            check(lz.nw == H[r][k].bottom, (k, r), "lozenge nw")
            check(lz.ne == H[r][k + 1].bottom, (k, r), "lozenge ne")
            check(lz.sw == H[r + 1][k].ur, (k, r), "lozenge sw")
            check(lz.se == H[r + 1][k + 1].ul, (k, r), "lozenge se")
    return ValidationReport(not bad, True, tuple(bad))


def _hex_tiling(hts: HexTileSet, history: list[list[int]]) -> HexTiling:
    L = len(history[0])
    hexes = [tuple(hts.init_index(x) for x in history[0])]
    lozenges = []
    for r in range(1, len(history)):
        above, bits = history[r - 1], history[r]
        lozenges.append(tuple(hts.lozenge_index(above[k], above[k + 1]) for k in range(L - 1)))
        row = []
        for k in range(L):
            a = above[k - 1] if k > 0 else 0
            c = above[k + 1] if k + 1 < L else 0
            row.append(hts.hex_index(_BIT[a], _BIT[above[k]], _BIT[c]))
        hexes.append(tuple(row))
    return HexTiling(hts, tuple(hexes), tuple(lozenges), tuple(hts.half_index for _ in range(L - 1)))


# --------------------------------------------------------------------------- generation and decoding


def tile_eca(compiled, row: str, rows: int, *, width: int | None = None):
    """Tile ``rows`` updates below the input row; no search is needed.

    ``width`` (in automaton cells) centres the input in a zero background and
    must leave at least ``rows`` cells of padding either side, so the light
    cone never reaches the window edge.  Without it the input row is the whole
    window and the edges read as 0.
    """
    if rows < 1:
        raise InvalidRequest("rows must be at least 1")
    bits = _bits(row)
    if width is not None:
        pad = (width - len(bits)) // 2
        if width < len(bits) or pad < rows:
            raise WindowTooSmall(f"{rows} rows need {len(bits) + 2 * rows} cells, window has {width}")
        bits = [0] * pad + bits + [0] * (width - len(bits) - pad)
    if isinstance(compiled, HexTileSet):
        rule = compiled.rule
    elif isinstance(compiled, CompiledEcaWang):
        rule = compiled.rule
    else:
        raise InvalidRequest("tile_eca needs a hex tile set or a compiled Wang ECA set")
    history = [bits]
    for _ in range(rows):
        prev = history[-1]
        n = len(prev)
        history.append([
            rule.table(prev[k - 1] if k else 0, prev[k], prev[k + 1] if k + 1 < n else 0) for k in range(n)
        ])
    if isinstance(compiled, HexTileSet):
        return _hex_tiling(compiled, history)
    return _wang_tiling(compiled, history)


def decode_eca_rows(tiling, compiled: CompiledEcaWang | None = None) -> list[str]:
    """Bit rows of the space-time diagram, the input row first.

    Hex tilings are read from hexagon bottoms; Wang tilings from the
    distributor tiles on even lattice rows and columns (``compiled`` is
    required to know which tile is which).
    """
    if isinstance(tiling, HexTiling):
        out = []
        for r, row in enumerate(tiling.hexes):
            bits = []
            for v in row:
                t = tiling.tileset[v]
                if not isinstance(t, HexTile) or t.bottom not in _BIT:
                    raise DecodeError(f"hexagon row {r} holds a tile without a bit output")
                bits.append(str(_BIT.index(t.bottom)))
            out.append("".join(bits))
        return out
    if not isinstance(tiling, Tiling):
        raise DecodeError("not a tiling")
    if compiled is None:
        raise DecodeError("decoding a Wang tiling needs the compiled ECA set")
    if tiling.width % 2 == 0 or tiling.height % 2 == 0:
        raise DecodeError("Wang ECA windows have odd width and height")
    out = []
    for j in range(0, tiling.height, 2):
        bits = []
        for i in range(0, tiling.width, 2):
            v = tiling.cells[j][i]
            role = compiled.roles[v] if isinstance(v, int) else None
            if role is None or role[0] != "distributor":
                raise DecodeError(f"lattice cell ({i}, {j}) is not a distributor tile")
            bits.append(str(role[1]))
        out.append("".join(bits))
    return out
