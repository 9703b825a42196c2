"""Wang tiles, tile sets, finite tilings and edge-match checks.

Tilings use raster coordinates: ``(x, y)`` with ``x`` growing to the
right and ``y`` growing downward, so the Up neighbour of ``(x, y)`` is
``(x, y - 1)``.  A tiling covers a rectangle whose top-left cell is
``origin``; row 0 of ``cells`` is the top row.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, NamedTuple, Sequence

from .colors import Color, atom, tint
from .errors import InvalidRequest, MalformedTiling

__all__ = [
    "Direction",
    "WangTile",
    "TileSet",
    "Tiling",
    "WILDCARD",
    "Violation",
    "ValidationReport",
    "matches",
    "is_valid_tiling",
    "disjoint_union",
]


class Direction(Enum):
    LEFT = "left"
    UP = "up"
    RIGHT = "right"
    DOWN = "down"

    @property
    def inverse(self) -> Direction:
        return _INVERSE[self]

    @property
    def offset(self) -> tuple[int, int]:
        return _OFFSET[self]


_INVERSE = {
    Direction.LEFT: Direction.RIGHT,
    Direction.RIGHT: Direction.LEFT,
    Direction.UP: Direction.DOWN,
    Direction.DOWN: Direction.UP,
}
_OFFSET = {
    Direction.LEFT: (-1, 0),
    Direction.RIGHT: (1, 0),
    Direction.UP: (0, -1),
    Direction.DOWN: (0, 1),
}


def _as_color(c) -> Color:
    return c if isinstance(c, Color) else atom(c)


class WangTile(NamedTuple):
    left: Color
    up: Color
    right: Color
    bottom: Color

    @classmethod
    def of(cls, left, up, right, bottom) -> WangTile:
        """Build a tile, wrapping plain values as atom colors."""
        return cls(_as_color(left), _as_color(up), _as_color(right), _as_color(bottom))

    def edge(self, d: Direction) -> Color:
        """The color on the side of this tile facing ``d``."""
        if d is Direction.LEFT:
            return self.left
        if d is Direction.UP:
            return self.up
        if d is Direction.RIGHT:
            return self.right
        return self.bottom

    def map_colors(self, fn) -> WangTile:
        return WangTile(*(fn(c) for c in self))

    def label(self) -> str:
        return "<" + ",".join(c.label() for c in self) + ">"

    def to_dict(self) -> dict:
        return {"l": str(self.left), "u": str(self.up), "r": str(self.right), "b": str(self.bottom)}

    @classmethod
    def from_dict(cls, d: dict) -> WangTile:
        return cls(*(Color.parse(d[k]) for k in ("l", "u", "r", "b")))


def matches(a: WangTile, b: WangTile, d: Direction) -> bool:
    """True iff ``b`` may sit next to ``a`` on a's ``d`` side."""
    return a.edge(d) == b.edge(d.inverse)


def _freeze(value):
    if isinstance(value, dict):
        return tuple((k, _freeze(v)) for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return tuple(_freeze(v) for v in value)
    return value


@dataclass(frozen=True, eq=False)
class TileSet:
    tiles: tuple[WangTile, ...]
    name: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        tiles = tuple(self.tiles)
        if len(set(tiles)) != len(tiles):
            seen = set()
            dup = next(t for t in tiles if t in seen or seen.add(t))
            raise InvalidRequest(f"duplicate tile {dup.label()} in tile set")
        object.__setattr__(self, "tiles", tiles)
        object.__setattr__(self, "meta", json.loads(json.dumps(self.meta)))

    def __len__(self):
        return len(self.tiles)

    def __iter__(self) -> Iterator[WangTile]:
        return iter(self.tiles)

    def __getitem__(self, i: int) -> WangTile:
        return self.tiles[i]

    def __eq__(self, other):
        return (
            isinstance(other, TileSet)
            and self.tiles == other.tiles
            and self.name == other.name
            and self.meta == other.meta
        )

    def __hash__(self):
        return hash((self.tiles, self.name, _freeze(self.meta)))

    def index(self, tile: WangTile) -> int:
        return self.tiles.index(tile)

    def colors(self) -> set[Color]:
        return {c for t in self.tiles for c in t}

    def to_dict(self) -> dict:
        return {"name": self.name, "meta": self.meta, "tiles": [t.to_dict() for t in self.tiles]}

    def to_json(self, **extra) -> str:
        doc = self.to_dict()
        doc.update(extra)
        return json.dumps(doc, ensure_ascii=False, indent=1)

    @classmethod
    def from_dict(cls, doc: dict) -> TileSet:
        if doc.get("geometry") not in (None, "wang"):
            raise InvalidRequest(f"not a Wang tile set (geometry {doc['geometry']!r})")
        return cls(
            tuple(WangTile.from_dict(t) for t in doc["tiles"]),
            doc.get("name", ""),
            doc.get("meta", {}),
        )

    @classmethod
    def from_json(cls, text: str) -> TileSet:
        return cls.from_dict(json.loads(text))


class _Wildcard:
    """Placeholder compatible with every edge."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "WILDCARD"

    def __reduce__(self):
        return (_Wildcard, ())


WILDCARD = _Wildcard()


@dataclass(frozen=True)
class Tiling:
    """A rectangle of cells holding tile indices, ``WILDCARD`` or ``None`` (unmapped)."""

    width: int
    height: int
    cells: tuple[tuple, ...]
    origin: tuple[int, int] = (0, 0)

    def __post_init__(self):
        cells = tuple(tuple(row) for row in self.cells)
        if self.width < 1 or self.height < 1:
            raise MalformedTiling("tiling region must be non-empty")
        if len(cells) != self.height or any(len(r) != self.width for r in cells):
            raise MalformedTiling("cell grid does not match the region size")
        for row in cells:
            for v in row:
                if v is not None and v is not WILDCARD and (not isinstance(v, int) or isinstance(v, bool)):
                    raise MalformedTiling(f"bad cell entry {v!r}")
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "origin", tuple(self.origin))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], origin=(0, 0)) -> Tiling:
        rows = [list(r) for r in rows]
        return cls(len(rows[0]) if rows else 0, len(rows), rows, origin)

    def at(self, x: int, y: int):
        """Entry at absolute cell ``(x, y)``; ``None`` outside the region."""
        ox, oy = self.origin
        c, r = x - ox, y - oy
        if 0 <= c < self.width and 0 <= r < self.height:
            return self.cells[r][c]
        return None

    def contains(self, x: int, y: int) -> bool:
        ox, oy = self.origin
        return ox <= x < ox + self.width and oy <= y < oy + self.height

    def items(self) -> Iterator[tuple[tuple[int, int], object]]:
        ox, oy = self.origin
        for r, row in enumerate(self.cells):
            for c, v in enumerate(row):
                yield (ox + c, oy + r), v

    @property
    def is_total(self) -> bool:
        return all(isinstance(v, int) for row in self.cells for v in row)

    def column(self, c: int) -> tuple:
        return tuple(row[c] for row in self.cells)

    def to_dict(self) -> dict:
        return {
            "width": self.width,
            "height": self.height,
            "origin": list(self.origin),
            "cells": [[v if isinstance(v, int) else None for v in row] for row in self.cells],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc: dict) -> Tiling:
        cells = [[WILDCARD if v is None else v for v in row] for row in doc["cells"]]
        return cls(doc["width"], doc["height"], cells, tuple(doc.get("origin", (0, 0))))

    @classmethod
    def from_json(cls, text: str) -> Tiling:
        return cls.from_dict(json.loads(text))


class Violation(NamedTuple):
    cell: tuple[int, int]
    neighbor: tuple[int, int]
    direction: Direction


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    total: bool
    violations: tuple[Violation, ...] = ()

    def __bool__(self):
        return self.ok


def is_valid_tiling(ts: TileSet, t: Tiling, torus: bool = False) -> ValidationReport:
    """Check every internal edge (and the wrap edges when ``torus``)."""
    n = len(ts)
    for (x, y), v in t.items():
        if isinstance(v, int) and not 0 <= v < n:
            raise MalformedTiling(f"tile index {v} at {(x, y)} out of range for {n} tiles")
    violations = []
    w, h = t.width, t.height
    for r in range(h):
        for c in range(w):
            a = t.cells[r][c]
            for d, (nc, nr) in ((Direction.RIGHT, (c + 1, r)), (Direction.DOWN, (c, r + 1))):
                if nc >= w or nr >= h:
                    if not torus:
                        continue
                    nc, nr = nc % w, nr % h
                b = t.cells[nr][nc]
                if not isinstance(a, int) or not isinstance(b, int):
                    continue
                if not matches(ts[a], ts[b], d):
                    ox, oy = t.origin
                    violations.append(Violation((ox + c, oy + r), (ox + nc, oy + nr), d))
    return ValidationReport(not violations, t.is_total, tuple(violations))


def disjoint_union(sets: Sequence[TileSet]) -> TileSet:
    """Tint each input set with its 1-based position and concatenate."""
    if not sets:
        raise InvalidRequest("disjoint union of an empty list")
    tiles: list[WangTile] = []
    parts = []
    for i, ts in enumerate(sets, start=1):
        start = len(tiles)
        tiles.extend(t.map_colors(lambda c, i=i: tint(i, c)) for t in ts)
        parts.append({"name": ts.name, "start": start, "stop": len(tiles)})
    name = " + ".join(ts.name or f"set{i}" for i, ts in enumerate(sets, start=1))
    return TileSet(tuple(tiles), name, {"kind": "union", "parts": parts})


def tint_of(ts: TileSet, index: int) -> int:
    """Which component of a disjoint union tile ``index`` came from (1-based)."""
    for k, part in enumerate(ts.meta["parts"], start=1):
        if part["start"] <= index < part["stop"]:
            return k
    raise InvalidRequest(f"tile {index} is outside every union component")


def tiles_of(values: Iterable[Iterable]) -> tuple[WangTile, ...]:
    """Shorthand for building tiles from 4-tuples of plain labels."""
    return tuple(WangTile.of(*v) for v in values)
