"""Rectangle, block and torus tiling search."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from ..errors import InvalidRequest
from ..tiles import WILDCARD, TileSet, Tiling
from . import _backend
from ._problem import build

__all__ = [
    "SolveRequest",
    "SolveStats",
    "TorusTiling",
    "PeriodResult",
    "solve_rect",
    "solve_rect_stats",
    "block_tileable",
    "solve_torus",
    "find_period",
    "max_tileable_height",
    "worker_count",
]


def worker_count() -> int:
    """Worker threads allowed by ``WANGFORGE_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("WANGFORGE_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class SolveRequest:
    """A finite tiling instance.

    ``pins`` maps absolute cells to tile indices.  ``tie_break`` is either
    ``"ascending"`` or an explicit permutation of tile indices giving the
    order candidates are tried in.  ``scan`` is ``"row-major"`` (the default)
    or ``"spiral"``, which visits cells in Manhattan rings around ``center``
    (or the single pinned cell, or the window centre).  ``connected`` (with
    wildcards) only places a tile next to an already placed one, so the tiled
    cells form one 4-connected patch grown from the first cell scanned.
    """

    tileset: TileSet
    width: int
    height: int
    pins: tuple = ()
    wildcard_allowed: bool = False
    wildcard_budget: int | None = None
    tie_break: str | tuple[int, ...] = "ascending"
    origin: tuple[int, int] = (0, 0)
    scan: str = "row-major"
    center: tuple[int, int] | None = None
    connected: bool = False

    def __post_init__(self):
        if isinstance(self.pins, dict):
            object.__setattr__(self, "pins", tuple(self.pins.items()))
        else:
            object.__setattr__(self, "pins", tuple((tuple(c), t) for c, t in self.pins))
        if isinstance(self.tie_break, list):
            object.__setattr__(self, "tie_break", tuple(self.tie_break))


@dataclass(frozen=True)
class SolveStats:
    tiling: Tiling | None
    nodes: int
    backend: str


def _order(ts: TileSet, tie_break) -> tuple[int, ...] | None:
    if tie_break == "ascending":
        return None
    perm = tuple(tie_break)
    if sorted(perm) != list(range(len(ts))):
        raise InvalidRequest("tie_break must be a permutation of the tile indices")
    return perm


def _local_pins(req: SolveRequest) -> dict[tuple[int, int], int]:
    ox, oy = req.origin
    out: dict[tuple[int, int], int] = {}
    for (x, y), t in req.pins:
        cell = (x - ox, y - oy)
        if not (0 <= cell[0] < req.width and 0 <= cell[1] < req.height):
            raise InvalidRequest(f"pin {(x, y)} lies outside the region")
        if not isinstance(t, int) or not 0 <= t < len(req.tileset):
            raise InvalidRequest(f"pinned tile index {t!r} is not in the tile set")
        if cell in out:
            raise InvalidRequest(f"two pins on cell {(x, y)}")
        out[cell] = t
    return out


def _solve(ts, width, height, pins, *, torus=False, wildcard=False, budget=None,
           tie_break="ascending", scan="row-major", center=None, backend=None, connected=False):
    """Shared driver; returns (rows of values or None, nodes)."""
    perm = _order(ts, tie_break)
    tiles = ts.tiles if perm is None else tuple(ts.tiles[k] for k in perm)
    if perm is not None:
        rank = {old: new for new, old in enumerate(perm)}
        pins = {c: rank[t] for c, t in pins.items()}
    if not tiles:
        if wildcard and (budget is None or budget >= width * height) and not pins:
            return [[WILDCARD] * width for _ in range(height)], 0
        return None, 0
    if scan == "spiral" and center is None and len(pins) == 1:
        center = next(iter(pins))
    problem = build(tiles, width, height, pins, torus=torus, scan=scan, center=center,
                    arc_consistency=not wildcard)
    if problem is None:
        return None, 0
    values, nodes = _backend.run(problem, wildcard, -1 if budget is None else budget, backend,
                                 connected and wildcard)
    if values is None:
        return None, nodes
    grid = [[None] * width for _ in range(height)]
    for (c, r), v in zip(problem.cells, values):
        if v < 0:
            grid[r][c] = WILDCARD
        else:
            grid[r][c] = v if perm is None else perm[v]
    return grid, nodes


def solve_rect_stats(req: SolveRequest, backend: str | None = None) -> SolveStats:
    if req.width < 1 or req.height < 1:
        raise InvalidRequest("region must have positive width and height")
    pins = _local_pins(req)
    grid, nodes = _solve(
        req.tileset, req.width, req.height, pins,
        wildcard=req.wildcard_allowed, budget=req.wildcard_budget,
        tie_break=req.tie_break, scan=req.scan,
        center=None if req.center is None else (req.center[0] - req.origin[0], req.center[1] - req.origin[1]),
        backend=backend, connected=req.connected,
    )
    tiling = None if grid is None else Tiling(req.width, req.height, grid, req.origin)
    return SolveStats(tiling, nodes, backend or _backend.BACKEND)


def solve_rect(req: SolveRequest) -> Tiling | None:
    """First tiling of the request in scan order and tie-break order, or None."""
    return solve_rect_stats(req).tiling


def block_tileable(ts: TileSet, n: int) -> bool:
    if n < 1:
        raise InvalidRequest("block size must be at least 1")
    return solve_rect(SolveRequest(ts, n, n)) is not None


@dataclass(frozen=True)
class TorusTiling:
    """A p-wide, q-tall block whose edges match with wraparound on both axes."""

    p: int
    q: int
    cells: tuple[tuple[int, ...], ...]

    def unfold(self, copies_x: int = 2, copies_y: int = 2) -> Tiling:
        rows = [
            [self.cells[r % self.q][c % self.p] for c in range(self.p * copies_x)]
            for r in range(self.q * copies_y)
        ]
        return Tiling.from_rows(rows)

    def as_tiling(self) -> Tiling:
        return Tiling.from_rows(self.cells)

    def to_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "cells": [list(r) for r in self.cells]}


def solve_torus(ts: TileSet, p: int, q: int, backend: str | None = None) -> TorusTiling | None:
    if p < 1 or q < 1:
        raise InvalidRequest("torus periods must be positive")
    grid, _ = _solve(ts, p, q, {}, torus=True, backend=backend)
    if grid is None:
        return None
    return TorusTiling(p, q, tuple(tuple(r) for r in grid))


@dataclass(frozen=True)
class PeriodResult:
    """Outcome of a bounded period search.

    ``found`` false means no torus exists within the bounds; that is not
    evidence of aperiodicity beyond those bounds.
    """

    found: bool
    max_p: int
    max_q: int
    p: int | None = None
    q: int | None = None
    torus: TorusTiling | None = field(default=None, compare=False)

    @property
    def none_up_to_bound(self) -> bool:
        return not self.found

    @property
    def period(self) -> tuple[int, int] | None:
        return (self.p, self.q) if self.found else None

    def __str__(self):
        if self.found:
            return f"({self.p},{self.q})"
        return f"none-up-to-bound (p<={self.max_p}, q<={self.max_q})"


def find_period(ts: TileSet, max_p: int, max_q: int) -> PeriodResult:
    """Smallest torus size in (area, then width) order, within the bounds."""
    if max_p < 1 or max_q < 1:
        raise InvalidRequest("period bounds must be positive")
    sizes = sorted(((p, q) for p in range(1, max_p + 1) for q in range(1, max_q + 1)),
                   key=lambda s: (s[0] * s[1], s[0]))
    workers = worker_count()
    if workers > 1 and _backend.BACKEND == "compiled":
        # Results are consumed in size order, so the answer does not depend on scheduling.
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for (p, q), torus in zip(sizes, pool.map(lambda s: solve_torus(ts, *s), sizes)):
                if torus is not None:
                    return PeriodResult(True, max_p, max_q, p, q, torus)
        return PeriodResult(False, max_p, max_q)
    for p, q in sizes:
        torus = solve_torus(ts, p, q)
        if torus is not None:
            return PeriodResult(True, max_p, max_q, p, q, torus)
    return PeriodResult(False, max_p, max_q)


def max_tileable_height(ts: TileSet, width: int, first_row_pins: Sequence, cap: int) -> int:
    """Largest height up to ``cap`` that tiles with the given row-0 pins.

    Tileable heights form a prefix (a tiling of height h restricts to every
    smaller height), so a binary search suffices.
    """
    if cap < 1:
        raise InvalidRequest("cap must be at least 1")
    pins = dict(SolveRequest(ts, width, 1, tuple(first_row_pins)).pins)
    if any(y != 0 for (_, y) in pins):
        raise InvalidRequest("first-row pins must lie in row 0")

    def tiles(h: int) -> bool:
        return solve_rect(SolveRequest(ts, width, h, tuple(pins.items()))) is not None

    if not tiles(1):
        raise InvalidRequest("row-0 pins are inconsistent with each other")
    lo, hi = 1, cap
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if tiles(mid):
            lo = mid
        else:
            hi = mid - 1
    return lo
