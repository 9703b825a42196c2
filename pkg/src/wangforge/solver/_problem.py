"""Turn a tiling request into a binary constraint problem over cells.

Cells are numbered by their position in the scan order.  For every cell we
record the already-scanned neighbours together with the direction code of
the constraint they impose, sorted by scan position so conflict analysis
can pick the earliest culprit.

Direction codes (neighbour ``i`` seen from placed cell ``j`` holding tile t)::

    0  i is right of j   ->  tiles whose left   == t.right
    1  i is below j      ->  tiles whose up     == t.bottom
    2  i is left of j    ->  tiles whose right  == t.left
    3  i is above j      ->  tiles whose bottom == t.up
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from ..tiles import WangTile

RIGHT, BELOW, LEFT, ABOVE = range(4)
_STEPS = ((1, 0, RIGHT), (0, 1, BELOW), (-1, 0, LEFT), (0, -1, ABOVE))


@dataclass(frozen=True)
class Compat:
    """Per-direction compatibility bitsets, grouped by edge color."""

    # allowed[d][t]: bitset of tiles that may occupy the neighbour in direction d of tile t
    allowed: tuple[tuple[int, ...], ...]
    # classes[d]: list of (tiles-with-this-edge-color bitset, allowed bitset); used by AC-3
    classes: tuple[tuple[tuple[int, int], ...], ...]
    full: int


@lru_cache(maxsize=64)
def compat_tables(tiles: tuple[WangTile, ...]) -> Compat:
    by = {side: {} for side in ("left", "up", "right", "bottom")}
    for k, t in enumerate(tiles):
        for side in by:
            c = getattr(t, side)
            by[side][c] = by[side].get(c, 0) | (1 << k)
    # (edge of the placed tile, edge of the neighbour that must equal it)
    pairing = (("right", "left"), ("bottom", "up"), ("left", "right"), ("up", "bottom"))
    allowed = []
    classes = []
    for mine, theirs in pairing:
        allowed.append(tuple(by[theirs].get(getattr(t, mine), 0) for t in tiles))
        classes.append(tuple((bits, by[theirs].get(c, 0)) for c, bits in by[mine].items()))
    return Compat(tuple(allowed), tuple(classes), (1 << len(tiles)) - 1)


def scan_order(width: int, height: int, scan: str, center=None) -> list[tuple[int, int]]:
    cells = [(c, r) for r in range(height) for c in range(width)]
    if scan == "row-major":
        return cells
    if scan == "spiral":
        cx, cy = center if center is not None else ((width - 1) // 2, (height - 1) // 2)
        # Manhattan rings: two adjacent cells never share a ring.
        return sorted(cells, key=lambda p: (abs(p[0] - cx) + abs(p[1] - cy), p[1], p[0]))
    raise ValueError(f"unknown scan order {scan!r}")


@dataclass
class Problem:
    cells: list[tuple[int, int]]
    domains: list[int]
    neighbors: list[list[tuple[int, int]]]  # per position: (earlier position, direction code)
    allowed: tuple[tuple[int, ...], ...]
    n_tiles: int


def build(tiles, width, height, pins, *, torus=False, scan="row-major", center=None, arc_consistency=True):
    """Return a Problem, or None when the domains are already inconsistent."""
    comp = compat_tables(tuple(tiles))
    cells = scan_order(width, height, scan, center)
    pos = {cell: k for k, cell in enumerate(cells)}
    n = len(cells)
    domains = [comp.full] * n
    for (c, r), t in pins.items():
        domains[pos[(c, r)]] &= 1 << t

    arcs = [[] for _ in range(n)]  # (neighbour position, direction code from neighbour to me)
    for k, (c, r) in enumerate(cells):
        for dx, dy, code in _STEPS:
            nc, nr = c + dx, r + dy
            if torus:
                nc, nr = nc % width, nr % height
            elif not (0 <= nc < width and 0 <= nr < height):
                continue
            m = pos[(nc, nr)]
            back = (code + 2) % 4  # direction from the neighbour to me
            if m == k:
                # a 1-wide or 1-tall torus: the tile must match itself
                keep = 0
                dom = domains[k]
                while dom:
                    low = dom & -dom
                    t = low.bit_length() - 1
                    if comp.allowed[back][t] >> t & 1:
                        keep |= low
                    dom ^= low
                domains[k] = keep
                continue
            arcs[k].append((m, back))

    if arc_consistency and not _ac3(domains, arcs, comp):
        return None
    if any(d == 0 for d in domains):
        return None
    neighbors = [sorted((m, d) for m, d in arcs[k] if m < k) for k in range(n)]
    return Problem(cells, domains, neighbors, comp.allowed, len(tiles))


def _support(dom: int, classes) -> int:
    out = 0
    for bits, ok in classes:
        if dom & bits:
            out |= ok
    return out


def _ac3(domains, arcs, comp) -> bool:
    queue = deque((k, m, d) for k in range(len(domains)) for m, d in arcs[k])
    queued = set(queue)
    rev = [[] for _ in domains]
    for k, lst in enumerate(arcs):
        for m, d in lst:
            rev[m].append((k, d))
    while queue:
        arc = queue.popleft()
        queued.discard(arc)
        k, m, d = arc
        new = domains[k] & _support(domains[m], comp.classes[d])
        if new == domains[k]:
            continue
        if not new:
            return False
        domains[k] = new
        for k2, d2 in rev[k]:
            if k2 != m or d2 != (d + 2) % 4:
                a = (k2, k, d2)
                if a not in queued:
                    queued.add(a)
                    queue.append(a)
    return True
