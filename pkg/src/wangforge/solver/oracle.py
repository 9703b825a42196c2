"""Brute-force tiling enumerator used as a test oracle.

Deliberately naive: plain recursion over cells in row-major order, each
candidate checked against its placed left and upper neighbours by direct
color comparison.  Shares no code with the search backends.
"""

from __future__ import annotations

from ..errors import OracleTooLarge
from ..tiles import TileSet, Tiling

MAX_CELLS = 12
MAX_TILES = 8
# Larger sets are fine on small regions as long as the raw search space stays under this.
MAX_ASSIGNMENTS = MAX_TILES**MAX_CELLS


def enumerate_tilings(ts: TileSet, w: int, h: int, limit: int | None = None) -> list[Tiling]:
    """All total tilings of a w-by-h rectangle in lexicographic order, up to ``limit``."""
    too_big = len(ts) > MAX_TILES and len(ts) ** (w * h) > MAX_ASSIGNMENTS
    if w * h > MAX_CELLS or too_big or w < 1 or h < 1:
        raise OracleTooLarge(
            f"oracle handles at most {MAX_CELLS} cells and {MAX_TILES} tiles, or an equally small search "
            f"space (got {w}x{h}, {len(ts)} tiles)"
        )
    tiles = list(ts)
    grid = [0] * (w * h)
    found: list[Tiling] = []

    def fits(k: int, t: int) -> bool:
        col, row = k % w, k // w
        if col > 0 and tiles[grid[k - 1]].right != tiles[t].left:
            return False
        if row > 0 and tiles[grid[k - w]].bottom != tiles[t].up:
            return False
        return True

    def place(k: int) -> bool:
        if k == w * h:
            found.append(Tiling.from_rows([grid[r * w:(r + 1) * w] for r in range(h)]))
            return limit is not None and len(found) >= limit
        for t in range(len(tiles)):
            if fits(k, t):
                grid[k] = t
                if place(k + 1):
                    return True
        return False

    if limit is None or limit > 0:
        place(0)
    return found
