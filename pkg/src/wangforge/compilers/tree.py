"""Finite trees to Wang tile sets, and tilings back to tree paths.

Three constructions, all centred on a root tile at cell ``(0, 0)``:

``ait``
    A single central column spelling a path: up copies ``σ^U`` above the
    root, down copies ``σ^D`` below it.  The root's row carries the chains
    ``ML_i`` (left) and ``MR_i`` (right), and the four quadrants are filled
    by diagonal families ``c^1..c^4`` indexed by Manhattan distance.
    Tile count: ``1 + 2d + 4(2d - 1) + 2(N - 1)`` for depth bound ``d >= 1``
    and ``N`` nodes (just the root when ``d = 0``).

``pit``
    Every column is a copy of the path column; rows are tied together only
    by the depth colours ``U_i`` / ``D_i``, so columns may repeat forever.
    Tile count: ``1 + 2(N - 1)``.  Full-depth nodes use an unmarked colour
    on the outer edge of both copies, so a column folds onto itself
    vertically and tiles a ``1 x (2d + 1)`` torus exactly when the tree has
    a node at full depth.

``spokes``
    Four arms (up/right/down/left) spelling the same path, joined by
    quadrant fillers ``σ¹..σ⁴`` keyed to parent/child pairs.  Solved with
    wildcards and a spiral scan; the tiled patch is the diamond whose
    radius is the longest path length.
    Tile count: ``1 + 4(N - 1) + 4 * #{nodes of length >= 2}``.

Column and arm tiles are ordered by (length, -subtree height, node) so the
first solution found follows the lexicographically least longest path.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..colors import Color, idx, seq
from ..errors import CannotLocateRoot, InvalidRequest
from ..solver import SolveRequest
from ..tiles import TileSet, Tiling, WangTile
from ..trees import FiniteTree, longest_path

__all__ = ["CompiledTree", "compile_tree", "recover_path", "tree_tile_count", "KINDS"]

KINDS = ("ait", "pit", "spokes")


@dataclass(frozen=True)
class CompiledTree:
    """A compiled tile set plus the role of every tile (used by the decoder)."""

    tileset: TileSet
    kind: str
    root_index: int
    roles: tuple[tuple, ...]
    depth: int

    @property
    def root_pin(self) -> tuple[tuple[int, int], int]:
        return ((0, 0), self.root_index)

    def request(self, width: int | None = None, height: int | None = None) -> SolveRequest:
        """The standard root-pinned window, centred on the root cell.

        ait and spokes use a ``(2d+1)``-square; pit defaults to 4 columns.
        spokes requests use wildcards, a spiral scan and a connected patch.
        """
        d = self.depth
        if height is None:
            height = 2 * d + 1
        if width is None:
            width = 4 if self.kind == "pit" else 2 * d + 1
        origin = (-(width // 2), -(height // 2))
        if self.kind == "spokes":
            return SolveRequest(self.tileset, width, height, (self.root_pin,), wildcard_allowed=True,
                                origin=origin, scan="spiral", center=(0, 0), connected=True)
        return SolveRequest(self.tileset, width, height, (self.root_pin,), origin=origin)

    def to_json(self) -> str:
        return self.tileset.to_json(layout={"kind": self.kind, "root_cell": [0, 0], "root_tile": self.root_index})


def tree_tile_count(tree: FiniteTree, kind: str) -> int:
    n = len(tree.nodes)
    d = tree.depth_bound
    if kind == "ait":
        return 1 + 2 * d + 4 * max(0, 2 * d - 1) + 2 * (n - 1)
    if kind == "pit":
        return 1 + 2 * (n - 1)
    if kind == "spokes":
        deep = sum(1 for s in tree.nodes if len(s) >= 2)
        return 1 + 4 * (n - 1) + 4 * deep
    raise InvalidRequest(f"unknown tree construction {kind!r}")


def _ordered(tree: FiniteTree, nodes) -> list[tuple[int, ...]]:
    h = tree.heights
    return sorted(nodes, key=lambda s: (len(s), -h[s], s))


def compile_tree(tree: FiniteTree, kind: str, *, path_only: bool = False) -> CompiledTree:
    """Compile ``tree``; ``path_only`` keeps just the nodes on the longest path."""
    if not tree.nodes:
        raise InvalidRequest("cannot compile an empty tree")
    if kind not in KINDS:
        raise InvalidRequest(f"unknown tree construction {kind!r}; expected one of {', '.join(KINDS)}")
    if path_only:
        p = longest_path(tree)
        tree = FiniteTree(frozenset(p[:k] for k in range(len(p) + 1)), tree.depth_bound, tree.branching_bound)
    builder = {"ait": _ait, "pit": _pit, "spokes": _spokes}[kind]
    tiles, roles = builder(tree)
    meta = {"kind": kind, "depth": tree.depth_bound, "branching": tree.branching_bound, "nodes": len(tree.nodes)}
    ts = TileSet(tuple(tiles), f"{kind}-d{tree.depth_bound}-n{len(tree.nodes)}", meta)
    return CompiledTree(ts, kind, 0, tuple(roles), tree.depth_bound)


def _up(s) -> Color:
    return seq(s, "U")


def _down(s) -> Color:
    return seq(s, "D")


def _ait(tree: FiniteTree):
    d = tree.depth_bound
    ML = lambda i: idx("ML", i)  # noqa: E731
    MR = lambda i: idx("MR", i)  # noqa: E731
    c = lambda j, k: idx("c", j, k)  # noqa: E731
    tiles = [WangTile(ML(0), _up(()), MR(0), _down(()))]
    roles = [("root",)]
    for i in range(1, d + 1):
        tiles.append(WangTile(ML(i), c(1, i), ML(i - 1), c(4, i)))
        roles.append(("mid-left", i))
    for i in range(1, d + 1):
        tiles.append(WangTile(MR(i - 1), c(2, i), MR(i), c(3, i)))
        roles.append(("mid-right", i))
    # Quadrant cell at Manhattan distance k from the root carries index k on its
    # outer edges and k-1 on its inner edges; the window corners reach k = 2d.
    for k in range(2, 2 * d + 1):
        tiles.append(WangTile(c(1, k), c(1, k), c(1, k - 1), c(1, k - 1)))
        tiles.append(WangTile(c(2, k - 1), c(2, k), c(2, k), c(2, k - 1)))
        tiles.append(WangTile(c(3, k - 1), c(3, k - 1), c(3, k), c(3, k)))
        tiles.append(WangTile(c(4, k), c(4, k - 1), c(4, k - 1), c(4, k)))
        roles.extend((("quad", j, k) for j in (1, 2, 3, 4)))
    nodes = _ordered(tree, [s for s in tree.nodes if s])
    for s in nodes:
        i = len(s)
        tiles.append(WangTile(c(1, i), _up(s), c(2, i), _up(s[:-1])))
        roles.append(("up", s))
    for s in nodes:
        i = len(s)
        tiles.append(WangTile(c(4, i), _down(s[:-1]), c(3, i), _down(s)))
        roles.append(("down", s))
    return tiles, roles


def _pit(tree: FiniteTree):
    d = tree.depth_bound
    M = idx("M")
    tiles = [WangTile(M, _up(()), M, _down(()))]
    roles = [("root",)]
    nodes = _ordered(tree, [s for s in tree.nodes if s])

    def outer(s, mark):
        # full-depth nodes close the column onto itself
        return seq(s) if len(s) == d else seq(s, mark)

    for s in nodes:
        tiles.append(WangTile(idx("U", len(s)), outer(s, "U"), idx("U", len(s)), _up(s[:-1])))
        roles.append(("up", s))
    for s in nodes:
        tiles.append(WangTile(idx("D", len(s)), _down(s[:-1]), idx("D", len(s)), outer(s, "D")))
        roles.append(("down", s))
    return tiles, roles


def _spokes(tree: FiniteTree):
    def q(s, j):
        return seq(s, str(j))

    arm = {m: (lambda s, m=m: seq(s, m)) for m in "ULRD"}
    tiles = [WangTile(arm["L"](()), arm["U"](()), arm["R"](()), arm["D"](()))]
    roles = [("root",)]
    nodes = _ordered(tree, [s for s in tree.nodes if s])
    for s in nodes:
        p = s[:-1]
        tiles.append(WangTile(q(s, 1), arm["U"](s), q(s, 2), arm["U"](p)))
        roles.append(("up", s))
    for s in nodes:
        p = s[:-1]
        tiles.append(WangTile(arm["R"](p), q(s, 2), arm["R"](s), q(s, 3)))
        roles.append(("right", s))
    for s in nodes:
        p = s[:-1]
        tiles.append(WangTile(q(s, 4), arm["D"](p), q(s, 3), arm["D"](s)))
        roles.append(("down", s))
    for s in nodes:
        p = s[:-1]
        tiles.append(WangTile(arm["L"](s), q(s, 1), arm["L"](p), q(s, 4)))
        roles.append(("left", s))
    deep = [s for s in nodes if len(s) >= 2]
    for j, make in (
        (1, lambda s, p: WangTile(q(s, 1), q(s, 1), q(p, 1), q(p, 1))),
        (2, lambda s, p: WangTile(q(p, 2), q(s, 2), q(s, 2), q(p, 2))),
        (3, lambda s, p: WangTile(q(p, 3), q(p, 3), q(s, 3), q(s, 3))),
        (4, lambda s, p: WangTile(q(s, 4), q(p, 4), q(p, 4), q(s, 4))),
    ):
        for s in deep:
            tiles.append(make(s, s[:-1]))
            roles.append(("quad", j, s))
    return tiles, roles


# Where to step from each kind of tile to get closer to the root (raster y grows downward).
_TOWARD_ROOT = {
    "mid-left": (1, 0),
    "mid-right": (-1, 0),
    "left": (1, 0),
    "right": (-1, 0),
    "up": (0, 1),
    "down": (0, -1),
}
_QUAD_STEP = {1: (0, 1), 2: (0, 1), 3: (0, -1), 4: (0, -1)}


def recover_path(ct: CompiledTree, t: Tiling, start: tuple[int, int] | None = None) -> tuple[int, ...]:
    """Walk from ``start`` to the root, then read the path upward from it.

    Quadrant tiles lead to the middle row (or the spokes arms), middle-row
    tiles lead along the row to the root, and column tiles lead along the
    column.  Returns the longest path prefix visible in the window.
    """
    if start is None:
        start = (0, 0) if t.contains(0, 0) else t.origin
    x, y = start
    for _ in range(t.width * t.height + 1):
        v = t.at(x, y)
        if not isinstance(v, int):
            raise CannotLocateRoot(f"walk from {start} reached an empty or outside cell at {(x, y)}")
        role = ct.roles[v]
        if role[0] == "root":
            break
        step = _QUAD_STEP[role[1]] if role[0] == "quad" else _TOWARD_ROOT[role[0]]
        x, y = x + step[0], y + step[1]
    else:
        raise CannotLocateRoot(f"walk from {start} did not reach a root tile")

    path: tuple[int, ...] = ()
    below = ct.tileset[t.at(x, y)]
    y -= 1
    while True:
        v = t.at(x, y)
        if not isinstance(v, int) or ct.roles[v][0] != "up":
            break
        tile = ct.tileset[v]
        if tile.bottom != below.up:
            break
        path = ct.roles[v][1]
        below = tile
        y -= 1
    return path
