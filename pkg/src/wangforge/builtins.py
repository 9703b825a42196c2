"""Reference tile sets shipped with the package, in their published tile order."""

from __future__ import annotations

from .errors import NotFound
from .tiles import TileSet, tiles_of

__all__ = ["builtin", "BUILTIN_NAMES"]

# Culik's aperiodic set; "0'" is the primed zero and "1/2" the half color.
_CULIK13 = [
    ("-2", "1", "-1", "2"),
    ("-2", "1", "0", "1"),
    ("-1", "1", "0", "2"),
    ("-1", "0", "-2", "1"),
    ("0", "0", "-2", "2"),
    ("0", "0", "-1", "1"),
    ("0'", "0'", "0'", "0"),
    ("0'", "2", "0'", "1"),
    ("0'", "1", "1/2", "0"),
    ("0'", "1", "1/2", "0'"),
    ("1/2", "0'", "1/2", "0"),
    ("1/2", "2", "1/2", "1"),
    ("1/2", "1", "0'", "1"),
]

_JEANDEL_RAO11 = [
    (3, 1, 1, 1),
    (3, 2, 1, 2),
    (3, 1, 3, 3),
    (2, 4, 2, 1),
    (2, 2, 2, 0),
    (0, 0, 0, 1),
    (0, 1, 3, 2),
    (1, 2, 0, 2),
    (1, 2, 1, 4),
    (1, 3, 3, 2),
    (3, 1, 0, 1),
]

_BINARY16 = [
    (0, 0, 0, 0), (0, 0, 0, 1), (0, 1, 0, 0), (0, 1, 0, 1),
    (0, 0, 1, 0), (0, 0, 1, 1), (0, 1, 1, 0), (0, 1, 1, 1),
    (1, 0, 0, 0), (1, 0, 0, 1), (1, 1, 0, 0), (1, 1, 0, 1),
    (1, 0, 1, 0), (1, 0, 1, 1), (1, 1, 1, 0), (1, 1, 1, 1),
]

_TABLE = {
    "culik13": (_CULIK13, "aperiodic"),
    "jeandel-rao11": (_JEANDEL_RAO11, "aperiodic"),
    "binary16": (_BINARY16, "periodic"),
}

BUILTIN_NAMES = tuple(_TABLE)


def builtin(name: str) -> TileSet:
    try:
        rows, kind = _TABLE[name]
    except KeyError:
        raise NotFound(f"unknown builtin tile set {name!r}; valid names: {', '.join(BUILTIN_NAMES)}") from None
    return TileSet(tiles_of(rows), name, {"kind": "builtin", "family": kind})
