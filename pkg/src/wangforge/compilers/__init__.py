"""Machines, trees and automata compiled to tile sets, plus decoders back."""

from .eca import (
    CompiledEcaWang,
    HexTile,
    HexTileSet,
    HexTiling,
    LozengeTile,
    compile_eca_hex,
    compile_eca_wang,
    decode_eca_rows,
    is_valid_hex_tiling,
    tile_eca,
    wang_first_row_pins,
)
from .tm import CompiledTm, compile_tm, decode_tm_rows, tm_tile_count
from .tree import CompiledTree, compile_tree, recover_path, tree_tile_count

__all__ = [
    "CompiledEcaWang",
    "CompiledTm",
    "CompiledTree",
    "HexTile",
    "HexTileSet",
    "HexTiling",
    "LozengeTile",
    "compile_eca_hex",
    "compile_eca_wang",
    "compile_tm",
    "compile_tree",
    "decode_eca_rows",
    "decode_tm_rows",
    "is_valid_hex_tiling",
    "recover_path",
    "tile_eca",
    "tm_tile_count",
    "tree_tile_count",
    "wang_first_row_pins",
]
