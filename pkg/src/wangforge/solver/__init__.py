"""Constraint search over Wang tile sets.

The hot loop is a conflict-directed backjumping search after an initial
arc-consistency pass.  A compiled kernel is used when it was built; the
pure-Python version in ``_pysearch`` gives identical answers.
"""

from ._backend import BACKEND
from .core import (
    PeriodResult,
    SolveRequest,
    SolveStats,
    TorusTiling,
    block_tileable,
    find_period,
    max_tileable_height,
    solve_rect,
    solve_rect_stats,
    solve_torus,
    worker_count,
)
from .oracle import enumerate_tilings

__all__ = [
    "BACKEND",
    "PeriodResult",
    "SolveRequest",
    "SolveStats",
    "TorusTiling",
    "block_tileable",
    "enumerate_tilings",
    "find_period",
    "max_tileable_height",
    "solve_rect",
    "solve_rect_stats",
    "solve_torus",
    "worker_count",
]
