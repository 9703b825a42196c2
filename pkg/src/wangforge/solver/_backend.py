"""Select the compiled search kernel when available, else the pure-Python one.

Set ``WANGFORGE_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pysearch

try:
    if os.environ.get("WANGFORGE_PURE", "") not in ("", "0"):
        raise ImportError("pure backend forced by WANGFORGE_PURE")
    from . import _kernel
except ImportError:
    _kernel = None

BACKEND = "compiled" if _kernel is not None else "python"


def _words(bits: int, n_words: int) -> list[int]:
    mask = (1 << 64) - 1
    return [(bits >> (64 * w)) & mask for w in range(n_words)]


def run(problem, wildcard=False, budget=-1, backend=None, connected=False):
    """Search ``problem``; returns (values or None, nodes)."""
    backend = backend or BACKEND
    if backend == "python" or _kernel is None:
        return _pysearch.search(problem.domains, problem.neighbors, problem.allowed, wildcard, budget, connected)

    n_words = max(1, (problem.n_tiles + 63) // 64)
    doms = np.array([_words(d, n_words) for d in problem.domains], dtype=np.uint64).reshape(
        len(problem.domains), n_words
    )
    comp = np.array(
        [[_words(a, n_words) for a in per_dir] for per_dir in problem.allowed], dtype=np.uint64
    ).reshape(4, problem.n_tiles, n_words)
    nptr = np.zeros(len(problem.neighbors) + 1, dtype=np.int32)
    flat = [pair for lst in problem.neighbors for pair in lst]
    nptr[1:] = np.cumsum([len(lst) for lst in problem.neighbors])
    npos = np.array([p for p, _ in flat], dtype=np.int32)
    ndir = np.array([d for _, d in flat], dtype=np.int32)
    return _kernel.search(doms, nptr, npos, ndir, comp, wildcard, budget, connected)
