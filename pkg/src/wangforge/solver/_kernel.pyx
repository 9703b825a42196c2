# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled conflict-directed backjumping search over uint64 word bitsets.

Same algorithm and value order as ``_pysearch.search``; runs without the GIL
so several searches can proceed on worker threads.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int32_t, int64_t

cnp.import_array()

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_clzll(unsigned long long) nogil

cdef enum:
    UNSET = -2
    WILD = -1


cdef int64_t _run(
    const uint64_t[:, ::1] doms,
    const int32_t[::1] nptr,
    const int32_t[::1] npos,
    const int32_t[::1] ndir,
    const uint64_t[:, :, ::1] comp,
    bint wildcard,
    int64_t budget,
    bint connected,
    int32_t[::1] val,
    uint64_t[:, ::1] cand,
    uint64_t[:, ::1] conf,
    signed char[::1] wild_left,
    int64_t *nodes,
) noexcept nogil:
    cdef Py_ssize_t n = doms.shape[0]
    cdef Py_ssize_t W = doms.shape[1]
    cdef Py_ssize_t NW = conf.shape[1]
    cdef Py_ssize_t i = 0, j, k, w, h
    cdef int32_t v, d
    cdef int64_t wild_used = 0
    cdef uint64_t old, new, word
    cdef bint entering = True, rejected, picked

    while True:
        if entering:
            if i == n:
                return 1
            for w in range(W):
                cand[i, w] = doms[i, w]
            for w in range(NW):
                conf[i, w] = 0
            if connected and nptr[i + 1] > nptr[i]:
                rejected = True
                for k in range(nptr[i], nptr[i + 1]):
                    if val[npos[k]] != WILD:
                        rejected = False
                        break
                if rejected:
                    for w in range(W):
                        cand[i, w] = 0
                    for k in range(nptr[i], nptr[i + 1]):
                        j = npos[k]
                        conf[i, j >> 6] |= (<uint64_t>1) << (j & 63)
            for k in range(nptr[i], nptr[i + 1]):
                j = npos[k]
                v = val[j]
                if v < 0:
                    continue
                d = ndir[k]
                rejected = False
                for w in range(W):
                    old = cand[i, w]
                    new = old & comp[d, v, w]
                    if new != old:
                        rejected = True
                        cand[i, w] = new
                if rejected:
                    conf[i, j >> 6] |= (<uint64_t>1) << (j & 63)
            wild_left[i] = wildcard
            entering = False

        picked = False
        for w in range(W):
            word = cand[i, w]
            if word:
                val[i] = <int32_t>(w * 64 + __builtin_ctzll(word))
                cand[i, w] = word & (word - 1)
                picked = True
                break
        if picked:
            nodes[0] += 1
            i += 1
            entering = True
            continue
        if wild_left[i]:
            wild_left[i] = 0
            if budget < 0 or wild_used < budget:
                val[i] = WILD
                wild_used += 1
                nodes[0] += 1
                i += 1
                entering = True
                continue
            for k in range(i):
                if val[k] == WILD:
                    conf[i, k >> 6] |= (<uint64_t>1) << (k & 63)

        h = -1
        for w in range(NW - 1, -1, -1):
            word = conf[i, w]
            if word:
                h = w * 64 + 63 - __builtin_clzll(word)
                break
        if h < 0:
            return 0
        for w in range(NW):
            conf[h, w] |= conf[i, w]
        conf[h, h >> 6] &= ~((<uint64_t>1) << (h & 63))
        for k in range(h, i + 1):
            if val[k] == WILD:
                wild_used -= 1
            val[k] = UNSET
        i = h


def search(doms, nptr, npos, ndir, comp, bint wildcard=False, long long budget=-1, bint connected=False):
    """Return (values, nodes); values is None when no assignment exists.

    ``doms`` is uint64[n, words], ``comp`` uint64[4, tiles, words]; the
    neighbour lists are in CSR form (``nptr`` offsets into ``npos``/``ndir``).
    """
    cdef const uint64_t[:, ::1] d_v = doms
    cdef const int32_t[::1] p_v = nptr
    cdef const int32_t[::1] q_v = npos
    cdef const int32_t[::1] r_v = ndir
    cdef const uint64_t[:, :, ::1] c_v = comp
    cdef Py_ssize_t n = d_v.shape[0]
    cdef Py_ssize_t W = d_v.shape[1]
    val = np.full(n, UNSET, dtype=np.int32)
    cand = np.zeros((n, W), dtype=np.uint64)
    conf = np.zeros((n, max(1, (n + 63) // 64)), dtype=np.uint64)
    wild_left = np.zeros(n, dtype=np.int8)
    cdef int32_t[::1] val_v = val
    cdef uint64_t[:, ::1] cand_v = cand
    cdef uint64_t[:, ::1] conf_v = conf
    cdef signed char[::1] wl_v = wild_left
    cdef int64_t nodes = 0
    cdef int64_t status
    with nogil:
        status = _run(d_v, p_v, q_v, r_v, c_v, wildcard, budget, connected, val_v, cand_v, conf_v, wl_v, &nodes)
    if status == 1:
        return val.tolist(), nodes
    return None, nodes
