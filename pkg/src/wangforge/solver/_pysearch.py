"""Pure-Python conflict-directed backjumping search (fallback backend).

Values are tried in ascending tile index, the wildcard (encoded -1) last.
Domains and candidate sets are Python ints used as bitsets; conflict sets
are bitsets over scan positions.
"""

from __future__ import annotations

UNSET = -2
WILD = -1


def search(domains, neighbors, allowed, wildcard=False, budget=-1, connected=False):
    """Return (values, nodes); values is None when no assignment exists.

    With ``connected``, a cell whose earlier neighbours are all wildcards
    must itself be a wildcard, so the tiled cells stay joined to the first.
    """
    n = len(domains)
    val = [UNSET] * n
    cand = [0] * n
    conf = [0] * n
    wild_left = [False] * n
    wild_used = 0
    nodes = 0
    i = 0
    entering = True
    while True:
        if entering:
            if i == n:
                return val, nodes
            c = domains[i]
            cs = 0
            if connected and neighbors[i] and all(val[j] == WILD for j, _ in neighbors[i]):
                c = 0
                for j, _ in neighbors[i]:
                    cs |= 1 << j
            for j, d in neighbors[i]:
                v = val[j]
                if v < 0:
                    continue
                nxt = c & allowed[d][v]
                if nxt != c:
                    cs |= 1 << j
                    c = nxt
            cand[i] = c
            conf[i] = cs
            wild_left[i] = wildcard
            entering = False

        c = cand[i]
        if c:
            low = c & -c
            cand[i] = c ^ low
            val[i] = low.bit_length() - 1
            nodes += 1
            i += 1
            entering = True
            continue
        if wild_left[i]:
            wild_left[i] = False
            if budget < 0 or wild_used < budget:
                val[i] = WILD
                wild_used += 1
                nodes += 1
                i += 1
                entering = True
                continue
            for k in range(i):
                if val[k] == WILD:
                    conf[i] |= 1 << k

        cs = conf[i]
        if not cs:
            return None, nodes
        h = cs.bit_length() - 1
        conf[h] |= cs ^ (1 << h)
        for k in range(h, i + 1):
            if val[k] == WILD:
                wild_used -= 1
            val[k] = UNSET
        i = h
