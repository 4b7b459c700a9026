# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: exact coloring, order-certificate search, negative cycles.

Must stay result-identical to digrev._kernels_py; the pure module is the
readable reference, this one exists because the certificate search visits
n! orders and the coloring search is exponential.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memset


cdef inline int _creates_cycle(int v, unsigned long long members,
                               unsigned long long *out_masks) nogil:
    cdef unsigned long long inside = members | (1ULL << v)
    cdef unsigned long long frontier = out_masks[v] & inside
    cdef unsigned long long seen = 0, nxt, rest, low
    cdef int u
    while frontier:
        if (frontier >> v) & 1ULL:
            return 1
        seen |= frontier
        nxt = 0
        rest = frontier
        while rest:
            low = rest & (~rest + 1)
            u = 0
            while not (low >> u) & 1ULL:
                u += 1
            nxt |= out_masks[u]
            rest ^= low
        frontier = nxt & inside & ~seen
    return 0


cdef int _assign(int v, int n, int used, int k, int *colors,
                 unsigned long long *class_masks, unsigned long long *out_masks) nogil:
    cdef int top, c
    if v == n:
        return 1
    top = used if used < k else k - 1
    for c in range(top + 1):
        if not _creates_cycle(v, class_masks[c], out_masks):
            colors[v] = c
            class_masks[c] |= 1ULL << v
            if _assign(v + 1, n, used if used > c + 1 else c + 1, k, colors, class_masks, out_masks):
                return 1
            class_masks[c] &= ~(1ULL << v)
    return 0


def solve_chi(int n, list out_masks):
    """Minimum acyclic-class count plus a witness; identical contract to the pure twin."""
    if n == 0:
        return 0, []
    if n > 60:
        raise ValueError("compiled coloring kernel supports at most 60 vertices")
    cdef unsigned long long *masks = <unsigned long long *> malloc(n * sizeof(unsigned long long))
    cdef int *colors = <int *> malloc(n * sizeof(int))
    cdef unsigned long long *class_masks = <unsigned long long *> malloc(n * sizeof(unsigned long long))
    if masks == NULL or colors == NULL or class_masks == NULL:
        free(masks); free(colors); free(class_masks)
        raise MemoryError()
    cdef int i, k
    cdef int found = 0
    try:
        for i in range(n):
            masks[i] = <unsigned long long> out_masks[i]
        for k in range(1, n + 1):
            memset(class_masks, 0, n * sizeof(unsigned long long))
            with nogil:
                found = _assign(0, n, 0, k, colors, class_masks, masks)
            if found:
                return k, [colors[i] for i in range(n)]
        raise AssertionError("singleton classes always succeed")
    finally:
        free(masks)
        free(colors)
        free(class_masks)


cdef int _has_negative_cycle(int n, int m, int *tails, int *heads, long long *weights,
                             long long *dist, long long bound) nogil:
    cdef int i, rnd, h, changed
    cdef long long nd
    if n == 0 or m == 0:
        return 0
    for i in range(n):
        dist[i] = 0
    for rnd in range(n):
        changed = 0
        for i in range(m):
            nd = dist[tails[i]] + weights[i]
            h = heads[i]
            if nd < dist[h]:
                dist[h] = nd
                changed = 1
                if nd < bound:
                    return 1
        if not changed:
            return 0
    return 1


cdef int _next_permutation(int *perm, int n) nogil:
    cdef int i = n - 2, j, tmp, lo, hi
    while i >= 0 and perm[i] >= perm[i + 1]:
        i -= 1
    if i < 0:
        return 0
    j = n - 1
    while perm[j] <= perm[i]:
        j -= 1
    tmp = perm[i]; perm[i] = perm[j]; perm[j] = tmp
    lo = i + 1; hi = n - 1
    while lo < hi:
        tmp = perm[lo]; perm[lo] = perm[hi]; perm[hi] = tmp
        lo += 1; hi -= 1
    return 1


def search_order(int n, list tails, list heads, int k):
    """First vertex order (lexicographic over indices) with no violating cycle."""
    cdef int m = len(tails)
    cdef int *ct = <int *> malloc((m if m else 1) * sizeof(int))
    cdef int *ch = <int *> malloc((m if m else 1) * sizeof(int))
    cdef long long *weights = <long long *> malloc((m if m else 1) * sizeof(long long))
    cdef int *perm = <int *> malloc((n if n else 1) * sizeof(int))
    cdef int *pos = <int *> malloc((n if n else 1) * sizeof(int))
    cdef long long *dist = <long long *> malloc((n if n else 1) * sizeof(long long))
    if ct == NULL or ch == NULL or weights == NULL or perm == NULL or pos == NULL or dist == NULL:
        free(ct); free(ch); free(weights); free(perm); free(pos); free(dist)
        raise MemoryError()
    cdef int i, found = 0, more = 1
    cdef long long maxabs = 1
    cdef long long bound
    try:
        for i in range(m):
            ct[i] = tails[i]
            ch[i] = heads[i]
        if k - 1 > 1:
            maxabs = k - 1
        bound = -(<long long> (n + 1)) * maxabs
        for i in range(n):
            perm[i] = i
        with nogil:
            while more:
                for i in range(n):
                    pos[perm[i]] = i
                for i in range(m):
                    weights[i] = (k - 1) if pos[ct[i]] < pos[ch[i]] else -1
                if not _has_negative_cycle(n, m, ct, ch, weights, dist, bound):
                    found = 1
                    break
                more = _next_permutation(perm, n)
        if found:
            return [perm[i] for i in range(n)]
        return None
    finally:
        free(ct); free(ch); free(weights); free(perm); free(pos); free(dist)


def find_negative_cycle(int n, list tails, list heads, list weights):
    """Simple negative cycle as arc indices (smallest index first), or None."""
    cdef int m = len(tails)
    if n == 0 or m == 0:
        return None
    cdef int *ct = <int *> malloc(m * sizeof(int))
    cdef int *ch = <int *> malloc(m * sizeof(int))
    cdef long long *w = <long long *> malloc(m * sizeof(long long))
    cdef long long *dist = <long long *> malloc(n * sizeof(long long))
    cdef int *pred = <int *> malloc(n * sizeof(int))
    cdef int *seen_at = <int *> malloc(n * sizeof(int))
    if ct == NULL or ch == NULL or w == NULL or dist == NULL or pred == NULL or seen_at == NULL:
        free(ct); free(ch); free(w); free(dist); free(pred); free(seen_at)
        raise MemoryError()
    cdef int i, rnd, h, changed, start, x, v, a, count
    cdef long long nd
    cdef list arcs
    try:
        for i in range(m):
            ct[i] = tails[i]
            ch[i] = heads[i]
            w[i] = weights[i]
        for i in range(n):
            dist[i] = 0
            pred[i] = -1
            seen_at[i] = -1
        start = -1
        for rnd in range(n):
            changed = 0
            for i in range(m):
                nd = dist[ct[i]] + w[i]
                h = ch[i]
                if nd < dist[h]:
                    dist[h] = nd
                    pred[h] = i
                    changed = 1
                    if rnd == n - 1 and start < 0:
                        start = h
            if not changed:
                return None
        x = start
        for i in range(n):
            x = ct[pred[x]]
        arcs = []
        v = x
        count = 0
        while seen_at[v] < 0:
            seen_at[v] = count
            a = pred[v]
            arcs.append(a)
            count += 1
            v = ct[a]
        arcs = arcs[seen_at[v]:]
        arcs.reverse()
        i = arcs.index(min(arcs))
        return arcs[i:] + arcs[:i]
    finally:
        free(ct); free(ch); free(w); free(dist); free(pred); free(seen_at)
