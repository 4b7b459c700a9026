"""Pure-Python kernels: exact coloring, order-certificate search, negative cycles.

Mirror of the compiled module ``digrev._kernels_cy``; both must produce
bit-identical results.  Vertices are 0-based indices, arcs are parallel
index arrays (tails, heads).  Weight convention for an order certificate
with parameter k: forward arc k-1, backward arc -1, so a violating cycle
is exactly a negative one.
"""

from __future__ import annotations

from itertools import permutations


def solve_chi(n: int, out_masks: list[int]) -> tuple[int, list[int]]:
    """Minimum number of acyclic-inducing color classes, with a witness.

    ``out_masks[v]`` is the bitmask of v's out-neighbours (parallel edges
    collapse; they cannot affect acyclicity).  Deterministic: vertices are
    colored in index order, lowest feasible color first, and at most one
    fresh color is open at a time.
    """
    if n == 0:
        return 0, []
    colors = [0] * n

    def creates_cycle(v: int, members: int) -> bool:
        # Is v on a directed cycle inside members | {v}?
        inside = members | (1 << v)
        frontier = out_masks[v] & inside
        seen = 0
        while frontier:
            if frontier >> v & 1:
                return True
            seen |= frontier
            nxt = 0
            rest = frontier
            while rest:
                low = rest & -rest
                nxt |= out_masks[low.bit_length() - 1]
                rest ^= low
            frontier = nxt & inside & ~seen
        return False

    def assign(v: int, used: int, class_masks: list[int], k: int) -> bool:
        if v == n:
            return True
        top = used if used < k else k - 1
        for c in range(top + 1):
            if not creates_cycle(v, class_masks[c]):
                colors[v] = c
                class_masks[c] |= 1 << v
                if assign(v + 1, max(used, c + 1), class_masks, k):
                    return True
                class_masks[c] &= ~(1 << v)
        return False

    for k in range(1, n + 1):
        if assign(0, 0, [0] * k, k):
            return k, list(colors)
    raise AssertionError("singleton classes always succeed")


def _has_negative_cycle(n: int, m: int, tails: list[int], heads: list[int], weights: list[int]) -> bool:
    # Distances from a virtual source attached to every vertex with weight 0.
    # Any distance below -n certifies a negative cycle early (legitimate
    # walks can never go below -(n-1) with weights >= -1 scaled by k).
    if n == 0 or m == 0:
        return False
    dist = [0] * n
    bound = -(n + 1) * max(1, max((abs(w) for w in weights), default=1))
    for _ in range(n):
        changed = False
        for i in range(m):
            nd = dist[tails[i]] + weights[i]
            h = heads[i]
            if nd < dist[h]:
                dist[h] = nd
                changed = True
                if nd < bound:
                    return True
        if not changed:
            return False
    return True


def search_order(n: int, tails: list[int], heads: list[int], k: int) -> list[int] | None:
    """First vertex order (lexicographic over indices) with no violating cycle."""
    m = len(tails)
    weights = [0] * m
    pos = [0] * n
    for perm in permutations(range(n)):
        for i, v in enumerate(perm):
            pos[v] = i
        for i in range(m):
            weights[i] = k - 1 if pos[tails[i]] < pos[heads[i]] else -1
        if not _has_negative_cycle(n, m, tails, heads, weights):
            return list(perm)
    return None


def find_negative_cycle(n: int, tails: list[int], heads: list[int], weights: list[int]) -> list[int] | None:
    """A simple negative cycle as a list of arc indices in traversal order, or None.

    Bellman-Ford from a virtual source with predecessor tracking; the
    predecessor walk from the first vertex still relaxed in the final
    round lies on a negative cycle.  The result is rotated so its
    smallest arc index comes first.
    """
    m = len(tails)
    if n == 0 or m == 0:
        return None
    dist = [0] * n
    pred = [-1] * n
    start = -1
    for rnd in range(n):
        changed = False
        for i in range(m):
            nd = dist[tails[i]] + weights[i]
            h = heads[i]
            if nd < dist[h]:
                dist[h] = nd
                pred[h] = i
                changed = True
                if rnd == n - 1 and start < 0:
                    start = h
        if not changed:
            return None
    # Walk n predecessor steps to guarantee landing on the cycle itself.
    x = start
    for _ in range(n):
        x = tails[pred[x]]
    arcs: list[int] = []
    first_seen: dict[int, int] = {}
    v = x
    while v not in first_seen:
        first_seen[v] = len(arcs)
        a = pred[v]
        arcs.append(a)
        v = tails[a]
    arcs = arcs[first_seen[v]:]
    arcs.reverse()
    j = arcs.index(min(arcs))
    return arcs[j:] + arcs[:j]
