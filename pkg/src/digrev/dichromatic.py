"""Dichromatic number, order certificates, and the cycle-reversal reduction.

A vertex coloring is good when every color class induces an acyclic
subdigraph; the dichromatic number is the least number of classes.  A
linear order on the vertices certifies "at most k colors" when every
directed cycle has at least |C|/k forward edges, which under the weights
forward = k-1 / backward = -1 is exactly the absence of a negative cycle.
Reversing violating (negative) cycles strictly increases the forward-edge
count, so finitely many reversals reach an orientation with a passing
k = 2 certificate, hence a 2-coloring.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import reversion
from ._backend import kernels
from .errors import InputError, InternalError, ResourceLimitError
from .graph import Digraph, DirectedCycle, EdgeId, _walk_vertices
from .limits import default_limits
from . import _kernels_py

# The compiled coloring kernel packs color classes into machine words.
_MASK_KERNEL_MAX = 60


@dataclass(frozen=True)
class Coloring:
    """A total vertex -> color-index map (0-based)."""

    assignment: dict[str, int]
    num_colors: int


@dataclass(frozen=True)
class OrderCertificate:
    """A linear vertex order claimed to witness dichromatic number <= k."""

    order: tuple[str, ...]
    k: int


@dataclass(frozen=True)
class ReduceResult:
    sequence: reversion.ReversionSequence
    final: Digraph
    coloring: Coloring
    forward_counts: tuple[int, ...]


def _vertex_indexing(d: Digraph) -> tuple[dict[str, int], list[EdgeId], list[int], list[int]]:
    vidx = {v: i for i, v in enumerate(d.vertices)}
    ids = sorted(d.edge_ids)
    tails = [vidx[d.tail(e)] for e in ids]
    heads = [vidx[d.head(e)] for e in ids]
    return vidx, ids, tails, heads


def chi(d: Digraph, limit: int | None = None) -> tuple[int, Coloring]:
    """Exact dichromatic number with a deterministic witness coloring.

    The empty digraph needs 0 colors.  Refuses graphs above the vertex cap
    (default 20, see limits) since the search is exponential.
    """
    cap = limit if limit is not None else default_limits().chi_vertices
    n = len(d.vertices)
    if n > cap:
        raise ResourceLimitError(f"chi: {n} vertices exceeds the cap of {cap}")
    if n == 0:
        return 0, Coloring({}, 0)
    vidx = {v: i for i, v in enumerate(d.vertices)}
    out_masks = [0] * n
    for t, h in d.edges.values():
        out_masks[vidx[t]] |= 1 << vidx[h]
    solver = kernels if n <= _MASK_KERNEL_MAX else _kernels_py
    k, colors = solver.solve_chi(n, out_masks)
    assignment = {v: colors[i] for v, i in vidx.items()}
    return k, Coloring(assignment, k)


def verify_coloring(d: Digraph, coloring: Coloring) -> bool:
    """True iff every color class induces an acyclic subdigraph."""
    assignment = coloring.assignment
    if set(assignment) != set(d.vertices):
        raise InputError("coloring must assign a color to exactly the digraph's vertices")
    classes: dict[int, set[str]] = {}
    for v, c in assignment.items():
        classes.setdefault(c, set()).add(v)
    return all(_induced_acyclic(d, members) for members in classes.values())


def _induced_acyclic(d: Digraph, members: set[str]) -> bool:
    # Kahn peeling on the induced subdigraph.
    indeg = {v: 0 for v in members}
    succs: dict[str, list[str]] = {v: [] for v in members}
    for t, h in d.edges.values():
        if t in members and h in members:
            indeg[h] += 1
            succs[t].append(h)
    ready = [v for v, deg in indeg.items() if deg == 0]
    seen = 0
    while ready:
        v = ready.pop()
        seen += 1
        for h in succs[v]:
            indeg[h] -= 1
            if indeg[h] == 0:
                ready.append(h)
    return seen == len(members)


def _check_order(d: Digraph, order: Sequence[str]) -> tuple[str, ...]:
    order = tuple(order)
    if sorted(order) != list(d.vertices):
        raise InputError("order must be a permutation of the digraph's vertices")
    return order


def check_order_certificate(d: Digraph, cert: OrderCertificate) -> tuple[bool, DirectedCycle | None]:
    """Does every directed cycle have at least |C|/k forward edges?

    On failure, returns a witness: a simple cycle with fewer forward edges
    than required (a negative cycle under the k-weighting).
    """
    if cert.k < 1:
        raise InputError("certificate parameter k must be at least 1")
    order = _check_order(d, cert.order)
    pos = {v: i for i, v in enumerate(order)}
    _, ids, tails, heads = _vertex_indexing(d)
    weights = [
        cert.k - 1 if pos[d.tail(e)] < pos[d.head(e)] else -1 for e in ids
    ]
    hit = kernels.find_negative_cycle(len(d.vertices), tails, heads, weights)
    if hit is None:
        return True, None
    cycle = DirectedCycle(tuple(ids[i] for i in hit))
    if _walk_vertices(d.edges, cycle.edges) is None or sum(weights[i] for i in hit) >= 0:
        raise InternalError("negative-cycle extraction returned a non-violating walk")
    return False, cycle


def find_order_certificate(d: Digraph, k: int, limit: int | None = None) -> OrderCertificate | None:
    """Brute-force search for a passing certificate, lexicographic over sorted labels.

    Returns the first passing order, or None when no order passes.  The
    vertex cap (default 9) guards the factorial search.
    """
    if k < 1:
        raise InputError("certificate parameter k must be at least 1")
    cap = limit if limit is not None else default_limits().cert_vertices
    n = len(d.vertices)
    if n > cap:
        raise ResourceLimitError(f"find_order_certificate: {n} vertices exceeds the cap of {cap}")
    _, _, tails, heads = _vertex_indexing(d)
    perm = kernels.search_order(n, tails, heads, k)
    if perm is None:
        return None
    order = tuple(d.vertices[i] for i in perm)
    return OrderCertificate(order=order, k=k)


def coloring_from_certificate(d: Digraph, cert: OrderCertificate) -> Coloring:
    """Build a 2-coloring from a passing k = 2 certificate.

    Greedy along the certified order: each vertex takes the smallest of
    the two colors whose class stays acyclic.  Should the greedy pass ever
    paint itself into a corner, the shortest-path potentials of the
    k-weighting (taken mod 2) give a provably valid fallback coloring.
    """
    if cert.k != 2:
        raise InputError("coloring_from_certificate needs a certificate with k = 2")
    ok, _ = check_order_certificate(d, cert)
    if not ok:
        raise InputError("certificate does not pass; cannot derive a coloring")
    assignment: dict[str, int] = {}
    classes: dict[int, set[str]] = {0: set(), 1: set()}
    greedy_ok = True
    for v in cert.order:
        for c in (0, 1):
            if _induced_acyclic(d, classes[c] | {v}):
                assignment[v] = c
                classes[c].add(v)
                break
        else:
            greedy_ok = False
            break
    if greedy_ok:
        coloring = Coloring(assignment, max(assignment.values(), default=0) + 1 if assignment else 0)
        if verify_coloring(d, coloring):
            return coloring
    return _coloring_from_potentials(d, cert)


def _coloring_from_potentials(d: Digraph, cert: OrderCertificate) -> Coloring:
    # dist(v) <= dist(u) + w(u -> v) for every edge once Bellman-Ford has
    # settled; a monochromatic cycle under dist mod k would need weight
    # <= -k per backward edge and forward edges contribute <= 0 mod-k-wise,
    # forcing all edges forward, which no cycle achieves.
    pos = {v: i for i, v in enumerate(cert.order)}
    k = cert.k
    n = len(d.vertices)
    vidx = {v: i for i, v in enumerate(d.vertices)}
    dist = [0] * n
    arcs = [
        (vidx[t], vidx[h], (k - 1) if pos[t] < pos[h] else -1)
        for t, h in d.edges.values()
    ]
    for _ in range(n):
        changed = False
        for t, h, w in arcs:
            if dist[t] + w < dist[h]:
                dist[h] = dist[t] + w
                changed = True
        if not changed:
            break
    else:
        raise InternalError("potentials failed to converge on a certified digraph")
    assignment = {v: dist[vidx[v]] % k for v in d.vertices}
    coloring = Coloring(assignment, max(assignment.values(), default=0) + 1 if assignment else 0)
    if not verify_coloring(d, coloring):
        raise InternalError("potential-based coloring is invalid despite a passing certificate")
    return coloring


def count_forward(d: Digraph, order: Sequence[str]) -> int:
    """Number of edges whose tail precedes its head in ``order``."""
    pos = {v: i for i, v in enumerate(_check_order(d, order))}
    return sum(1 for t, h in d.edges.values() if pos[t] < pos[h])


def reduce_dichromatic(d: Digraph, order: Sequence[str] | None = None) -> ReduceResult:
    """Reverse violating cycles until the k = 2 certificate passes.

    Each reversal turns a cycle with a forward-edge minority into one with
    a forward majority, so the total forward-edge count strictly climbs
    and the loop ends within |edges| steps.  Returns the sequence, the
    final digraph, a verified 2-coloring, and the forward-count history.
    """
    ordered = _check_order(d, order if order is not None else d.vertices)
    cert = OrderCertificate(ordered, 2)
    current = d
    cycles: list[DirectedCycle] = []
    forward = [count_forward(d, ordered)]
    for _ in range(d.num_edges + 1):
        ok, violating = check_order_certificate(current, cert)
        if ok:
            break
        assert violating is not None
        current = reversion.apply(current, reversion.ReversionSequence((violating,)))
        cycles.append(violating)
        forward.append(count_forward(current, ordered))
        if forward[-1] <= forward[-2]:
            raise InternalError("forward-edge count failed to increase after a reversal")
    else:
        raise InternalError("reduction did not converge within the edge-count bound")
    seq = reversion.ReversionSequence(tuple(cycles))
    coloring = coloring_from_certificate(current, cert)
    return ReduceResult(sequence=seq, final=current, coloring=coloring, forward_counts=tuple(forward))
