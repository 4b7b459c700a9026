"""Local edge-connectivity, Menger path systems, and flip separation.

Edge connectivity lambda(u, v) is computed as a unit-capacity max flow:
parallel edges are independent capacity-1 arcs.  A Menger system pairs a
maximum family of edge-disjoint u -> v paths with an orthogonal cut (one
cut edge per path), realized as the out-edges of the residual-reachable
set W.  Reversing the union of the paths as a raw edge-set flip removes
every u -> v path; this is the one operation here that a reversion
sequence can never imitate, since reversions preserve lambda.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from . import reversion
from .errors import InputError, InternalError
from .graph import Cut, Digraph, DirectedPath, EdgeId, out_edges, reachable_vertex


@dataclass(frozen=True)
class PathSystem:
    """Pairwise edge-disjoint source -> target paths, optionally with an orthogonal cut."""

    source: str
    target: str
    paths: tuple[DirectedPath, ...]
    cut: Cut | None = None


@dataclass(frozen=True)
class FlipReport:
    """What a flip separation did: the system used, the flipped edges, the outcome.

    ``sequence_realizable`` records whether any reversion sequence could
    have produced the same reorientation; it is False whenever the flip
    actually severed a strong component, which is the whole contrast with
    cycle reversals.
    """

    lambda_value: int
    w_side: frozenset[str]
    cut_edges: frozenset[EdgeId]
    path_edges: tuple[tuple[EdgeId, ...], ...]
    reversed_edges: frozenset[EdgeId]
    separated: bool
    sequence_realizable: bool


def _check_pair(d: Digraph, u: str, v: str) -> None:
    d._vertex(u)
    d._vertex(v)
    if u == v:
        raise InputError("source and target must be distinct vertices")


def _max_flow(d: Digraph, source: str, target: str) -> tuple[int, set[EdgeId], frozenset[str]]:
    """Unit-capacity max flow by shortest augmenting paths.

    Returns (value, arcs carrying flow, residual-reachable vertex set from
    the source at termination).  Deterministic: BFS scans arcs by
    ascending id, forward arcs before backward ones.
    """
    flow: set[EdgeId] = set()
    while True:
        pred: dict[str, tuple[EdgeId, int] | None] = {source: None}
        queue = deque([source])
        while queue and target not in pred:
            w = queue.popleft()
            for a in d.out_edge_ids(w):
                if a not in flow:
                    h = d.head(a)
                    if h not in pred:
                        pred[h] = (a, 1)
                        queue.append(h)
            for a in d.in_edge_ids(w):
                if a in flow:
                    t = d.tail(a)
                    if t not in pred:
                        pred[t] = (a, -1)
                        queue.append(t)
        if target not in pred:
            return sum(1 for a in flow if d.tail(a) == source), flow, frozenset(pred)
        w = target
        while w != source:
            step = pred[w]
            assert step is not None
            a, direction = step
            if direction > 0:
                flow.add(a)
                w = d.tail(a)
            else:
                flow.remove(a)
                w = d.head(a)


def edge_connectivity(d: Digraph, u: str, v: str) -> int:
    """lambda(u, v): the maximum number of pairwise edge-disjoint u -> v paths."""
    _check_pair(d, u, v)
    value, _, _ = _max_flow(d, u, v)
    return value


def _decompose_paths(d: Digraph, flow: set[EdgeId], u: str, v: str, value: int) -> tuple[DirectedPath, ...]:
    # Greedy forward walks along flow arcs, lowest id first.  Detours the
    # walk takes through flow circulations are excised and their arcs
    # dropped; conservation guarantees each walk reaches the target.
    avail: dict[str, list[EdgeId]] = {}
    for a in sorted(flow):
        avail.setdefault(d.tail(a), []).append(a)
    cursor = {w: 0 for w in avail}
    consumed: set[EdgeId] = set()

    def take(w: str) -> EdgeId | None:
        lst = avail.get(w)
        if lst is None:
            return None
        i = cursor[w]
        while i < len(lst) and lst[i] in consumed:
            i += 1
        cursor[w] = i
        if i == len(lst):
            return None
        consumed.add(lst[i])
        cursor[w] = i + 1
        return lst[i]

    paths = []
    for _ in range(value):
        verts = [u]
        arcs: list[EdgeId] = []
        pos = {u: 0}
        w = u
        while w != v:
            a = take(w)
            if a is None:
                raise InternalError("flow decomposition stalled")
            h = d.head(a)
            if h in pos:
                k = pos[h]
                for dropped in verts[k + 1 :]:
                    del pos[dropped]
                del verts[k + 1 :]
                del arcs[k:]
                w = h
            else:
                arcs.append(a)
                pos[h] = len(verts)
                verts.append(h)
                w = h
        paths.append(DirectedPath(tuple(arcs), u, v))
    return tuple(paths)


def menger_system(d: Digraph, u: str, v: str) -> PathSystem:
    """A maximum edge-disjoint u -> v path family with an orthogonal cut.

    The cut edges are the saturated edges leaving the residual-reachable
    set; the cut's side W is recomputed as everything u reaches without
    crossing those edges.  out(W) then equals the cut exactly (a smaller
    out-set would be a cut below the flow value), no flow enters W, and
    each path crosses the cut once.  All of this is asserted.
    """
    _check_pair(d, u, v)
    value, flow, residual_reach = _max_flow(d, u, v)
    cut_ids = out_edges(d, residual_reach).out_edges
    if len(cut_ids) != value:
        raise InternalError("min cut size disagrees with max flow value")
    # W per the contract: reachable from u without using a cut edge.
    w_side = {u}
    frontier = [u]
    while frontier:
        w = frontier.pop()
        for a in d.out_edge_ids(w):
            h = d.head(a)
            if a not in cut_ids and h not in w_side:
                w_side.add(h)
                frontier.append(h)
    cut = out_edges(d, w_side)
    if cut.out_edges != cut_ids:
        raise InternalError("cut side does not reproduce the saturated cut")
    paths = _decompose_paths(d, flow, u, v, value)
    for path in paths:
        crossings = sum(1 for a in path.edges if a in cut.out_edges)
        if crossings != 1:
            raise InternalError("path system is not orthogonal to its cut")
    return PathSystem(source=u, target=v, paths=paths, cut=cut)


def reverse_edge_set(d: Digraph, edge_set: Iterable[EdgeId]) -> Digraph:
    """Raw reorientation: exactly the listed edges swap tail and head.

    This is not a reversion sequence; it can (and for a Menger system
    does) change reachability.
    """
    return d.reorient(edge_set)


def flip_separation(d: Digraph, u: str, v: str) -> tuple[Digraph, FlipReport]:
    """Reverse a maximum u -> v path system and verify v became unreachable.

    Reversing the union flips all out-edges of W and none of its in-edges,
    so nothing leaves W afterwards.  A surviving u -> v path would be an
    internal error, not bad input.
    """
    system = menger_system(d, u, v)
    reversed_ids = frozenset(a for p in system.paths for a in p.edges)
    flipped = reverse_edge_set(d, reversed_ids)
    separated = not reachable_vertex(flipped, u, v)
    if not separated:
        raise InternalError("target still reachable after reversing a Menger system")
    assert system.cut is not None
    report = FlipReport(
        lambda_value=len(system.paths),
        w_side=system.cut.side,
        cut_edges=system.cut.out_edges,
        path_edges=tuple(p.edges for p in system.paths),
        reversed_edges=reversed_ids,
        separated=separated,
        sequence_realizable=reversion.reachable(d, flipped) is not None,
    )
    return flipped, report
