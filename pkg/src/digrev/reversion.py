"""Reversion-sequence algebra.

A reversion sequence is an ordered list of directed cycles, each required
to be a cycle of the orientation produced by reversing its predecessors.
Applying a sequence flips every edge touched an odd number of times.  The
balance (Eulerian) condition on the set of flipped edges is the exact
criterion for one finite orientation to be reachable from another.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import InputError, InternalError, ValidationError
from .graph import Digraph, DirectedCycle, DirectedPath, EdgeId, _walk_vertices, path_vertex_sequence


@dataclass(frozen=True)
class ReversionSequence:
    """An ordered tuple of directed cycles acting on some base digraph."""

    cycles: tuple[DirectedCycle, ...]

    def __len__(self) -> int:
        return len(self.cycles)

    def __iter__(self) -> Iterator[DirectedCycle]:
        return iter(self.cycles)

    def __getitem__(self, i: int) -> DirectedCycle:
        return self.cycles[i]

    def edge_set(self) -> frozenset[EdgeId]:
        """All edge ids touched by any cycle of the sequence."""
        return frozenset(e for c in self.cycles for e in c.edges)

    def touch_counts(self) -> dict[EdgeId, int]:
        """How many cycles contain each edge (the parity decides its final orientation)."""
        counts: dict[EdgeId, int] = {}
        for cyc in self.cycles:
            for e in cyc.edges:
                counts[e] = counts.get(e, 0) + 1
        return counts

    def to_edge_lists(self) -> list[list[EdgeId]]:
        return [list(c.edges) for c in self.cycles]

    @classmethod
    def from_edge_lists(cls, lists: Iterable[Iterable[EdgeId]]) -> "ReversionSequence":
        return cls(tuple(DirectedCycle(tuple(edges)) for edges in lists))


@dataclass(frozen=True)
class Difference:
    """The edges whose final orientation differs from the base.

    ``base_orientation`` records each reversed edge as (id, tail, head) in
    the base digraph, sorted by id.
    """

    reversed_edges: frozenset[EdgeId]
    base_orientation: tuple[tuple[EdgeId, str, str], ...]


def _run(d: Digraph, seq: ReversionSequence) -> tuple[dict[EdgeId, tuple[str, str]], int | None]:
    """Apply cycles in order; returns (orientation, None) or (partial, first bad index)."""
    orient = dict(d.edges)
    for i, cyc in enumerate(seq):
        if _walk_vertices(orient, cyc.edges) is None:
            return orient, i
        for e in cyc.edges:
            t, h = orient[e]
            orient[e] = (h, t)
    return orient, None


def validate(d: Digraph, seq: ReversionSequence) -> int | None:
    """None when the sequence is valid for ``d``; otherwise the first failing index."""
    _, bad = _run(d, seq)
    return bad


def apply(d: Digraph, seq: ReversionSequence) -> Digraph:
    """The digraph obtained by reversing each cycle in order."""
    orient, bad = _run(d, seq)
    if bad is not None:
        raise ValidationError(bad, f"cycle at index {bad} is not a directed cycle of the intermediate orientation")
    return Digraph(d.vertices, orient)


def difference(d: Digraph, seq: ReversionSequence) -> Difference:
    """The edges ``apply(d, seq)`` orients differently from ``d``.

    Always balanced: within the reversed set, every vertex has equal in-
    and out-degree (counted in the base orientation).
    """
    final = apply(d, seq)
    flipped = frozenset(e for e, ends in d.edges.items() if final.edges[e] != ends)
    base = tuple((e, *d.edges[e]) for e in sorted(flipped))
    return Difference(reversed_edges=flipped, base_orientation=base)


def is_eulerian(d: Digraph, edge_set: Iterable[EdgeId]) -> bool:
    """True iff every vertex has equal in- and out-degree within ``edge_set``."""
    ids = set(edge_set)
    unknown = ids - set(d.edges)
    if unknown:
        raise InputError(f"unknown edge ids: {sorted(unknown)}")
    balance: dict[str, int] = {}
    for e in ids:
        t, h = d.edges[e]
        balance[t] = balance.get(t, 0) + 1
        balance[h] = balance.get(h, 0) - 1
    return all(b == 0 for b in balance.values())


def cycle_decompose(d: Digraph, edge_set: Iterable[EdgeId]) -> list[DirectedCycle]:
    """Partition a balanced edge set into edge-disjoint simple cycles of ``d``.

    Greedy and deterministic: each walk starts at the lowest unused edge
    id, always continues along the lowest unused outgoing edge, and closes
    a cycle at the first vertex repeat.
    """
    ids = sorted(set(edge_set))
    if not is_eulerian(d, ids):
        raise InputError("edge set is not balanced; cannot decompose into cycles")
    # Per-tail queues of unused edges, consumed in ascending id order.
    out_avail: dict[str, list[EdgeId]] = {}
    for e in ids:
        out_avail.setdefault(d.tail(e), []).append(e)
    cursor = {v: 0 for v in out_avail}
    used: set[EdgeId] = set()

    def next_out(v: str) -> EdgeId | None:
        lst = out_avail.get(v)
        if lst is None:
            return None
        i = cursor[v]
        while i < len(lst) and lst[i] in used:
            i += 1
        cursor[v] = i
        return lst[i] if i < len(lst) else None

    cycles: list[DirectedCycle] = []
    for start in ids:
        if start in used:
            continue
        walk_verts = [d.tail(start)]
        walk_edges: list[EdgeId] = []
        pos = {walk_verts[0]: 0}
        w = walk_verts[0]
        pending: EdgeId | None = start
        while True:
            e = pending if pending is not None else next_out(w)
            pending = None
            if e is None:
                if walk_edges:
                    raise InternalError("walk stalled on a balanced edge set")
                break
            used.add(e)
            h = d.head(e)
            walk_edges.append(e)
            if h in pos:
                k = pos[h]
                cycles.append(DirectedCycle(tuple(walk_edges[k:])))
                del walk_edges[k:]
                for v in walk_verts[k + 1 :]:
                    del pos[v]
                del walk_verts[k + 1 :]
                w = h
                if not walk_edges:
                    break
            else:
                pos[h] = len(walk_verts)
                walk_verts.append(h)
                w = h
    return cycles


def canonicalize(d: Digraph, seq: ReversionSequence) -> ReversionSequence:
    """Equivalent sequence of pairwise edge-disjoint cycles of ``d``.

    The result touches each edge at most once, uses only edges the input
    touched, and applies to the same reorientation.
    """
    diff = difference(d, seq)
    canon = ReversionSequence(tuple(cycle_decompose(d, diff.reversed_edges)))
    if apply(d, canon) != apply(d, seq):
        raise InternalError("canonical sequence does not reproduce the original effect")
    return canon


def invert(d: Digraph, seq: ReversionSequence) -> ReversionSequence:
    """The undo sequence: reverse back each cycle, starting from the last."""
    if validate(d, seq) is not None:
        raise InputError("cannot invert an invalid sequence")
    inverse = tuple(
        DirectedCycle(tuple(reversed(c.edges))) for c in reversed(seq.cycles)
    )
    return ReversionSequence(inverse)


def reachable(d: Digraph, target: Digraph) -> ReversionSequence | None:
    """A sequence of pairwise edge-disjoint cycles with apply(d, seq) == target, or None.

    ``target`` must be a reorientation of ``d``.  A sequence exists exactly
    when the set of differently-oriented edges is balanced in ``d``:
    necessity because every sequence flips a balanced set, sufficiency
    because edge-disjoint cycles of ``d`` stay valid in any order.
    """
    if not d.is_reorientation_of(target):
        raise InputError("target is not a reorientation of the base digraph")
    diff = frozenset(e for e, ends in d.edges.items() if target.edges[e] != ends)
    if not is_eulerian(d, diff):
        return None
    seq = ReversionSequence(tuple(cycle_decompose(d, diff)))
    if apply(d, seq) != target:
        raise InternalError("decomposed difference does not reach the target")
    return seq


@dataclass(frozen=True)
class Effect:
    """Final orientation of a watched edge set, plus a sufficient subsequence."""

    orientation: tuple[tuple[EdgeId, str, str], ...]
    subsequence: ReversionSequence


def effect_on(d: Digraph, seq: ReversionSequence, watched: Iterable[EdgeId]) -> Effect:
    """Restrict a sequence's effect to ``watched``.

    The returned subsequence is greedily minimal: it keeps exactly the
    cycles touching the dependency closure of ``watched`` (the least edge
    set containing ``watched`` and closed under "some cycle touches it"),
    and agrees with the full sequence on every watched edge.
    """
    ids = set(watched)
    unknown = ids - set(d.edges)
    if unknown:
        raise InputError(f"unknown edge ids: {sorted(unknown)}")
    final = apply(d, seq)

    closure = set(ids)
    changed = True
    while changed:
        changed = False
        for cyc in seq:
            es = set(cyc.edges)
            if es & closure and not es <= closure:
                closure |= es
                changed = True
    sub = ReversionSequence(tuple(c for c in seq if set(c.edges) & closure))
    partial = apply(d, sub)
    for e in ids:
        if partial.edges[e] != final.edges[e]:
            raise InternalError("subsequence disagrees with the full sequence on a watched edge")
    orientation = tuple((e, *final.edges[e]) for e in sorted(ids))
    return Effect(orientation=orientation, subsequence=sub)


def replace_segments(
    d: Digraph,
    cycles: Sequence[DirectedCycle],
    forbidden: Iterable[EdgeId],
    detours: Mapping[tuple[EdgeId, ...], DirectedPath],
) -> list[DirectedCycle]:
    """Reroute edge-disjoint cycles around a forbidden edge set.

    Each maximal run of consecutive forbidden edges in a cycle (a segment,
    keyed by its edge-id tuple) must have a detour path with the same
    endpoints that avoids ``forbidden``.  Cycles that never meet the
    forbidden set pass through unchanged; the retained parts of the others
    plus the detours form a balanced set and are returned as its cycle
    decomposition.
    """
    banned = frozenset(forbidden)
    unknown = banned - set(d.edges)
    if unknown:
        raise InputError(f"unknown edge ids: {sorted(unknown)}")

    seen_edges: set[EdgeId] = set()
    untouched: list[DirectedCycle] = []
    retained: list[EdgeId] = []
    segments: list[tuple[tuple[EdgeId, ...], str, str]] = []
    for cyc in cycles:
        verts = _walk_vertices(d.edges, cyc.edges)
        if verts is None:
            raise InputError(f"edge ids {list(cyc.edges)} do not form a directed cycle of the digraph")
        if seen_edges & set(cyc.edges):
            raise InputError("input cycles are not pairwise edge-disjoint")
        seen_edges |= set(cyc.edges)
        flags = [e in banned for e in cyc.edges]
        if not any(flags):
            untouched.append(cyc)
            continue
        if all(flags):
            raise InputError("a cycle lies entirely inside the forbidden set; no detour endpoints exist")
        # Rotate so the walk starts on a retained edge, making forbidden runs contiguous.
        first_keep = flags.index(False)
        order = list(range(first_keep, len(cyc.edges))) + list(range(first_keep))
        run: list[int] = []
        for idx in order:
            if flags[idx]:
                run.append(idx)
                continue
            if run:
                seg = tuple(cyc.edges[i] for i in run)
                segments.append((seg, d.tail(seg[0]), d.head(seg[-1])))
                run = []
            retained.append(cyc.edges[idx])
        if run:
            seg = tuple(cyc.edges[i] for i in run)
            segments.append((seg, d.tail(seg[0]), d.head(seg[-1])))

    replacement: list[EdgeId] = []
    used_detour: set[EdgeId] = set()
    for seg, start, end in segments:
        path = detours.get(seg)
        if path is None:
            raise InputError(f"no detour supplied for segment {list(seg)}")
        path_vertex_sequence(d, path)
        if path.source != start or path.target != end:
            raise InputError(f"detour for segment {list(seg)} must run {start!r} -> {end!r}")
        pe = set(path.edges)
        if pe & banned:
            raise InputError(f"detour for segment {list(seg)} uses forbidden edges")
        if pe & used_detour or pe & (seen_edges - banned):
            raise InputError(f"detour for segment {list(seg)} is not edge-disjoint from the rest")
        used_detour |= pe
        replacement.extend(path.edges)

    union = retained + replacement
    if not is_eulerian(d, union):
        raise InternalError("retained parts plus detours are unbalanced")
    return untouched + cycle_decompose(d, union)


def sequence_to_json(seq: ReversionSequence) -> str:
    """Wire format: a JSON list of cycles, each a list of edge ids in traversal order."""
    return json.dumps(seq.to_edge_lists(), ensure_ascii=False) + "\n"


def sequence_from_json(text: str) -> ReversionSequence:
    obj = json.loads(text)
    if not isinstance(obj, list):
        raise InputError("sequence JSON must be a list of cycles")
    for cyc in obj:
        if not isinstance(cyc, list) or not all(isinstance(e, int) for e in cyc):
            raise InputError("each cycle must be a list of integer edge ids")
    return ReversionSequence.from_edge_lists(obj)
