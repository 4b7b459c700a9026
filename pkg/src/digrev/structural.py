"""Staged path flips, the tournament two-chain form, and the orientation oracle.

The staged flip shows how a reversion sequence can reverse a u -> v path
at the price of also reversing one v -> u return path: each stage undoes
the previous return path by spending the next one.  With finitely many
return paths the last one keeps its reversed orientation; that residue is
reported, not hidden.

The orientation oracle is the ground truth for reachability questions at
small scale: breadth-first search over all 2^m orientations where a move
reverses one simple cycle of the current orientation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import connectivity, reversion
from .errors import InputError, InternalError, ResourceLimitError
from .graph import Digraph, DirectedCycle, DirectedPath, EdgeId, path_vertex_sequence, strong_components
from .limits import default_limits


@dataclass(frozen=True)
class StagedFlip:
    """Outcome of a staged path flip, with a per-edge touch-count ledger."""

    target_path: DirectedPath
    return_paths: tuple[DirectedPath, ...]
    sequence: reversion.ReversionSequence
    touch_counts: dict[EdgeId, int]


@dataclass(frozen=True)
class TwoChainResult:
    """Outdegree order, the witnessing sequence, and the reoriented tournament."""

    order: tuple[str, ...]
    sequence: reversion.ReversionSequence
    final: Digraph


def _check_disjoint(groups: Sequence[tuple[str, frozenset[EdgeId]]]) -> None:
    seen: dict[EdgeId, str] = {}
    for name, ids in groups:
        for e in ids:
            if e in seen:
                raise InputError(f"{name} shares edge {e} with {seen[e]}")
            seen[e] = name


def flip_path_staged(d: Digraph, p: DirectedPath, qs: Sequence[DirectedPath]) -> StagedFlip:
    """Reverse path p using a chain of return paths.

    Stage 0 decomposes p plus the first return path into cycles and
    reverses them; stage i >= 1 spends return path i to restore return
    path i-1.  Net effect: p and the last return path are reversed, every
    interior return path is touched exactly twice and restored.
    """
    if not qs:
        raise InputError("at least one return path is required")
    path_vertex_sequence(d, p)
    u, v = p.source, p.target
    for i, q in enumerate(qs):
        path_vertex_sequence(d, q)
        if q.source != v or q.target != u:
            raise InputError(f"return path {i} must run {v!r} -> {u!r}")
    _check_disjoint(
        [("target path", frozenset(p.edges))]
        + [(f"return path {i}", frozenset(q.edges)) for i, q in enumerate(qs)]
    )

    current = d
    stages: list[DirectedCycle] = []
    union: Iterable[EdgeId] = set(p.edges) | set(qs[0].edges)
    for i in range(len(qs)):
        if i > 0:
            union = set(qs[i - 1].edges) | set(qs[i].edges)
        stage_cycles = reversion.cycle_decompose(current, union)
        stages.extend(stage_cycles)
        current = reversion.apply(current, reversion.ReversionSequence(tuple(stage_cycles)))

    seq = reversion.ReversionSequence(tuple(stages))
    touches = seq.touch_counts()
    expected_diff = frozenset(p.edges) | frozenset(qs[-1].edges)
    diff = reversion.difference(d, seq)
    if diff.reversed_edges != expected_diff:
        raise InternalError("staged flip reversed an unexpected edge set")
    for e in p.edges:
        if touches.get(e) != 1:
            raise InternalError("target path edge touched more than once")
    for i, q in enumerate(qs):
        want = 1 if i == len(qs) - 1 else 2
        if any(touches.get(e) != want for e in q.edges):
            raise InternalError(f"return path {i} has wrong touch count")
    return StagedFlip(target_path=p, return_paths=tuple(qs), sequence=seq, touch_counts=touches)


def flip_path_system_staged(
    d: Digraph,
    system: connectivity.PathSystem,
    qs_per_path: Sequence[Sequence[DirectedPath]],
    forbidden: Iterable[EdgeId] = (),
) -> reversion.ReversionSequence:
    """Staged flip of every path in a system, avoiding a prescribed edge set.

    All paths and return paths must be pairwise edge-disjoint, and none may
    meet ``forbidden``.  Net effect: the union of the system's paths plus
    the last return path of each chain is reversed; the forbidden set is
    untouched.
    """
    paths = system.paths
    if len(qs_per_path) != len(paths):
        raise InputError("need exactly one return-path chain per system path")
    banned = frozenset(forbidden)
    groups = [(f"path {i}", frozenset(p.edges)) for i, p in enumerate(paths)]
    for i, chain in enumerate(qs_per_path):
        if not chain:
            raise InputError(f"return-path chain {i} is empty")
        groups += [(f"return path {i}.{j}", frozenset(q.edges)) for j, q in enumerate(chain)]
    _check_disjoint(groups)
    for name, ids in groups:
        if ids & banned:
            raise InputError(f"{name} uses forbidden edges {sorted(ids & banned)}")

    current = d
    combined: list[DirectedCycle] = []
    for p, chain in zip(paths, qs_per_path):
        staged = flip_path_staged(current, p, chain)
        combined.extend(staged.sequence.cycles)
        current = reversion.apply(current, staged.sequence)

    seq = reversion.ReversionSequence(tuple(combined))
    if seq.edge_set() & banned:
        raise InternalError("sequence touched the forbidden set")
    expected = frozenset(e for p in paths for e in p.edges) | frozenset(
        e for chain in qs_per_path for e in chain[-1].edges
    )
    if reversion.difference(d, seq).reversed_edges != expected:
        raise InternalError("system flip reversed an unexpected edge set")
    return seq


def _check_tournament(t: Digraph) -> None:
    n = len(t.vertices)
    if t.num_edges != n * (n - 1) // 2:
        raise InputError("not a tournament: wrong edge count")
    pairs = {t.ends(e) for e in t.edge_ids}
    if len(pairs) != t.num_edges:
        raise InputError("not a tournament: some vertex pair has multiple edges")


def tournament_two_chain(t: Digraph) -> TwoChainResult:
    """Reorient a tournament so both parity chains point forward.

    Vertices are ranked by descending outdegree (ties by label).  Edges
    inside the odd-ranked chain or inside the even-ranked chain that point
    backward are forced reversals; edges across the chains are chosen by a
    balance-feasibility flow so the whole reversal set is Eulerian, then
    realized as a sequence of edge-disjoint cycles.
    """
    _check_tournament(t)
    outdeg = {v: len(t.out_edge_ids(v)) for v in t.vertices}
    order = tuple(sorted(t.vertices, key=lambda v: (-outdeg[v], v)))
    rank = {v: i for i, v in enumerate(order)}

    forced: set[EdgeId] = set()
    cross: list[EdgeId] = []
    for e in sorted(t.edge_ids):
        a, b = t.edges[e]
        if rank[a] % 2 == rank[b] % 2:
            if rank[a] > rank[b]:
                forced.add(e)
        else:
            cross.append(e)

    # Each vertex's in/out imbalance from the forced set must be soaked up
    # by selected cross edges: a feasibility flow on unit arcs.
    need_out = {v: 0 for v in t.vertices}
    for e in forced:
        a, b = t.edges[e]
        need_out[a] -= 1
        need_out[b] += 1
    src, snk = "#source", "#sink"
    while src in need_out:
        src += "#"
    while snk in need_out:
        snk += "#"
    aux_edges: dict[EdgeId, tuple[str, str]] = {}
    aux_of: dict[EdgeId, EdgeId] = {}
    nxt = 0
    for e in cross:
        aux_edges[nxt] = t.edges[e]
        aux_of[nxt] = e
        nxt += 1
    supply = 0
    for v in t.vertices:
        for _ in range(need_out[v]):
            aux_edges[nxt] = (src, v)
            nxt += 1
            supply += 1
        for _ in range(-need_out[v]):
            aux_edges[nxt] = (v, snk)
            nxt += 1
    aux = Digraph(list(t.vertices) + [src, snk], aux_edges)
    value, flow, _ = connectivity._max_flow(aux, src, snk)
    if value != supply:
        raise InternalError("balance flow infeasible; the two-chain form should always exist")

    chosen = {aux_of[a] for a in flow if a in aux_of}
    reversal = forced | chosen
    if not reversion.is_eulerian(t, reversal):
        raise InternalError("selected reversal set is not balanced")
    target = connectivity.reverse_edge_set(t, reversal)
    seq = reversion.reachable(t, target)
    if seq is None:
        raise InternalError("balanced reversal set was not realizable")
    final = reversion.apply(t, seq)
    for e in final.edge_ids:
        a, b = final.edges[e]
        if rank[a] % 2 == rank[b] % 2 and rank[a] > rank[b]:
            raise InternalError("a within-parity edge still points backward")
    return TwoChainResult(order=order, sequence=seq, final=final)


class OrientationClasses:
    """Reachability classes of all reorientations of a base digraph.

    Orientations are bitmasks over the sorted edge-id order: bit i set
    means edge ``edge_order[i]`` is flipped relative to the base.  Classes
    are found by BFS where one move reverses one simple cycle of the
    current orientation.
    """

    def __init__(self, base: Digraph, edge_order: tuple[EdgeId, ...], classes: tuple[tuple[int, ...], ...]):
        self.base = base
        self.edge_order = edge_order
        self.classes = classes
        self._index: dict[int, int] = {}
        for i, members in enumerate(classes):
            for mask in members:
                self._index[mask] = i

    def mask_of(self, g: Digraph) -> int:
        if not self.base.is_reorientation_of(g):
            raise InputError("digraph is not a reorientation of the oracle's base")
        mask = 0
        for i, e in enumerate(self.edge_order):
            if g.edges[e] != self.base.edges[e]:
                mask |= 1 << i
        return mask

    def orientation(self, mask: int) -> Digraph:
        if not 0 <= mask < (1 << len(self.edge_order)):
            raise InputError(f"mask {mask} out of range")
        return self.base.reorient(
            [e for i, e in enumerate(self.edge_order) if mask >> i & 1]
        )

    def class_index(self, mask: int) -> int:
        return self._index[mask]

    def same_class(self, a: int, b: int) -> bool:
        return self._index[a] == self._index[b]


def _undirected_cycle_patterns(d: Digraph, edge_order: tuple[EdgeId, ...]) -> list[tuple[int, int]]:
    """All simple cycles of the underlying multigraph as (edge mask, flip pattern).

    The pattern marks edges the traversal crosses against their base
    orientation; a cycle is a directed cycle of the orientation ``s``
    exactly when s restricted to the mask equals the pattern or its
    mask-complement (the two traversal directions).
    """
    pos = {e: i for i, e in enumerate(edge_order)}
    verts = d.vertices
    vidx = {v: i for i, v in enumerate(verts)}
    incid: list[list[tuple[int, int, int]]] = [[] for _ in verts]
    for e in edge_order:
        t, h = d.edges[e]
        incid[vidx[t]].append((pos[e], vidx[h], 0))
        incid[vidx[h]].append((pos[e], vidx[t], 1))
    for lst in incid:
        lst.sort()

    found: list[tuple[int, int]] = []

    def walk(at: int, base: int, first: int, used: int, pattern: int, visited: int) -> None:
        for p, to, flip in incid[at]:
            if used >> p & 1:
                continue
            if to == base:
                if first < p:
                    found.append((used | 1 << p, pattern | flip << p))
            elif to > base and not visited >> to & 1:
                walk(to, base, first, used | 1 << p, pattern | flip << p, visited | 1 << to)

    for base in range(len(verts)):
        for p, to, flip in incid[base]:
            if to > base:
                walk(to, base, p, 1 << p, flip << p, 1 << base | 1 << to)
    return found


def orientation_space_oracle(d: Digraph, max_edges: int | None = None) -> OrientationClasses:
    """Partition all reorientations of ``d`` into single-cycle-reversal reachability classes."""
    cap = max_edges if max_edges is not None else default_limits().oracle_edges
    m = d.num_edges
    if m > cap:
        raise ResourceLimitError(f"oracle: {m} edges exceeds the cap of {cap}")
    edge_order = tuple(sorted(d.edge_ids))
    patterns = _undirected_cycle_patterns(d, edge_order)
    total = 1 << m
    seen = bytearray(total)
    classes: list[tuple[int, ...]] = []
    for seed in range(total):
        if seen[seed]:
            continue
        seen[seed] = 1
        members = [seed]
        queue = deque([seed])
        while queue:
            s = queue.popleft()
            for mask, pattern in patterns:
                bits = s & mask
                if bits == pattern or bits == pattern ^ mask:
                    ns = s ^ mask
                    if not seen[ns]:
                        seen[ns] = 1
                        members.append(ns)
                        queue.append(ns)
        classes.append(tuple(sorted(members)))
    return OrientationClasses(base=d, edge_order=edge_order, classes=tuple(classes))


def scatter_check(d: Digraph, oracle: OrientationClasses | None = None) -> bool:
    """Do all orientations in each reachability class share one strong-component partition?

    True for every finite digraph: reversing a cycle never splits or merges
    strong components, so no finite reversion sequence can separate two
    vertices of one component.
    """
    oracle = oracle if oracle is not None else orientation_space_oracle(d)
    for members in oracle.classes:
        reference = strong_components(oracle.orientation(members[0]))
        for mask in members[1:]:
            if strong_components(oracle.orientation(mask)) != reference:
                return False
    return True
