"""Directed multigraphs over string vertex labels.

Every edge carries a stable integer id, so two orientations of the same
underlying edge set can be compared edge by edge.  Values are immutable
and all operations are pure functions, safe to share across tasks.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import InputError

EdgeId = int


@dataclass(frozen=True)
class DirectedCycle:
    """Edge ids of a simple directed cycle, in traversal order.

    The orientation of each edge is implied by the digraph the cycle is
    read against; the same id tuple can be a valid cycle of one
    orientation and invalid in another.
    """

    edges: tuple[EdgeId, ...]

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class DirectedPath:
    """Edge ids of a simple directed path from ``source`` to ``target``."""

    edges: tuple[EdgeId, ...]
    source: str
    target: str

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class Cut:
    """A vertex set together with the edges leaving it."""

    side: frozenset[str]
    out_edges: frozenset[EdgeId]

    def __len__(self) -> int:
        return len(self.out_edges)


class Digraph:
    """A finite directed multigraph: an orientation of an indexed edge set.

    Parallel and antiparallel edges are allowed, loops are not.  Two
    digraphs with the same ids and endpoints but different tail/head
    choices are reorientations of each other and share all edge ids.
    """

    __slots__ = ("_vertices", "_edges", "_out", "_in", "_hash")

    def __init__(self, vertices: Iterable[str], edges: Mapping[EdgeId, tuple[str, str]]):
        verts = tuple(sorted(set(vertices)))
        vset = set(verts)
        edge_map: dict[EdgeId, tuple[str, str]] = {}
        out: dict[str, list[EdgeId]] = {v: [] for v in verts}
        inc: dict[str, list[EdgeId]] = {v: [] for v in verts}
        for eid in edges:
            if not isinstance(eid, int) or isinstance(eid, bool) or eid < 0:
                raise InputError(f"edge id {eid!r} is not a nonnegative integer")
        for eid in sorted(edges):
            tail, head = edges[eid]
            if tail == head:
                raise InputError(f"edge {eid} is a loop at {tail!r}")
            if tail not in vset or head not in vset:
                raise InputError(f"edge {eid} has endpoint outside the vertex set: {tail!r} -> {head!r}")
            edge_map[eid] = (tail, head)
            out[tail].append(eid)
            inc[head].append(eid)
        self._vertices = verts
        self._edges = edge_map
        self._out = {v: tuple(ids) for v, ids in out.items()}
        self._in = {v: tuple(ids) for v, ids in inc.items()}
        self._hash = None

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> Mapping[EdgeId, tuple[str, str]]:
        """Read-only view of the id -> (tail, head) map."""
        return MappingProxyType(self._edges)

    @property
    def edge_ids(self) -> tuple[EdgeId, ...]:
        return tuple(self._edges)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def has_vertex(self, v: str) -> bool:
        return v in self._out

    def tail(self, eid: EdgeId) -> str:
        return self._edge(eid)[0]

    def head(self, eid: EdgeId) -> str:
        return self._edge(eid)[1]

    def ends(self, eid: EdgeId) -> frozenset[str]:
        """Endpoints of an edge, forgetting orientation."""
        return frozenset(self._edge(eid))

    def out_edge_ids(self, v: str) -> tuple[EdgeId, ...]:
        self._vertex(v)
        return self._out[v]

    def in_edge_ids(self, v: str) -> tuple[EdgeId, ...]:
        self._vertex(v)
        return self._in[v]

    def reorient(self, flipped: Iterable[EdgeId]) -> "Digraph":
        """New digraph with exactly the listed edges' tail and head swapped."""
        flips = set(flipped)
        unknown = flips - set(self._edges)
        if unknown:
            raise InputError(f"unknown edge ids: {sorted(unknown)}")
        edges = {
            eid: ((h, t) if eid in flips else (t, h))
            for eid, (t, h) in self._edges.items()
        }
        return Digraph(self._vertices, edges)

    def is_reorientation_of(self, other: "Digraph") -> bool:
        """Same vertices, same edge ids, same endpoints per id (directions may differ)."""
        if self._vertices != other._vertices:
            return False
        if self._edges.keys() != other._edges.keys():
            return False
        return all(set(self._edges[e]) == set(other._edges[e]) for e in self._edges)

    def _edge(self, eid: EdgeId) -> tuple[str, str]:
        try:
            return self._edges[eid]
        except KeyError:
            raise InputError(f"unknown edge id {eid}") from None

    def _vertex(self, v: str) -> None:
        if v not in self._out:
            raise InputError(f"unknown vertex {v!r}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vertices, tuple(sorted(self._edges.items()))))
        return self._hash

    def __repr__(self) -> str:
        return f"Digraph({len(self._vertices)} vertices, {len(self._edges)} edges)"


def cycle_vertex_sequence(d: Digraph, cycle: DirectedCycle) -> tuple[str, ...]:
    """Vertices visited by ``cycle`` in ``d`` (one per edge, starting at the first tail).

    Raises InputError unless the edges form a simple directed cycle of ``d``.
    """
    seq = _walk_vertices(d.edges, cycle.edges)
    if seq is None:
        raise InputError(f"edge ids {list(cycle.edges)} do not form a directed cycle")
    return seq


def path_vertex_sequence(d: Digraph, path: DirectedPath) -> tuple[str, ...]:
    """All vertices visited by ``path`` in ``d``; validates the path invariants."""
    if path.source == path.target:
        raise InputError("path source and target must differ")
    if not path.edges:
        raise InputError("path has no edges")
    orient = d.edges
    verts = [orient[path.edges[0]][0]] if path.edges[0] in orient else None
    if verts is None or len(set(path.edges)) != len(path.edges):
        raise InputError(f"edge ids {list(path.edges)} do not form a directed path")
    for eid in path.edges:
        if eid not in orient:
            raise InputError(f"unknown edge id {eid}")
        tail, head = orient[eid]
        if tail != verts[-1]:
            raise InputError(f"edge {eid} does not continue the path at {verts[-1]!r}")
        verts.append(head)
    if verts[0] != path.source or verts[-1] != path.target:
        raise InputError("path endpoints do not match its edges")
    if len(set(verts)) != len(verts):
        raise InputError("path revisits a vertex")
    return tuple(verts)


def _walk_vertices(orient: Mapping[EdgeId, tuple[str, str]], edge_ids: tuple[EdgeId, ...]) -> tuple[str, ...] | None:
    """Tails visited by a closed edge walk, or None if it is not a simple cycle."""
    if len(edge_ids) < 2 or len(set(edge_ids)) != len(edge_ids):
        return None
    if any(eid not in orient for eid in edge_ids):
        return None
    tails = []
    for i, eid in enumerate(edge_ids):
        tail, head = orient[eid]
        tails.append(tail)
        if head != orient[edge_ids[(i + 1) % len(edge_ids)]][0]:
            return None
    if len(set(tails)) != len(tails):
        return None
    return tuple(tails)


def strong_components(d: Digraph) -> tuple[tuple[str, ...], ...]:
    """Strongly connected components, via one Tarjan lowlink pass.

    Deterministic output: vertices sorted inside each component, components
    ordered by their smallest vertex label.
    """
    index: dict[str, int] = {}
    lowlink: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    components: list[tuple[str, ...]] = []
    counter = 0

    for root in d.vertices:
        if root in index:
            continue
        # Iterative DFS: (vertex, iterator over successor edge ids).
        work = [(root, iter(d.out_edge_ids(root)))]
        index[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for eid in it:
                w = d.head(eid)
                if w not in index:
                    index[w] = lowlink[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(d.out_edge_ids(w))))
                    advanced = True
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
            if lowlink[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                components.append(tuple(sorted(comp)))
    components.sort(key=lambda comp: comp[0])
    return tuple(components)


def reachable_vertex(d: Digraph, u: str, v: str) -> bool:
    """True iff a directed path u -> v exists (every vertex reaches itself)."""
    d._vertex(u)
    d._vertex(v)
    if u == v:
        return True
    seen = {u}
    frontier = [u]
    while frontier:
        w = frontier.pop()
        for eid in d.out_edge_ids(w):
            h = d.head(eid)
            if h == v:
                return True
            if h not in seen:
                seen.add(h)
                frontier.append(h)
    return False


def out_edges(d: Digraph, w: Iterable[str]) -> Cut:
    """The edges leaving the vertex set ``w``."""
    side = frozenset(w)
    for v in side:
        d._vertex(v)
    leaving = frozenset(
        eid for eid, (t, h) in d.edges.items() if t in side and h not in side
    )
    return Cut(side=side, out_edges=leaving)


def simple_cycles(d: Digraph, limit: int | None = None) -> list[DirectedCycle]:
    """Enumerate simple directed cycles, each rotated to start at its smallest vertex.

    Parallel edges yield distinct cycles.  Deterministic: DFS by ascending
    edge id from each start vertex in label order; stops after ``limit``
    cycles when given.
    """
    verts = d.vertices
    rank = {v: i for i, v in enumerate(verts)}
    found: list[DirectedCycle] = []

    def extend(start: str, w: str, path_edges: list[EdgeId], on_path: set[str]) -> bool:
        for eid in d.out_edge_ids(w):
            h = d.head(eid)
            if h == start:
                found.append(DirectedCycle(tuple(path_edges) + (eid,)))
                if limit is not None and len(found) >= limit:
                    return True
            elif rank[h] > rank[start] and h not in on_path:
                on_path.add(h)
                path_edges.append(eid)
                if extend(start, h, path_edges, on_path):
                    return True
                path_edges.pop()
                on_path.discard(h)
        return False

    for s in verts:
        if extend(s, s, [], {s}):
            break
    return found


def gen_ladder(n: int) -> Digraph:
    """Strongly connected ladder on vertices "0".."n".

    Forward edges i -> i+1 (ids 0..n-1) plus back-arcs i+2 -> i
    (ids n..2n-2).  The back-arc spacing of two is a convention: it keeps
    the underlying graph 2-vertex-connected while every edge lies on only
    a bounded number of simple cycles, however large n grows.
    """
    if n < 2:
        raise InputError("gen_ladder requires n >= 2")
    vertices = [str(i) for i in range(n + 1)]
    edges: dict[EdgeId, tuple[str, str]] = {}
    for i in range(n):
        edges[i] = (str(i), str(i + 1))
    for i in range(n - 1):
        edges[n + i] = (str(i + 2), str(i))
    return Digraph(vertices, edges)


def gen_random(n: int, m: int, seed: int) -> Digraph:
    """Random digraph with ``n`` vertices "v0".."v{n-1}" and ``m`` edges; deterministic per seed."""
    if n < 1:
        raise InputError("gen_random requires n >= 1")
    if m < 0:
        raise InputError("gen_random requires m >= 0")
    if n == 1 and m > 0:
        raise InputError("cannot place edges on a single vertex without loops")
    rng = random.Random(seed)
    vertices = [f"v{i}" for i in range(n)]
    edges: dict[EdgeId, tuple[str, str]] = {}
    for eid in range(m):
        t = rng.randrange(n)
        h = rng.randrange(n - 1)
        if h >= t:
            h += 1
        edges[eid] = (vertices[t], vertices[h])
    return Digraph(vertices, edges)


def gen_tournament(n: int, seed: int) -> Digraph:
    """Random tournament: exactly one edge per unordered vertex pair."""
    if n < 1:
        raise InputError("gen_tournament requires n >= 1")
    rng = random.Random(seed)
    vertices = [f"v{i}" for i in range(n)]
    edges: dict[EdgeId, tuple[str, str]] = {}
    eid = 0
    for i in range(n):
        for j in range(i + 1, n):
            if rng.randrange(2):
                edges[eid] = (vertices[i], vertices[j])
            else:
                edges[eid] = (vertices[j], vertices[i])
            eid += 1
    return Digraph(vertices, edges)


def to_json(d: Digraph) -> str:
    """Canonical JSON: vertices sorted, edges by ascending id, fixed key order."""
    obj = {
        "vertices": list(d.vertices),
        "edges": [
            {"id": eid, "tail": d.tail(eid), "head": d.head(eid)}
            for eid in sorted(d.edge_ids)
        ],
    }
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def from_json(text: str) -> Digraph:
    """Parse the JSON digraph format; raises InputError on schema violations."""
    obj = json.loads(text)
    if not isinstance(obj, dict):
        raise InputError("digraph JSON must be an object")
    extra = set(obj) - {"vertices", "edges"}
    if extra:
        raise InputError(f"unexpected keys in digraph JSON: {sorted(extra)}")
    verts = obj.get("vertices")
    raw_edges = obj.get("edges")
    if not isinstance(verts, list) or not all(isinstance(v, str) for v in verts):
        raise InputError('"vertices" must be a list of strings')
    if not isinstance(raw_edges, list):
        raise InputError('"edges" must be a list')
    edges: dict[EdgeId, tuple[str, str]] = {}
    for item in raw_edges:
        if not isinstance(item, dict) or set(item) != {"id", "tail", "head"}:
            raise InputError('each edge must be an object with keys "id", "tail", "head"')
        eid = item["id"]
        if not isinstance(eid, int) or isinstance(eid, bool):
            raise InputError(f"edge id {eid!r} must be an integer")
        if eid in edges:
            raise InputError(f"duplicate edge id {eid}")
        if not isinstance(item["tail"], str) or not isinstance(item["head"], str):
            raise InputError(f"edge {eid}: tail and head must be strings")
        edges[eid] = (item["tail"], item["head"])
    return Digraph(verts, edges)


def to_dot(d: Digraph) -> str:
    """Graphviz export: one digraph block, one edge per line, id as the edge label."""

    def q(s: str) -> str:
        return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'

    lines = ["digraph {"]
    for v in d.vertices:
        lines.append(f"  {q(v)};")
    for eid in sorted(d.edge_ids):
        lines.append(f"  {q(d.tail(eid))} -> {q(d.head(eid))} [label={q(str(eid))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
