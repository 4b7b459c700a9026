"""Seeded property suites behind the ``batch-verify`` CLI command.

Each suite runs a batch of instances, verifies one family of invariants,
and reports failures with a greedily minimized counterexample.  The
``mutate`` flag deliberately corrupts each instance's verification (a
negative control proving the harness actually detects faults).
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import connectivity, dichromatic, graph, reversion, structural
from .errors import DigrevError, InputError
from .graph import Digraph, DirectedPath


@dataclass
class SuiteReport:
    suite: str
    instances: int
    failures: list[dict] = field(default_factory=list)
    seconds: float = 0.0

    def to_json_obj(self) -> dict:
        return {
            "suite": self.suite,
            "instances": self.instances,
            "failure_count": len(self.failures),
            "failures": self.failures,
        }


def random_digraph(rng: random.Random, max_n: int = 8, max_m: int = 16, min_n: int = 2) -> Digraph:
    n = rng.randint(min_n, max_n)
    m = rng.randint(0, max_m) if n > 1 else 0
    return graph.gen_random(n, m, rng.randrange(2**32))


def random_strong_digraph(rng: random.Random, max_n: int = 8, extra: int = 6) -> Digraph:
    """A digraph guaranteed strongly connected: a full cycle plus random chords."""
    n = rng.randint(2, max_n)
    vertices = [f"v{i}" for i in range(n)]
    edges: dict[int, tuple[str, str]] = {}
    order = list(range(n))
    rng.shuffle(order)
    for i in range(n):
        edges[i] = (vertices[order[i]], vertices[order[(i + 1) % n]])
    eid = n
    for _ in range(rng.randint(0, extra)):
        t = rng.randrange(n)
        h = rng.randrange(n - 1)
        if h >= t:
            h += 1
        edges[eid] = (vertices[t], vertices[h])
        eid += 1
    return Digraph(vertices, edges)


def random_valid_sequence(rng: random.Random, d: Digraph, max_steps: int = 5) -> reversion.ReversionSequence:
    """Build a valid sequence by repeatedly reversing a random cycle of the current orientation."""
    current = d
    cycles = []
    for _ in range(rng.randint(0, max_steps)):
        candidates = graph.simple_cycles(current, limit=64)
        if not candidates:
            break
        cyc = candidates[rng.randrange(len(candidates))]
        cycles.append(cyc)
        current = reversion.apply(current, reversion.ReversionSequence((cyc,)))
    return reversion.ReversionSequence(tuple(cycles))


def _shrink(d: Digraph, still_fails: Callable[[Digraph], bool]) -> Digraph:
    """Greedy minimization: drop edges one at a time while the failure persists."""
    progress = True
    while progress:
        progress = False
        for eid in sorted(d.edge_ids):
            smaller = Digraph(d.vertices, {e: ends for e, ends in d.edges.items() if e != eid})
            try:
                if still_fails(smaller):
                    d = smaller
                    progress = True
                    break
            except DigrevError:
                continue
    return d


def _failure(index: int, d: Digraph | None, reason: str, shrink: Callable[[Digraph], bool] | None = None) -> dict:
    entry: dict = {"instance": index, "reason": reason}
    if d is not None:
        if shrink is not None:
            try:
                d = _shrink(d, shrink)
            except DigrevError:
                pass
        entry["digraph"] = {
            "vertices": list(d.vertices),
            "edges": [{"id": e, "tail": t, "head": h} for e, (t, h) in sorted(d.edges.items())],
        }
    return entry


def _all_pairs_lambda(d: Digraph) -> dict[tuple[str, str], int]:
    return {
        (u, v): connectivity.edge_connectivity(d, u, v)
        for u in d.vertices
        for v in d.vertices
        if u != v
    }


def _check_lambda_invariance(d: Digraph, seq_seed: int, mutate: bool) -> str | None:
    rng = random.Random(seq_seed)
    seq = random_valid_sequence(rng, d)
    after = reversion.apply(d, seq)
    before_lam = _all_pairs_lambda(d)
    after_lam = _all_pairs_lambda(after)
    if mutate and before_lam:
        first = sorted(before_lam)[0]
        after_lam[first] += 1
    if before_lam != after_lam:
        bad = sorted(p for p in before_lam if before_lam[p] != after_lam[p])
        return f"lambda changed on pairs {bad[:3]} after a {len(seq)}-cycle sequence"
    if graph.strong_components(d) != graph.strong_components(after):
        return "strong components changed under a reversion sequence"
    return None


def _suite_lambda_invariance(rng, count, exhaustive, mutate):
    failures = []
    for i in range(count):
        d = random_strong_digraph(rng, max_n=7) if rng.random() < 0.5 else random_digraph(rng, max_n=7, max_m=14)
        seq_seed = rng.randrange(2**32)
        reason = _check_lambda_invariance(d, seq_seed, mutate)
        if reason:
            failures.append(_failure(i, d, reason, lambda dd: _check_lambda_invariance(dd, seq_seed, mutate) is not None))
    return count, failures


def _check_outw(d: Digraph, seq_seed: int, mutate: bool) -> str | None:
    rng = random.Random(seq_seed)
    candidates = graph.simple_cycles(d, limit=64)
    if not candidates:
        return None
    cyc = candidates[rng.randrange(len(candidates))]
    after = reversion.apply(d, reversion.ReversionSequence((cyc,)))
    verts = d.vertices
    for bits in range(1 << len(verts)):
        side = [verts[i] for i in range(len(verts)) if bits >> i & 1]
        before = len(graph.out_edges(d, side).out_edges)
        now = len(graph.out_edges(after, side).out_edges)
        if mutate:
            now += 1
        if before != now:
            return f"|out(W)| changed for W={side}"
    if graph.strong_components(d) != graph.strong_components(after):
        return "strong components changed under a single reversal"
    return None


def _suite_outw(rng, count, exhaustive, mutate):
    failures = []
    for i in range(count):
        d = random_digraph(rng, max_n=5, max_m=12)
        seq_seed = rng.randrange(2**32)
        reason = _check_outw(d, seq_seed, mutate)
        if reason:
            failures.append(_failure(i, d, reason, lambda dd: _check_outw(dd, seq_seed, mutate) is not None))
    return count, failures


def _enumerate_small_digraphs(max_n: int = 4, max_m: int = 6) -> Iterable[Digraph]:
    """All labeled loop-free simple digraphs with at most max_n vertices and max_m arcs."""
    for n in range(1, max_n + 1):
        vertices = [f"v{i}" for i in range(n)]
        arcs = [(vertices[i], vertices[j]) for i in range(n) for j in range(n) if i != j]
        for m in range(0, min(max_m, len(arcs)) + 1):
            for combo in itertools.combinations(range(len(arcs)), m):
                yield Digraph(vertices, {e: arcs[a] for e, a in enumerate(combo)})


def _check_thm14(d: Digraph, mutate: bool) -> str | None:
    value, _ = dichromatic.chi(d)
    for k in (1, 2, 3):
        cert = dichromatic.find_order_certificate(d, k)
        exists = cert is not None
        if cert is not None:
            ok, _ = dichromatic.check_order_certificate(d, cert)
            if not ok:
                return f"search returned a failing certificate for k={k}"
        if mutate and k == 2:
            exists = not exists
        if exists != (value <= k):
            return f"chi={value} but certificate-exists={exists} for k={k}"
    return None


def _suite_thm14(rng, count, exhaustive, mutate):
    failures = []
    ran = 0
    if exhaustive:
        for i, d in enumerate(_enumerate_small_digraphs()):
            ran += 1
            reason = _check_thm14(d, mutate)
            if reason:
                failures.append(_failure(i, d, reason, lambda dd: _check_thm14(dd, mutate) is not None))
    else:
        for i in range(count):
            d = random_digraph(rng, max_n=7, max_m=16)
            ran += 1
            reason = _check_thm14(d, mutate)
            if reason:
                failures.append(_failure(i, d, reason, lambda dd: _check_thm14(dd, mutate) is not None))
    return ran, failures


def _check_reduction(d: Digraph, mutate: bool) -> str | None:
    result = dichromatic.reduce_dichromatic(d)
    seq = result.sequence
    if mutate and len(seq) > 0:
        seq = reversion.ReversionSequence(seq.cycles[:-1])
    if reversion.validate(d, seq) is not None:
        return "emitted sequence is invalid"
    if reversion.apply(d, seq) != result.final:
        return "sequence does not reproduce the final digraph"
    counts = result.forward_counts
    if any(b <= a for a, b in zip(counts, counts[1:])):
        return "forward-edge count did not strictly increase"
    if len(result.sequence) > d.num_edges:
        return "more reversals than edges"
    value, _ = dichromatic.chi(result.final)
    if value > 2:
        return f"final digraph has chi={value}"
    if result.coloring.num_colors > 2 or not dichromatic.verify_coloring(result.final, result.coloring):
        return "emitted coloring is not a valid 2-coloring"
    return None


def _suite_reduction(rng, count, exhaustive, mutate):
    failures = []
    ran = 0
    instances: Iterable[Digraph]
    if exhaustive:
        instances = _enumerate_small_digraphs(max_n=4, max_m=12)
    else:
        instances = (random_digraph(rng, max_n=12, max_m=30) for _ in range(count))
    for i, d in enumerate(instances):
        ran += 1
        reason = _check_reduction(d, mutate)
        if reason:
            failures.append(_failure(i, d, reason, lambda dd: _check_reduction(dd, mutate) is not None))
    return ran, failures


def _check_reach_oracle(d: Digraph, mutate: bool) -> str | None:
    oracle = structural.orientation_space_oracle(d, max_edges=8)
    for mask in range(1 << d.num_edges):
        target = oracle.orientation(mask)
        seq = reversion.reachable(d, target)
        found = seq is not None
        if mutate and mask == (1 << d.num_edges) - 1:
            found = not found
        if found != oracle.same_class(0, mask):
            return f"reach and oracle disagree on mask {mask}"
        if seq is not None and reversion.apply(d, seq) != target:
            return f"witness sequence wrong for mask {mask}"
    return None


def _suite_reach_oracle(rng, count, exhaustive, mutate):
    failures = []
    for i in range(count):
        d = random_digraph(rng, max_n=5, max_m=8)
        reason = _check_reach_oracle(d, mutate)
        if reason:
            failures.append(_failure(i, d, reason, lambda dd: dd.num_edges <= 8 and _check_reach_oracle(dd, mutate) is not None))
    return count, failures


def _check_canonicalize(d: Digraph, seq_seed: int, mutate: bool) -> str | None:
    rng = random.Random(seq_seed)
    seq = random_valid_sequence(rng, d)
    diff = reversion.difference(d, seq)
    if not reversion.is_eulerian(d, diff.reversed_edges):
        return "difference of a valid sequence is unbalanced"
    canon = reversion.canonicalize(d, seq)
    if mutate and len(canon) > 0:
        canon = reversion.ReversionSequence(canon.cycles[:-1])
    touches = canon.touch_counts()
    if any(c > 1 for c in touches.values()):
        return "canonical sequence touches an edge twice"
    if not canon.edge_set() <= seq.edge_set():
        return "canonical sequence uses edges outside the original"
    if reversion.apply(d, canon) != reversion.apply(d, seq):
        return "canonical sequence has a different effect"
    return None


def _suite_canonicalize(rng, count, exhaustive, mutate):
    failures = []
    for i in range(count):
        d = random_strong_digraph(rng, max_n=7) if rng.random() < 0.5 else random_digraph(rng, max_n=7, max_m=14)
        seq_seed = rng.randrange(2**32)
        reason = _check_canonicalize(d, seq_seed, mutate)
        if reason:
            failures.append(_failure(i, d, reason, lambda dd: _check_canonicalize(dd, seq_seed, mutate) is not None))
    return count, failures


def _check_menger(d: Digraph, pair_seed: int, mutate: bool) -> str | None:
    rng = random.Random(pair_seed)
    u, v = rng.sample(d.vertices, 2)
    lam = connectivity.edge_connectivity(d, u, v)
    system = connectivity.menger_system(d, u, v)
    assert system.cut is not None
    cut_edges = set(system.cut.out_edges)
    if mutate:
        spare = sorted(set(d.edge_ids) - cut_edges)
        if cut_edges and spare:
            cut_edges = set(sorted(cut_edges)[1:]) | {spare[0]}
        else:
            cut_edges = cut_edges | {max(d.edge_ids, default=0) + 1}
    if not (len(system.paths) == len(cut_edges) == lam):
        return f"sizes disagree: paths={len(system.paths)} cut={len(cut_edges)} lambda={lam}"
    used: set[int] = set()
    for p in system.paths:
        graph.path_vertex_sequence(d, p)
        if used & set(p.edges):
            return "paths are not edge-disjoint"
        used |= set(p.edges)
        if sum(1 for e in p.edges if e in cut_edges) != 1:
            return "a path does not cross the cut exactly once"
    survivors = {e: ends for e, ends in d.edges.items() if e not in cut_edges}
    if graph.reachable_vertex(Digraph(d.vertices, survivors), u, v):
        return "cut does not separate source from target"
    flipped, report = connectivity.flip_separation(d, u, v)
    if graph.reachable_vertex(flipped, u, v) or not report.separated:
        return "target still reachable after the flip"
    return None


def _suite_menger(rng, count, exhaustive, mutate):
    failures = []
    for i in range(count):
        d = random_strong_digraph(rng, max_n=10, extra=10) if rng.random() < 0.6 else random_digraph(rng, max_n=10, max_m=24)
        pair_seed = rng.randrange(2**32)
        reason = _check_menger(d, pair_seed, mutate)
        if reason:
            failures.append(_failure(i, d, reason, lambda dd: _check_menger(dd, pair_seed, mutate) is not None))
    return count, failures


def _check_two_chain(t: Digraph, mutate: bool) -> str | None:
    result = structural.tournament_two_chain(t)
    seq = result.sequence
    if mutate and len(seq) > 0:
        seq = reversion.ReversionSequence(seq.cycles[:-1])
    if reversion.validate(t, seq) is not None:
        return "emitted sequence is invalid"
    final = reversion.apply(t, seq)
    if final != result.final:
        return "sequence does not reach the reported tournament"
    rank = {v: i for i, v in enumerate(result.order)}
    outdeg = {v: len(t.out_edge_ids(v)) for v in t.vertices}
    if list(result.order) != sorted(t.vertices, key=lambda v: (-outdeg[v], v)):
        return "order is not the outdegree order"
    for e in final.edge_ids:
        a, b = final.edges[e]
        if rank[a] % 2 == rank[b] % 2 and rank[a] > rank[b]:
            return f"within-parity edge {e} points backward"
    return None


def _suite_two_chain(rng, count, exhaustive, mutate):
    failures = []
    ran = 0
    if exhaustive:
        for n in range(1, 6):
            pair_count = n * (n - 1) // 2
            vertices = [f"v{i}" for i in range(n)]
            pairs = [(vertices[i], vertices[j]) for i in range(n) for j in range(i + 1, n)]
            for bits in range(1 << pair_count):
                edges = {}
                for e, (a, b) in enumerate(pairs):
                    edges[e] = (a, b) if bits >> e & 1 else (b, a)
                t = Digraph(vertices, edges)
                ran += 1
                reason = _check_two_chain(t, mutate)
                if reason:
                    failures.append(_failure(ran - 1, t, reason))
    else:
        for i in range(count):
            t = graph.gen_tournament(rng.randint(1, 12), rng.randrange(2**32))
            ran += 1
            reason = _check_two_chain(t, mutate)
            if reason:
                failures.append(_failure(i, t, reason))
    return ran, failures


def staged_flip_instance(rng: random.Random) -> tuple[Digraph, DirectedPath, list[DirectedPath]]:
    """A digraph containing one u -> v path plus disjoint v -> u return chains and noise."""
    p_len = rng.randint(1, 3)
    n_returns = rng.randint(1, 3)
    vertices = ["u", "v"] + [f"p{i}" for i in range(p_len - 1)]
    edges: dict[int, tuple[str, str]] = {}
    eid = 0
    chain = ["u"] + [f"p{i}" for i in range(p_len - 1)] + ["v"]
    p_edges = []
    for a, b in zip(chain, chain[1:]):
        edges[eid] = (a, b)
        p_edges.append(eid)
        eid += 1
    p = DirectedPath(tuple(p_edges), "u", "v")
    returns = []
    for r in range(n_returns):
        q_len = rng.randint(1, 3)
        mids = [f"q{r}_{i}" for i in range(q_len - 1)]
        vertices.extend(mids)
        walk = ["v"] + mids + ["u"]
        q_edges = []
        for a, b in zip(walk, walk[1:]):
            edges[eid] = (a, b)
            q_edges.append(eid)
            eid += 1
        returns.append(DirectedPath(tuple(q_edges), "v", "u"))
    for _ in range(rng.randint(0, 3)):
        a, b = rng.sample(vertices, 2)
        edges[eid] = (a, b)
        eid += 1
    return Digraph(vertices, edges), p, returns


def _check_staged_flip(rng_seed: int, mutate: bool) -> str | None:
    rng = random.Random(rng_seed)
    d, p, qs = staged_flip_instance(rng)
    staged = structural.flip_path_staged(d, p, qs)
    expected = {e: 1 for e in p.edges}
    for i, q in enumerate(qs):
        for e in q.edges:
            expected[e] = 1 if i == len(qs) - 1 else 2
    if mutate:
        expected[p.edges[0]] = 2
    if staged.touch_counts != expected:
        return "touch counts disagree with the ledger contract"
    want_diff = frozenset(p.edges) | frozenset(qs[-1].edges)
    if reversion.difference(d, staged.sequence).reversed_edges != want_diff:
        return "net difference is not path plus last return path"
    return None


def _suite_staged_flip(rng, count, exhaustive, mutate):
    failures = []
    for i in range(count):
        seed = rng.randrange(2**32)
        reason = _check_staged_flip(seed, mutate)
        if reason:
            failures.append(_failure(i, None, f"{reason} (instance seed {seed})"))
    return count, failures


SUITES: dict[str, Callable] = {
    "lambda-invariance": _suite_lambda_invariance,
    "outw-preservation": _suite_outw,
    "thm14-equivalence": _suite_thm14,
    "reduction": _suite_reduction,
    "reach-oracle": _suite_reach_oracle,
    "canonicalize": _suite_canonicalize,
    "menger": _suite_menger,
    "two-chain": _suite_two_chain,
    "staged-flip": _suite_staged_flip,
}


def run_suite(name: str, count: int = 100, seed: int = 0, exhaustive: bool = False, mutate: bool = False) -> SuiteReport:
    """Run one named suite; raises InputError for unknown names."""
    if name not in SUITES:
        raise InputError(f"unknown suite {name!r}; available: {', '.join(sorted(SUITES))}")
    rng = random.Random(seed)
    start = time.perf_counter()
    ran, failures = SUITES[name](rng, count, exhaustive, mutate)
    elapsed = time.perf_counter() - start
    return SuiteReport(suite=name, instances=ran, failures=failures, seconds=elapsed)
