from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import digraphs
from digrev import graph
from digrev.errors import InputError
from digrev.graph import Cut, Digraph, DirectedCycle, DirectedPath


class TestDigraph:
    def test_rejects_loops(self):
        with pytest.raises(InputError):
            Digraph(["a"], {0: ("a", "a")})

    def test_rejects_unknown_endpoint(self):
        with pytest.raises(InputError):
            Digraph(["a", "b"], {0: ("a", "z")})

    def test_rejects_bad_edge_id(self):
        with pytest.raises(InputError):
            Digraph(["a", "b"], {-1: ("a", "b")})

    def test_vertices_sorted_and_deduped(self):
        d = Digraph(["b", "a", "a"], {})
        assert d.vertices == ("a", "b")

    def test_reorient_shares_ids_and_endpoints(self, triangle):
        r = triangle.reorient([0, 2])
        assert r.edges[0] == ("b", "a")
        assert r.edges[1] == ("b", "c")
        assert r.edges[2] == ("a", "c")
        assert r.is_reorientation_of(triangle)
        assert r != triangle

    def test_reorient_unknown_id(self, triangle):
        with pytest.raises(InputError):
            triangle.reorient([9])

    def test_equality_and_hash(self, triangle):
        same = Digraph(["c", "b", "a"], {2: ("c", "a"), 0: ("a", "b"), 1: ("b", "c")})
        assert same == triangle
        assert hash(same) == hash(triangle)

    def test_adjacency_queries(self, triangle):
        assert triangle.out_edge_ids("a") == (0,)
        assert triangle.in_edge_ids("a") == (2,)
        assert triangle.ends(0) == frozenset({"a", "b"})
        with pytest.raises(InputError):
            triangle.out_edge_ids("zzz")


class TestStrongComponents:
    def test_dag_has_singletons(self):
        d = Digraph(["a", "b", "c"], {0: ("a", "b"), 1: ("b", "c")})
        assert graph.strong_components(d) == (("a",), ("b",), ("c",))

    def test_two_cycle_merges(self, two_cycle):
        assert graph.strong_components(two_cycle) == (("u", "v"),)

    def test_ladder4_single_component_matches_oracle(self):
        lad = graph.gen_ladder(4)
        assert graph.strong_components(lad) == oracles.strong_components_oracle(lad)
        assert graph.strong_components(lad) == (("0", "1", "2", "3", "4"),)

    @given(digraphs(max_n=6, max_m=12))
    @settings(max_examples=80, deadline=None)
    def test_matches_closure_oracle(self, d):
        assert graph.strong_components(d) == oracles.strong_components_oracle(d)

    @given(digraphs(max_n=5, max_m=8), st.randoms(use_true_random=False))
    @settings(max_examples=60, deadline=None)
    def test_adding_edge_never_splits_a_class(self, d, rng):
        if len(d.vertices) < 2:
            return
        t, h = rng.sample(d.vertices, 2)
        eid = max(d.edge_ids, default=-1) + 1
        bigger = Digraph(d.vertices, {**dict(d.edges), eid: (t, h)})
        merged = graph.strong_components(bigger)
        for comp in graph.strong_components(d):
            assert any(set(comp) <= set(c) for c in merged)


class TestReachability:
    def test_triangle_examples(self, triangle):
        assert graph.reachable_vertex(triangle, "a", "c")
        assert graph.reachable_vertex(triangle, "a", "a")

    def test_path_backwards_false(self):
        d = Digraph(["a", "b", "c"], {0: ("a", "b"), 1: ("b", "c")})
        assert not graph.reachable_vertex(d, "c", "a")

    def test_ladder_back_arcs_compose(self):
        lad = graph.gen_ladder(4)
        assert graph.reachable_vertex(lad, "4", "0")

    def test_unknown_vertex(self, triangle):
        with pytest.raises(InputError):
            graph.reachable_vertex(triangle, "a", "zzz")

    def test_exhaustive_small_vs_matrix_squaring(self):
        # every labeled digraph on 3 vertices
        verts = ["a", "b", "c"]
        arcs = [(t, h) for t in verts for h in verts if t != h]
        for bits in range(1 << len(arcs)):
            d = Digraph(verts, {e: arcs[i] for e, i in enumerate(i for i in range(len(arcs)) if bits >> i & 1)})
            closure = oracles.transitive_closure(d)
            for u in verts:
                for v in verts:
                    assert graph.reachable_vertex(d, u, v) == closure[(u, v)]

    @given(digraphs(max_n=6, max_m=14))
    @settings(max_examples=80, deadline=None)
    def test_random_vs_matrix_squaring(self, d):
        closure = oracles.transitive_closure(d)
        for u in d.vertices:
            for v in d.vertices:
                assert graph.reachable_vertex(d, u, v) == closure[(u, v)]


class TestOutEdges:
    def test_single_vertex_side(self, triangle):
        cut = graph.out_edges(triangle, {"a"})
        assert cut == Cut(side=frozenset({"a"}), out_edges=frozenset({0}))

    def test_full_side_has_no_out_edges(self, triangle):
        assert graph.out_edges(triangle, triangle.vertices).out_edges == frozenset()

    def test_parallel_edges_both_counted(self):
        d = Digraph(["u", "v"], {0: ("u", "v"), 1: ("u", "v")})
        assert graph.out_edges(d, {"u"}).out_edges == frozenset({0, 1})


class TestGenerators:
    def test_ladder_minimum_is_triangle(self):
        d = graph.gen_ladder(2)
        assert dict(d.edges) == {0: ("0", "1"), 1: ("1", "2"), 2: ("2", "0")}

    def test_ladder_rejects_small_n(self):
        with pytest.raises(InputError):
            graph.gen_ladder(1)

    def test_ladder4_shape_and_strength(self):
        d = graph.gen_ladder(4)
        forward = [e for e, (t, h) in d.edges.items() if int(h) == int(t) + 1]
        back = [e for e, (t, h) in d.edges.items() if int(t) == int(h) + 2]
        assert len(forward) == 4 and len(back) == 3 and d.num_edges == 7
        closure = oracles.transitive_closure(d)
        assert all(closure[(u, v)] for u in d.vertices for v in d.vertices)

    def test_ladder_two_vertex_connected(self):
        assert oracles.is_two_vertex_connected(graph.gen_ladder(4))
        assert oracles.is_two_vertex_connected(graph.gen_ladder(9))

    def test_ladder_cycles_per_edge_bounded(self):
        # The per-edge simple-cycle count must stabilize as n grows: the
        # cycle structure is local, so the bound is independent of n.
        maxima = {}
        for n in range(4, 11):
            lad = graph.gen_ladder(n)
            per_edge = {e: 0 for e in lad.edge_ids}
            for cyc in oracles.simple_cycle_edge_sets(lad):
                for e in cyc:
                    per_edge[e] += 1
            assert all(count >= 1 for count in per_edge.values()), "every edge lies on a cycle"
            maxima[n] = max(per_edge.values())
        assert len(set(maxima.values())) == 1, maxima
        assert maxima[10] <= 3

    def test_random_deterministic(self):
        a = graph.gen_random(5, 9, seed=42)
        b = graph.gen_random(5, 9, seed=42)
        assert a == b
        assert a != graph.gen_random(5, 9, seed=43) or a.num_edges == 0

    def test_random_edgeless(self):
        d = graph.gen_random(5, 0, seed=1)
        assert d.num_edges == 0 and len(d.vertices) == 5

    def test_random_rejects_bad_args(self):
        with pytest.raises(InputError):
            graph.gen_random(0, 0, seed=1)
        with pytest.raises(InputError):
            graph.gen_random(1, 3, seed=1)

    def test_tournament_one_edge_per_pair(self):
        t = graph.gen_tournament(3, seed=0)
        assert t.num_edges == 3
        assert {t.ends(e) for e in t.edge_ids} == {
            frozenset({"v0", "v1"}),
            frozenset({"v0", "v2"}),
            frozenset({"v1", "v2"}),
        }
        assert t == graph.gen_tournament(3, seed=0)


class TestSimpleCycles:
    def test_triangle(self, triangle):
        assert [c.edges for c in graph.simple_cycles(triangle)] == [(0, 1, 2)]

    def test_two_cycle_and_parallel(self, double_up):
        cycles = {frozenset(c.edges) for c in graph.simple_cycles(double_up)}
        assert cycles == {frozenset({0, 2}), frozenset({1, 2})}

    @given(digraphs(max_n=5, max_m=8))
    @settings(max_examples=60, deadline=None)
    def test_matches_subset_oracle(self, d):
        ours = {frozenset(c.edges) for c in graph.simple_cycles(d)}
        assert ours == oracles.simple_cycle_edge_sets(d)

    @given(digraphs(max_n=5, max_m=8))
    @settings(max_examples=30, deadline=None)
    def test_every_cycle_is_valid(self, d):
        for cyc in graph.simple_cycles(d):
            verts = graph.cycle_vertex_sequence(d, cyc)
            assert len(verts) == len(cyc.edges) >= 2


class TestSerialization:
    def test_json_round_trip_bit_exact(self, bik3):
        text = graph.to_json(bik3)
        again = graph.from_json(text)
        assert again == bik3
        assert graph.to_json(again) == text

    def test_json_canonicalizes_noncanonical_input(self):
        messy = '{"edges": [{"head": "b", "id": 1, "tail": "a"}], "vertices": ["b", "a"]}'
        d = graph.from_json(messy)
        canonical = graph.to_json(d)
        assert graph.to_json(graph.from_json(canonical)) == canonical

    def test_json_schema_errors(self):
        with pytest.raises(InputError):
            graph.from_json('["not", "an", "object"]')
        with pytest.raises(InputError):
            graph.from_json('{"vertices": ["a"], "edges": [{"id": 0}]}')
        with pytest.raises(InputError):
            graph.from_json('{"vertices": ["a", "b"], "edges": [], "extra": 1}')
        with pytest.raises(InputError):
            graph.from_json(
                '{"vertices": ["a", "b"], "edges": ['
                '{"id": 0, "tail": "a", "head": "b"}, {"id": 0, "tail": "b", "head": "a"}]}'
            )

    def test_dot_export(self, triangle):
        dot = graph.to_dot(triangle)
        assert dot.startswith("digraph {")
        assert '"a" -> "b" [label="0"];' in dot
        assert dot.count("->") == 3

    def test_dot_escapes_quotes(self):
        d = Digraph(['sa"y', "b"], {0: ('sa"y', "b")})
        assert '\\"' in graph.to_dot(d)


class TestPathAndCycleValidation:
    def test_cycle_vertex_sequence(self, triangle):
        assert graph.cycle_vertex_sequence(triangle, DirectedCycle((0, 1, 2))) == ("a", "b", "c")
        with pytest.raises(InputError):
            graph.cycle_vertex_sequence(triangle, DirectedCycle((0, 1)))
        with pytest.raises(InputError):
            graph.cycle_vertex_sequence(triangle, DirectedCycle((0,)))

    def test_two_edge_cycle_needs_distinct_ids(self, two_cycle):
        assert graph.cycle_vertex_sequence(two_cycle, DirectedCycle((0, 1))) == ("u", "v")

    def test_path_vertex_sequence(self, triangle):
        p = DirectedPath((0, 1), "a", "c")
        assert graph.path_vertex_sequence(triangle, p) == ("a", "b", "c")
        with pytest.raises(InputError):
            graph.path_vertex_sequence(triangle, DirectedPath((0, 1), "a", "b"))
        with pytest.raises(InputError):
            graph.path_vertex_sequence(triangle, DirectedPath((0, 2), "a", "a"))
