from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

from digrev.graph import Digraph

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def triangle() -> Digraph:
    return Digraph(["a", "b", "c"], {0: ("a", "b"), 1: ("b", "c"), 2: ("c", "a")})


@pytest.fixture
def two_cycle() -> Digraph:
    return Digraph(["u", "v"], {0: ("u", "v"), 1: ("v", "u")})


@pytest.fixture
def bik3() -> Digraph:
    """Both directions of every pair on {u, v, w}; dichromatic number 3."""
    return Digraph(
        ["u", "v", "w"],
        {0: ("u", "v"), 1: ("v", "u"), 2: ("v", "w"), 3: ("w", "v"), 4: ("w", "u"), 5: ("u", "w")},
    )


@pytest.fixture
def double_up() -> Digraph:
    """Two u -> v edges and one v -> u edge; the all-toward-u orientation is unreachable."""
    return Digraph(["u", "v"], {0: ("u", "v"), 1: ("u", "v"), 2: ("v", "u")})


@st.composite
def digraphs(draw, max_n: int = 6, max_m: int = 12, multi: bool = True):
    n = draw(st.integers(min_value=1, max_value=max_n))
    vertices = [f"v{i}" for i in range(n)]
    if n == 1:
        return Digraph(vertices, {})
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 2))
    raw = draw(st.lists(pairs, max_size=max_m))
    edges = {}
    seen_arcs = set()
    for eid, (t, h) in enumerate(raw):
        if h >= t:
            h += 1
        if not multi and (t, h) in seen_arcs:
            continue
        seen_arcs.add((t, h))
        edges[eid] = (vertices[t], vertices[h])
    return Digraph(vertices, edges)
