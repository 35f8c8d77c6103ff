from pathlib import Path

import pytest
from hypothesis import strategies as st

from mixarb.conditions import Instance
from mixarb.graph import MixedGraph
from mixarb.matroid import (
    FreeMatroid,
    GraphicMatroid,
    LinearGF2Matroid,
    PartitionMatroid,
    UniformMatroid,
)

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA


def _pair(n):
    return st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])


@st.composite
def mixed_graphs(draw, max_n=5, max_edges=4, max_arcs=5, min_n=1):
    n = draw(st.integers(min_n, max_n))
    if n < 2:
        return MixedGraph(n)
    edges = draw(st.lists(_pair(n), max_size=max_edges))
    arcs = draw(st.lists(_pair(n), max_size=max_arcs))
    return MixedGraph(n, tuple(edges), tuple(arcs))


@st.composite
def matroids(draw, size):
    kind = draw(st.sampled_from(["free", "uniform", "partition", "graphic", "linear_gf2"]))
    if kind == "free":
        return FreeMatroid(size)
    if kind == "uniform":
        return UniformMatroid(size, draw(st.integers(0, size)))
    if kind == "partition":
        labels = draw(st.lists(st.integers(0, 2), min_size=size, max_size=size))
        used = sorted(set(labels))
        classes = tuple(tuple(e for e in range(size) if labels[e] == c) for c in used)
        limits = tuple(draw(st.integers(0, len(c))) for c in classes)
        return PartitionMatroid(size, classes, limits)
    if kind == "graphic":
        nv = draw(st.integers(2, 4))
        edges = draw(st.lists(st.tuples(st.integers(0, nv - 1), st.integers(0, nv - 1)),
                              min_size=size, max_size=size))
        return GraphicMatroid(size, nv, tuple(edges))
    rows = draw(st.integers(1, 3))
    cols = draw(st.lists(st.tuples(*[st.integers(0, 1)] * rows), min_size=size, max_size=size))
    return LinearGF2Matroid(size, tuple(cols))


@st.composite
def instances(draw, max_n=4, max_edges=3, max_arcs=4, max_elements=3, digraph=False):
    g = draw(mixed_graphs(max_n, 0 if digraph else max_edges, max_arcs))
    size = draw(st.integers(0, max_elements))
    m = draw(matroids(size))
    placement = tuple(draw(st.lists(st.integers(0, g.n - 1), min_size=size, max_size=size)))
    return Instance(g, m, placement)


def mutate(pk, kind, rng):
    """Break a packing: delete an item, duplicate one into another tree, or move a root."""
    from dataclasses import replace

    from mixarb.packing import Packing

    trees = list(pk.arborescences)
    with_items = [i for i, t in enumerate(trees) if t.items]
    if kind == "delete":
        i = rng.choice(with_items)
        items = list(trees[i].items)
        items.pop(rng.randrange(len(items)))
        trees[i] = replace(trees[i], items=tuple(items))
    elif kind == "duplicate":
        i = rng.choice(with_items)
        item = rng.choice(trees[i].items)
        j = rng.choice([k for k in range(len(trees)) if k != i] or [i])
        trees[j] = replace(trees[j], items=trees[j].items + (item,))
    elif kind == "reroot":
        i = rng.randrange(len(trees))
        n = max(trees[i].vertices.bit_length(), trees[i].root + 2)
        trees[i] = replace(trees[i], root=rng.choice([v for v in range(n) if v != trees[i].root]))
    else:
        raise ValueError(kind)
    return Packing(tuple(trees))
