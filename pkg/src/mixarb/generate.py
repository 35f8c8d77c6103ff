"""Seeded random instances and exhaustive enumeration of small ones."""

from __future__ import annotations

import itertools
import random
from typing import Iterator, Optional

from .conditions import Instance
from .graph import MixedGraph
from .matroid import (
    FreeMatroid,
    GraphicMatroid,
    LinearGF2Matroid,
    Matroid,
    PartitionMatroid,
    UniformMatroid,
    is_placement_independent,
)


def item_types(n: int) -> list[tuple[str, int, int]]:
    """Possible items on ``n`` labelled vertices: edges ``u<v`` then arcs ``u!=v``."""
    types = [("edge", u, v) for u, v in itertools.combinations(range(n), 2)]
    types += [("arc", u, v) for u, v in itertools.permutations(range(n), 2)]
    return types


def enumerate_graphs(n: int, max_items: int) -> Iterator[MixedGraph]:
    """Every labelled mixed multigraph on ``n`` vertices with at most ``max_items``
    edges plus arcs (items listed in type order)."""
    types = item_types(n)
    for size in range(max_items + 1):
        for combo in itertools.combinations_with_replacement(range(len(types)), size):
            edges = tuple((types[i][1], types[i][2]) for i in combo if types[i][0] == "edge")
            arcs = tuple((types[i][1], types[i][2]) for i in combo if types[i][0] == "arc")
            yield MixedGraph(n, edges, arcs)


def small_matroids() -> list[Matroid]:
    """Matroid configurations for the exhaustive sweep."""
    return [
        FreeMatroid(0),
        FreeMatroid(1),
        FreeMatroid(2),
        UniformMatroid(2, 1),
        PartitionMatroid(2, ((0,), (1,)), (1, 0)),
        PartitionMatroid(3, ((0, 1), (2,)), (1, 1)),
    ]


def enumerate_instances(max_vertices: int = 3, max_items: int = 4,
                        matroids: Optional[list[Matroid]] = None) -> Iterator[Instance]:
    """All (graph, matroid, placement) combinations at the given sizes."""
    ms = small_matroids() if matroids is None else matroids
    for n in range(1, max_vertices + 1):
        for g in enumerate_graphs(n, max_items):
            for m in ms:
                for placement in itertools.product(range(n), repeat=m.size):
                    yield Instance(g, m, placement)


def random_graph(rng: random.Random, n: int, n_edges: int, n_arcs: int) -> MixedGraph:
    """Edges and arcs drawn independently and uniformly over vertex pairs."""
    edges = []
    for _ in range(n_edges):
        u, v = rng.sample(range(n), 2)
        edges.append((min(u, v), max(u, v)))
    arcs = [tuple(rng.sample(range(n), 2)) for _ in range(n_arcs)]
    return MixedGraph(n, tuple(edges), tuple(arcs))


def random_matroid(rng: random.Random, spec: str, size: int) -> Matroid:
    """``spec`` is a family name; parameters are drawn at random."""
    if spec == "free":
        return FreeMatroid(size)
    if spec == "uniform":
        return UniformMatroid(size, rng.randint(min(1, size), size))
    if spec == "partition":
        n_classes = rng.randint(1, max(1, size))
        label = [rng.randrange(n_classes) for _ in range(size)]
        classes = tuple(tuple(e for e in range(size) if label[e] == c) for c in range(n_classes))
        limits = tuple(rng.randint(0, max(1, len(c))) for c in classes)
        return PartitionMatroid(size, classes, limits)
    if spec == "graphic":
        nv = rng.randint(2, max(2, size + 1))
        edges = tuple(tuple(rng.sample(range(nv), 2)) for _ in range(size))
        return GraphicMatroid(size, nv, edges)
    if spec == "linear_gf2":
        rows = rng.randint(1, max(1, size))
        cols = tuple(tuple(rng.randint(0, 1) for _ in range(rows)) for _ in range(size))
        return LinearGF2Matroid(size, cols)
    raise ValueError(f"unknown matroid family {spec!r}")


def random_instance(seed: int, vertices: int, edges: int, arcs: int,
                    matroid: str = "free", elements: Optional[int] = None,
                    max_tries: int = 1000) -> tuple[Instance, int]:
    """Random instance with an M-independent placement.

    Graph, matroid and placement are redrawn until the placement is
    independent; returns the instance and the number of rejected draws.
    """
    rng = random.Random(seed)
    if vertices < 1:
        raise ValueError("need at least one vertex")
    if vertices < 2 and (edges or arcs):
        raise ValueError("edges and arcs need at least two vertices")
    rejected = 0
    for _ in range(max_tries):
        size = elements if elements is not None else rng.randint(1, 3)
        g = random_graph(rng, vertices, edges, arcs)
        m = random_matroid(rng, matroid, size)
        placement = tuple(rng.randrange(vertices) for _ in range(size))
        if is_placement_independent(m, placement):
            return Instance(g, m, placement), rejected
        rejected += 1
    raise RuntimeError(f"no independent placement found in {max_tries} draws")
