"""Matroid rank oracles and root placements.

Element subsets are int bitmasks over element ids ``0..size-1``. Five closed
form families are bundled: free, uniform, partition, graphic and binary
linear (columns of a 0/1 matrix over GF(2)).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .bits import iter_bits


@dataclass(frozen=True)
class Matroid:
    size: int
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    kind = "abstract"

    def __post_init__(self) -> None:
        if self.size < 0:
            raise ValueError("ground set size must be nonnegative")

    @property
    def ground(self) -> int:
        return (1 << self.size) - 1

    def rank(self, x: int) -> int:
        """Rank of the element subset ``x`` (a bitmask)."""
        r = self._cache.get(x)
        if r is None:
            if x < 0 or x >> self.size:
                raise ValueError(f"element set {x:#b} outside ground set of size {self.size}")
            r = self._rank(x)
            self._cache[x] = r
        return r

    def _rank(self, x: int) -> int:
        raise NotImplementedError

    def is_independent(self, x: int) -> bool:
        return self.rank(x) == x.bit_count()

    def params(self) -> dict:
        return {}


@dataclass(frozen=True)
class FreeMatroid(Matroid):
    kind = "free"

    def _rank(self, x: int) -> int:
        return x.bit_count()


@dataclass(frozen=True)
class UniformMatroid(Matroid):
    k: int = 0
    kind = "uniform"

    def __post_init__(self) -> None:
        super().__post_init__()
        if not 0 <= self.k <= self.size:
            raise ValueError(f"uniform rank {self.k} must lie in 0..{self.size}")

    def _rank(self, x: int) -> int:
        return min(x.bit_count(), self.k)

    def params(self) -> dict:
        return {"rank": self.k}


@dataclass(frozen=True)
class PartitionMatroid(Matroid):
    """``classes`` partition the ground set; at most ``limits[i]`` from class i."""

    classes: tuple[tuple[int, ...], ...] = ()
    limits: tuple[int, ...] = ()
    kind = "partition"

    def __post_init__(self) -> None:
        super().__post_init__()
        object.__setattr__(self, "classes", tuple(tuple(sorted(c)) for c in self.classes))
        object.__setattr__(self, "limits", tuple(self.limits))
        if len(self.classes) != len(self.limits):
            raise ValueError("partition matroid needs one limit per class")
        if any(lim < 0 for lim in self.limits):
            raise ValueError("partition limits must be nonnegative")
        seen = 0
        for c in self.classes:
            for e in c:
                if not 0 <= e < self.size:
                    raise ValueError(f"partition class element {e} out of range")
                if seen >> e & 1:
                    raise ValueError(f"element {e} appears in two partition classes")
                seen |= 1 << e
        if seen != self.ground:
            raise ValueError("partition classes must cover the ground set")
        masks = []
        for c in self.classes:
            m = 0
            for e in c:
                m |= 1 << e
            masks.append(m)
        object.__setattr__(self, "_masks", tuple(masks))

    def _rank(self, x: int) -> int:
        return sum(min((x & m).bit_count(), lim) for m, lim in zip(self._masks, self.limits))

    def params(self) -> dict:
        return {"classes": [list(c) for c in self.classes], "limits": list(self.limits)}


@dataclass(frozen=True)
class GraphicMatroid(Matroid):
    """Cycle matroid of an auxiliary multigraph; element ``i`` is ``graph_edges[i]``."""

    graph_vertices: int = 0
    graph_edges: tuple[tuple[int, int], ...] = ()
    kind = "graphic"

    def __post_init__(self) -> None:
        object.__setattr__(self, "graph_edges", tuple((int(a), int(b)) for a, b in self.graph_edges))
        if self.size != len(self.graph_edges):
            raise ValueError("graphic matroid size must equal its number of edges")
        super().__post_init__()
        for a, b in self.graph_edges:
            if not (0 <= a < self.graph_vertices and 0 <= b < self.graph_vertices):
                raise ValueError(f"graphic edge ({a}, {b}) out of range")

    def _rank(self, x: int) -> int:
        parent = list(range(self.graph_vertices))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        r = 0
        for e in iter_bits(x):
            a, b = self.graph_edges[e]
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                r += 1
        return r

    def params(self) -> dict:
        return {"vertices": self.graph_vertices, "edges": [list(e) for e in self.graph_edges]}


@dataclass(frozen=True)
class LinearGF2Matroid(Matroid):
    """Column matroid of a 0/1 matrix over GF(2).

    ``columns[i]`` is the column of element ``i`` as a tuple of 0/1 entries.
    """

    columns: tuple[tuple[int, ...], ...] = ()
    kind = "linear_gf2"

    def __post_init__(self) -> None:
        object.__setattr__(self, "columns", tuple(tuple(int(b) for b in c) for c in self.columns))
        if self.size != len(self.columns):
            raise ValueError("linear matroid size must equal its number of columns")
        super().__post_init__()
        lengths = {len(c) for c in self.columns}
        if len(lengths) > 1:
            raise ValueError("matrix columns must all have the same length")
        if any(b not in (0, 1) for c in self.columns for b in c):
            raise ValueError("matrix entries must be 0 or 1")
        packed = tuple(sum(b << i for i, b in enumerate(c)) for c in self.columns)
        object.__setattr__(self, "_packed", packed)

    def _rank(self, x: int) -> int:
        # xor basis keyed by leading bit
        basis: dict[int, int] = {}
        for e in iter_bits(x):
            v = self._packed[e]
            while v:
                lead = v.bit_length() - 1
                if lead not in basis:
                    basis[lead] = v
                    break
                v ^= basis[lead]
        return len(basis)

    def params(self) -> dict:
        return {"columns": [list(c) for c in self.columns]}


def rank(m: Matroid, x: int) -> int:
    return m.rank(x)


def is_independent(m: Matroid, x: int) -> bool:
    return m.is_independent(x)


Placement = tuple[int, ...]
"""``placement[s]`` is the vertex element ``s`` is rooted at."""


def preimage(placement: Sequence[int], x: int) -> int:
    """Elements placed inside the vertex set ``x``."""
    out = 0
    for s, v in enumerate(placement):
        if x >> v & 1:
            out |= 1 << s
    return out


def vertex_elements(placement: Sequence[int], n: int) -> list[int]:
    """Per-vertex preimage masks."""
    out = [0] * n
    for s, v in enumerate(placement):
        out[v] |= 1 << s
    return out


def is_placement_independent(m: Matroid, placement: Sequence[int]) -> bool:
    """True iff the elements at each vertex form an independent set."""
    by_vertex: dict[int, int] = {}
    for s, v in enumerate(placement):
        by_vertex[v] = by_vertex.get(v, 0) | (1 << s)
    return all(m.is_independent(x) for x in by_vertex.values())


def matroid_from_spec(kind: str, size: int, params: dict) -> Matroid:
    """Build a bundled matroid from a family tag and parameter dict."""
    if kind == "free":
        return FreeMatroid(size)
    if kind == "uniform":
        return UniformMatroid(size, int(params["rank"]))
    if kind == "partition":
        return PartitionMatroid(size, tuple(tuple(c) for c in params["classes"]),
                                tuple(int(v) for v in params["limits"]))
    if kind == "graphic":
        edges = tuple(tuple(e) for e in params["edges"])
        return GraphicMatroid(len(edges), int(params["vertices"]), edges)
    if kind == "linear_gf2":
        cols = tuple(tuple(c) for c in params["columns"])
        return LinearGF2Matroid(len(cols), cols)
    raise ValueError(f"unknown matroid type {kind!r}")
