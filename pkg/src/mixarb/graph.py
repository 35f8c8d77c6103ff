"""Mixed graphs: undirected edges plus directed arcs on vertices ``0..n-1``.

Vertex sets are int bitmasks throughout (bit ``v`` set means vertex ``v`` is
in the set), which caps graphs at 64 vertices.

Two reachability directions are used and must not be confused:

* ``reach_set(g, X)`` is the set of vertices that can *reach* ``X`` along a
  mixed path (arcs forward, edges either way), ``X`` included.
* ``reach_from(g, v)`` is the set of vertices reachable *from* ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Optional, Sequence

from .bits import MAX_VERTICES, iter_bits, mask_of

Orientation = tuple[tuple[int, int], ...]
"""Direction ``(tail, head)`` for every edge id, in edge-id order."""


class BiSet(NamedTuple):
    outer: int
    inner: int


@dataclass(frozen=True)
class MixedGraph:
    """Immutable mixed multigraph without loops.

    ``edges[i]`` is undirected edge ``i``; ``arcs[j]`` is the arc ``tail -> head``
    with id ``j``. Parallel copies are distinct ids. ``origins[j]`` is the edge
    id an arc was oriented from, or ``None`` for a genuine arc.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()
    arcs: tuple[tuple[int, int], ...] = ()
    origins: tuple[Optional[int], ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        object.__setattr__(self, "arcs", tuple((int(u), int(v)) for u, v in self.arcs))
        for kind, pairs in (("edge", self.edges), ("arc", self.arcs)):
            for i, (u, v) in enumerate(pairs):
                if not (0 <= u < self.n and 0 <= v < self.n):
                    raise ValueError(f"{kind} {i} = ({u}, {v}) has an endpoint out of range")
                if u == v:
                    raise ValueError(f"{kind} {i} = ({u}, {v}) is a loop")
        if not self.origins:
            object.__setattr__(self, "origins", (None,) * len(self.arcs))
        elif len(self.origins) != len(self.arcs):
            raise ValueError("origins must have one entry per arc")

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def check_set(self, x: int) -> int:
        if x < 0 or x >> self.n:
            raise ValueError(f"vertex set {x:#b} not within 0..{self.n - 1}")
        return x

    @cached_property
    def _adjacency(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        # pred[v]: vertices with a step into v; succ[v]: vertices v steps to.
        pred = [0] * self.n
        succ = [0] * self.n
        for u, v in self.edges:
            pred[v] |= 1 << u
            pred[u] |= 1 << v
            succ[u] |= 1 << v
            succ[v] |= 1 << u
        for u, v in self.arcs:
            pred[v] |= 1 << u
            succ[u] |= 1 << v
        return tuple(pred), tuple(succ)

    @staticmethod
    def _closure(start: int, step: Sequence[int]) -> int:
        seen = start
        frontier = start
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= step[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen

    @cached_property
    def reach_to_vertex(self) -> tuple[int, ...]:
        """``reach_to_vertex[v]`` is W({v})."""
        pred = self._adjacency[0]
        return tuple(self._closure(1 << v, pred) for v in range(self.n))

    @cached_property
    def reach_from_vertex(self) -> tuple[int, ...]:
        """``reach_from_vertex[v]`` is the set reachable from ``v``."""
        succ = self._adjacency[1]
        return tuple(self._closure(1 << v, succ) for v in range(self.n))

    @cached_property
    def reach_table(self) -> tuple[int, ...]:
        """W(X) for every mask ``X`` (only built for small ``n``)."""
        wv = self.reach_to_vertex
        table = [0] * (1 << self.n)
        for m in range(1, 1 << self.n):
            low = m & -m
            table[m] = table[m ^ low] | wv[low.bit_length() - 1]
        return tuple(table)

    @cached_property
    def indeg_table(self) -> tuple[int, ...]:
        """Arc in-degree of every mask (edges ignored)."""
        table = [0] * (1 << self.n)
        for u, v in self.arcs:
            bu, bv = 1 << u, 1 << v
            for m in range(1 << self.n):
                if m & bv and not m & bu:
                    table[m] += 1
        return tuple(table)

    @cached_property
    def inner_edge_table(self) -> tuple[int, ...]:
        """Number of edges with both ends in each mask."""
        table = [0] * (1 << self.n)
        for u, v in self.edges:
            both = (1 << u) | (1 << v)
            for m in range(1 << self.n):
                if m & both == both:
                    table[m] += 1
        return tuple(table)


def reach_set(g: MixedGraph, x: int) -> int:
    """W(x): ``x`` plus every vertex with a mixed path into ``x``."""
    g.check_set(x)
    if x == 0:
        return 0
    if g.n <= 12:
        return g.reach_table[x]
    out = 0
    for v in iter_bits(x):
        out |= g.reach_to_vertex[v]
    return out


def reach_from(g: MixedGraph, v: int) -> int:
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    return g.reach_from_vertex[v]


@dataclass(frozen=True)
class Condensation:
    """Strong components in a topological order (sources first)."""

    components: tuple[int, ...]
    successors: tuple[frozenset[int], ...]
    sinks: tuple[bool, ...]
    component_of: tuple[int, ...]

    def sink_components(self) -> list[int]:
        return [c for i, c in enumerate(self.components) if self.sinks[i]]


def strong_components(g: MixedGraph) -> Condensation:
    """Strong components of ``g`` with edges counted as two opposite arcs.

    Components are listed so that every arc between components goes from an
    earlier to a later entry; ``sinks[i]`` marks components with no leaving arc.
    """
    wv = g.reach_to_vertex
    fv = g.reach_from_vertex
    comps: list[int] = []
    assigned = 0
    for v in range(g.n):
        if assigned >> v & 1:
            continue
        c = wv[v] & fv[v]
        comps.append(c)
        assigned |= c
    # a component reaching another has a strictly smaller ancestor set
    anc_size = {c: wv[(c & -c).bit_length() - 1].bit_count() for c in comps}
    comps.sort(key=lambda c: (anc_size[c], c & -c))
    component_of = [0] * g.n
    for i, c in enumerate(comps):
        for v in iter_bits(c):
            component_of[v] = i
    succ: list[set[int]] = [set() for _ in comps]
    for u, v in g.arcs:
        cu, cv = component_of[u], component_of[v]
        if cu != cv:
            succ[cu].add(cv)
    return Condensation(
        components=tuple(comps),
        successors=tuple(frozenset(s) for s in succ),
        sinks=tuple(not s for s in succ),
        component_of=tuple(component_of),
    )


def atoms(g: MixedGraph, roots: Sequence[int]) -> list[int]:
    """Classes of vertices reached by exactly the same roots.

    Returned in order of their smallest vertex.
    """
    if not roots:
        raise ValueError("roots must be nonempty")
    reach = [reach_from(g, r) for r in roots]
    classes: dict[tuple[bool, ...], int] = {}
    for v in range(g.n):
        sig = tuple(bool(u >> v & 1) for u in reach)
        classes[sig] = classes.get(sig, 0) | (1 << v)
    return sorted(classes.values(), key=lambda c: c & -c)


def indeg_set(g: MixedGraph, x: int) -> int:
    """Number of arcs entering ``x`` from outside; edges never count."""
    g.check_set(x)
    if x == 0:
        raise ValueError("in-degree of the empty set is undefined")
    if g.n <= 12:
        return g.indeg_table[x]
    return sum(1 for u, v in g.arcs if x >> v & 1 and not x >> u & 1)


def indeg_biset(g: MixedGraph, b: BiSet) -> int:
    """Arcs from outside ``b.outer`` into ``b.inner``."""
    outer, inner = g.check_set(b.outer), g.check_set(b.inner)
    if inner & ~outer:
        raise ValueError("bi-set inner set is not contained in the outer set")
    return sum(1 for u, v in g.arcs if inner >> v & 1 and not outer >> u & 1)


def check_subpartition(parts: Sequence[int]) -> int:
    """Validate pairwise disjoint nonempty parts; return their union."""
    union = 0
    for p in parts:
        if p <= 0:
            raise ValueError("subpartition parts must be nonempty")
        if union & p:
            raise ValueError("subpartition parts overlap")
        union |= p
    return union


def subpartition_edge_count(g: MixedGraph, parts: Sequence[int]) -> int:
    """Edges joining two different parts, or a part to the uncovered rest."""
    union = check_subpartition(parts)
    g.check_set(union)
    label = {}
    for i, p in enumerate(parts):
        for v in iter_bits(p):
            label[v] = i
    count = 0
    for u, v in g.edges:
        lu, lv = label.get(u), label.get(v)
        if lu is None and lv is None:
            continue
        if lu != lv:
            count += 1
    return count


def apply_orientation(g: MixedGraph, orientation: Orientation) -> MixedGraph:
    """Digraph with the original arcs (same ids) followed by the oriented edges.

    The arc for edge ``i`` gets id ``len(g.arcs) + i`` and ``origins`` entry ``i``.
    """
    if len(orientation) != len(g.edges):
        raise ValueError(
            f"orientation has {len(orientation)} directions for {len(g.edges)} edges")
    new_arcs = list(g.arcs)
    for i, ((a, b), (t, h)) in enumerate(zip(g.edges, orientation)):
        if {a, b} != {t, h} or t == h:
            raise ValueError(f"direction {(t, h)} does not match edge {i} = {(a, b)}")
        new_arcs.append((t, h))
    origins = tuple(g.origins) + tuple(range(len(g.edges)))
    return MixedGraph(g.n, (), tuple(new_arcs), origins)


def vertex_set(*vertices: int) -> int:
    return mask_of(vertices)
