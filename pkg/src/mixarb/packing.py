"""Packing solvers, the packing verifier and a brute-force existence oracle.

A packing holds one mixed arborescence per matroid element. It is valid when
the arborescences are item-disjoint, element ``s`` is rooted at ``pi(s)``, and
at every vertex ``v`` the elements whose arborescence contains ``v`` form an
independent set of size ``r(S_W(v))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Union

from .bits import iter_bits, nonempty_submasks
from .conditions import (
    Certificate,
    ComponentDemand,
    Instance,
    MAX_COMPONENT_VERTICES,
    best_subpartition,
    check_kiraly,
)
from .graph import MixedGraph, apply_orientation, reach_set
from .orientation import CoverObstruction, cover_orientation


class Item(NamedTuple):
    """An arc, or an edge traversed ``tail -> head``."""

    kind: str
    id: int
    tail: int
    head: int


@dataclass(frozen=True)
class Arborescence:
    element: int
    root: int
    items: tuple[Item, ...]
    vertices: int


@dataclass(frozen=True)
class Packing:
    arborescences: tuple[Arborescence, ...]

    def elements_at(self, v: int) -> int:
        out = 0
        for t in self.arborescences:
            if t.vertices >> v & 1:
                out |= 1 << t.element
        return out


def vertex_targets(inst: Instance, reach_graph: Optional[MixedGraph] = None) -> list[int]:
    """r(S_W(v)) for every vertex ``v``."""
    g = reach_graph or inst.graph
    return [inst.rank_of_vertices(g.reach_to_vertex[v]) for v in range(inst.n)]


class _DigraphSearch:
    """Backtracking over "grow T_s along an unused arc" moves.

    A deficient vertex ``v`` is chosen and every way some element could start
    its path towards ``v`` is tried. Any packing consistent with the current
    partial trees is reachable this way, so the search is complete.
    """

    def __init__(self, inst: Instance, reach_graph: MixedGraph):
        self.g = inst.graph
        self.m = inst.matroid
        self.n = inst.n
        self.k = inst.matroid.size
        self.arcs = self.g.arcs
        self.targets = vertex_targets(inst, reach_graph)
        self.trees = [1 << v for v in inst.placement]
        self.tree_arcs = [0] * self.k
        self.at = list(inst.elements_at)
        self.used = 0
        self.failed: set[tuple[int, ...]] = set()
        self.subsets = range(1, 1 << self.n)
        # r(S_W(X)) for every X, W taken in the reach graph
        self.support = [0] + [inst.rank_of_vertices(reach_set(reach_graph, x))
                              for x in self.subsets]

    def _residual_ok(self) -> bool:
        # every element still to enter X needs its own unused arc into X
        free = [(t, h) for i, (t, h) in enumerate(self.arcs) if not self.used >> i & 1]
        for x in self.subsets:
            need = self.support[x]
            if not need:
                continue
            touching = 0
            for v in iter_bits(x):
                touching |= self.at[v]
            need -= self.m.rank(touching)
            if need <= 0:
                continue
            entering = 0
            for t, h in free:
                if x >> h & 1 and not x >> t & 1:
                    entering += 1
                    if entering >= need:
                        break
            if entering < need:
                return False
        return True

    def _reach_unused(self, v: int) -> int:
        seen = 1 << v
        frontier = seen
        while frontier:
            nxt = 0
            for i, (t, h) in enumerate(self.arcs):
                if not self.used >> i & 1 and frontier >> h & 1 and not seen >> t & 1:
                    nxt |= 1 << t
            seen |= nxt
            frontier = nxt
        return seen

    def _moves(self, v: int) -> list[tuple[int, int, int, int]]:
        upstream = self._reach_unused(v)
        out = []
        for i, (a, b) in enumerate(self.arcs):
            if self.used >> i & 1 or not upstream >> b & 1:
                continue
            for s in range(self.k):
                bit = 1 << s
                tree = self.trees[s]
                if not tree >> a & 1 or tree >> b & 1 or self.at[v] & bit:
                    continue
                if not self.m.is_independent(self.at[v] | bit):
                    continue
                if b != v and (self.at[b].bit_count() >= self.targets[b]
                               or not self.m.is_independent(self.at[b] | bit)):
                    continue
                direct = 0 if b == v else 1
                remaining = self.targets[b] - self.at[b].bit_count()
                out.append((direct, -remaining, i, s))
        out.sort()
        return out

    def run(self) -> bool:
        deficient = [v for v in range(self.n) if self.at[v].bit_count() < self.targets[v]]
        if not deficient:
            return True
        key = tuple(self.tree_arcs)
        if key in self.failed or not self._residual_ok():
            self.failed.add(key)
            return False
        best_v, best_moves = None, None
        for v in deficient:
            mv = self._moves(v)
            if best_moves is None or len(mv) < len(best_moves):
                best_v, best_moves = v, mv
                if not mv:
                    break
        for _, _, i, s in best_moves:
            a, b = self.arcs[i]
            bit = 1 << s
            self.used |= 1 << i
            self.tree_arcs[s] |= 1 << i
            self.trees[s] |= 1 << b
            self.at[b] |= bit
            if self.run():
                return True
            self.at[b] ^= bit
            self.trees[s] ^= 1 << b
            self.tree_arcs[s] ^= 1 << i
            self.used ^= 1 << i
        self.failed.add(key)
        return False


def _search_packing(inst: Instance, reach_graph: Optional[MixedGraph]) -> Optional[Packing]:
    search = _DigraphSearch(inst, reach_graph or inst.graph)
    if not search.run():
        return None
    g = inst.graph
    trees = []
    for s in range(inst.matroid.size):
        items = tuple(Item("arc", i, *g.arcs[i]) for i in iter_bits(search.tree_arcs[s]))
        trees.append(Arborescence(s, inst.placement[s], items, search.trees[s]))
    return Packing(tuple(trees))


def pack_digraph(inst: Instance, reach_graph: Optional[MixedGraph] = None
                 ) -> Union[Packing, Certificate]:
    """Maximal M-independent arborescence packing of a digraph instance.

    Returns the Kiraly-condition certificate when the instance is infeasible.
    ``reach_graph`` supplies W for the per-vertex targets; pass the mixed graph
    when the digraph is one of its orientations.
    """
    if inst.graph.edges:
        raise ValueError("pack_digraph needs a graph without undirected edges")
    cert = check_kiraly(inst, reach_graph=reach_graph)
    if cert is not None:
        return cert
    packing = _search_packing(inst, reach_graph)
    if packing is None:
        raise RuntimeError("search exhausted on an instance satisfying the cut condition")
    return packing


def orient_components(inst: Instance):
    """Orientation of every edge covering each component's f_C.

    Returns the full orientation, or the subpartition ("iii") certificate for the
    first component (in topological order) that cannot be covered.
    """
    g = inst.graph
    cond = inst.condensation
    directions: list[Optional[tuple[int, int]]] = [None] * len(g.edges)
    for comp in cond.components:
        if comp.bit_count() > MAX_COMPONENT_VERTICES:
            raise ValueError(f"strong component with {comp.bit_count()} vertices exceeds "
                             f"the limit of {MAX_COMPONENT_VERTICES}")
        ids = [i for i, (a, b) in enumerate(g.edges) if comp >> a & 1]
        fc = ComponentDemand.build(inst, comp)
        got = cover_orientation(comp, [g.edges[i] for i in ids], fc)
        if isinstance(got, CoverObstruction):
            val, parts = best_subpartition(g, comp, fc)
            assert val > 0, "orientation obstruction without a subpartition violation"
            return Certificate("deficient-subpartition", "iii", val, component=comp,
                               parts=parts,
                               closed_sets=tuple(fc.maximizers[p] for p in parts),
                               part_values=tuple(fc.values[p] for p in parts))
        for i, d in zip(ids, got):
            directions[i] = d
    return tuple(directions)


def pack_mixed(inst: Instance) -> Union[Packing, Certificate]:
    """Maximal M-independent packing of mixed arborescences.

    Each strong component's edges are oriented to cover its f_C, then the
    resulting digraph is packed with targets taken from the mixed graph.
    """
    g = inst.graph
    v = inst.dependent_vertex()
    if v is not None:
        elems = inst.elements_at[v]
        return Certificate("dependent-placement", "iii",
                           elems.bit_count() - inst.matroid.rank(elems), vertex=v)
    oriented = orient_components(inst)
    if isinstance(oriented, Certificate):
        return oriented
    digraph = apply_orientation(g, oriented)
    dinst = Instance(digraph, inst.matroid, inst.placement)
    result = pack_digraph(dinst, reach_graph=g)
    assert not isinstance(result, Certificate), (
        f"oriented digraph violates the cut condition: {result}")
    trees = []
    for t in result.arborescences:
        items = []
        for it in t.items:
            origin = digraph.origins[it.id]
            if origin is None:
                items.append(Item("arc", it.id, it.tail, it.head))
            else:
                items.append(Item("edge", origin, it.tail, it.head))
        trees.append(Arborescence(t.element, t.root, tuple(sorted(items)), t.vertices))
    return Packing(tuple(trees))


# -- verification -----------------------------------------------------------


def verify_packing(inst: Instance, pk: Packing) -> list[str]:
    """All ways ``pk`` fails to be a maximal M-independent packing (empty if valid)."""
    g = inst.graph
    problems: list[str] = []
    k = inst.matroid.size
    elements = [t.element for t in pk.arborescences]
    if sorted(elements) != list(range(k)):
        problems.append(f"expected one arborescence per element 0..{k - 1}, got {elements}")
    owner: dict[tuple[str, int], int] = {}
    for t in pk.arborescences:
        if not 0 <= t.element < k:
            raise ValueError(f"unknown element {t.element}")
        tag = f"element {t.element}"
        if t.root != inst.placement[t.element]:
            problems.append(f"(a) {tag}: root {t.root} is not its placement "
                            f"{inst.placement[t.element]}")
        entering: dict[int, int] = {}
        for it in t.items:
            if it.kind == "arc":
                if not 0 <= it.id < len(g.arcs):
                    raise ValueError(f"unknown arc id {it.id}")
                if g.arcs[it.id] != (it.tail, it.head):
                    problems.append(f"(a) {tag}: arc {it.id} does not run "
                                    f"{it.tail}->{it.head}")
            elif it.kind == "edge":
                if not 0 <= it.id < len(g.edges):
                    raise ValueError(f"unknown edge id {it.id}")
                if {it.tail, it.head} != set(g.edges[it.id]):
                    problems.append(f"(a) {tag}: edge {it.id} does not join "
                                    f"{it.tail} and {it.head}")
            else:
                raise ValueError(f"unknown item kind {it.kind!r}")
            key = (it.kind, it.id)
            if key in owner and owner[key] != t.element:
                problems.append(f"(b) {it.kind} {it.id} used by elements "
                                f"{owner[key]} and {t.element}")
            elif key in owner:
                problems.append(f"(b) {it.kind} {it.id} used twice by element {t.element}")
            owner[key] = t.element
            entering[it.head] = entering.get(it.head, 0) + 1
        spanned = 1 << t.root
        for it in t.items:
            spanned |= (1 << it.tail) | (1 << it.head)
        if spanned != t.vertices:
            problems.append(f"(a) {tag}: vertex list does not match its items")
        if entering.get(t.root):
            problems.append(f"(a) {tag}: root {t.root} has an entering item")
        for v in iter_bits(spanned & ~(1 << t.root)):
            if entering.get(v, 0) != 1:
                problems.append(f"(a) {tag}: vertex {v} entered {entering.get(v, 0)} times")
        reached = 1 << t.root
        grew = True
        while grew:
            grew = False
            for it in t.items:
                if reached >> it.tail & 1 and not reached >> it.head & 1:
                    reached |= 1 << it.head
                    grew = True
        if reached != spanned:
            problems.append(f"(a) {tag}: vertices {sorted(iter_bits(spanned & ~reached))} "
                            f"not reachable from the root")
    targets = vertex_targets(inst)
    for v in range(inst.n):
        at = pk.elements_at(v)
        if not inst.matroid.is_independent(at):
            problems.append(f"(c) vertex {v}: elements {sorted(iter_bits(at))} are dependent")
        if at.bit_count() != targets[v]:
            problems.append(f"(d) vertex {v}: covered by {at.bit_count()} elements, "
                            f"needs {targets[v]}")
    return problems


# -- brute-force oracle -----------------------------------------------------

ORACLE_MAX_EDGES = 10
ORACLE_MAX_VERTICES = 6
ORACLE_MAX_ELEMENTS = 4


def _all_arborescences(n: int, moves: list[Item], root: int,
                       n_arcs: int) -> list[tuple[int, int, int]]:
    """Every mixed arborescence at ``root`` as (move mask, resource mask, vertex mask)."""
    start = (0, 1 << root)
    seen = {0}
    out = [(0, 0, 1 << root)]
    stack = [start]
    while stack:
        mmask, verts = stack.pop()
        for j, it in enumerate(moves):
            if verts >> it.tail & 1 and not verts >> it.head & 1:
                nm = mmask | (1 << j)
                if nm in seen:
                    continue
                seen.add(nm)
                nv = verts | (1 << it.head)
                res = 0
                for q in iter_bits(nm):
                    res |= 1 << _resource(moves[q], n_arcs)
                out.append((nm, res, nv))
                stack.append((nm, nv))
    return out


def _resource(it: Item, n_arcs: int) -> int:
    # arcs and edges share one resource index space: arcs first
    return it.id if it.kind == "arc" else n_arcs + it.id


def brute_force_exists(inst: Instance) -> bool:
    """Whether any maximal M-independent packing exists, by exhaustive search.

    Independent of the cut conditions: every combination of item-disjoint
    mixed arborescences is tried, and a candidate counts only once
    :func:`verify_packing` accepts it.
    """
    g = inst.graph
    if (len(g.edges) > ORACLE_MAX_EDGES or g.n > ORACLE_MAX_VERTICES
            or inst.matroid.size > ORACLE_MAX_ELEMENTS):
        raise ValueError(f"oracle bounds exceeded: need |E| <= {ORACLE_MAX_EDGES}, "
                         f"|V| <= {ORACLE_MAX_VERTICES}, |S| <= {ORACLE_MAX_ELEMENTS}")
    k = inst.matroid.size
    if k == 0:
        return not verify_packing(inst, Packing(()))
    moves = [Item("arc", i, t, h) for i, (t, h) in enumerate(g.arcs)]
    for i, (a, b) in enumerate(g.edges):
        moves += [Item("edge", i, a, b), Item("edge", i, b, a)]
    targets = vertex_targets(inst)
    m = inst.matroid
    options = [_all_arborescences(g.n, moves, inst.placement[s], len(g.arcs)) for s in range(k)]
    order = sorted(range(k), key=lambda s: len(options[s]))

    at = [0] * g.n
    chosen: dict[int, tuple[int, int, int]] = {}

    def rec(idx: int, used: int) -> bool:
        if idx == k:
            if any(at[v].bit_count() != targets[v] for v in range(g.n)):
                return False
            trees = []
            for s in range(k):
                mmask, _, verts = chosen[s]
                items = tuple(moves[q] for q in iter_bits(mmask))
                trees.append(Arborescence(s, inst.placement[s], items, verts))
            return not verify_packing(inst, Packing(tuple(trees)))
        s = order[idx]
        bit = 1 << s
        for opt in options[s]:
            mmask, res, verts = opt
            if res & used:
                continue
            ok = True
            for v in iter_bits(verts):
                nxt = at[v] | bit
                if nxt.bit_count() > targets[v] or not m.is_independent(nxt):
                    ok = False
                    break
            if not ok:
                continue
            for v in iter_bits(verts):
                at[v] |= bit
            chosen[s] = opt
            if rec(idx + 1, used | res):
                return True
            for v in iter_bits(verts):
                at[v] ^= bit
        return False

    return rec(0, 0)
