"""Exact checkers for the cut conditions characterising arborescence packings.

Every checker enumerates vertex sets exhaustively and returns ``None`` when its
condition holds, or a :class:`Certificate` naming a maximally deficient
witness. Ties between equally deficient witnesses go to the first one in
ascending bitmask order, so results are deterministic.

Conditions covered, for a rooted mixed graph ``(F, M, pi)``:

``edmonds``  d-(X) >= #{roots outside X}                   (digraphs)
``kkt``      d-(X) >= #{roots in W(X) - X}                 (digraphs)
``dns``      d-(X) >= r(S) - r(S_X)                        (digraphs)
``kiraly``   d-(X) >= r(S_W(X)) - r(S_X)                   (digraphs)
``mt``       bi-set families over subpartitions of atoms   (free matroid)
``ii``       bi-set families over subpartitions of strong components
``iii``      e_E(P) >= sum f_C(X_q) over subpartitions of strong components
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterator, Optional, Sequence

from .bits import iter_bits, nonempty_submasks, submasks
from .graph import (
    BiSet,
    Condensation,
    MixedGraph,
    atoms,
    indeg_biset,
    indeg_set,
    reach_from,
    reach_set,
    strong_components,
    subpartition_edge_count,
)
from .matroid import Matroid, preimage, vertex_elements

MAX_SET_VERTICES = 16
MAX_COMPONENT_VERTICES = 12
MAX_BISET_COMPONENT_VERTICES = 8


@dataclass(frozen=True)
class Instance:
    """A matroid-based rooted mixed graph."""

    graph: MixedGraph
    matroid: Matroid
    placement: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "placement", tuple(int(v) for v in self.placement))
        if len(self.placement) != self.matroid.size:
            raise ValueError(
                f"placement has {len(self.placement)} elements, matroid has {self.matroid.size}")
        for s, v in enumerate(self.placement):
            if not 0 <= v < self.graph.n:
                raise ValueError(f"element {s} placed at vertex {v} outside the graph")

    @property
    def n(self) -> int:
        return self.graph.n

    @cached_property
    def elements_at(self) -> tuple[int, ...]:
        return tuple(vertex_elements(self.placement, self.n))

    def elements_in(self, x: int) -> int:
        """S_X as an element mask."""
        out = 0
        at = self.elements_at
        for v in iter_bits(x):
            out |= at[v]
        return out

    def rank_of_vertices(self, x: int) -> int:
        """r_M(S_X)."""
        return self.matroid.rank(self.elements_in(x))

    def dependent_vertex(self) -> Optional[int]:
        """First vertex whose placed elements are dependent, if any."""
        for v, elems in enumerate(self.elements_at):
            if elems and not self.matroid.is_independent(elems):
                return v
        return None

    @cached_property
    def condensation(self) -> Condensation:
        return strong_components(self.graph)


@dataclass(frozen=True)
class Certificate:
    """Witness that a condition fails.

    ``kind`` is one of ``deficient-set``, ``deficient-biset-family``,
    ``deficient-subpartition`` or ``dependent-placement``; ``condition`` names
    the inequality it refutes. Only the payload fields relevant to the kind
    are filled in.
    """

    kind: str
    condition: str
    deficit: int
    vertex_set: Optional[int] = None
    component: Optional[int] = None
    parts: tuple[int, ...] = ()
    closed_sets: tuple[int, ...] = ()
    part_values: tuple[int, ...] = ()
    bisets: tuple[BiSet, ...] = ()
    vertex: Optional[int] = None
    roots: tuple[int, ...] = ()
    mode: str = "full"

    def describe(self) -> str:
        if self.kind == "dependent-placement":
            return f"{self.condition}: elements at vertex {self.vertex} are dependent"
        if self.kind == "deficient-set":
            return f"{self.condition}: set {sorted(iter_bits(self.vertex_set))} deficit {self.deficit}"
        return (f"{self.condition}: parts {[sorted(iter_bits(p)) for p in self.parts]}"
                f" deficit {self.deficit}")


def _require_digraph(inst: Instance) -> None:
    if inst.graph.edges:
        raise ValueError("this condition applies to digraphs only (undirected edges present)")


def _require_small(n: int, limit: int, what: str) -> None:
    if n > limit:
        raise ValueError(f"{what} has {n} vertices; exhaustive checking is limited to {limit}")


def _placement_certificate(inst: Instance, condition: str) -> Optional[Certificate]:
    v = inst.dependent_vertex()
    if v is None:
        return None
    elems = inst.elements_at[v]
    return Certificate("dependent-placement", condition,
                       elems.bit_count() - inst.matroid.rank(elems), vertex=v)


def _worst_set(g: MixedGraph, candidates: Iterator[int],
               demand: Callable[[int], int]) -> tuple[int, int]:
    best_x, best = 0, 0
    for x in candidates:
        d = demand(x) - indeg_set(g, x)
        if d > best:
            best_x, best = x, d
    return best_x, best


def _all_nonempty(n: int) -> Iterator[int]:
    return iter(range(1, 1 << n))


def _roots(inst: Instance, roots: Optional[Sequence[int]]) -> tuple[int, ...]:
    out = tuple(inst.placement if roots is None else roots)
    for r in out:
        if not 0 <= r < inst.n:
            raise ValueError(f"root {r} out of range")
    return out


def check_edmonds(inst: Instance, roots: Optional[Sequence[int]] = None) -> Optional[Certificate]:
    """Spanning arborescence packing cut condition (roots default to the placement)."""
    _require_digraph(inst)
    _require_small(inst.n, MAX_SET_VERTICES, "graph")
    rs = _roots(inst, roots)
    x, d = _worst_set(inst.graph, _all_nonempty(inst.n),
                      lambda x: sum(1 for r in rs if not x >> r & 1))
    if d > 0:
        return Certificate("deficient-set", "edmonds", d, vertex_set=x, roots=rs)
    return None


def check_kkt(inst: Instance, roots: Optional[Sequence[int]] = None) -> Optional[Certificate]:
    """Maximal (reachability) arborescence packing cut condition."""
    _require_digraph(inst)
    _require_small(inst.n, MAX_SET_VERTICES, "graph")
    rs = _roots(inst, roots)
    g = inst.graph

    def demand(x: int) -> int:
        outside = reach_set(g, x) & ~x
        return sum(1 for r in rs if outside >> r & 1)

    x, d = _worst_set(g, _all_nonempty(inst.n), demand)
    if d > 0:
        return Certificate("deficient-set", "kkt", d, vertex_set=x, roots=rs)
    return None


def check_dns(inst: Instance) -> Optional[Certificate]:
    """Matroid-based (spanning) packing condition."""
    _require_digraph(inst)
    _require_small(inst.n, MAX_SET_VERTICES, "graph")
    cert = _placement_certificate(inst, "dns")
    if cert:
        return cert
    total = inst.matroid.rank(inst.matroid.ground)
    x, d = _worst_set(inst.graph, _all_nonempty(inst.n),
                      lambda x: total - inst.rank_of_vertices(x))
    if d > 0:
        return Certificate("deficient-set", "dns", d, vertex_set=x)
    return None


def kiraly_demand(inst: Instance, x: int, reach_graph: Optional[MixedGraph] = None) -> int:
    """r(S_W(X)) - r(S_X), with W taken in ``reach_graph`` (default: the instance graph)."""
    w = reach_set(reach_graph or inst.graph, x)
    return inst.rank_of_vertices(w) - inst.rank_of_vertices(x)


def restricted_sets(g: MixedGraph) -> Iterator[int]:
    """Nonempty X with v in X contained in W(v) for some vertex v, ascending."""
    wv = g.reach_to_vertex
    for x in range(1, 1 << g.n):
        for v in iter_bits(x):
            if x & ~wv[v] == 0:
                yield x
                break


def check_kiraly(inst: Instance, restricted: bool = False,
                 reach_graph: Optional[MixedGraph] = None) -> Optional[Certificate]:
    """Maximal M-independent packing condition on a digraph.

    With ``restricted=True`` only sets X with ``v in X <= W(v)`` for some ``v``
    are examined, which decides the same question. ``reach_graph`` replaces the
    graph used for W (the solver passes the mixed graph an orientation came
    from). The certificate's ``mode`` records which enumeration ran.
    """
    _require_digraph(inst)
    _require_small(inst.n, MAX_SET_VERTICES, "graph")
    mode = "restricted" if restricted else "full"
    cert = _placement_certificate(inst, "kiraly")
    if cert:
        return cert
    rg = reach_graph or inst.graph
    if rg.n != inst.n:
        raise ValueError("reach graph must have the same vertex set")
    cands = restricted_sets(rg) if restricted else _all_nonempty(inst.n)
    x, d = _worst_set(inst.graph, cands, lambda x: kiraly_demand(inst, x, rg))
    if d > 0:
        return Certificate("deficient-set", "kiraly", d, vertex_set=x, mode=mode)
    return None


def find_min_deficient_or_tight(inst: Instance, mode: str = "deficient",
                                arc: Optional[int] = None) -> Optional[int]:
    """Smallest deficient set, or smallest tight set entered by arc ``arc``.

    Sets are scanned by size then bitmask, so the result is inclusion-minimal.
    In tight mode every returned set lies inside W(head of the arc).
    """
    _require_digraph(inst)
    _require_small(inst.n, MAX_SET_VERTICES, "graph")
    g = inst.graph
    if mode == "deficient":
        if arc is not None:
            raise ValueError("deficient mode takes no arc")
        test = lambda x: indeg_set(g, x) < kiraly_demand(inst, x)  # noqa: E731
    elif mode == "tight":
        if arc is None or not 0 <= arc < len(g.arcs):
            raise ValueError("tight mode needs a valid arc id")
        if check_kiraly(inst) is not None:
            raise ValueError("tight mode needs an instance satisfying the cut condition")
        u, v = g.arcs[arc]
        test = lambda x: (x >> v & 1 and not x >> u & 1  # noqa: E731
                          and indeg_set(g, x) == kiraly_demand(inst, x))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for x in sorted(range(1, 1 << g.n), key=lambda m: (m.bit_count(), m)):
        if test(x):
            if mode == "tight":
                assert x & ~g.reach_to_vertex[g.arcs[arc][1]] == 0, "minimal tight set escapes W(v)"
            return x
    return None


def minimal_tight_sets(inst: Instance, arc: int) -> list[int]:
    """All inclusion-minimal tight sets entered by ``arc``."""
    g = inst.graph
    u, v = g.arcs[arc]
    tight = [x for x in range(1, 1 << g.n)
             if x >> v & 1 and not x >> u & 1 and indeg_set(g, x) == kiraly_demand(inst, x)]
    return [x for x in tight if not any(y != x and y & ~x == 0 for y in tight)]


# -- subpartition machinery -------------------------------------------------


def best_subpartition(g: MixedGraph, universe: int,
                      value: Callable[[int], int]) -> tuple[int, tuple[int, ...]]:
    """Maximise ``sum(value(X) for X in P) - e_E(P)`` over nonempty subpartitions
    ``P`` of ``universe``; ``e_E`` is counted in the whole graph.

    Returns ``(best, parts)``. Runs in O(3^|universe|) by splitting off the part
    holding the lowest vertex. Among optimal subpartitions the one covering
    the most vertices wins, then the one with the most parts.
    """
    inner = g.inner_edge_table if g.n <= 16 else None

    def inner_edges(m: int) -> int:
        if inner is not None:
            return inner[m]
        return sum(1 for a, b in g.edges if m >> a & 1 and m >> b & 1)

    subs = list(submasks(universe))
    subs.reverse()  # ascending as integers, so subsets precede supersets
    # h[t] = ((total, part count), part holding the lowest vertex of t)
    h: dict[int, tuple[tuple[int, int], int]] = {0: ((0, 0), 0)}
    weight: dict[int, int] = {}
    for t in subs:
        if t == 0:
            continue
        low = t & -t
        rest = t ^ low
        best, choice = None, 0
        for extra in submasks(rest):
            x = extra | low
            wx = weight.get(x)
            if wx is None:
                wx = weight[x] = value(x) + inner_edges(x)
            sub = h[t ^ x][0]
            cand = (wx + sub[0], sub[1] + 1)
            if best is None or cand > best:
                best, choice = cand, x
        h[t] = (best, choice)
    full = g.full
    total_edges = len(g.edges)
    # ties: cover more vertices, then use more parts
    best_t, best_key = 0, None
    for t in subs:
        if t == 0:
            continue
        (tot, count), _ = h[t]
        key = (tot + inner_edges(full & ~t) - total_edges, t.bit_count(), count)
        if best_key is None or key > best_key:
            best_t, best_key = t, key
    if best_key is None:
        return 0, ()
    best_val = best_key[0]
    parts = []
    t = best_t
    while t:
        x = h[t][1]
        parts.append(x)
        t ^= x
    return best_val, tuple(sorted(parts))


def iter_subpartitions(universe: int) -> Iterator[tuple[int, ...]]:
    """Every subpartition of ``universe`` (the empty one included)."""
    verts = list(iter_bits(universe))

    def rec(i: int, parts: list[int]) -> Iterator[tuple[int, ...]]:
        if i == len(verts):
            yield tuple(parts)
            return
        bit = 1 << verts[i]
        yield from rec(i + 1, parts)  # vertex left uncovered
        for j in range(len(parts)):
            parts[j] |= bit
            yield from rec(i + 1, parts)
            parts[j] ^= bit
        parts.append(bit)
        yield from rec(i + 1, parts)
        parts.pop()

    yield from rec(0, [])


# -- f_C and the subpartition condition ("iii") ------------------------------


def closed_sets_above(inst: Instance, component: int) -> list[int]:
    """Distinct sets W(Y) for Y inside W(C) - C, ascending; includes the empty set."""
    g = inst.graph
    upstream = reach_set(g, component) & ~component
    found = {reach_set(g, y) for y in submasks(upstream)}
    return sorted(found)


def _check_component(inst: Instance, component: int) -> None:
    if component <= 0:
        raise ValueError("component must be nonempty")
    comps = inst.condensation.components
    if component not in comps:
        raise ValueError("set is not a strong component of the graph")


def eval_fC(inst: Instance, component: int, xq: int,
            closed: Optional[Sequence[int]] = None) -> int:
    """f_C(X_q): best value of r(S_W(C)) - r(S_{X_q + Z}) - d-(X_q + Z) over
    closed sets Z upstream of the component ``component``."""
    return eval_fC_argmax(inst, component, xq, closed)[0]


def eval_fC_argmax(inst: Instance, component: int, xq: int,
                   closed: Optional[Sequence[int]] = None) -> tuple[int, int]:
    if closed is None:
        _check_component(inst, component)
        closed = closed_sets_above(inst, component)
    if xq <= 0 or xq & ~component:
        raise ValueError("X_q must be a nonempty subset of the component")
    g = inst.graph
    top = inst.rank_of_vertices(reach_set(g, component))
    best, arg = None, 0
    for z in closed:
        x = xq | z
        val = top - inst.rank_of_vertices(x) - indeg_set(g, x)
        if best is None or val > best:
            best, arg = val, z
    return best, arg


@dataclass
class ComponentDemand:
    """Tabulated f_C over all nonempty subsets of one strong component."""

    inst: Instance
    component: int
    closed: list[int] = field(default_factory=list)
    values: dict[int, int] = field(default_factory=dict)
    maximizers: dict[int, int] = field(default_factory=dict)

    @classmethod
    def build(cls, inst: Instance, component: int) -> "ComponentDemand":
        _require_small(component.bit_count(), MAX_COMPONENT_VERTICES, "strong component")
        closed = closed_sets_above(inst, component)
        out = cls(inst, component, closed)
        for x in nonempty_submasks(component):
            val, z = eval_fC_argmax(inst, component, x, closed)
            out.values[x] = val
            out.maximizers[x] = z
        return out

    def __call__(self, x: int) -> int:
        return self.values[x]


def check_condition_iii(inst: Instance) -> Optional[Certificate]:
    """M-independence plus e_E(P) >= sum f_C(X_q) for every strong component C
    and subpartition P of C. Reports the most deficient (component, P)."""
    cert = _placement_certificate(inst, "iii")
    if cert:
        return cert
    g = inst.graph
    best: Optional[Certificate] = None
    for comp in inst.condensation.components:
        fc = ComponentDemand.build(inst, comp)
        val, parts = best_subpartition(g, comp, fc)
        if val > 0 and (best is None or val > best.deficit):
            best = Certificate(
                "deficient-subpartition", "iii", val, component=comp, parts=parts,
                closed_sets=tuple(fc.maximizers[p] for p in parts),
                part_values=tuple(fc.values[p] for p in parts))
    return best


def check_condition_ii(inst: Instance) -> Optional[Certificate]:
    """Bi-set form of the mixed condition, by explicit enumeration.

    Inner sets run over every subpartition of each strong component C; each
    outer set is the inner set plus W(Y) for a subset Y of W(C) - C. Bi-set
    in-degrees are counted directly rather than through f_C.
    """
    cert = _placement_certificate(inst, "ii")
    if cert:
        return cert
    g = inst.graph
    best: Optional[Certificate] = None
    for comp in inst.condensation.components:
        _require_small(comp.bit_count(), MAX_BISET_COMPONENT_VERTICES, "strong component")
        upstream = reach_set(g, comp) & ~comp
        top = inst.rank_of_vertices(reach_set(g, comp))
        part_best: dict[int, tuple[int, int]] = {}

        def part_value(x: int) -> tuple[int, int]:
            hit = part_best.get(x)
            if hit is None:
                hit = None
                for y in submasks(upstream):
                    outer = x | reach_set(g, y)
                    val = top - inst.rank_of_vertices(outer) - indeg_biset(g, BiSet(outer, x))
                    if hit is None or val > hit[0]:
                        hit = (val, outer)
                part_best[x] = hit
            return hit

        for parts in iter_subpartitions(comp):
            if not parts:
                continue
            chosen = [part_value(p) for p in parts]
            deficit = sum(c[0] for c in chosen) - subpartition_edge_count(g, parts)
            if deficit > 0 and (best is None or deficit > best.deficit):
                best = Certificate(
                    "deficient-biset-family", "ii", deficit, component=comp,
                    parts=tuple(parts),
                    bisets=tuple(BiSet(c[1], p) for c, p in zip(chosen, parts)))
    return best


# -- bi-set condition over atoms ("mt") ------------------------------------


def _mt_biset_demand(inner: int, outer: int, roots: Sequence[int],
                     reach: Sequence[int]) -> int:
    ring = outer & ~inner
    return sum(1 for r, u in zip(roots, reach)
               if inner & ~(u & ~(1 << r)) == 0 and not ring & u)


def check_mt(inst: Instance, roots: Optional[Sequence[int]] = None) -> Optional[Certificate]:
    """Bi-set condition over subpartitions of atoms, free-matroid semantics."""
    g = inst.graph
    _require_small(inst.n, MAX_SET_VERTICES, "graph")
    rs = _roots(inst, roots)
    if not rs:
        return None
    reach = [reach_from(g, r) for r in rs]
    best: Optional[Certificate] = None
    for atom in atoms(g, rs):
        outside = g.full & ~atom
        _require_small(atom.bit_count(), MAX_COMPONENT_VERTICES, "atom")
        choice: dict[int, int] = {}

        def value(x: int) -> int:
            best_v, best_o = None, x
            for z in submasks(outside):
                outer = x | z
                v = _mt_biset_demand(x, outer, rs, reach) - indeg_biset(g, BiSet(outer, x))
                if best_v is None or v > best_v:
                    best_v, best_o = v, outer
            choice[x] = best_o
            return best_v

        val, parts = best_subpartition(g, atom, value)
        if val > 0 and (best is None or val > best.deficit):
            best = Certificate(
                "deficient-biset-family", "mt", val, component=atom, parts=parts,
                bisets=tuple(BiSet(choice[p], p) for p in parts), roots=rs)
    return best


# -- certificate replay -----------------------------------------------------


def replay(inst: Instance, cert: Certificate) -> int:
    """Recompute a certificate's deficit from its payload alone."""
    g = inst.graph
    if cert.kind == "dependent-placement":
        elems = inst.elements_at[cert.vertex]
        return elems.bit_count() - inst.matroid.rank(elems)
    if cert.kind == "deficient-set":
        x = cert.vertex_set
        if cert.condition == "edmonds":
            demand = sum(1 for r in cert.roots if not x >> r & 1)
        elif cert.condition == "kkt":
            outside = reach_set(g, x) & ~x
            demand = sum(1 for r in cert.roots if outside >> r & 1)
        elif cert.condition == "dns":
            demand = inst.matroid.rank(inst.matroid.ground) - inst.rank_of_vertices(x)
        elif cert.condition == "kiraly":
            demand = kiraly_demand(inst, x)
        else:
            raise ValueError(f"unknown set condition {cert.condition!r}")
        return demand - indeg_set(g, x)
    e = subpartition_edge_count(g, cert.parts)
    if cert.condition == "iii":
        top = inst.rank_of_vertices(reach_set(g, cert.component))
        total = 0
        for x, z in zip(cert.parts, cert.closed_sets):
            if reach_set(g, z) != z or z & cert.component:
                raise ValueError("certificate closed set is not admissible")
            total += top - inst.rank_of_vertices(x | z) - indeg_set(g, x | z)
        return total - e
    if cert.condition == "ii":
        top = inst.rank_of_vertices(reach_set(g, cert.component))
        return sum(top - inst.rank_of_vertices(b.outer) - indeg_biset(g, b)
                   for b in cert.bisets) - e
    if cert.condition == "mt":
        reach = [reach_from(g, r) for r in cert.roots]
        return sum(_mt_biset_demand(b.inner, b.outer, cert.roots, reach) - indeg_biset(g, b)
                   for b in cert.bisets) - e
    raise ValueError(f"cannot replay condition {cert.condition!r}")


def check(inst: Instance, level: str) -> Optional[Certificate]:
    """Dispatch by condition name (the CLI's ``--level``)."""
    if level in ("digraph", "kiraly"):
        return check_kiraly(inst)
    if level == "ii":
        return check_condition_ii(inst)
    if level == "iii":
        return check_condition_iii(inst)
    if level == "mt":
        return check_mt(inst)
    if level == "kkt":
        return check_kkt(inst)
    if level == "edmonds":
        return check_edmonds(inst)
    if level == "dns":
        return check_dns(inst)
    raise ValueError(f"unknown level {level!r}")


__all__ = [
    "Certificate", "ComponentDemand", "Instance", "best_subpartition", "check",
    "check_condition_ii", "check_condition_iii", "check_dns", "check_edmonds",
    "check_kiraly", "check_kkt", "check_mt", "closed_sets_above", "eval_fC",
    "find_min_deficient_or_tight", "iter_subpartitions", "kiraly_demand",
    "minimal_tight_sets", "preimage", "replay", "restricted_sets",
]
