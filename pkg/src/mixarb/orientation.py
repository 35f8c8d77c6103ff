"""Orienting undirected edges so that in-degrees cover a set-function demand.

Given edges inside a vertex set ``U`` and a demand ``f`` on the nonempty subsets
of ``U``, :func:`cover_orientation` looks for directions with
``d-(X) >= f(X)`` for every nonempty ``X <= U``. When no such orientation
exists it returns a subpartition ``P`` of ``U`` with ``e_E(P) < sum f(X)``,
which rules out every orientation at once (an edge enters at most one part).
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

from .bits import iter_bits, nonempty_submasks
from .graph import MixedGraph, Orientation

MAX_ORIENT_VERTICES = 12
MAX_EXHAUSTIVE_EDGES = 20


@dataclass
class DemandFunction:
    """Integer demand on the nonempty subsets of ``universe``, tabulated."""

    universe: int
    values: dict[int, int]

    @classmethod
    def from_callable(cls, universe: int, f: Callable[[int], int]) -> "DemandFunction":
        if universe.bit_count() > MAX_ORIENT_VERTICES:
            raise ValueError(f"demand domain larger than {MAX_ORIENT_VERTICES} vertices")
        return cls(universe, {x: f(x) for x in nonempty_submasks(universe)})

    def __call__(self, x: int) -> int:
        return self.values[x]


@dataclass(frozen=True)
class CoverObstruction:
    """Subpartition whose total demand exceeds the edges that can enter it."""

    parts: tuple[int, ...]
    deficit: int


def orientation_indegrees(universe: int, directed: Sequence[tuple[int, int]]) -> dict[int, int]:
    table = {}
    for x in nonempty_submasks(universe):
        table[x] = sum(1 for t, h in directed if x >> h & 1 and not x >> t & 1)
    return table


def covers(universe: int, directed: Sequence[tuple[int, int]], f: Callable[[int], int]) -> bool:
    indeg = orientation_indegrees(universe, directed)
    return all(indeg[x] >= f(x) for x in indeg)


def obstruction(universe: int, edges: Sequence[tuple[int, int]],
                f: Callable[[int], int]) -> Optional[CoverObstruction]:
    """Most violated subpartition inequality, if any is violated."""
    from .conditions import best_subpartition

    n = max([universe.bit_length()] + [max(e) + 1 for e in edges])
    g = MixedGraph(n, tuple(edges))
    val, parts = best_subpartition(g, universe, f)
    if val > 0:
        return CoverObstruction(parts, val)
    return None


def _reversal_search(universe: int, directed: list[tuple[int, int]],
                     need: dict[int, int], max_rounds: int) -> bool:
    """Repair deficits by reversing directed paths; True on success."""
    indeg = orientation_indegrees(universe, directed)
    for _ in range(max_rounds):
        worst, worst_x = 0, 0
        for x, d in indeg.items():
            gap = need[x] - d
            if gap > worst or (gap == worst and gap > 0 and
                               (x.bit_count(), x) < (worst_x.bit_count(), worst_x)):
                worst, worst_x = gap, x
        if worst <= 0:
            return True
        x = worst_x
        out: dict[int, list[int]] = {}
        for i, (t, h) in enumerate(directed):
            out.setdefault(t, []).append(i)
        move = None
        for s in iter_bits(x):
            # BFS along current directions; parent edge ids give the path
            parent = {s: None}
            queue = deque([s])
            while queue and move is None:
                u = queue.popleft()
                for i in out.get(u, ()):
                    w = directed[i][1]
                    if w in parent:
                        continue
                    parent[w] = i
                    queue.append(w)
                    if not x >> w & 1 and _reversal_safe(s, w, indeg, need):
                        move = (s, w, parent)
                        break
            if move:
                break
        if move is None:
            return False
        s, t, parent = move
        v = t
        while v != s:
            i = parent[v]
            a, b = directed[i]
            directed[i] = (b, a)
            v = a
        bs, bt = 1 << s, 1 << t
        for y in indeg:
            if y & bs and not y & bt:
                indeg[y] += 1
            elif y & bt and not y & bs:
                indeg[y] -= 1
    return False


def _reversal_safe(s: int, t: int, indeg: dict[int, int], need: dict[int, int]) -> bool:
    # reversing an s->t path costs one entering edge for sets holding t but not s
    bs, bt = 1 << s, 1 << t
    return all(need[y] < indeg[y] for y in indeg if y & bt and not y & bs)


def cover_orientation(universe: int, edges: Sequence[tuple[int, int]],
                      f: Callable[[int], int],
                      existing_arcs: Sequence[tuple[int, int]] = (),
                      ) -> Union[Orientation, CoverObstruction]:
    """Orient ``edges`` so that the result (plus ``existing_arcs``) covers ``f``.

    ``f`` is evaluated on every nonempty subset of ``universe``; negative
    demands are clipped to zero. Path reversal repairs deficits first; if it
    stalls, the best subpartition bound is computed and, failing that, all
    orientations are tried.
    """
    edges = [(int(a), int(b)) for a, b in edges]
    if universe.bit_count() > MAX_ORIENT_VERTICES:
        raise ValueError(f"cannot orient over more than {MAX_ORIENT_VERTICES} vertices")
    for a, b in edges:
        if not (universe >> a & 1 and universe >> b & 1):
            raise ValueError(f"edge ({a}, {b}) leaves the vertex universe")
    base = {}
    for x in nonempty_submasks(universe):
        base[x] = sum(1 for t, h in existing_arcs if x >> h & 1 and not x >> t & 1)
    need = {x: max(0, f(x) - base[x]) for x in base}

    directed = list(edges)
    if _reversal_search(universe, directed, need, max_rounds=4 * len(base) + 8):
        return tuple(directed)

    blocked = obstruction(universe, edges, lambda x: need[x])
    if blocked is not None:
        return blocked

    if len(edges) > MAX_EXHAUSTIVE_EDGES:
        raise ValueError("too many edges for exhaustive orientation search")
    for flips in itertools.product((False, True), repeat=len(edges)):
        cand = [(b, a) if flip else (a, b) for (a, b), flip in zip(edges, flips)]
        if covers(universe, cand, lambda x: need[x]):
            return tuple(cand)
    raise ValueError("no covering orientation and no subpartition obstruction; "
                     "the demand is not intersecting supermodular")


def check_intersecting_supermodular(universe: int, f: Callable[[int], int]
                                    ) -> Optional[tuple[int, int, int]]:
    """First intersecting pair ``(X, Y)`` with f(X)+f(Y) > f(X|Y)+f(X&Y), plus the gap."""
    if universe.bit_count() > MAX_ORIENT_VERTICES:
        raise ValueError(f"domain larger than {MAX_ORIENT_VERTICES} vertices")
    subsets = sorted(nonempty_submasks(universe))
    vals = {x: f(x) for x in subsets}
    for i, x in enumerate(subsets):
        for y in subsets[i + 1:]:
            meet = x & y
            if not meet or meet == x or meet == y:
                continue
            gap = vals[x] + vals[y] - vals[x | y] - vals[meet]
            if gap > 0:
                return x, y, gap
    return None
