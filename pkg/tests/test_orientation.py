import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import instances
from mixarb.bits import nonempty_submasks
from mixarb.conditions import ComponentDemand
from mixarb.orientation import (
    CoverObstruction,
    check_intersecting_supermodular,
    cover_orientation,
    covers,
)


def table(values):
    return lambda x: values.get(x, 0)


def exhaustive_cover_exists(universe, edges, f):
    for flips in itertools.product((False, True), repeat=len(edges)):
        cand = [(b, a) if flip else (a, b) for (a, b), flip in zip(edges, flips)]
        if covers(universe, cand, lambda x: max(0, f(x))):
            return True
    return False


def e_count(edges, parts):
    return sum(1 for a, b in edges if any((p >> a & 1) != (p >> b & 1) for p in parts))


def test_forced_orientation():
    got = cover_orientation(0b11, [(0, 1)], table({0b01: 1}))
    assert got == ((1, 0),)


def test_single_edge_obstruction():
    got = cover_orientation(0b11, [(0, 1)], table({0b01: 1, 0b10: 1}))
    assert isinstance(got, CoverObstruction)
    assert sorted(got.parts) == [0b01, 0b10]
    assert got.deficit == 1


def test_parallel_edges_oriented_oppositely():
    got = cover_orientation(0b11, [(0, 1), (0, 1)], table({0b01: 1, 0b10: 1}))
    assert sorted(got) == [(0, 1), (1, 0)]


def test_existing_arcs_reduce_demand():
    got = cover_orientation(0b11, [(0, 1)], table({0b01: 1, 0b10: 1}), existing_arcs=[(1, 0)])
    assert got == ((0, 1),)


def test_edge_outside_universe_rejected():
    with pytest.raises(ValueError):
        cover_orientation(0b011, [(0, 2)], table({}))


def test_supermodularity_examples():
    assert check_intersecting_supermodular(0b111, lambda x: 0) is None
    assert check_intersecting_supermodular(0b11, lambda x: 1) is None
    bad = {0b011: 1, 0b110: 1, 0b111: 0, 0b010: 0}
    f = table(bad)
    x, y, gap = check_intersecting_supermodular(0b111, f)
    assert x & y and gap == f(x) + f(y) - f(x | y) - f(x & y) > 0


def test_non_supermodular_demand_can_raise():
    # two crossing demands one edge cannot both meet, and no subpartition sees it
    f = table({0b011: 1, 0b110: 1})
    edges = [(0, 2)]
    assert not exhaustive_cover_exists(0b111, edges, f)
    with pytest.raises(ValueError, match="supermodular"):
        cover_orientation(0b111, edges, f)


@st.composite
def rooted_demands(draw):
    n = draw(st.integers(2, 5))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
                          .filter(lambda p: p[0] != p[1]), max_size=8))
    root = draw(st.integers(0, n - 1))
    k = draw(st.integers(0, 3))
    return (1 << n) - 1, edges, root, k


@settings(max_examples=150, deadline=None)
@given(rooted_demands())
def test_rooted_connectivity_against_exhaustive(case):
    universe, edges, root, k = case
    f = lambda x: 0 if x >> root & 1 else k  # noqa: E731
    assert check_intersecting_supermodular(universe, f) is None
    got = cover_orientation(universe, edges, f)
    if isinstance(got, CoverObstruction):
        assert not exhaustive_cover_exists(universe, edges, f)
        assert sum(f(p) for p in got.parts) - e_count(edges, got.parts) == got.deficit > 0
    else:
        assert [set(e) for e in got] == [set(e) for e in edges]
        assert covers(universe, got, f)


@settings(max_examples=150, deadline=None)
@given(instances(max_n=4, max_edges=4, max_arcs=3))
def test_component_demands(inst):
    g = inst.graph
    for comp in inst.condensation.components:
        fc = ComponentDemand.build(inst, comp)
        assert check_intersecting_supermodular(comp, fc) is None
        edges = [e for e in g.edges if comp >> e[0] & 1]
        got = cover_orientation(comp, edges, fc)
        assert isinstance(got, CoverObstruction) != exhaustive_cover_exists(comp, edges, fc)
        if not isinstance(got, CoverObstruction):
            indeg = {x: sum(1 for t, h in got if x >> h & 1 and not x >> t & 1)
                     for x in nonempty_submasks(comp)}
            assert all(indeg[x] >= fc(x) for x in indeg)
