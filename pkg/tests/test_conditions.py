import pytest
from hypothesis import given, settings

from conftest import instances
from mixarb.conditions import (
    Instance,
    check,
    check_condition_ii,
    check_condition_iii,
    check_dns,
    check_edmonds,
    check_kiraly,
    check_kkt,
    check_mt,
    eval_fC,
    eval_fC_argmax,
    find_min_deficient_or_tight,
    iter_subpartitions,
    minimal_tight_sets,
    replay,
)
from mixarb.graph import MixedGraph, reach_set, subpartition_edge_count
from mixarb.matroid import FreeMatroid, UniformMatroid


def make(n, edges=(), arcs=(), placement=(), matroid=None):
    m = matroid if matroid is not None else FreeMatroid(len(placement))
    return Instance(MixedGraph(n, tuple(edges), tuple(arcs)), m, tuple(placement))


def test_edmonds_examples():
    assert check_edmonds(make(1), roots=[0]) is None
    cert = check_edmonds(make(2), roots=[0])
    assert cert.vertex_set == 0b10 and cert.deficit == 1
    assert check_edmonds(make(3, arcs=[(0, 1), (0, 2), (1, 2), (2, 1)]), roots=[0, 0]) is None


def test_kkt_examples():
    assert check_kkt(make(2), roots=[0]) is None
    cert = check_kkt(make(2, arcs=[(0, 1)]), roots=[0, 0])
    assert cert.vertex_set == 0b10 and cert.deficit == 1
    assert check_kkt(make(3, arcs=[(0, 1), (1, 2)]), roots=[1]) is None


def test_mt_examples():
    assert check_mt(make(1), roots=[0]) is None
    cert = check_mt(make(2, edges=[(0, 1)]), roots=[0, 1])
    assert cert is not None and cert.deficit == 1
    assert cert.component == 0b11
    assert sorted(cert.parts) == [0b01, 0b10]
    assert check_mt(make(2, edges=[(0, 1), (0, 1)]), roots=[0, 1]) is None


def test_dns_examples():
    assert check_dns(make(2, arcs=[(0, 1)], placement=[0])) is None
    cert = check_dns(make(2, placement=[0]))
    assert cert.vertex_set == 0b10 and cert.deficit == 1
    assert check_dns(make(2, placement=[0, 1], matroid=UniformMatroid(2, 1))) is None


def test_kiraly_examples():
    assert check_kiraly(make(2, arcs=[(0, 1)], placement=[0])) is None
    cert = check_kiraly(make(2, arcs=[(0, 1)], placement=[0, 0]))
    assert cert.vertex_set == 0b10 and cert.deficit == 1
    assert cert.mode == "full"
    assert check_kiraly(make(3, placement=[0, 2, 2])) is None
    restricted = check_kiraly(make(2, arcs=[(0, 1)], placement=[0, 0]), restricted=True)
    assert restricted.mode == "restricted" and restricted.vertex_set == 0b10


def test_digraph_checkers_reject_edges():
    inst = make(2, edges=[(0, 1)], placement=[0])
    for fn in (check_kiraly, check_kkt, check_edmonds, check_dns, find_min_deficient_or_tight):
        with pytest.raises(ValueError):
            fn(inst)


def test_eval_fC_examples():
    assert eval_fC(make(1, placement=[0]), 0b1, 0b1) == 0
    inst = make(3, edges=[(1, 2)], arcs=[(0, 1)], placement=[0, 1])
    assert eval_fC(inst, 0b110, 0b100) == 2
    assert eval_fC_argmax(inst, 0b110, 0b100) == (2, 0)
    assert eval_fC(inst, 0b110, 0b010) == 0


def test_eval_fC_rejects_non_component():
    inst = make(3, edges=[(1, 2)], arcs=[(0, 1)], placement=[0, 1])
    with pytest.raises(ValueError):
        eval_fC(inst, 0b011, 0b001)
    with pytest.raises(ValueError):
        eval_fC(inst, 0b110, 0b001)


def test_condition_iii_examples():
    assert check_condition_iii(make(1, placement=[0])) is None
    cert = check_condition_iii(make(2, edges=[(0, 1)], placement=[0, 1]))
    assert cert.kind == "deficient-subpartition"
    assert cert.component == 0b11 and cert.parts == (0b01, 0b10) and cert.deficit == 1
    assert check_condition_iii(make(2, edges=[(0, 1), (0, 1)], placement=[0, 1])) is None


def test_condition_iii_arc_plus_edge():
    cert = check_condition_iii(make(3, edges=[(1, 2)], arcs=[(0, 1)], placement=[0, 1]))
    assert cert.component == 0b110
    assert cert.parts == (0b010, 0b100)
    assert cert.part_values == (0, 2)
    assert cert.deficit == 1


def test_condition_ii_examples():
    assert check_condition_ii(make(1)) is None
    cert = check_condition_ii(make(2, edges=[(0, 1)], placement=[0, 1]))
    assert cert.kind == "deficient-biset-family" and cert.deficit == 1
    assert sorted(cert.parts) == [0b01, 0b10]


def test_dependent_placement_certificate():
    inst = make(2, edges=[(0, 1)], placement=[0, 0], matroid=UniformMatroid(2, 1))
    for fn in (check_condition_iii, check_condition_ii):
        cert = fn(inst)
        assert cert.kind == "dependent-placement" and cert.vertex == 0
        assert replay(inst, cert) == cert.deficit == 1


def test_find_min_deficient_examples():
    assert find_min_deficient_or_tight(make(2, arcs=[(0, 1)], placement=[0])) is None
    assert find_min_deficient_or_tight(make(2, arcs=[(0, 1)], placement=[0, 0])) == 0b10


def test_find_min_tight_inside_reach():
    inst = make(3, arcs=[(0, 1), (0, 2), (1, 2), (2, 1)], placement=[0, 0])
    g = inst.graph
    assert check_kiraly(inst) is None
    for a, (u, v) in enumerate(g.arcs):
        x = find_min_deficient_or_tight(inst, "tight", a)
        if x is not None:
            assert x & ~reach_set(g, 1 << v) == 0
            assert x in minimal_tight_sets(inst, a)
    with pytest.raises(ValueError):
        find_min_deficient_or_tight(inst, "tight")
    with pytest.raises(ValueError):
        find_min_deficient_or_tight(inst, "bogus")
    with pytest.raises(ValueError, match="cut condition"):
        find_min_deficient_or_tight(make(2, arcs=[(0, 1)], placement=[0, 0]), "tight", 0)


def test_iter_subpartitions_counts():
    # Bell numbers shifted: subpartitions of an n-set number B(n+1)
    assert [sum(1 for _ in iter_subpartitions((1 << n) - 1)) for n in range(5)] == [1, 2, 5, 15, 52]


def test_check_dispatch():
    inst = make(2, arcs=[(0, 1)], placement=[0, 0])
    assert check(inst, "digraph").condition == "kiraly"
    assert check(inst, "iii").condition == "iii"
    with pytest.raises(ValueError):
        check(inst, "nope")


def brute_iii(inst):
    """The "iii" condition straight from the definition: every subpartition, every closed Z."""
    if inst.dependent_vertex() is not None:
        return False
    g = inst.graph
    for comp in inst.condensation.components:
        wc = reach_set(g, comp)
        top = inst.rank_of_vertices(wc)
        closed = [z for z in range(1 << g.n)
                  if z & ~(wc & ~comp) == 0 and reach_set(g, z) == z]

        def f(x):
            return max(top - inst.rank_of_vertices(x | z) - _indeg(g, x | z) for z in closed)

        for parts in iter_subpartitions(comp):
            if parts and sum(max(f(p), 0) for p in parts) > subpartition_edge_count(g, parts):
                return False
    return True


def _indeg(g, x):
    return sum(1 for a, b in g.arcs if x >> b & 1 and not x >> a & 1)


@settings(max_examples=150, deadline=None)
@given(instances(max_n=4))
def test_iii_matches_definition_and_replays(inst):
    cert = check_condition_iii(inst)
    assert (cert is None) == brute_iii(inst)
    if cert is not None:
        assert replay(inst, cert) == cert.deficit > 0


@settings(max_examples=150, deadline=None)
@given(instances(max_n=4))
def test_ii_agrees_with_iii(inst):
    ii, iii = check_condition_ii(inst), check_condition_iii(inst)
    assert (ii is None) == (iii is None)
    if ii is not None:
        assert replay(inst, ii) == ii.deficit


@settings(max_examples=150, deadline=None)
@given(instances(max_n=4, digraph=True))
def test_digraph_specializations(inst):
    iii = check_condition_iii(inst) is None
    full = check_kiraly(inst)
    assert (full is None) == iii
    assert (check_kiraly(inst, restricted=True) is None) == iii
    if full is not None:
        assert replay(inst, full) == full.deficit
    if full is not None and full.kind == "deficient-set":
        smallest = find_min_deficient_or_tight(inst)
        assert smallest is not None
        assert smallest.bit_count() <= full.vertex_set.bit_count()
    elif full is None:
        assert find_min_deficient_or_tight(inst) is None
        g = inst.graph
        for a, (_, v) in enumerate(g.arcs):
            x = find_min_deficient_or_tight(inst, "tight", a)
            assert x is None or x & ~reach_set(g, 1 << v) == 0


@settings(max_examples=100, deadline=None)
@given(instances(max_n=4, max_edges=3))
def test_fact_mt_implies_ii(inst):
    if not isinstance(inst.matroid, FreeMatroid) or not inst.placement:
        return
    mt = check_mt(inst)
    if mt is None:
        assert check_condition_ii(inst) is None
    else:
        assert replay(inst, mt) == mt.deficit
