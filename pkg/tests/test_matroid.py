import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import matroids
from mixarb.bits import mask_of, members, nonempty_submasks, popcount, submasks
from mixarb.matroid import (
    FreeMatroid,
    GraphicMatroid,
    LinearGF2Matroid,
    PartitionMatroid,
    UniformMatroid,
    is_independent,
    is_placement_independent,
    matroid_from_spec,
    preimage,
    rank,
)


def test_rank_examples():
    assert rank(FreeMatroid(3), 0b111) == 3
    assert rank(UniformMatroid(2, 1), 0b11) == 1
    triangle = GraphicMatroid(3, 3, ((0, 1), (1, 2), (2, 0)))
    assert rank(triangle, 0b111) == 2


def test_independence_examples():
    assert all(is_independent(FreeMatroid(3), x) for x in range(8))
    assert not is_independent(UniformMatroid(2, 1), 0b11)
    gf2 = LinearGF2Matroid(3, ((1, 0), (0, 1), (1, 1)))
    assert not is_independent(gf2, 0b111)
    assert is_independent(gf2, 0b011)


def test_preimage_examples():
    a, b = 0, 1
    assert preimage((a, a, b), 1 << a) == 0b011
    assert preimage((a, a, b), 0) == 0
    assert preimage((a, b), 0b11) == 0b11


def test_placement_independence_examples():
    assert is_placement_independent(FreeMatroid(3), (0, 0, 0))
    assert not is_placement_independent(UniformMatroid(2, 1), (0, 0))
    part = PartitionMatroid(3, ((0, 1), (2,)), (1, 1))
    assert is_placement_independent(part, (0, 1, 0))
    assert not is_placement_independent(part, (0, 0, 1))


def test_out_of_range_rejected():
    with pytest.raises(ValueError):
        rank(FreeMatroid(2), 0b100)


def test_invalid_parameters():
    with pytest.raises(ValueError):
        UniformMatroid(2, 3)
    with pytest.raises(ValueError):
        PartitionMatroid(3, ((0,), (1,)), (1, 1))
    with pytest.raises(ValueError):
        PartitionMatroid(2, ((0, 1), (1,)), (1, 1))
    with pytest.raises(ValueError):
        GraphicMatroid(1, 2, ((0, 5),))
    with pytest.raises(ValueError):
        LinearGF2Matroid(2, ((1, 0), (1,)))


def test_partition_limits_below_size_accepted():
    m = PartitionMatroid(3, ((0, 1, 2),), (1,))
    assert rank(m, 0b111) == 1


def test_matroid_from_spec_round_trip():
    specs = [
        FreeMatroid(2),
        UniformMatroid(3, 2),
        PartitionMatroid(3, ((0, 2), (1,)), (1, 0)),
        GraphicMatroid(2, 3, ((0, 1), (1, 2))),
        LinearGF2Matroid(2, ((1, 1), (0, 1))),
    ]
    for m in specs:
        again = matroid_from_spec(m.kind, m.size, m.params())
        assert [again.rank(x) for x in range(1 << m.size)] == [m.rank(x) for x in range(1 << m.size)]
    with pytest.raises(ValueError):
        matroid_from_spec("vector", 1, {})


def graphic_forest(edges, x):
    """Independence by brute force: no subset of x forms a cycle (closed walk on distinct edges)."""
    chosen = [edges[i] for i in members(x)]
    if any(a == b for a, b in chosen):
        return False
    verts = {v for e in chosen for v in e}
    # a forest on k touched vertices with c components has k - c edges
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            v = parent[v]
        return v

    comps = len(verts)
    for a, b in chosen:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            comps -= 1
    return len(chosen) == len(verts) - comps


def gf2_independent(columns, x):
    """No nonempty subset sums to zero."""
    cols = [columns[i] for i in members(x)]
    for k in range(1, len(cols) + 1):
        for combo in itertools.combinations(cols, k):
            if all(sum(c[j] for c in combo) % 2 == 0 for j in range(len(combo[0]))):
                return False
    return True


def rank_from_independence(indep, x):
    return max(popcount(y) for y in submasks(x) if indep(y))


@settings(max_examples=60)
@given(st.integers(1, 8), st.integers(2, 4), st.data())
def test_graphic_matches_brute_force(size, nv, data):
    edges = tuple(data.draw(st.lists(st.tuples(st.integers(0, nv - 1), st.integers(0, nv - 1)),
                                     min_size=size, max_size=size)))
    m = GraphicMatroid(size, nv, edges)
    for x in range(1 << size):
        assert m.is_independent(x) == graphic_forest(edges, x)
    assert m.rank(m.ground) == rank_from_independence(lambda y: graphic_forest(edges, y), m.ground)


@settings(max_examples=60)
@given(st.integers(1, 8), st.integers(1, 4), st.data())
def test_gf2_matches_brute_force(size, rows, data):
    cols = tuple(data.draw(st.lists(st.tuples(*[st.integers(0, 1)] * rows),
                                    min_size=size, max_size=size)))
    m = LinearGF2Matroid(size, cols)
    for x in range(1 << size):
        assert m.is_independent(x) == gf2_independent(cols, x)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 6).flatmap(lambda s: matroids(s)))
def test_rank_axioms(m):
    full = m.ground
    for x in range(full + 1):
        r = m.rank(x)
        assert 0 <= r <= popcount(x)
        for e in members(full & ~x):
            assert m.rank(x | 1 << e) - r in (0, 1)
    for x, y in itertools.product(range(full + 1), repeat=2):
        assert m.rank(x | y) + m.rank(x & y) <= m.rank(x) + m.rank(y)


@settings(max_examples=40)
@given(st.integers(1, 6).flatmap(lambda s: st.tuples(matroids(s), st.just(s))), st.data())
def test_placement_independence_definition(ms, data):
    m, size = ms
    n = data.draw(st.integers(1, 3))
    placement = tuple(data.draw(st.lists(st.integers(0, n - 1), min_size=size, max_size=size)))
    expected = all(m.is_independent(preimage(placement, 1 << v)) for v in range(n))
    assert is_placement_independent(m, placement) == expected


def test_exhaustive_axioms_size_ten():
    for m in (PartitionMatroid(10, ((0, 1, 2, 3), (4, 5, 6), (7, 8, 9)), (2, 1, 3)),
              UniformMatroid(10, 4),
              GraphicMatroid(10, 5, tuple(itertools.combinations(range(5), 2)))):
        full = m.ground
        for x in nonempty_submasks(full):
            r = m.rank(x)
            low = x & (x - 1)
            assert m.rank(low) <= r <= m.rank(low) + 1
        assert m.rank(full) == {"partition": 6, "uniform": 4, "graphic": 4}[m.kind]
