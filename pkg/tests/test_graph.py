import math

import pytest
from hypothesis import given, strategies as st

from dynmatch.graph import (DuplicateEdgeError, EdgeRegistry, InvalidWeightError, SelfLoopError,
                            UnknownEdgeError, VertexRangeError, level_of)


def level_by_scan(w, alpha, offset=0.0, lo=-200, hi=200):
    """Independent oracle: the single integer whose interval holds w."""
    hits = [l for l in range(lo, hi) if alpha ** (l + offset) <= w < alpha ** (l + offset + 1)]
    assert len(hits) == 1
    return hits[0]


@pytest.mark.parametrize("w, alpha, offset, expected", [
    (4, 2, 0.0, 2),
    (1, 2, 0.0, 0),
    (0.5, 2, 0.0, -1),
    (3, 2, 0.0, 1),
])
def test_level_of_trivial(w, alpha, offset, expected):
    assert level_of(w, alpha, offset) == expected


def test_level_of_rounded_example():
    expected = level_by_scan(5, 2, 0.5)
    assert expected == 1
    assert level_of(5, 2, 0.5) == expected


@pytest.mark.parametrize("bad", [0, -1.0, math.inf, math.nan])
def test_level_of_rejects_bad_weight(bad):
    with pytest.raises(InvalidWeightError):
        level_of(bad, 2.0)


def test_level_of_rejects_small_alpha():
    with pytest.raises(ValueError):
        level_of(3.0, 1.0)


@given(st.floats(1e-30, 1e30), st.floats(1.01, 50), st.floats(0, 1, exclude_min=True))
def test_level_of_matches_interval(w, alpha, r):
    for off in (0.0, r):
        l = level_of(w, alpha, off)
        assert alpha ** (l + off) <= w < alpha ** (l + off + 1)


@given(st.floats(1e-6, 1e6), st.floats(1e-6, 1e6), st.floats(1.01, 10))
def test_level_of_monotone(a, b, alpha):
    lo, hi = sorted((a, b))
    assert level_of(lo, alpha) <= level_of(hi, alpha)


@pytest.mark.parametrize("alpha", [2.0, 3.512, 1.5])
def test_exact_boundaries_land_on_lower_level(alpha):
    for l in range(-20, 21):
        assert level_of(alpha ** l, alpha) == l
        assert level_of(alpha ** (l + 0.25), alpha, 0.25) == l


def test_level_of_agrees_with_scan_on_grid():
    for k in range(1, 400):
        w = k * 0.37
        assert level_of(w, 3.512, 0.3) == level_by_scan(w, 3.512, 0.3)


def test_register_and_unregister():
    reg = EdgeRegistry(8, 2.0)
    assert reg.register_edge(0, 1, 3) == 1
    assert (1, 0) in reg
    assert reg.neighbors(1, 0) == {1} and reg.neighbors(1, 1) == {0}
    with pytest.raises(DuplicateEdgeError):
        reg.register_edge(1, 0, 7)
    with pytest.raises(SelfLoopError):
        reg.register_edge(2, 2, 1)
    with pytest.raises(VertexRangeError):
        reg.register_edge(0, 8, 1)
    with pytest.raises(InvalidWeightError):
        reg.register_edge(0, 2, -3)
    assert reg.unregister_edge(1, 0) == (3.0, 1)
    assert len(reg) == 0 and reg.levels() == [] and reg.adjacency(1) == {}
    with pytest.raises(UnknownEdgeError):
        reg.unregister_edge(5, 6)


def test_reinsert_with_new_weight_recomputes_level():
    reg = EdgeRegistry(4, 2.0)
    reg.register_edge(0, 1, 3)
    reg.unregister_edge(0, 1)
    assert reg.register_edge(0, 1, 17) == 4
    assert reg.level(1, 0) == 4


@given(st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7), st.floats(0.01, 1000),
                          st.booleans()), max_size=60))
def test_registry_consistency(ops):
    reg = EdgeRegistry(8, 2.0)
    for u, v, w, delete in ops:
        if u == v:
            continue
        if (u, v) in reg and delete:
            reg.unregister_edge(u, v)
        elif (u, v) not in reg:
            reg.register_edge(u, v, w)
        assert len(reg) == sum(reg.level_size(l) for l in reg.levels())
        for l in reg.levels():
            for x, nbrs in reg.adjacency(l).items():
                for y in nbrs:
                    assert x in reg.neighbors(l, y)
                    assert reg.level(x, y) == l
