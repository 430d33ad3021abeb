import random

from hypothesis import given, settings, strategies as st

from dynmatch.graph import EdgeRegistry
from dynmatch.levels import SurrogateLevelMatcher


def setup(edges, level=0):
    reg = EdgeRegistry(10, 2.0)
    lm = SurrogateLevelMatcher(reg)
    for u, v in edges:
        reg.register_edge(u, v, 1.5)
        lm.lm_insert(level, u, v)
    return reg, lm


def is_maximal(reg, lm, level):
    """Exhaustive: no edge of E_l has both endpoints unmatched."""
    return all(lm.mate(level, u) is not None or lm.mate(level, v) is not None
               for u, v, _, l in reg.edges() if l == level)


def test_insert_examples():
    reg, lm = setup([])
    reg.register_edge(0, 1, 1.5)
    d = lm.lm_insert(0, 0, 1)
    assert d.added == [(0, 1)] and d.removed == []
    reg.register_edge(1, 2, 1.5)
    assert not lm.lm_insert(0, 1, 2)
    reg.register_edge(2, 3, 1.5)
    assert lm.lm_insert(0, 2, 3).added == [(2, 3)]


def test_delete_only_edge():
    reg, lm = setup([(0, 1)])
    reg.unregister_edge(0, 1)
    d = lm.lm_delete(0, 0, 1)
    assert d.removed == [(0, 1)] and d.added == []
    assert lm.lm_is_empty(0)


def test_delete_triggers_surrogate():
    reg, lm = setup([(0, 1), (1, 2)])
    reg.unregister_edge(0, 1)
    d = lm.lm_delete(0, 0, 1)
    assert d.removed == [(0, 1)] and d.added == [(1, 2)]
    assert is_maximal(reg, lm, 0)


def test_delete_unmatched_edge_is_silent():
    reg, lm = setup([(0, 1), (1, 2)])
    reg.unregister_edge(1, 2)
    assert not lm.lm_delete(0, 1, 2)
    assert lm.matched_edges(0) == [(0, 1)]


def test_is_empty():
    reg, lm = setup([])
    assert lm.lm_is_empty(3)
    reg.register_edge(0, 1, 1.5)
    lm.lm_insert(0, 0, 1)
    assert not lm.lm_is_empty(0)


def test_surrogate_picks_smallest_free_neighbour():
    reg, lm = setup([(4, 5), (4, 9), (4, 7), (6, 7)])
    reg.unregister_edge(4, 5)
    d = lm.lm_delete(0, 4, 5)
    # 7 is taken by (6, 7), 9 is the smallest free neighbour of 4
    assert d.added == [(4, 9)]


@settings(max_examples=60)
@given(st.randoms(use_true_random=False))
def test_random_ops_keep_maximal_matching(rng):
    reg = EdgeRegistry(9, 2.0)
    lm = SurrogateLevelMatcher(reg)
    live = []
    for _ in range(80):
        before = set(lm.matched_edges(0))
        if live and rng.random() < 0.45:
            u, v = live.pop(rng.randrange(len(live)))
            reg.unregister_edge(u, v)
            d = lm.lm_delete(0, u, v)
        else:
            u, v = rng.sample(range(9), 2)
            if (u, v) in reg:
                continue
            reg.register_edge(u, v, 1.5)
            live.append((u, v))
            d = lm.lm_insert(0, u, v)
        after = set(lm.matched_edges(0))
        assert not set(d.added) & set(d.removed)
        assert after == (before - set(d.removed)) | set(d.added)
        assert is_maximal(reg, lm, 0)
        used = [x for e in after for x in e]
        assert len(used) == len(set(used))
        assert lm.lm_is_empty(0) == (reg.level_size(0) == 0)
