import pytest

from revgates.core import weight, weight_classes, word_decode
from revgates.hypergraphs import (
    SmallHypergraph,
    components,
    consecutive_3cycle_parity_route,
    cycling_group_check,
    cycling_group_order,
    hyperedges,
    swap_group_check,
    swap_group_order,
)

from oracles import components_by_bfs


def _blocks_as_words(part, q, n):
    return sorted(sorted(word_decode(c, n, q) for c in b) for b in part.blocks())


def _adjacent_g1(u, v):
    return sum(a != b for a, b in zip(u, v)) == 1


def _adjacent_g2(u, v):
    diff = [i for i, (a, b) in enumerate(zip(u, v)) if a != b]
    return len(diff) == 2 and diff[1] == diff[0] + 1 and (u[diff[0]], u[diff[1]]) == (v[diff[1]], v[diff[0]])


def test_g1_connected():
    assert components("G1", 2, 3).count == 1
    assert components("G1", 3, 2).count == 1


def test_g2_is_weight_classes():
    assert components("G2", 2, 4) == weight_classes(2, 4)
    assert components("G2", 2, 4).count == 5
    assert components("G2", 3, 3) == weight_classes(3, 3)


@pytest.mark.parametrize("kind,adj", [("G1", _adjacent_g1), ("G2", _adjacent_g2)])
def test_components_against_bfs(kind, adj):
    for q, n in [(2, 3), (3, 2), (3, 3)]:
        ref = sorted(sorted(c) for c in components_by_bfs(q, n, adj))
        assert _blocks_as_words(components(kind, q, n), q, n) == ref


def test_g3():
    assert components("G3", 2, 1).count == 2
    assert components("G3", 3, 1).count == 3
    assert components("G3", 2, 3).count == 1


def test_g4_splits_all_distinct_classes():
    part = components("G4", 3, 3)
    sizes = sorted(part.sizes())
    # 10 weight classes; (1,1,1) splits into two halves of 3
    assert part.count == 11
    assert sizes.count(3) == 2 + 6
    distinct = [b for b in part.blocks() if weight(word_decode(b[0], 3, 3), 3) == (1, 1, 1)]
    assert len(distinct) == 2
    assert components("G4", 2, 3) == weight_classes(2, 3)


def test_hyperedges_are_consistent():
    for kind in ("G1", "G2", "G3", "G4"):
        part = components(kind, 2, 3)
        from revgates.core import word_encode

        for e in hyperedges(kind, 2, 3):
            assert len({part.labels[word_encode(w, 2)] for w in e}) == 1


def test_swap_groups():
    path = SmallHypergraph(4, [(0, 1), (1, 2), (2, 3)])
    assert swap_group_order(path) == 24 and swap_group_check(path)
    assert swap_group_order(SmallHypergraph(4, [(0, 1), (2, 3)])) == 4
    assert swap_group_order(SmallHypergraph(3, [])) == 1


def test_cycling_groups():
    assert cycling_group_order(SmallHypergraph(4, [(0, 1, 2), (1, 2, 3)])) == 12
    assert cycling_group_order(SmallHypergraph(5, [(0, 1, 2), (2, 3, 4)])) == 60
    assert cycling_group_order(SmallHypergraph(3, [(0, 1, 2)])) == 3
    assert cycling_group_check(SmallHypergraph(6, [(0, 1, 2), (3, 4, 5)]))


def test_small_graph_errors():
    with pytest.raises(ValueError):
        SmallHypergraph(3, [(0, 1), (0, 1, 2)])
    with pytest.raises(ValueError):
        SmallHypergraph(3, [(0, 3)])
    with pytest.raises(ValueError):
        swap_group_order(SmallHypergraph(13, []))


def test_rotation_routes():
    assert consecutive_3cycle_parity_route(2, 3, (0, 1, 1), (0, 1, 1)) == []
    route = consecutive_3cycle_parity_route(2, 3, (0, 0, 1), (1, 0, 0))
    assert route is not None and len(route) == 1
    assert consecutive_3cycle_parity_route(3, 3, (0, 1, 2), (0, 2, 1)) is None
    with pytest.raises(ValueError):
        consecutive_3cycle_parity_route(2, 3, (0, 0, 1), (1, 1, 0))
