import pytest

from acyclic3 import (
    BudgetExceeded,
    all_acyclic_colorings,
    build_graph,
    exact_aci,
    verify_acyclic,
    verify_proper,
)
from acyclic3.oracle import search_order
from conftest import complete, complete_bipartite, cycle, k33, k4, path, star


@pytest.mark.parametrize(
    "g, aci",
    [(k4(), 5), (k33(), 5), (path(4), 2), (cycle(4), 3), (cycle(5), 3), (star(4), 4), (path(2), 1)],
)
def test_exact_values(g, aci):
    r = exact_aci(g)
    assert r.aci == aci
    assert verify_proper(g, r.witness).ok and verify_acyclic(g, r.witness).ok
    assert len(set(r.witness.colors)) == aci
    assert r.nodes_explored > 0


def test_edgeless():
    r = exact_aci(build_graph(3, []))
    assert r.aci == 0 and r.nodes_explored == 0


def test_edge_guard():
    with pytest.raises(ValueError, match="guard"):
        exact_aci(complete_bipartite(4, 5))
    assert exact_aci(complete_bipartite(3, 7), max_edges=21).aci == 7


def test_kmax_too_small_reports_bounds():
    with pytest.raises(BudgetExceeded) as info:
        exact_aci(k4(), k_max=4)
    assert info.value.lower_bound == 5
    assert info.value.upper_bound == 5


def test_node_budget():
    with pytest.raises(BudgetExceeded) as info:
        exact_aci(k33(), node_limit=5)
    assert info.value.nodes >= 5 and info.value.lower_bound >= 3


def test_monotone_in_k():
    g = k33()
    assert not list(all_acyclic_colorings(g, 4, 1))
    for k in (5, 6, 7):
        assert list(all_acyclic_colorings(g, k, 1))


@pytest.mark.parametrize("g, k, count", [(path(2), 2, 2), (complete(3), 3, 6), (cycle(4), 2, 0)])
def test_enumeration_counts(g, k, count):
    found = list(all_acyclic_colorings(g, k, 1000))
    assert len(found) == count
    assert len({tuple(c.colors) for c in found}) == count


def test_enumeration_cap_and_order():
    found = [tuple(c.colors) for c in all_acyclic_colorings(path(4), 3, 5)]
    assert len(found) == 5
    assert found == sorted(found)


def test_enumeration_matches_brute_force():
    from itertools import product

    g = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])
    brute = set()
    for colors in product(range(1, 4), repeat=g.edge_count):
        if verify_proper(g, list(colors)).ok and verify_acyclic(g, list(colors)).ok:
            brute.add(colors)
    found = {tuple(c.colors) for c in all_acyclic_colorings(g, 3, 10_000)}
    assert found == brute


def test_search_order_prefers_reverse_peel():
    assert search_order(cycle(4)) == [3, 2, 1, 0]
    assert search_order(k4()) == list(range(6))
