import random
import subprocess
import sys

import pytest

from acyclic3 import PartialColoring, Palette, candidate_colors, verify_acyclic, verify_proper
from acyclic3.generators import gen_random_3sparse
from conftest import backends, complete, complete_bipartite, cycle, k33, k4


def arrays(g):
    return [u for u, _ in g.edges], [v for _, v in g.edges]


def test_cycle_detection_finds_c4(kernel):
    g = cycle(4)
    eu, ev = arrays(g)
    assert sorted(kernel.find_bichromatic_cycle(4, eu, ev, [1, 2, 1, 2], 2)) == [0, 1, 2, 3]
    assert kernel.find_bichromatic_cycle(4, eu, ev, [1, 2, 1, 3], 3) is None


def test_cycle_detection_ignores_uncolored(kernel):
    g = cycle(4)
    eu, ev = arrays(g)
    assert kernel.find_bichromatic_cycle(4, eu, ev, [1, 2, 1, 0], 2) is None


@pytest.mark.parametrize("g, k, aci", [(k4(), 4, None), (k4(), 5, 5), (k33(), 5, 5), (cycle(5), 3, 3)])
def test_search_exact_values(kernel, g, k, aci):
    eu, ev = arrays(g)
    sols, nodes, complete_ = kernel.search(g.vertex_count, eu, ev, list(range(g.edge_count)), k, True, 1, 0, 0.0)
    assert complete_
    assert bool(sols) == (aci is not None)
    if sols:
        assert verify_proper(g, sols[0]).ok and verify_acyclic(g, sols[0]).ok


def test_search_node_limit(kernel):
    g = complete_bipartite(3, 4)
    eu, ev = arrays(g)
    sols, nodes, complete_ = kernel.search(g.vertex_count, eu, ev, list(range(12)), 4, True, 1, 10, 0.0)
    assert nodes == 10 and not complete_


@pytest.mark.skipif(len(backends()) < 2, reason="compiled kernels not built")
def test_backends_agree_on_random_inputs():
    py, cy = backends()
    rnd = random.Random(11)
    for seed in range(60):
        g = gen_random_3sparse(12, 5, rnd.randint(10, 16), seed)
        eu, ev = arrays(g)
        k = g.max_degree() + rnd.randint(0, 1)
        order = list(range(g.edge_count))
        rnd.shuffle(order)
        for sym in (True, False):
            a = py.search(g.vertex_count, eu, ev, order, k, sym, 3, 5000, 0.0)
            b = cy.search(g.vertex_count, eu, ev, order, k, sym, 3, 5000, 0.0)
            assert a == b
        # proper colorings with and without two-colored cycles
        c = PartialColoring(g)
        for e in order:
            options = sorted(candidate_colors(c, e, Palette(k)))
            if options:
                c.assign(e, rnd.choice(options))
        colors = list(c.colors)
        ra = py.find_bichromatic_cycle(g.vertex_count, eu, ev, colors, k)
        rb = cy.find_bichromatic_cycle(g.vertex_count, eu, ev, colors, k)
        assert ra == rb


def test_pure_python_switch():
    code = "import acyclic3; print(acyclic3.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env={"ACYCLIC3_PURE_PYTHON": "1", "PATH": ""},
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_edgeless_search(kernel):
    sols, nodes, complete_ = kernel.search(3, [], [], [], 1, True, 1, 0, 0.0)
    assert sols == [[]] and nodes == 0 and complete_


def test_dense_search_matches_between_orders(kernel):
    g = complete(4)
    eu, ev = arrays(g)
    for order in ([0, 1, 2, 3, 4, 5], [5, 4, 3, 2, 1, 0]):
        sols, _, _ = kernel.search(4, eu, ev, order, 5, True, 1, 0, 0.0)
        assert sols
