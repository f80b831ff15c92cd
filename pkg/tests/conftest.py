import importlib

import pytest

from acyclic3 import build_graph
from acyclic3.generators import complete, complete_bipartite, cycle, path, star


def k4():
    return complete(4)


def k33():
    return complete_bipartite(3, 3)


def k34_minus_edge():
    g = complete_bipartite(3, 4)
    return build_graph(g.vertex_count, g.edges[1:])


def backends():
    """Kernel modules available in this build: always Python, Cython when compiled."""
    mods = [importlib.import_module("acyclic3._kernels_py")]
    try:
        mods.append(importlib.import_module("acyclic3._kernels"))
    except ImportError:
        pass
    return mods


@pytest.fixture(params=backends(), ids=lambda m: m.BACKEND)
def kernel(request):
    return request.param


__all__ = ["k4", "k33", "k34_minus_edge", "complete", "complete_bipartite", "cycle", "path", "star"]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import REPORT
    except ImportError:
        return
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in REPORT:
            terminalreporter.write_line(line)
