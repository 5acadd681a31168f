import random

import networkx as nx
from hypothesis import strategies as st

from hellykit import FiniteGraph


def random_connected(rng, n, p=None):
    """Random connected graph: a random spanning tree plus independent extra edges."""
    p = rng.uniform(0.1, 0.7) if p is None else p
    order = list(range(n))
    rng.shuffle(order)
    edges = {tuple(sorted((order[i], order[rng.randrange(i)]))) for i in range(1, n)}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    return FiniteGraph(n, sorted(edges))


@st.composite
def connected_graphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return random_connected(random.Random(seed), n)


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def random_tree(rng, n):
    return FiniteGraph(n, [(i, rng.randrange(i)) for i in range(1, n)])


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
