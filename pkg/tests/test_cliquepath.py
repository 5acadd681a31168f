import random

import pytest
from hypothesis import given, settings, strategies as st

from pathgen import endpoint_witnesses, interior, random_helly_graph, random_local_path
from hellykit import (AffineMap, BudgetExceeded, CliquePath, InvalidInput, KingGrid, NotTransverse,
                      build_clique_path, invariant_clique_path, is_clique_path, is_local_clique_path,
                      path_graph, transverse_distance, verify_local_to_global)

LINE = KingGrid(1)
KING = KingGrid(2)


def pts(*xs):
    return [frozenset({(x,)}) for x in xs]


def test_transverse_distance_examples():
    assert transverse_distance({(0, 0)}, {(3, -2)}, KING) == 3
    assert transverse_distance({(0,)}, {(2,), (3,)}, LINE) is None
    assert transverse_distance({(0, 0), (0, 1)}, {(3, 0), (3, 1)}, KING) == 3


def _random_clique(rng):
    x, y = rng.randint(-4, 4), rng.randint(-4, 4)
    block = [(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)]
    return frozenset(rng.sample(block, rng.randint(1, 4)))


def test_transverse_distance_is_symmetric():
    rng = random.Random(11)
    for _ in range(300):
        s, t = _random_clique(rng), _random_clique(rng)
        assert transverse_distance(s, t, KING) == transverse_distance(t, s, KING)


def test_is_clique_path_examples():
    assert is_clique_path(CliquePath(pts(0, 1, 2, 3), 1, LINE))
    assert is_clique_path(CliquePath(pts(0, 2, 4), 2, LINE))
    res = is_clique_path(CliquePath(pts(0, 1, 3), 1, LINE))
    assert not res and "0 and 2" in res.reason


def test_non_maximal_interior_rejected():
    path = CliquePath([{(0, 0)}, {(1, 0)}, {(2, 0)}], 1, KING)
    res = is_clique_path(path)
    assert not res and "not maximal" in res.reason


def test_is_local_clique_path_examples():
    stair = CliquePath([{(0, 0)}, {(1, 0), (1, 1)}, {(2, 1)}, {(3, 1), (3, 2)}], 1, KING)
    assert bool(is_local_clique_path(stair)) == all(
        is_clique_path(CliquePath(stair.cliques[i:i + 3], 1, KING)) for i in range(2))
    bad = CliquePath(pts(0, 1, 2, 2), 1, LINE)
    res = is_local_clique_path(bad)
    assert not res and res.reason.startswith("triple 1")
    assert is_local_clique_path(CliquePath(pts(*range(6)), 1, LINE))


def test_build_examples():
    path = build_clique_path({(0,)}, {(3,)}, 1, LINE)
    assert path.cliques == tuple(pts(0, 1, 2, 3))
    one = build_clique_path({(0, 0)}, {(1, 1)}, 1, KING)
    assert one.cliques == (frozenset({(0, 0)}), frozenset({(1, 1)}))
    king = build_clique_path({(0, 0)}, {(2, 0)}, 1, KING)
    assert king.cliques == (frozenset({(0, 0)}), frozenset({(1, -1), (1, 0)}), frozenset({(2, 0)}))


def test_build_errors():
    with pytest.raises(NotTransverse):
        build_clique_path({(0,)}, {(2,), (3,)}, 1, LINE)
    with pytest.raises(NotTransverse):
        build_clique_path({(0,)}, {(3,)}, 2, LINE)
    with pytest.raises(InvalidInput):
        build_clique_path({(0,), (2,)}, {(5,)}, 1, LINE)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.sampled_from([1, 2, 3]))
def test_built_paths_verify(seed, L):
    rng = random.Random(seed)
    box = KingGrid(2, [9, 9])
    for _ in range(30):
        s = _random_clique(rng)
        s = frozenset((a + 4, b + 4) for a, b in s)
        t = frozenset((a + 4, b + 4) for a, b in _random_clique(rng))
        if not all(box.contains(v) for v in s | t):
            continue
        d = transverse_distance(s, t, box)
        if d and d % L == 0:
            path = build_clique_path(s, t, L, box)
            assert is_clique_path(path)
            assert path.cliques[0] == s and path.cliques[-1] == t and len(path) == d // L + 1
            return


def test_local_to_global_examples():
    assert verify_local_to_global(CliquePath(pts(*range(10)), 1, LINE))
    with pytest.raises(InvalidInput):
        verify_local_to_global(CliquePath(pts(0, 1, 3), 1, LINE))


def test_finite_local_path_needs_interior_window():
    # a local clique-path whose first clique is not maximal: the bound fails at the end
    cl = [{(-1, 1), (0, 0)}, {(0, 1), (1, 1)}, {(1, 2), (2, 2)}, {(1, 3), (2, 3)}]
    path = CliquePath(cl, 1, KING)
    assert is_local_clique_path(path)
    assert not verify_local_to_global(path)
    assert verify_local_to_global(CliquePath(cl[1:], 1, KING))
    assert endpoint_witnesses(path) == ((0, 0), (1, 3))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.sampled_from([1, 2]))
def test_random_local_paths_are_global(seed, step):
    rng = random.Random(seed)
    path = random_local_path(KING, step, 10, rng)
    assert is_local_clique_path(path)
    assert verify_local_to_global(interior(path))
    assert endpoint_witnesses(path) is not None


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_random_local_paths_in_helly_graphs(seed):
    rng = random.Random(seed)
    g = random_helly_graph(rng)
    path = random_local_path(g, 1, min(10, g.diameter + 1), rng)
    assert is_local_clique_path(path)
    assert verify_local_to_global(interior(path))


def test_invariant_path_examples():
    cert = invariant_clique_path(AffineMap([[1]], [1]), LINE)
    assert (cert.a, cert.L, cert.period) == (1, 1, 1)
    assert [cert.clique(n) for n in range(-2, 3)] == pts(-2, -1, 0, 1, 2)
    diag = invariant_clique_path(AffineMap([[1, 0], [0, 1]], [1, 1]), KING)
    assert (diag.a, diag.L, diag.period) == (1, 1, 1) and len(diag.cliques[0]) <= 2
    with pytest.raises(BudgetExceeded):
        invariant_clique_path(AffineMap([[0, -1], [1, 0]], [2, 0]), KingGrid(2, [3, 3]))


def test_certificate_survives_doubled_window():
    rng = random.Random(5)
    for _ in range(15):
        M = rng.choice([[[1, 0], [0, 1]], [[1, 0], [0, -1]], [[0, 1], [1, 0]], [[-1, 0], [0, 1]]])
        g = AffineMap(M, [rng.randint(-3, 3), rng.randint(-3, 3)])
        if g.order() is not None:
            continue
        cert = invariant_clique_path(g, KING)
        assert cert.verify(2 * cert.window)
        h = g ** cert.a
        for n in range(-3, 3):
            assert h.apply(cert.clique(n)) == cert.clique(n + 1)


def test_path_graph_line_cliques():
    g = path_graph(5)
    assert build_clique_path({0}, {4}, 2, g).cliques == (frozenset({0}), frozenset({2}), frozenset({4}))
