"""Acceptance suite: one PASS/FAIL line per criterion.

The lines are printed as each test finishes (visible with ``-s``) and again
in the terminal summary.  Run ``python tests/test_acceptance.py`` for the
lines alone.
"""

import random
import time
from fractions import Fraction

import numpy as np

import oracles
from conftest import random_connected
from graphgen import all_graphs, connected_graphs, edges_of, is_connected
from helpers_affine import box_symmetries, signed_permutations
from pathgen import endpoint_witnesses, interior, random_helly_graph, random_local_path
from hellykit import (AffineMap, Budget, FiniteGraph, KingGrid, WeightedDigraph, build_clique_path,
                      classify, combinatorial_dimension, complete_graph, cycle_graph, decide_action,
                      elliptic_group, fixed_set_distance, geodesic_orbit_search, helly_hull, is_clique_path,
                      is_helly, is_k_large, is_local_clique_path, min_mean_cycle, path_graph,
                      transverse_distance, verify_local_to_global, wheel_graph)

RESULTS = {}


def record(num, ok, detail):
    line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[num] = line
    print(line)
    assert ok, line


def _graph(masks):
    return FiniteGraph(len(masks), edges_of(masks))


# -- 1 -----------------------------------------------------------------------------

def test_criterion_01_helly_recognition():
    t0 = time.time()
    graphs = [_graph(m) for n in range(1, 7) for m in connected_graphs(n)]
    rng = random.Random(101)
    graphs += [random_connected(rng, 7) for _ in range(200)]
    bad = [g for g in graphs if is_helly(g) != oracles.helly_by_radii(g)]
    dt = time.time() - t0
    record(1, not bad and dt < 300,
           f"{len(graphs)} graphs (all connected <= 6 vertices + 200 random on 7), "
           f"{len(bad)} disagreements, {dt:.1f}s")


# -- 2 -----------------------------------------------------------------------------

def test_criterion_02_hull():
    rng = random.Random(102)
    budget = Budget(max_vertices=4000)
    failures, grew = [], 0
    for i in range(100):
        # sparse graphs keep long induced cycles, so the hull grows
        g = random_connected(rng, rng.randint(1, 8), rng.uniform(0.0, 0.35))
        h = helly_hull(g, budget)
        grew += h.graph.n > g.n
        hg = h.graph
        if not is_helly(hg, budget):
            failures.append((i, "hull not Helly"))
        if any(hg.dist[h.embedding[u]][h.embedding[v]] != g.dist[u][v] for u in range(g.n) for v in range(g.n)):
            failures.append((i, "not isometric"))
        hh = helly_hull(hg, budget)
        if hh.graph.n != hg.n or sorted(hh.embedding) != list(range(hg.n)):
            failures.append((i, "not idempotent"))
    c4, c5 = helly_hull(cycle_graph(4)).graph.n, helly_hull(cycle_graph(5)).graph.n
    record(2, not failures and (c4, c5) == (5, 6),
           f"100 random graphs ({grew} non-Helly), {len(failures)} failures; C4 -> {c4}, C5 -> {c5} vertices")


# -- 3 -----------------------------------------------------------------------------

def test_criterion_03_dimension():
    trees = [_graph(m) for n in range(1, 9) for m in all_graphs(n)
             if len(edges_of(m)) == n - 1 and is_connected(m)]
    cases = [("K1", FiniteGraph(1), 0), ("P4", path_graph(4), 1), ("K3", complete_graph(3), 1),
             ("C4", cycle_graph(4), 2), ("king 3x3", KingGrid(2, [3, 3]).to_finite()[0], 2)]
    cases += [(f"tree{t.n}", t, 1 if t.n > 1 else 0) for t in trees]
    bad = []
    for name, g, want in cases:
        got = combinatorial_dimension(g)
        if got != want or oracles.sampled_dimension(g.dist, 4) != want:
            bad.append(name)
    t0 = time.time()
    cube = KingGrid(3, [3, 3, 3]).to_finite()[0]
    got3, sampled3 = combinatorial_dimension(cube), oracles.sampled_dimension(cube.dist, 4)
    dt = time.time() - t0
    if (got3, sampled3) != (3, 3):
        bad.append("king 3x3x3")
    record(3, not bad and dt < 600,
           f"{len(cases) + 1} graphs incl. all {len(trees)} trees <= 8 vertices, mismatches {bad}; "
           f"3x3x3 box dim {got3} (sampled {sampled3}) in {dt:.1f}s")


# -- 4 and 9 -------------------------------------------------------------------------

HYPERBOLIC_FROM_4 = []


def _affine_maps():
    for d in (1, 2):
        for M in signed_permutations(d):
            for b in np.ndindex(*[7] * d):
                yield d, AffineMap(M, [int(c) - 3 for c in b])


def test_criterion_04_classification():
    total, unknown, bad = 0, 0, []
    for d, g in _affine_maps():
        view = KingGrid(d)
        res = classify(g, view)
        total += 1
        is_translation = all(g.M[i][j] == int(i == j) for i in range(d) for j in range(d))
        if res.verdict == "unknown":
            unknown += 1
        elif g.order() is not None:
            if res.verdict != "elliptic" or g.apply(res.clique) != res.clique or not view.is_clique(res.clique):
                bad.append(("elliptic", g))
        else:
            if res.verdict != "hyperbolic":
                bad.append(("hyperbolic", g))
                continue
            HYPERBOLIC_FROM_4.append((g, view, res))
            if is_translation:
                tl = res.translation_length
                if tl != max(abs(c) for c in g.b) or Fraction(tl).denominator != 1:
                    bad.append(("translation", g))
    record(4, unknown == 0 and not bad,
           f"{total} signed-permutation affine maps (d <= 2, |b| <= 3): {unknown} unknown, "
           f"{len(HYPERBOLIC_FROM_4)} hyperbolic, {len(bad)} wrong")


def test_criterion_09_invariant_axes():
    if not HYPERBOLIC_FROM_4:
        _collect_hyperbolic()
    bad = []
    for g, view, res in HYPERBOLIC_FROM_4:
        cert = res.certificate
        if not cert.verify(2 * cert.window):
            bad.append(g)
            continue
        h = g ** cert.a
        if any(h.apply(cert.clique(n)) != cert.clique(n + 1) for n in range(-2 * cert.window, 2 * cert.window)):
            bad.append(g)
    record(9, bool(HYPERBOLIC_FROM_4) and not bad,
           f"{len(HYPERBOLIC_FROM_4)} certificates re-verified on doubled windows, {len(bad)} failures")


def _collect_hyperbolic():
    for d, g in _affine_maps():
        if g.order() is None:
            res = classify(g, KingGrid(d))
            if res.verdict == "hyperbolic":
                HYPERBOLIC_FROM_4.append((g, KingGrid(d), res))


# -- 5 -----------------------------------------------------------------------------

def test_criterion_05_min_mean_cycle():
    rng = random.Random(105)
    wrong, over, literal, twice = 0, 0, 0, 0
    for _ in range(200):
        n = rng.randint(1, 7)
        w = [[Fraction(rng.randint(0, 10), 2) for _ in range(n)] for _ in range(n)]
        got = min_mean_cycle(WeightedDigraph(w))
        wrong += got != oracles.min_mean_simple_cycles(w)
        # weights live in (1/2)Z, so the bound is stated in half-units
        over += (2 * got).denominator > n
        literal += got.denominator > n
        twice += got.denominator > 2 * n
    record(5, wrong == 0 and over == 0 and twice == 0,
           f"200 digraphs: {wrong} disagreements; denominator in half-units > n: {over}; "
           f"raw denominator > 2n: {twice}; raw denominator > n: {literal}")


# -- 6 -----------------------------------------------------------------------------

def _min_dist(view, s, t):
    return min(view.distance(u, v) for u in s for v in t)


def _window_ok(path):
    cl, view, L = path.cliques, path.view, path.L
    return all(view.metric(_min_dist(view, cl[i], cl[j])) >= (j - i) * L
               for i in range(len(cl)) for j in range(i + 1, len(cl)))


def test_criterion_06_local_to_global():
    rng = random.Random(106)
    king = KingGrid(2)
    counts, bad, short = {"king L=1": 0, "king L=2": 0, "helly": 0}, 0, 0
    for step in (1, 2):
        for _ in range(150):
            path = random_local_path(king, step, 10, rng)
            win = interior(path)
            ok = (is_local_clique_path(path) and len(win) == 8 and verify_local_to_global(win)
                  and _window_ok(win) and endpoint_witnesses(path) is not None)
            bad += not ok
            counts[f"king L={step}"] += 1
    for _ in range(200):
        g = random_helly_graph(rng)
        step = rng.choice([1, 2])
        length = min(10, g.diameter // step + 1)
        path = random_local_path(g, step, length, rng)
        win = interior(path) if len(path) > 2 else path
        short += len(win) < 8
        ok = is_local_clique_path(path) and verify_local_to_global(win) and _window_ok(win)
        bad += not ok
        counts["helly"] += 1
    record(6, bad == 0,
           f"{sum(counts.values())} local paths {counts}: {bad} counterexamples; "
           f"{short} Helly-graph windows shorter than 8 (diameter <= 9)")


# -- 7 -----------------------------------------------------------------------------

def _random_clique(rng, box):
    base = tuple(rng.randrange(k - 1) for k in box)
    cube = [tuple(b + (m >> i & 1) for i, b in enumerate(base)) for m in range(1 << len(box))]
    return frozenset(rng.sample(cube, rng.randint(1, len(cube))))


def test_criterion_07_build_clique_path():
    rng = random.Random(107)
    done, bad = 0, []
    while done < 100:
        box = rng.choice([(8, 8), (10, 10), (6, 6, 6)])
        view = KingGrid(len(box), list(box))
        s, t = _random_clique(rng, box), _random_clique(rng, box)
        d = transverse_distance(s, t, view)
        if not d or d > 6:
            continue
        L = rng.choice([k for k in range(1, d + 1) if d % k == 0])
        path = build_clique_path(s, t, L, view)
        if not (is_clique_path(path) and path.cliques[0] == s and path.cliques[-1] == t):
            bad.append((s, t, L))
        done += 1
    record(7, not bad, f"100 transverse pairs (nL <= 6): {len(bad)} failures")


# -- 8 -----------------------------------------------------------------------------

def test_criterion_08_hyperbolic_extraction():
    notes, ok = [], True
    line = KingGrid(1)
    refl = [AffineMap([[-1]], [0]), AffineMap([[-1]], [2])]
    v = decide_action(refl, line)
    L = fixed_set_distance(elliptic_group(refl[:1], line), elliptic_group(refl[1:], line), line).L
    ok &= v.verdict == "hyperbolic" and v.translation_length == 2 == 2 * L
    notes.append(f"reflections: {v.verdict} tl {v.translation_length}, L {L}")

    rng = random.Random(108)
    bad = 0
    for _ in range(50):
        box = rng.choice([(3, 3), (4, 4), (5, 5), (4, 6), (7, 7), (3, 3, 3)])
        view = KingGrid(len(box), list(box))
        syms = box_symmetries(box)
        gens = [AffineMap(*rng.choice(syms)) for _ in range(2)]
        res = decide_action(gens, view)
        bad += not (res.verdict == "elliptic" and view.is_clique(res.clique)
                    and all(g.apply(res.clique) == res.clique for g in gens))
    ok &= bad == 0
    notes.append(f"50 box pairs: {bad} not elliptic with a common clique")

    king = KingGrid(2)
    quarter = [AffineMap([[0, -1], [1, 0]], [0, 0]), AffineMap([[0, -1], [1, 0]], [2, -2])]
    examples = [("reflections", line, refl, (0,)), ("rotations", king, quarter, (0, 0))]
    growth_bad = 0
    for name, view, gens, x in examples:
        G, H = elliptic_group(gens[:1], view), elliptic_group(gens[1:], view)
        Lx = fixed_set_distance(G, H, view).L
        for n in range(1, 11):
            steps = geodesic_orbit_search(G, H, x, Lx, n, view)
            prefix = steps[0].element ** 0
            for k, s in enumerate(steps, 1):
                prefix = prefix * s.element
                growth_bad += view.distance(x, prefix(x)) != 2 * k * Lx
    ok &= growth_bad == 0
    notes.append(f"geodesic growth n <= 10 on both examples: {growth_bad} mismatches")
    record(8, ok, "; ".join(notes))


# -- 10 ----------------------------------------------------------------------------

def _adjacency(masks):
    n = len(masks)
    return np.array([[bool(masks[i] >> j & 1) for j in range(n)] for i in range(n)])


def test_criterion_10_k_large():
    rng = random.Random(110)
    total, bad, checked = 0, 0, 0
    for n in range(1, 10):
        graphs = connected_graphs(n)
        adj = np.stack([_adjacency(m) for m in graphs])
        shortest = oracles.shortest_induced_cycles(adj, max_len=7)
        sample = set(rng.sample(range(len(graphs)), min(40, len(graphs))))
        for i, m in enumerate(graphs):
            g = _graph(m)
            s = int(shortest[i])
            total += 1
            for k in range(4, 9):
                rep = is_k_large(g, k)
                expect = s == 0 or s >= k
                if rep.verdict != expect:
                    bad += 1
                elif not rep.verdict:
                    if len(rep.witness) != s or not oracles.is_induced_cycle(adj[i], rep.witness):
                        bad += 1
                    elif i in sample and k == 8:
                        checked += 1
                        bad += rep.witness != oracles.least_induced_cycle(adj[i], s)
    w6, c5 = wheel_graph(6), cycle_graph(5)
    named = (is_k_large(w6, 6).verdict and not is_k_large(w6, 7).verdict
             and is_k_large(c5, 5).verdict and not is_k_large(c5, 6).verdict)
    record(10, bad == 0 and named,
           f"{total} connected graphs <= 9 vertices, k = 4..8: {bad} disagreements "
           f"({checked} witnesses compared with the least induced cycle); W6 and C5 {'ok' if named else 'wrong'}")


if __name__ == "__main__":
    import sys
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                failed += 1
    print("\n".join(RESULTS[k] for k in sorted(RESULTS)))
    sys.exit(1 if failed else 0)
