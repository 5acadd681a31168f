"""Groups generated by elliptic automorphisms: common fixed cliques or hyperbolic elements.

Given two elliptic groups G and H, the engine measures the distance L between
their invariant half-integer points.  If L = 0 the groups share a fixed point.
Otherwise it searches products s_k = g_k h_k whose partial products push the
base point exactly 2L further each step, pigeonholes on the local data along
that geodesic, and extracts an element certified hyperbolic by an invariant
clique-path.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

from .cliquepath import _transverse_hops, invariant_clique_path
from .formats import clique_json, frac_str, vertex_json
from .errors import (DEFAULT_BUDGET, BudgetExceeded, InvalidInput, NotHelly,
                     SearchExhausted, SubdivisionInsufficient)
from .graph import FiniteGraph, KingGrid, common_neighbors
from .hull import is_helly
from .isometry import classify
from .points import FinitePoints, GridPoints, barycenter, group_orbit, point_model


@dataclass
class EllipticGroup:
    generators: tuple
    view: object
    fixed_points: list
    clique: frozenset
    model: object = field(repr=False, default=None)


def _vertex_first_key(model):
    """Preference among invariant points: vertices first, then small, then lexicographic."""
    if isinstance(model, FinitePoints):
        def key(p):
            v = p.vertex()
            return (0, v, ()) if v is not None else (1, p.max_value, p.twice)
    else:
        def key(p):
            integral = all(c.denominator == 1 for c in p)
            return (0 if integral else 1, max(abs(c) for c in p), p)
    return key


def _finite_view(view):
    return isinstance(view, FiniteGraph) or (isinstance(view, KingGrid) and view.box is not None)


def elliptic_group(generators, view, budget=DEFAULT_BUDGET, scale=2):
    """Invariant half-integer points and a stabilized clique of ``<generators>``.

    On king grids ``scale`` selects the point lattice ``(Z/scale)^d``.
    """
    gens = tuple(generators)
    if not gens:
        raise InvalidInput("a group needs at least one generator")
    model = point_model(view, budget, scale)
    if isinstance(model, GridPoints):
        orbit = group_orbit(gens, (0,) * view.dim, budget.max_orbit)
        if orbit is None:
            raise BudgetExceeded("group orbit of the origin is not bounded within the budget")
        fixed = model.invariant(gens, center=barycenter(orbit))
    else:
        fixed = model.invariant(gens)
    if not fixed:
        raise SubdivisionInsufficient("no invariant half-integer point")
    fixed.sort(key=_vertex_first_key(model))
    clique = model.clique(fixed[0])
    if any(g.apply(clique) != clique for g in gens):
        raise NotHelly("clique of an invariant point is not invariant")
    return EllipticGroup(gens, view, fixed, clique, model)


class FixedSetDistance(NamedTuple):
    L: Fraction
    x: object
    y: object


def fixed_set_distance(G, H, view, budget=DEFAULT_BUDGET):
    """Least distance between a G-invariant and an H-invariant half-integer point.

    Ties are broken lexicographically on the witnesses.  On infinite views the
    minimum is over the exploration window around each group's fixed data.
    """
    model = G.model or point_model(view, budget)
    if not G.fixed_points or not H.fixed_points:
        raise SubdivisionInsufficient("a group has no invariant half-integer point")
    sk = model.sort_key
    hset = {sk(q): q for q in H.fixed_points}
    common = sorted((p for p in G.fixed_points if sk(p) in hset), key=sk)
    if common:
        return FixedSetDistance(Fraction(0), common[0], common[0])
    best = None
    for p in sorted(G.fixed_points, key=sk):
        for q in sorted(H.fixed_points, key=sk):
            d = Fraction(model.distance(p, q))
            if best is None or d < best[0]:
                best = (d, p, q)
    return FixedSetDistance(*best)


# -- words ------------------------------------------------------------------------

def group_words(gens, label, max_len, identity):
    """Nonempty words (shortlex) over ``gens``, one per distinct element."""
    out = []
    seen = set()
    layer = [((), identity)]
    for _ in range(max_len):
        nxt = []
        for word, elem in layer:
            for i, g in enumerate(gens):
                w = word + ((label, i),)
                e = elem * g
                if e.key() in seen:
                    continue
                seen.add(e.key())
                out.append((w, e))
                nxt.append((w, e))
        layer = nxt
    return out


class Step(NamedTuple):
    g_word: tuple
    h_word: tuple
    element: object

    @property
    def word(self):
        return self.g_word + self.h_word


def geodesic_orbit_search(G, H, x, L, n, view, budget=DEFAULT_BUDGET):
    """Products ``s_k = g_k h_k`` with ``d(x, s_1...s_k x) = 2kL`` for k <= n.

    Depth-first over prefixes in shortlex candidate order with memoized dead
    prefixes, so the result is the lexicographically least such sequence.
    """
    L = Fraction(L)
    if L <= 0:
        raise InvalidInput("the fixed sets must be at positive distance")
    model = G.model or point_model(view, budget)
    ident = G.generators[0] ** 0
    gw = group_words(G.generators, "G", budget.max_word_len, ident)
    hw = group_words(H.generators, "H", budget.max_word_len, ident)
    cands = [Step(a, b, ea * eb) for a, ea in gw for b, eb in hw]
    dead = set()
    best_prefix = []
    nodes = 0
    chosen = []

    def rec(k, prefix):
        nonlocal nodes, best_prefix
        if k == n:
            return True
        state = (k, prefix.key())
        if state in dead:
            return False
        for s in cands:
            nodes += 1
            if nodes > budget.max_nodes:
                raise BudgetExceeded("geodesic search exceeded the node budget", partial=len(best_prefix))
            nxt = prefix * s.element
            if model.distance(x, model.act(nxt, x)) != 2 * (k + 1) * L:
                continue
            chosen.append(s)
            if len(chosen) > len(best_prefix):
                best_prefix = list(chosen)
            if rec(k + 1, nxt):
                return True
            chosen.pop()
        dead.add(state)
        return False

    if not rec(0, ident):
        raise SearchExhausted(f"no geodesic extension beyond step {len(best_prefix)}", prefix=best_prefix)
    return list(chosen)


# -- verdicts ---------------------------------------------------------------------

@dataclass
class ActionVerdict:
    verdict: str
    clique: Optional[frozenset] = None
    word: tuple = ()
    element: object = None
    certificate: object = None
    translation_length: Optional[Fraction] = None
    L: Optional[Fraction] = None
    search_depth: int = 0
    diagnostics: dict = field(default_factory=dict)

    def to_json(self):
        out = {"verdict": self.verdict}
        if self.clique is not None:
            out["clique"] = clique_json(self.clique)
        if self.verdict == "hyperbolic":
            out["word"] = [list(w) for w in self.word]
            out["translation_length"] = frac_str(self.translation_length)
            if self.certificate is not None:
                out["certificate"] = self.certificate.to_json()
        if self.L is not None:
            out["L"] = frac_str(self.L)
        out["search_depth"] = self.search_depth
        if self.diagnostics:
            out["diagnostics"] = {k: (vertex_json(v) if isinstance(v, tuple) else v)
                                  for k, v in self.diagnostics.items()}
        return out


def _center_clique(gens, graph):
    """Invariant clique by iterated ball-intersection centres of a finite orbit."""
    S = frozenset(group_orbit(gens, 0, graph.n))
    for _ in range(graph.n + 1):
        if graph.is_clique(S):
            return S
        r = 0
        while True:
            C = frozenset(u for u in range(graph.n) if all(graph.dist[u][s] <= r for s in S))
            if C:
                break
            r += 1
        if C == S:
            break
        S = C
    raise SubdivisionInsufficient("no invariant clique found by centre iteration")


def common_clique(gens, view, budget=DEFAULT_BUDGET):
    """A clique stabilized by every generator of a group with bounded orbits."""
    if isinstance(view, FiniteGraph):
        try:
            grp = elliptic_group(gens, view, budget)
            return grp.clique, grp.fixed_points[0]
        except (BudgetExceeded, SubdivisionInsufficient):
            return _center_clique(gens, view), None
    if isinstance(view, KingGrid):
        orbit = group_orbit(gens, (0,) * view.dim, budget.max_orbit)
        if orbit is None:
            raise BudgetExceeded("group orbit is not bounded within the budget")
        center = barycenter(orbit)
        return GridPoints(view).clique(center), center
    raise InvalidInput(f"unsupported view {view!r}")


def _check_finite_helly(view, budget):
    if isinstance(view, FiniteGraph) and view.n <= budget.max_vertices and not is_helly(view, budget):
        raise NotHelly(f"{view!r} is not Helly")


def _elliptic_verdict(gens, view, budget, L=None):
    clique, point = common_clique(gens, view, budget)
    if any(g.apply(clique) != clique for g in gens):
        raise NotHelly("common clique check failed")
    return ActionVerdict("elliptic", clique=clique, L=L,
                         diagnostics={} if point is None else {"fixed_point": _point_json(point)})


def _point_json(p):
    if hasattr(p, "to_json"):
        return p.to_json()
    return [frac_str(c) for c in p]


def _inverse_word(word, gens_by_label):
    out = []
    for label, i in reversed(word):
        g = gens_by_label[label][i]
        order = g.order()
        if order is None:
            raise InvalidInput("inverse of an infinite-order generator")
        out.extend([(label, i)] * (order - 1))
    return tuple(out)


def _reduce_word(word, gens_by_label):
    """Cancel runs of one letter whose length is a multiple of its order."""
    out = []
    for letter in word:
        out.append(letter)
        label, i = letter
        order = gens_by_label[label][i].order()
        if order is None:
            continue
        run = 0
        while run < len(out) and out[-1 - run] == letter:
            run += 1
        if run == order:
            del out[-run:]
    return tuple(out)


def word_element(word, gens_by_label, identity):
    e = identity
    for label, i in word:
        e = e * gens_by_label[label][i]
    return e


def _sub_family(model, sview, x, points, L, n):
    """Maximal family of subdivision cliques along the geodesic points."""
    step = int(2 * L / sview.edge_length)
    verts = [model.to_sub(p) for p in points]
    base = verts[0]

    def admissible(clique, k):
        for m in range(k, n + 1):
            if all(sview.distance(y, verts[m]) == (m - k) * step for y in clique):
                return all(sview.distance(base, y) == k * step for y in clique)
        return False

    cl = [frozenset({v}) for v in verts]
    changed = True
    while changed:
        changed = False
        for k in range(1, n + 1):
            sides = [cl[j] for j in (k - 1, k + 1) if j <= n]
            for w in common_neighbors(cl[k], sview):
                bigger = cl[k] | {w}
                if admissible(bigger, k) and all(_transverse_hops(bigger, s, sview) == step for s in sides):
                    cl[k] = bigger
                    changed = True
    return cl


def find_hyperbolic_element(G, H, view, budget=DEFAULT_BUDGET):
    """Elliptic verdict with a common clique, or a certified hyperbolic element of <G, H>."""
    gens = G.generators + H.generators
    if _finite_view(view):
        _check_finite_helly(view, budget)
        dist = fixed_set_distance(G, H, view, budget)
        return _elliptic_verdict(gens, view, budget, L=dist.L)
    dist = fixed_set_distance(G, H, view, budget)
    if dist.L == 0:
        return _elliptic_verdict(gens, view, budget, L=dist.L)
    first = None
    for scale in SCALES:
        if scale != 2:
            # the closest fixed points may need a finer subdivision
            try:
                G = elliptic_group(G.generators, view, budget, scale)
                H = elliptic_group(H.generators, view, budget, scale)
            except (BudgetExceeded, SubdivisionInsufficient):
                break
            dist = fixed_set_distance(G, H, view, budget)
        verdict = _hyperbolic_from_search(G, H, dist, view, budget)
        if verdict.verdict != "unknown" or "prefix" not in verdict.diagnostics:
            if scale != 2:
                verdict.diagnostics["scale"] = scale
            return verdict
        first = first or verdict
    return first


# subdivision lattices tried in turn: (Z/2)^d first, then finer ones
SCALES = (2, 4, 6, 8)


def _hyperbolic_from_search(G, H, dist, view, budget):
    L, x = dist.L, dist.x
    n = budget.search_depth
    try:
        steps = geodesic_orbit_search(G, H, x, L, n, view, budget)
    except (SearchExhausted, BudgetExceeded) as exc:
        prefix = getattr(exc, "prefix", None) or []
        return ActionVerdict("unknown", L=L, search_depth=len(prefix),
                             diagnostics={"reason": str(exc), "prefix": [list(s.word) for s in prefix]})
    model = G.model or point_model(view, budget)
    prefixes = [steps[0].element ** 0]
    for s in steps:
        prefixes.append(prefixes[-1] * s.element)
    points = [model.act(P, x) for P in prefixes]
    sview = model.subdivision()
    family = _sub_family(model, sview, x, points, L, n)
    saut = model.sub_aut
    pairs = []
    for i in range(1, n - 1):
        si_inv = steps[i - 1].element.inverse()
        for j in range(i + 1, n - 1):
            sj_inv = steps[j - 1].element.inverse()
            if model.act(si_inv, x) != model.act(sj_inv, x):
                continue
            if model.act(steps[i].element, x) != model.act(steps[j].element, x):
                continue
            g = prefixes[j] * prefixes[i].inverse()
            sg = saut(g)
            if all(sg.apply(family[i + k]) == family[j + k] for k in (-1, 0, 1)):
                pairs.append((j - i, i, j, g))
    if not pairs:
        return ActionVerdict("unknown", L=L, search_depth=n,
                             diagnostics={"reason": "no periodic pair along the geodesic"})
    verbatim = next(((i, j) for p, i, j, g in sorted(pairs, key=lambda t: (t[2], t[1])) if j >= i + 3), None)
    labels = {"G": G.generators, "H": H.generators}
    for p, i, j, g in sorted(pairs, key=lambda t: (t[0], t[1])):
        try:
            cert = invariant_clique_path(g, view, budget)
        except BudgetExceeded:
            continue
        word = tuple(w for s in steps[:j] for w in s.word)
        word += _inverse_word(tuple(w for s in steps[:i] for w in s.word), labels)
        word = _reduce_word(word, labels)
        return ActionVerdict("hyperbolic", word=word, element=g, certificate=cert,
                             translation_length=cert.translation_length, L=L, search_depth=n,
                             diagnostics={"pair": (i, j), "pigeonhole_pair": verbatim,
                                          "x": _point_json(x)})
    return ActionVerdict("unknown", L=L, search_depth=n,
                         diagnostics={"reason": "no candidate element passed verification"})


def decide_action(generators, view, budget=DEFAULT_BUDGET):
    """Elliptic with a common clique, Hyperbolic with a certified element, or Unknown."""
    gens = list(generators)
    if not gens:
        raise InvalidInput("need at least one generator")
    for i, g in enumerate(gens):
        res = classify(g, view, budget)
        if res.verdict == "hyperbolic":
            return ActionVerdict("hyperbolic", word=(("G", i),), element=g, certificate=res.certificate,
                                 translation_length=res.translation_length, search_depth=0)
        if res.verdict != "elliptic":
            return ActionVerdict("unknown", diagnostics={"reason": f"generator {i} unclassified"})
    unknown = None
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            try:
                G = elliptic_group([gens[i]], view, budget)
                H = elliptic_group([gens[j]], view, budget)
                v = find_hyperbolic_element(G, H, view, budget)
            except (BudgetExceeded, SubdivisionInsufficient) as exc:
                unknown = str(exc)
                continue
            if v.verdict == "hyperbolic":
                glob = {"G": i, "H": j}
                v.word = tuple((label, glob[label]) for label, _ in v.word)
                return v
            if v.verdict == "unknown":
                unknown = v.diagnostics.get("reason", "unknown")
    if unknown is not None:
        return ActionVerdict("unknown", diagnostics={"reason": unknown})
    try:
        return _elliptic_verdict(gens, view, budget, L=Fraction(0))
    except (BudgetExceeded, SubdivisionInsufficient) as exc:
        return ActionVerdict("unknown", diagnostics={"reason": str(exc)})
