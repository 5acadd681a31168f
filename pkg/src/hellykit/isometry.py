"""Elliptic/hyperbolic classification of automorphisms and translation lengths."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import DEFAULT_BUDGET, BudgetExceeded, InvalidInput, NotHelly, SubdivisionInsufficient
from .graph import AffineMap, FiniteGraph, KingGrid, finite_model
from .hull import ExtremalFunction, clique_of_point, enumerate_extremal, is_helly
from .points import GridPoints, barycenter, permutation_of


@dataclass(frozen=True)
class WeightedDigraph:
    """Complete digraph with weights ``weights[i][j]`` (exact, nonnegative)."""

    weights: tuple

    def __post_init__(self):
        w = tuple(tuple(Fraction(x) for x in row) for row in self.weights)
        n = len(w)
        if n < 1 or any(len(row) != n for row in w):
            raise InvalidInput("weights must be a nonempty square matrix")
        if any(x < 0 for row in w for x in row):
            raise InvalidInput("weights must be nonnegative")
        object.__setattr__(self, "weights", w)

    @property
    def node_count(self):
        return len(self.weights)


def min_mean_cycle(gamma):
    """Minimum mean weight of a directed cycle (Karp), as an exact Fraction."""
    if not isinstance(gamma, WeightedDigraph):
        gamma = WeightedDigraph(gamma)
    w = gamma.weights
    n = gamma.node_count
    # walks of exactly k edges ending at v, starting anywhere
    D = [[Fraction(0)] * n]
    for k in range(1, n + 1):
        prev = D[-1]
        D.append([min(prev[u] + w[u][v] for u in range(n)) for v in range(n)])
    best = None
    for v in range(n):
        worst = max((D[n][v] - D[k][v]) / (n - k) for k in range(n))
        if best is None or worst < best:
            best = worst
    return best


def displacement_sequence(g, x, n_max, view):
    """``[d(x, g^k x) for k = 0..n_max]`` in metric units."""
    out = []
    y = x
    for _ in range(n_max + 1):
        out.append(view.metric(view.distance(x, y)))
        y = g(y)
    return out


def translation_length(g, cell_points, view):
    """Min mean cycle of ``w(i, j) = d(x_i, g x_j)``; an upper bound on the translation length."""
    pts = list(cell_points)
    if not pts:
        raise InvalidInput("need at least one point")
    images = [g(p) for p in pts]
    w = [[view.edge_length * view.distance(p, q) for q in images] for p in pts]
    return min_mean_cycle(WeightedDigraph(w))


@dataclass
class ClassificationResult:
    verdict: str
    clique: Optional[frozenset] = None
    fixed_point: Optional[object] = None
    certificate: Optional[object] = None
    translation_length: Optional[Fraction] = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def a(self):
        return None if self.certificate is None else self.certificate.a

    @property
    def L(self):
        return None if self.certificate is None else self.certificate.L


def elliptic_candidates(g, graph, budget=DEFAULT_BUDGET):
    """Invariant half-integer points from which the elliptic witness is chosen.

    Fixed vertices ``d_v`` when ``g`` fixes a vertex; otherwise the invariant
    points of smallest maximum value.  The set is conjugation-covariant.
    """
    fixed = [v for v in range(graph.n) if g(v) == v]
    if fixed:
        return [ExtremalFunction(graph, tuple(2 * d for d in graph.dist[v])) for v in fixed]
    inv = [f for f in enumerate_extremal(graph, 2, budget) if f.act(g) == f]
    if not inv:
        return []
    top = min(f.max_value for f in inv)
    return [f for f in inv if f.max_value == top]


def fixed_clique_of_elliptic(g, graph, budget=DEFAULT_BUDGET):
    """An invariant half-integer point of ``g`` and its (invariant) clique."""
    cands = elliptic_candidates(g, graph, budget)
    if not cands:
        raise SubdivisionInsufficient("no invariant half-integer extremal function")
    f = min(cands, key=lambda p: p.twice)
    clique = clique_of_point(f)
    if g.apply(clique) != clique:
        raise NotHelly("clique of an invariant point is not invariant")
    return clique, f


def _elliptic_finite(g, view, budget):
    graph, labels = finite_model(view)
    if not is_helly(graph, budget):
        raise NotHelly(f"{view!r} is not Helly")
    perm = permutation_of(g, view)
    clique, f = fixed_clique_of_elliptic(perm, graph, budget)
    clique = frozenset(labels[i] for i in clique)
    return ClassificationResult("elliptic", clique=clique, fixed_point=f)


def _elliptic_grid(g, view, orbit):
    center = barycenter(orbit)
    clique = GridPoints(view).clique(center)
    if g.apply(clique) != clique:
        raise NotHelly("stabilized clique check failed")
    return ClassificationResult("elliptic", clique=clique, fixed_point=center,
                                diagnostics={"orbit_size": len(orbit)})


def classify(g, view, budget=DEFAULT_BUDGET):
    """Elliptic (stabilized clique), Hyperbolic (invariant clique-path) or Unknown."""
    from .cliquepath import invariant_clique_path

    if isinstance(view, FiniteGraph):
        return _elliptic_finite(g, view, budget)
    if isinstance(view, KingGrid) and view.box is not None:
        if len(view.vertices()) <= budget.max_vertices:
            return _elliptic_finite(g, view, budget)
        orbit = g.orbit(tuple([0] * view.dim), len(view.vertices()))
        return _elliptic_grid(g, view, orbit)
    origin = tuple([0] * view.dim)
    # an affine orbit is finite iff it closes within the linear order
    limit = g.linear_order() if isinstance(g, AffineMap) else budget.max_nodes
    orbit = g.orbit(origin, limit)
    if orbit is not None:
        return _elliptic_grid(g, view, orbit)
    last = None
    for attempt in (budget, budget.with_(a_max=2 * budget.a_max, base_radius=2 * budget.base_radius)):
        try:
            cert = invariant_clique_path(g, view, attempt)
        except BudgetExceeded as exc:
            last = exc
            continue
        return ClassificationResult("hyperbolic", certificate=cert,
                                    translation_length=Fraction(cert.L) / cert.a)
    return ClassificationResult("unknown", diagnostics={"reason": str(last)})
