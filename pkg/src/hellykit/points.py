"""Half-integer hull points attached to a graph view.

Finite graphs use their half-integer extremal functions.  King grids use the
ambient l-infinity space ``R^d`` (the injective hull of ``Z^d``; for a box it
is an injective space containing the box), whose half-integer points are
``(Z/2)^d``.  The Helly subdivision is then the king grid in doubled
coordinates.  Grid models also accept a finer ``scale`` (points in
``(Z/scale)^d``) for distances that half-integers cannot realize.
"""

from fractions import Fraction
import itertools
import math

from .errors import DEFAULT_BUDGET, BudgetExceeded, InvalidInput
from .graph import AffineMap, FiniteGraph, KingGrid, Permutation, finite_model, label_index
from .hull import clique_of_point, distance_function, enumerate_extremal, helly_subdivision


def group_orbit(gens, v, limit):
    """Orbit of ``v`` under the group generated by ``gens`` (BFS); ``None`` past ``limit``."""
    seen = {v}
    order = [v]
    i = 0
    moves = list(gens) + [g.inverse() for g in gens]
    while i < len(order):
        u = order[i]
        i += 1
        for g in moves:
            w = g(u)
            if w not in seen:
                seen.add(w)
                order.append(w)
                if len(order) > limit:
                    return None
    return order


def barycenter(points):
    k = len(points)
    return tuple(Fraction(sum(c), k) for c in zip(*points))


class FinitePoints:
    """Half-integer extremal functions of a finite graph."""

    def __init__(self, g, budget=DEFAULT_BUDGET):
        if not isinstance(g, FiniteGraph):
            raise TypeError("FinitePoints needs a FiniteGraph")
        self.view = g
        self.graph = g
        self.budget = budget
        self._points = None

    @property
    def points(self):
        if self._points is None:
            self._points = enumerate_extremal(self.graph, 2, self.budget)
        return self._points

    def embed(self, v):
        return distance_function(self.graph, v)

    def act(self, aut, p):
        return p.act(aut)

    def distance(self, p, q):
        return p.distance(q)

    def clique(self, p):
        return clique_of_point(p)

    def sort_key(self, p):
        return p.twice

    def invariant(self, gens):
        return [p for p in self.points if all(p.act(a) == p for a in gens)]

    # subdivision: vertices are indices into self.points
    def subdivision(self):
        hull = helly_subdivision(self.graph, self.budget)
        self._sub_index = {p.twice: i for i, p in enumerate(hull.points)}
        return hull.graph

    def to_sub(self, p):
        return self._sub_index[p.twice]

    def sub_aut(self, aut):
        pts = self.points
        return Permutation([self._sub_index[p.act(aut).twice] for p in pts])


class GridPoints:
    """Points of ``(Z/scale)^d`` (half-integers by default) in the ambient space of a king grid."""

    def __init__(self, view, budget=DEFAULT_BUDGET, scale=2):
        if not isinstance(view, KingGrid):
            raise TypeError("GridPoints needs a KingGrid")
        self.view = view
        self.budget = budget
        self.scale = scale

    def embed(self, v):
        return tuple(Fraction(c) for c in v)

    def act(self, aut, p):
        return tuple(Fraction(c) for c in aut(p))

    def distance(self, p, q):
        return max(abs(a - b) for a, b in zip(p, q)) * self.view.edge_length

    def clique(self, p):
        """Vertices nearest to ``p``: product of floors and ceilings."""
        return frozenset(itertools.product(*({math.floor(c), math.ceil(c)} for c in p)))

    def sort_key(self, p):
        return p

    def inside(self, p):
        box = self.view.box
        return box is None or all(0 <= c <= k - 1 for c, k in zip(p, box))

    def invariant(self, gens, center=None, radius=None):
        """Invariant points of the model in the window of the given radius."""
        radius = self.budget.window if radius is None else radius
        if center is None:
            orbit = group_orbit(gens, (0,) * self.view.dim, self.budget.max_nodes)
            if orbit is None:
                raise BudgetExceeded("group orbit did not close; no invariant points")
            center = barycenter(orbit)
        s = self.scale
        lo = [math.floor(s * c) - s * radius for c in center]
        ranges = [range(a, a + 2 * s * radius + 1) for a in lo]
        if self.view.box is not None:
            ranges = [range(max(r.start, 0), min(r.stop, s * (k - 1) + 1)) for r, k in zip(ranges, self.view.box)]
        if math.prod(len(r) for r in ranges) > self.budget.max_nodes:
            raise BudgetExceeded(f"invariant-point window at scale {s} is too large")
        return [tuple(Fraction(c, s) for c in t) for t in _fixed_scaled(gens, ranges, s)]

    def subdivision(self):
        """King grid on ``(Z/scale)^d`` in scaled integer coordinates."""
        v, s = self.view, self.scale
        box = None if v.box is None else tuple(s * (k - 1) + 1 for k in v.box)
        return KingGrid(v.dim, box, v.edge_length / s)

    def to_sub(self, p):
        return tuple(int(self.scale * c) for c in p)

    def sub_aut(self, aut):
        return aut.scaled(self.scale)


def _fixed_scaled(gens, ranges, scale):
    """Points of the integer box ``ranges`` fixed by every rescaled affine map."""
    scaled = [g.scaled(scale) for g in gens]
    for t in itertools.product(*ranges):
        if all(g(t) == t for g in scaled):
            yield t


def point_model(view, budget=DEFAULT_BUDGET, scale=2):
    if isinstance(view, FiniteGraph):
        return FinitePoints(view, budget)
    if isinstance(view, KingGrid):
        return GridPoints(view, budget, scale)
    raise InvalidInput(f"no point model for {view!r}")


def permutation_of(aut, view):
    """Automorphism of ``view`` as a permutation of its finite model."""
    if isinstance(aut, Permutation):
        return aut
    g, labels = finite_model(view)
    index = label_index(view)
    if isinstance(aut, AffineMap):
        return Permutation([index[aut(v)] for v in labels])
    raise InvalidInput(f"cannot turn {aut!r} into a permutation")
