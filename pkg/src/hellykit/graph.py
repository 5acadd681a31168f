"""Graph representations, exact metrics, balls, cliques and automorphisms.

Two kinds of graph views are provided:

* :class:`FiniteGraph` -- vertices ``0..n-1``, BFS-derived distances.
* :class:`KingGrid` -- the king grid on ``Z^d`` (adjacency = l-infinity
  distance 1), optionally restricted to a finite box; vertices are integer
  tuples and distances come from the closed-form l-infinity formula.

Every view measures distances in *hops*; ``edge_length`` converts hops to
metric units (it is 1/2 for Helly subdivisions).
"""

from collections import deque
from fractions import Fraction
from functools import cached_property
import itertools
import math

from .errors import BudgetExceeded, DisconnectedGraph, InvalidInput


def as_metric(hops, edge_length):
    value = hops * edge_length
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


class GraphView:
    """Common interface of finite graphs and built-in families."""

    edge_length = Fraction(1)
    is_finite = True

    def neighbors(self, v):
        raise NotImplementedError

    def distance(self, u, v):
        raise NotImplementedError

    def contains(self, v):
        raise NotImplementedError

    def ball(self, v, hops):
        raise NotImplementedError

    def adjacent(self, u, v):
        return u != v and self.distance(u, v) == 1

    def metric(self, hops):
        return as_metric(hops, self.edge_length)

    def hops(self, r):
        """Convert a metric radius to a whole number of hops (rounding down)."""
        return math.floor(Fraction(r) / self.edge_length)

    def is_clique(self, vertices):
        vs = list(vertices)
        return all(self.adjacent(a, b) for a, b in itertools.combinations(vs, 2))


class FiniteGraph(GraphView):
    """Connected simple graph on ``0..n-1``; immutable."""

    def __init__(self, n, edges=(), edge_length=1):
        if n < 1:
            raise InvalidInput("a graph needs at least one vertex")
        nbrs = [set() for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInput(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise InvalidInput(f"self-loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj = tuple(frozenset(s) for s in nbrs)
        self.edge_length = Fraction(edge_length)
        self._sorted_nbrs = tuple(tuple(sorted(s)) for s in nbrs)
        seen = {0}
        todo = [0]
        while todo:
            u = todo.pop()
            for w in self.adj[u]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        if len(seen) != n:
            raise DisconnectedGraph(f"graph with {n} vertices has {n - len(seen)} unreachable")

    def __repr__(self):
        return f"FiniteGraph(n={self.n}, m={len(self.edges)})"

    def __eq__(self, other):
        return (isinstance(other, FiniteGraph) and self.n == other.n
                and self.adj == other.adj and self.edge_length == other.edge_length)

    def __hash__(self):
        return hash((self.n, self.adj))

    @cached_property
    def edges(self):
        return tuple((u, v) for u in range(self.n) for v in self._sorted_nbrs[u] if u < v)

    @cached_property
    def adj_masks(self):
        return tuple(sum(1 << w for w in self.adj[u]) for u in range(self.n))

    @cached_property
    def dist(self):
        return tuple(tuple(bfs_distances(self, s)) for s in range(self.n))

    @cached_property
    def diameter(self):
        return max(max(row) for row in self.dist)

    @cached_property
    def eccentricity(self):
        return tuple(max(row) for row in self.dist)

    def vertices(self):
        return range(self.n)

    def neighbors(self, v):
        return self._sorted_nbrs[v]

    def distance(self, u, v):
        return self.dist[u][v]

    def adjacent(self, u, v):
        return v in self.adj[u]

    def contains(self, v):
        return isinstance(v, int) and 0 <= v < self.n

    def ball(self, v, hops):
        row = self.dist[v]
        return frozenset(u for u in range(self.n) if row[u] <= hops)


def bfs_distances(g, s):
    dist = [-1] * g.n
    dist[s] = 0
    q = deque([s])
    while q:
        u = q.popleft()
        for w in g.adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def all_pairs_distances(g):
    """Distance matrix of a connected finite graph (list of lists)."""
    if not isinstance(g, FiniteGraph):
        raise TypeError("all_pairs_distances needs a FiniteGraph")
    return [list(row) for row in g.dist]


# -- built-in finite families -------------------------------------------------

def path_graph(n):
    return FiniteGraph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    if n < 3:
        raise InvalidInput("a cycle needs at least 3 vertices")
    return FiniteGraph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return FiniteGraph(n, itertools.combinations(range(n), 2))


def wheel_graph(rim):
    """Cycle on ``0..rim-1`` plus an apex ``rim`` adjacent to all of it."""
    return FiniteGraph(rim + 1, [(i, (i + 1) % rim) for i in range(rim)] + [(i, rim) for i in range(rim)])


class KingGrid(GraphView):
    """King grid on ``Z^dim``; with ``box`` the finite box ``prod range(k_i)``."""

    def __init__(self, dim, box=None, edge_length=1):
        if dim < 1:
            raise InvalidInput("king grid dimension must be positive")
        if box is not None:
            box = tuple(int(k) for k in box)
            if len(box) != dim or min(box) < 1:
                raise InvalidInput(f"box {box} does not match dimension {dim}")
        self.dim = dim
        self.box = box
        self.edge_length = Fraction(edge_length)
        self.is_finite = box is not None
        self._offsets = tuple(o for o in itertools.product((-1, 0, 1), repeat=dim) if any(o))

    def __repr__(self):
        extra = "" if self.edge_length == 1 else f", edge_length={self.edge_length}"
        return f"KingGrid(dim={self.dim}, box={self.box}{extra})"

    def _key(self):
        return (self.dim, self.box, self.edge_length)

    def __eq__(self, other):
        return isinstance(other, KingGrid) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def subdivision(self):
        """Helly subdivision: the same grid in doubled coordinates, half-length edges."""
        box = None if self.box is None else tuple(2 * k - 1 for k in self.box)
        return KingGrid(self.dim, box, self.edge_length / 2)

    def contains(self, v):
        if not (isinstance(v, tuple) and len(v) == self.dim):
            return False
        if self.box is None:
            return True
        return all(0 <= c < k for c, k in zip(v, self.box))

    def distance(self, u, v):
        return max(abs(a - b) for a, b in zip(u, v))

    def neighbors(self, v):
        out = []
        for o in self._offsets:
            w = tuple(a + b for a, b in zip(v, o))
            if self.box is None or self.contains(w):
                out.append(w)
        out.sort()
        return out

    def ball(self, v, hops):
        if hops < 0:
            return frozenset()
        ranges = []
        for i, c in enumerate(v):
            lo, hi = c - hops, c + hops
            if self.box is not None:
                lo, hi = max(lo, 0), min(hi, self.box[i] - 1)
            ranges.append(range(lo, hi + 1))
        return frozenset(itertools.product(*ranges))

    def vertices(self):
        if self.box is None:
            raise BudgetExceeded("the infinite king grid has no finite vertex list")
        return list(itertools.product(*(range(k) for k in self.box)))

    @cached_property
    def _finite(self):
        labels = self.vertices()
        index = {v: i for i, v in enumerate(labels)}
        edges = [(index[v], index[w]) for v in labels for w in self.neighbors(v) if v < w]
        return FiniteGraph(len(labels), edges, self.edge_length), labels, index

    def to_finite(self):
        """Finite model ``(FiniteGraph, labels)``; labels in lexicographic order."""
        g, labels, _ = self._finite
        return g, labels

    def index(self, v):
        return self._finite[2][v]

    def window(self, center, radius):
        """Finite king box around ``center`` as ``(KingGrid box, offset)``."""
        lo = [c - radius for c in center]
        if self.box is not None:
            lo = [max(a, 0) for a in lo]
        hi = [c + radius for c in center]
        if self.box is not None:
            hi = [min(a, k - 1) for a, k in zip(hi, self.box)]
        return KingGrid(self.dim, [b - a + 1 for a, b in zip(lo, hi)], self.edge_length), tuple(lo)


def finite_model(view):
    """Return ``(FiniteGraph, labels)`` for any finite view."""
    if isinstance(view, FiniteGraph):
        return view, list(range(view.n))
    if isinstance(view, KingGrid) and view.box is not None:
        return view.to_finite()
    raise BudgetExceeded(f"{view!r} is not finite")


def label_index(view):
    """Mapping vertex label -> index in :func:`finite_model`."""
    if isinstance(view, FiniteGraph):
        return {i: i for i in range(view.n)}
    g, labels = finite_model(view)
    return {v: i for i, v in enumerate(labels)}


# -- balls and cliques ----------------------------------------------------------

def ball(v, r, view):
    """Closed ball of metric radius ``r`` (integer or half-integer) around ``v``."""
    return view.ball(v, view.hops(r))


def intersect_balls(centers_and_radii, view):
    """Exact intersection of the listed balls (possibly empty)."""
    items = [(v, view.hops(r)) for v, r in centers_and_radii]
    if not items:
        raise ValueError("need at least one ball")
    # start from the smallest ball, filter by distance to the others
    v0, h0 = min(items, key=lambda it: it[1])
    out = view.ball(v0, h0)
    for v, h in items:
        out = frozenset(u for u in out if view.distance(u, v) <= h)
        if not out:
            break
    return out


def common_neighbors(clique, view):
    vs = sorted(clique)
    cands = set(view.neighbors(vs[0]))
    for v in vs[1:]:
        cands &= set(view.neighbors(v))
    return sorted(cands - set(vs))


def maximal_clique_extend(seed, predicate, view, accept=None):
    """Greedily extend ``seed`` to a maximal clique of admissible vertices.

    Candidates are the common neighbours of ``seed`` passing ``predicate``,
    tried once each in ascending order.  ``accept`` optionally vetoes a
    whole enlarged clique; it must be monotone (once rejected, a vertex stays
    rejected as the clique grows), which makes a single pass maximal.
    """
    seed = frozenset(seed)
    if not seed:
        if not view.is_finite:
            raise BudgetExceeded("empty seed on an infinite view has unbounded candidates")
        cands = sorted(view.vertices() if not isinstance(view, FiniteGraph) else range(view.n))
    else:
        cands = common_neighbors(seed, view)
    clique = set(seed)
    for v in cands:
        if v in clique or not predicate(v):
            continue
        if all(view.adjacent(v, w) for w in clique):
            bigger = frozenset(clique | {v})
            if accept is None or accept(bigger):
                clique.add(v)
    return frozenset(clique)


# -- automorphisms ------------------------------------------------------------

class Automorphism:
    """Adjacency-preserving bijection of a graph view."""

    def __call__(self, v):
        raise NotImplementedError

    def inverse(self):
        raise NotImplementedError

    def __mul__(self, other):
        """Composition ``(self * other)(v) = self(other(v))``."""
        raise NotImplementedError

    def key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.identity_like()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def identity_like(self):
        raise NotImplementedError

    def is_identity(self):
        return self == self.identity_like()

    def apply(self, vertices):
        return frozenset(self(v) for v in vertices)

    def orbit(self, v, limit):
        """Orbit of ``v`` as a list, or ``None`` if longer than ``limit``."""
        out = [v]
        w = self(v)
        while w != v:
            out.append(w)
            if len(out) > limit:
                return None
            w = self(w)
        return out

    def order(self, limit=10 ** 6):
        raise NotImplementedError


class Permutation(Automorphism):
    def __init__(self, perm):
        perm = tuple(int(p) for p in perm)
        if sorted(perm) != list(range(len(perm))):
            raise InvalidInput(f"{list(perm)} is not a permutation of 0..{len(perm) - 1}")
        self.perm = perm

    def __repr__(self):
        return f"Permutation({list(self.perm)})"

    def __call__(self, v):
        return self.perm[v]

    def key(self):
        return ("perm", self.perm)

    def inverse(self):
        inv = [0] * len(self.perm)
        for i, p in enumerate(self.perm):
            inv[p] = i
        return Permutation(inv)

    def __mul__(self, other):
        return Permutation([self.perm[other.perm[i]] for i in range(len(self.perm))])

    def identity_like(self):
        return Permutation(range(len(self.perm)))

    def order(self, limit=10 ** 6):
        o = 1
        seen = set()
        for i in range(len(self.perm)):
            if i in seen:
                continue
            length, j = 0, i
            while j not in seen:
                seen.add(j)
                j = self.perm[j]
                length += 1
            o = o * length // math.gcd(o, length)
        return o

    def check(self, g):
        """True iff this is an automorphism of the finite graph ``g``."""
        if len(self.perm) != g.n:
            return False
        return all(g.adjacent(self.perm[u], self.perm[v]) for u, v in g.edges)


class AffineMap(Automorphism):
    """``x -> M x + b`` with ``M`` a signed permutation matrix."""

    def __init__(self, M, b):
        M = tuple(tuple(int(a) for a in row) for row in M)
        b = tuple(int(c) if Fraction(c).denominator == 1 else Fraction(c) for c in b)
        d = len(M)
        if d == 0 or any(len(row) != d for row in M) or len(b) != d:
            raise InvalidInput("affine map needs a square M matching b")
        cols = []
        for row in M:
            nz = [j for j, a in enumerate(row) if a != 0]
            if len(nz) != 1 or abs(row[nz[0]]) != 1:
                raise InvalidInput(f"M row {list(row)} is not a signed unit vector")
            cols.append(nz[0])
        if sorted(cols) != list(range(d)):
            raise InvalidInput("M is not a signed permutation matrix")
        self.M = M
        self.b = b
        self.dim = d
        # row i picks coordinate _src[i] with sign _sgn[i]
        self._src = tuple(cols)
        self._sgn = tuple(M[i][cols[i]] for i in range(d))

    def __repr__(self):
        return f"AffineMap(M={[list(r) for r in self.M]}, b={list(self.b)})"

    def __call__(self, v):
        return tuple(self._sgn[i] * v[self._src[i]] + self.b[i] for i in range(self.dim))

    def key(self):
        return ("affine", self.M, self.b)

    def linear(self, v):
        return tuple(self._sgn[i] * v[self._src[i]] for i in range(self.dim))

    def inverse(self):
        d = self.dim
        Mt = [[self.M[j][i] for j in range(d)] for i in range(d)]
        inv_lin = AffineMap(Mt, [0] * d)
        nb = inv_lin(self.b)
        return AffineMap(Mt, [-c for c in nb])

    def __mul__(self, other):
        d = self.dim
        M = [[sum(self.M[i][k] * other.M[k][j] for k in range(d)) for j in range(d)] for i in range(d)]
        b = self(other.b)
        return AffineMap(M, b)

    def identity_like(self):
        d = self.dim
        return AffineMap([[int(i == j) for j in range(d)] for i in range(d)], [0] * d)

    def scaled(self, factor):
        """Conjugate by the dilation ``x -> factor * x`` (e.g. 2 for doubled coordinates)."""
        return AffineMap(self.M, [factor * c for c in self.b])

    def linear_order(self):
        lin = AffineMap(self.M, [0] * self.dim)
        ident = self.identity_like().M
        p, o = lin, 1
        while p.M != ident:
            p = p * lin
            o += 1
        return o

    def order(self, limit=10 ** 6):
        """Finite order, or ``None`` when the map has infinite order."""
        k = self.linear_order()
        power = self ** k
        return k if all(c == 0 for c in power.b) else None

    def check(self, view):
        """Structural check on a king grid (box must map onto itself)."""
        if not isinstance(view, KingGrid) or view.dim != self.dim:
            return False
        if any(Fraction(c).denominator != 1 for c in self.b):
            return False
        if view.box is None:
            return True
        corners = itertools.product(*((0, k - 1) for k in view.box))
        return all(view.contains(self(c)) for c in corners)


def identity_automorphism(view):
    if isinstance(view, FiniteGraph):
        return Permutation(range(view.n))
    if isinstance(view, KingGrid):
        d = view.dim
        return AffineMap([[int(i == j) for j in range(d)] for i in range(d)], [0] * d)
    raise TypeError(f"no identity for {view!r}")


def check_automorphism(aut, view, sample_radius=4):
    """Verify ``aut`` preserves adjacency and is a bijection of ``view``.

    Exhaustive for finite views; for infinite king grids affine maps are
    checked structurally and additionally on the window of radius
    ``sample_radius`` around the origin.
    """
    if isinstance(view, FiniteGraph):
        return isinstance(aut, Permutation) and aut.check(view)
    if not isinstance(aut, AffineMap) or not aut.check(view):
        return False
    if view.box is not None:
        vs = view.vertices()
    else:
        vs = list(itertools.product(range(-sample_radius, sample_radius + 1), repeat=view.dim))
    inv = aut.inverse()
    for v in vs:
        if inv(aut(v)) != v:
            return False
        for w in view.neighbors(v):
            if view.distance(aut(v), aut(w)) != 1:
                return False
    if view.box is not None and len({aut(v) for v in vs}) != len(vs):
        return False
    return True


def automorphism_on_finite(aut, view):
    """Translate an automorphism of a finite view into a :class:`Permutation`."""
    if isinstance(view, FiniteGraph):
        return aut
    g, labels = finite_model(view)
    index = label_index(view)
    return Permutation([index[aut(v)] for v in labels])
