"""Extremal functions, Helly recognition, Helly hulls and combinatorial dimension.

Points of the injective hull of a finite graph are represented by their
distance functions ``f`` to the vertices.  Values are half-integers stored
doubled (``ExtremalFunction.twice``); the enumeration itself works with any
unit ``1/q``.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple
import itertools

from .errors import DEFAULT_BUDGET, BudgetExceeded, NotHelly
from .fm import fm_feasible
from .graph import FiniteGraph


@dataclass(frozen=True)
class ExtremalFunction:
    host: FiniteGraph
    twice: tuple

    @property
    def values(self):
        return tuple(Fraction(t, 2) for t in self.twice)

    def __call__(self, x):
        return Fraction(self.twice[x], 2)

    @property
    def max_value(self):
        return Fraction(max(self.twice), 2)

    def is_integral(self):
        return all(t % 2 == 0 for t in self.twice)

    def vertex(self):
        """The vertex ``v`` with ``self == d_v``, or ``None``."""
        for v, t in enumerate(self.twice):
            if t == 0:
                row = self.host.dist[v]
                if all(2 * row[x] == self.twice[x] for x in range(self.host.n)):
                    return v
                return None
        return None

    def distance(self, other):
        """l-infinity distance to another point of the same hull."""
        return Fraction(max(abs(a - b) for a, b in zip(self.twice, other.twice)), 2)

    def act(self, perm):
        """Image under an automorphism: ``(a.f)(x) = f(a^-1 x)``."""
        out = [0] * len(self.twice)
        for x, t in enumerate(self.twice):
            out[perm(x)] = t
        return ExtremalFunction(self.host, tuple(out))

    def is_extremal(self):
        d = self.host.dist
        t = self.twice
        n = self.host.n
        for x in range(n):
            if max(2 * d[x][y] - t[y] for y in range(n)) != t[x]:
                return False
        return True

    def to_json(self):
        return {"values": list(self.twice), "den": 2}


def distance_function(g, v):
    return ExtremalFunction(g, tuple(2 * d for d in g.dist[v]))


# -- enumeration ---------------------------------------------------------------

def _bfs_order(g):
    order, seen = [0], {0}
    i = 0
    while i < len(order):
        for w in g.neighbors(order[i]):
            if w not in seen:
                seen.add(w)
                order.append(w)
        i += 1
    return order


def extremal_points(g, q, budget=DEFAULT_BUDGET, stop=None):
    """All extremal functions with values in ``(1/q) Z``, as integer tuples in units of 1/q.

    Depth-first assignment along a BFS order with interval propagation:
    feasibility ``f(x) + f(y) >= d`` and the 1-Lipschitz bound ``f(x) <= f(y) + d``
    (every extremal function is 1-Lipschitz).  A partial assignment is cut as
    soon as some assigned vertex can no longer find a tight partner.
    ``stop(values)`` returning true aborts the search and returns that hit alone.
    """
    n = g.n
    if n > budget.max_vertices:
        raise BudgetExceeded(f"{n} vertices exceeds the budget of {budget.max_vertices}", partial=0)
    D = [[q * d for d in row] for row in g.dist]
    order = _bfs_order(g)
    F = [None] * n
    found = []
    nodes = 0

    def lookahead(k, lo, hi):
        assigned = order[:k + 1]
        rest = order[k + 1:]
        for x in assigned:
            fx = F[x]
            Dx = D[x]
            if any(fx + F[y] == Dx[y] for y in assigned):
                continue
            if not any(lo[y] <= Dx[y] - fx <= hi[y] for y in rest):
                return False
        return True

    def rec(k, lo, hi):
        nonlocal nodes
        if k == n:
            vals = tuple(F)
            found.append(vals)
            return stop is not None and stop(vals)
        v = order[k]
        Dv = D[v]
        for val in range(lo[v], hi[v] + 1):
            nodes += 1
            if nodes > budget.max_nodes:
                raise BudgetExceeded(f"extremal enumeration exceeded {budget.max_nodes} nodes",
                                     partial=len(found))
            F[v] = val
            nlo, nhi = lo[:], hi[:]
            ok = True
            for u in order[k + 1:]:
                a, b = Dv[u] - val, Dv[u] + val
                if a > nlo[u]:
                    nlo[u] = a
                if b < nhi[u]:
                    nhi[u] = b
                if nlo[u] > nhi[u]:
                    ok = False
                    break
            if ok and lookahead(k, nlo, nhi):
                if rec(k + 1, nlo, nhi):
                    return True
        F[v] = None
        return False

    lo = [0] * n
    hi = [q * e for e in g.eccentricity]
    if stop is not None and rec(0, lo, hi):
        return [found[-1]]
    if stop is None:
        rec(0, lo, hi)
    found.sort()
    return found


def enumerate_extremal(g, denominator=2, budget=DEFAULT_BUDGET):
    """Extremal functions with integer (``denominator=1``) or half-integer values, sorted."""
    if denominator not in (1, 2):
        raise ValueError("denominator must be 1 or 2")
    pts = extremal_points(g, denominator, budget)
    mult = 2 // denominator
    return [ExtremalFunction(g, tuple(mult * v for v in p)) for p in pts]


def is_helly(g, budget=DEFAULT_BUDGET):
    """Helly iff every integer extremal function is a distance function ``d_v``."""
    dist_rows = {tuple(row) for row in g.dist}
    hit = extremal_points(g, 1, budget, stop=lambda vals: vals not in dist_rows)
    return all(p in dist_rows for p in hit)


class HullResult(NamedTuple):
    graph: FiniteGraph
    embedding: list
    points: list


def _linf_graph(g, pts, step, edge_length):
    index = {p: i for i, p in enumerate(pts)}
    edges = [(i, j) for i, j in itertools.combinations(range(len(pts)), 2)
             if max(abs(a - b) for a, b in zip(pts[i], pts[j])) <= step]
    hull = FiniteGraph(len(pts), edges, edge_length=edge_length)
    return hull, index


def helly_hull(g, budget=DEFAULT_BUDGET):
    """Helly hull: integer extremal functions joined at l-infinity distance <= 1.

    Returns ``HullResult(graph, embedding, points)`` where ``embedding[v]`` is
    the hull vertex of ``d_v`` and ``points`` are ExtremalFunctions.
    """
    pts = [tuple(p) for p in extremal_points(g, 1, budget)]
    hull, index = _linf_graph(g, pts, 1, 1)
    embedding = [index[tuple(row)] for row in g.dist]
    return HullResult(hull, embedding, [ExtremalFunction(g, tuple(2 * v for v in p)) for p in pts])


def helly_subdivision(g, budget=DEFAULT_BUDGET):
    """First Helly subdivision: half-integer extremal functions, edges of length 1/2."""
    pts = [tuple(p) for p in extremal_points(g, 2, budget)]
    sub, index = _linf_graph(g, pts, 1, Fraction(1, 2))
    embedding = [index[tuple(2 * d for d in row)] for row in g.dist]
    return HullResult(sub, embedding, [ExtremalFunction(g, p) for p in pts])


# -- cells ---------------------------------------------------------------------

@dataclass(frozen=True)
class EqualityGraph:
    base: ExtremalFunction
    pairs: frozenset

    def partners(self, x):
        return sorted({b if a == x else a for a, b in self.pairs if x in (a, b)})


def equality_graph(f):
    d = f.host.dist
    t = f.twice
    n = f.host.n
    pairs = frozenset((x, y) for x in range(n) for y in range(x, n) if t[x] + t[y] == 2 * d[x][y])
    return EqualityGraph(f, pairs)


def _signed_components(n, pairs):
    """Components of ``(V, pairs)`` with a 2-colouring; flags odd cycles and loops.

    Returns ``(comp, sign, free)``: component id per vertex, +1/-1 colour and
    for each component whether it is bipartite and loop-free.
    """
    adj = [[] for _ in range(n)]
    loops = set()
    for a, b in pairs:
        if a == b:
            loops.add(a)
        else:
            adj[a].append(b)
            adj[b].append(a)
    comp = [-1] * n
    sign = [0] * n
    free = []
    for s in range(n):
        if comp[s] >= 0:
            continue
        c = len(free)
        comp[s], sign[s] = c, 1
        ok = s not in loops
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if comp[w] < 0:
                    comp[w], sign[w] = c, -sign[u]
                    ok = ok and w not in loops
                    stack.append(w)
                elif sign[w] == sign[u]:
                    ok = False
        free.append(ok)
    return comp, sign, free


def cell_rank(f):
    """Dimension of the cell whose equality set is exactly ``A(f)``."""
    _, _, free = _signed_components(f.host.n, equality_graph(f).pairs)
    return sum(free)


def _admissible(n, A, B):
    """Dimension of the face cut out by ``B`` inside ``A``, or ``None``.

    One variable per bipartite loop-free component of ``(V, B)``; the face is
    realised iff some direction is strictly positive on every pair of A \\ B,
    which is decided by Fourier-Motzkin elimination.
    """
    covered = set()
    for a, b in B:
        covered.add(a)
        covered.add(b)
    if len(covered) != n:
        return None
    comp, sign, free = _signed_components(n, B)
    var = {}
    for c, ok in enumerate(free):
        if ok:
            var[c] = len(var)
    rows = []
    for x, y in A - B:
        coeffs = [0] * len(var)
        for v in (x, y):
            if comp[v] in var:
                coeffs[var[comp[v]]] += sign[v]
        rows.append((coeffs, 0, True))
    if not fm_feasible(rows, len(var)):
        return None
    return len(var)


def local_dimension_by_labeling(f, budget=DEFAULT_BUDGET, floor=None):
    """Same quantity as :func:`local_dimension`, by exhaustive labelling search.

    Exponential; kept as an independent cross-check for small graphs.
    Candidate equality sets ``B`` are generated by labelling every vertex
    either ``zero`` or ``(class, sign)`` with class parameters ``t_c > 0``;
    each complete labelling fixes ``B`` and is confirmed by :func:`_admissible`.
    With ``floor`` given, only dimensions above it are searched for (the
    return value is then ``floor`` when nothing larger exists).
    """
    n = f.host.n
    eq = equality_graph(f)
    A = eq.pairs
    partners = [[] for _ in range(n)]
    for a, b in A:
        partners[a].append(b)
        if a != b:
            partners[b].append(a)
    best = cell_rank(f)
    if floor is not None:
        best = max(best, floor)

    # BFS order through the equality graph keeps constraints local
    order, seen = [], set()
    for s in sorted(range(n), key=lambda x: (-len(partners[x]), x)):
        if s in seen:
            continue
        seen.add(s)
        queue = [s]
        while queue:
            u = queue.pop(0)
            order.append(u)
            for w in sorted(partners[u]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    label = [None] * n          # 0 = zero, (c, s) otherwise
    greater = {}                # c -> set of c' with t_c > t_c'
    nodes = 0

    def pair_status(la, lb):
        """'tight', 'slack', 'bad' or ('gt', c, c')."""
        if la == 0 and lb == 0:
            return "tight"
        if la == 0 or lb == 0:
            cs = lb if la == 0 else la
            return "slack" if cs[1] > 0 else "bad"
        (ca, sa), (cb, sb) = la, lb
        if sa < 0 and sb < 0:
            return "bad"
        if sa > 0 and sb > 0:
            return "slack"
        if ca == cb:
            return "tight"
        return ("gt", ca, cb) if sa > 0 else ("gt", cb, ca)

    def reaches(a, b):
        stack, seen_c = [a], {a}
        while stack:
            c = stack.pop()
            if c == b:
                return True
            for d in greater.get(c, ()):
                if d not in seen_c:
                    seen_c.add(d)
                    stack.append(d)
        return False

    def covered_ok(x):
        """x still has (or may still get) a tight partner."""
        pending = False
        for y in partners[x]:
            if label[y] is None:
                pending = True
            elif pair_status(label[x], label[y]) == "tight":
                return True
        return pending

    def rec(k, classes):
        nonlocal nodes, best
        if classes + (n - k) // 2 <= best:
            return
        if k == n:
            B = frozenset(p for p in A if pair_status(label[p[0]], label[p[1]]) == "tight")
            dim = _admissible(n, A, B)
            if dim is not None and dim > best:
                best = dim
            return
        x = order[k]
        choices = [(c, s) for c in range(classes) for s in (1, -1)]
        choices += [(classes, 1), (classes, -1), 0]
        for lab in choices:
            nodes += 1
            if nodes > budget.max_nodes:
                raise BudgetExceeded(f"local dimension search exceeded {budget.max_nodes} nodes")
            label[x] = lab
            added = []
            ok = True
            for y in partners[x]:
                if label[y] is None:
                    continue
                st = pair_status(lab, label[y])
                if st == "bad":
                    ok = False
                    break
                if isinstance(st, tuple):
                    _, hi_c, lo_c = st
                    if lo_c in greater.get(hi_c, ()):
                        continue
                    if reaches(lo_c, hi_c):
                        ok = False
                        break
                    greater.setdefault(hi_c, set()).add(lo_c)
                    added.append((hi_c, lo_c))
            if ok:
                ok = covered_ok(x) and all(covered_ok(y) for y in partners[x] if label[y] is not None)
            if ok:
                new_classes = classes + (1 if lab != 0 and lab[0] == classes else 0)
                rec(k + 1, new_classes)
            for hi_c, lo_c in added:
                greater[hi_c].discard(lo_c)
            label[x] = None

    rec(0, 0)
    return best


class _PairIndex:
    """Bitmask encoding of unordered vertex pairs (loops included)."""

    def __init__(self, n):
        self.pairs = [(x, y) for x in range(n) for y in range(x, n)]
        self.bit = {p: i for i, p in enumerate(self.pairs)}
        self.cover = [sum(1 << self.bit[p] for p in self.pairs if x in p) for x in range(n)]

    def mask(self, pairs):
        return sum(1 << self.bit[p] for p in pairs)

    def unmask(self, m):
        return frozenset(p for p in self.pairs if m >> self.bit[p] & 1)

    def covers(self, m):
        return all(m & c for c in self.cover)


_subdivision_cache = {}


def _half_points(g, budget):
    key = (g, budget.max_vertices, budget.max_nodes)
    if key not in _subdivision_cache:
        if len(_subdivision_cache) > 64:
            _subdivision_cache.clear()
        _subdivision_cache[key] = enumerate_extremal(g, 2, budget)
    return _subdivision_cache[key]


def local_dimension(f, budget=DEFAULT_BUDGET, floor=None):
    """Largest dimension of a hull cell whose closure contains ``f``.

    Every closed cell is a polytope with half-integral vertices, and its
    equality set is the intersection of the equality sets of those vertices.
    So the candidate sets ``B`` are the intersections of ``A(f)`` with equality
    sets of other half-integer points that still cover every vertex; each
    candidate is confirmed by :func:`_admissible` (Fourier-Motzkin).
    """
    g = f.host
    n = g.n
    idx = _PairIndex(n)
    A = equality_graph(f).pairs
    top = idx.mask(A)
    masks = []
    for p in _half_points(g, budget):
        m = top & idx.mask(equality_graph(p).pairs)
        if m != top and idx.covers(m):
            masks.append(m)
    masks = sorted(set(masks))
    seen = {top}
    frontier = [top]
    nodes = 0
    while frontier:
        new = []
        for B in frontier:
            for m in masks:
                C = B & m
                if C in seen or not idx.covers(C):
                    continue
                nodes += 1
                if nodes > budget.max_nodes:
                    raise BudgetExceeded(f"cell search at {f.twice} exceeded {budget.max_nodes} nodes")
                seen.add(C)
                new.append(C)
        frontier = new
    best = cell_rank(f) if floor is None else max(floor, cell_rank(f))
    # larger kernels first; stop at the first admissible one beating best
    cands = sorted(seen, key=lambda m: -sum(_signed_components(n, idx.unmask(m))[2]))
    for m in cands:
        B = idx.unmask(m)
        if sum(_signed_components(n, B)[2]) <= best:
            break
        dim = _admissible(n, A, B)
        if dim is not None:
            best = max(best, dim)
    return best


def combinatorial_dimension(g, budget=DEFAULT_BUDGET):
    """Dimension of the injective hull: max local dimension over half-integer points."""
    best = 0
    for f in _half_points(g, budget):
        best = max(best, local_dimension(f, budget, floor=best))
    return best


def clique_of_point(f):
    """The clique ``cap_x B(x, ceil f(x))`` attached to a hull point."""
    g = f.host
    radii = [(t + 1) // 2 for t in f.twice]
    d = g.dist
    members = [u for u in range(g.n) if all(d[u][x] <= radii[x] for x in range(g.n))]
    if not members:
        raise NotHelly("empty ball intersection: host graph is not Helly")
    if not g.is_clique(members):
        raise NotHelly("ball intersection is not a clique: host graph is not Helly")
    return frozenset(members)
