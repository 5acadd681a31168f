"""Transverse distance, (local) L-clique-paths, their construction and invariant axes.

Internally every length is counted in hops of the view; public functions take
and return metric values (hops times ``view.edge_length``).
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import DEFAULT_BUDGET, BudgetExceeded, EmptyIntersection, InvalidInput, NotTransverse
from .formats import clique_json, frac_str, vertex_json
from .graph import common_neighbors, intersect_balls


class Check(NamedTuple):
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class CliquePath:
    cliques: tuple
    L: Fraction
    view: object

    def __post_init__(self):
        object.__setattr__(self, "cliques", tuple(frozenset(c) for c in self.cliques))
        object.__setattr__(self, "L", Fraction(self.L))

    def __len__(self):
        return len(self.cliques)

    @property
    def step(self):
        """L in hops."""
        return _to_hops(self.L, self.view)

    def to_json(self, **extra):
        out = {"L": frac_str(self.L), "cliques": [clique_json(c) for c in self.cliques],
               "periodic": False, "period": 0, "power_a": 0}
        out.update(extra)
        return out


def _to_hops(L, view):
    h = Fraction(L) / view.edge_length
    if h.denominator != 1 or h <= 0:
        raise NotTransverse(f"step {L} is not a positive multiple of the edge length {view.edge_length}")
    return int(h)


def _transverse_hops(sigma, tau, view):
    dist = view.distance
    rows = {x: [dist(x, y) for y in tau] for x in sigma}
    n = min(min(r) for r in rows.values())
    if not any(all(d == n for d in r) for r in rows.values()):
        return None
    cols = list(zip(*rows.values()))
    if not any(all(d == n for d in c) for c in cols):
        return None
    return n


def transverse_distance(sigma, tau, view):
    """``sigma <> tau`` in metric units, or ``None`` when the cliques are not transverse."""
    sigma, tau = _ordered(sigma), _ordered(tau)
    if not sigma or not tau:
        raise InvalidInput("cliques must be nonempty")
    h = _transverse_hops(sigma, tau, view)
    return None if h is None else view.metric(h)


def _ordered(c):
    return sorted(c)


def _extendable(clique, left, right, step, view):
    """First vertex that enlarges ``clique`` keeping transverse ``step`` to both sides."""
    for v in common_neighbors(clique, view):
        bigger = clique | {v}
        if all(_transverse_hops(bigger, side, view) == step for side in (left, right)):
            return v
    return None


def _check_hops(cliques, step, view):
    k = len(cliques)
    for i in range(k):
        for j in range(i + 1, k):
            if cliques[i] & cliques[j]:
                return Check(False, f"cliques {i} and {j} intersect")
            h = _transverse_hops(cliques[i], cliques[j], view)
            if h != (j - i) * step:
                got = "undefined" if h is None else view.metric(h)
                return Check(False, f"transverse distance of {i} and {j} is {got}, "
                                    f"expected {view.metric((j - i) * step)}")
    for i in range(1, k - 1):
        if not view.is_clique(cliques[i]):
            return Check(False, f"set {i} is not a clique")
        v = _extendable(cliques[i], cliques[i - 1], cliques[i + 1], step, view)
        if v is not None:
            return Check(False, f"clique {i} is not maximal: {v!r} can be added")
    for i in (0, k - 1):
        if not view.is_clique(cliques[i]):
            return Check(False, f"set {i} is not a clique")
    return Check(True)


def is_clique_path(path):
    """Check every pair's transverse distance and interior maximality."""
    if len(path) < 2:
        return Check(False, "need at least two cliques")
    return _check_hops(path.cliques, path.step, path.view)


def is_local_clique_path(path):
    if len(path) < 2:
        return Check(False, "need at least two cliques")
    if len(path) == 2:
        return _check_hops(path.cliques, path.step, path.view)
    for i in range(len(path) - 2):
        res = _check_hops(path.cliques[i:i + 3], path.step, path.view)
        if not res:
            return Check(False, f"triple {i}: {res.reason}")
    return Check(True)


def verify_local_to_global(path):
    """Every pair of window cliques is at distance at least ``|n - m| L``."""
    pre = is_local_clique_path(path)
    if not pre:
        raise InvalidInput(f"not a local clique-path ({pre.reason})")
    view, cl, step = path.view, path.cliques, path.step
    for i in range(len(cl)):
        for j in range(i + 1, len(cl)):
            if min(view.distance(x, y) for x in cl[i] for y in cl[j]) < (j - i) * step:
                return False
    return True


# -- construction ----------------------------------------------------------------

def _witness(sigma, tau, n, view):
    """Least ``x`` in ``sigma`` with ``tau`` inside ``B(x, n)``."""
    for x in sorted(sigma):
        if all(view.distance(x, y) <= n for y in tau):
            return x
    raise NotTransverse("no vertex realizes the transverse distance")


def _spine(sigma, tau, n, view):
    """1-hop clique sequence from sigma to tau of length n (recursive ball intersections)."""
    if n == 1:
        return [sigma, tau]
    x0 = _witness(sigma, tau, n, view)
    xn = _witness(tau, sigma, n, view)
    el = view.edge_length
    X = intersect_balls([(t, (n - 1) * el) for t in sorted(sigma)] + [(xn, el)], view)
    if not X:
        raise EmptyIntersection("ball intersection toward the target is empty")
    x = min(X)
    Y = intersect_balls([(t, el) for t in sorted(tau)] + [(x0, (n - 1) * el), (x, el)], view)
    if not Y:
        raise EmptyIntersection("ball intersection for the penultimate clique is empty")
    y = min(Y)
    return _spine(sigma, frozenset({x, y}), n - 1, view) + [tau]


def _maximalize(cliques, step, view, frozen=(0, -1), limit=10 ** 6):
    """Grow the interior cliques until no single vertex can be added anywhere."""
    cl = [frozenset(c) for c in cliques]
    k = len(cl)
    fixed = {i % k for i in frozen}
    rounds = 0
    changed = True
    while changed:
        changed = False
        rounds += 1
        if rounds > limit:
            raise BudgetExceeded("maximalization did not converge")
        for i in range(k):
            if i in fixed:
                continue
            sides = [cl[j] for j in (i - 1, i + 1) if 0 <= j < k]
            while True:
                v = None
                for w in common_neighbors(cl[i], view):
                    bigger = cl[i] | {w}
                    if all(_transverse_hops(bigger, s, view) == step for s in sides):
                        v = w
                        break
                if v is None:
                    break
                cl[i] = cl[i] | {v}
                changed = True
    return cl


def build_clique_path(sigma, tau, L, view):
    """An L-clique-path of length n from sigma to tau, where ``sigma <> tau = nL``."""
    sigma, tau = frozenset(sigma), frozenset(tau)
    if not view.is_clique(sigma) or not view.is_clique(tau):
        raise InvalidInput("endpoints must be cliques")
    step = _to_hops(L, view)
    total = _transverse_hops(sorted(sigma), sorted(tau), view)
    if total is None:
        raise NotTransverse("the cliques are not at a transverse distance")
    if total == 0 or total % step:
        raise NotTransverse(f"transverse distance {view.metric(total)} is not a positive multiple of {L}")
    n = total // step
    if n == 1:
        path = CliquePath((sigma, tau), L, view)
    else:
        spine = _spine(sigma, tau, total, view)
        if step == 1:
            cl = _maximalize(spine, 1, view)
        else:
            cl = _maximalize([spine[i * step] for i in range(n + 1)], step, view)
        path = CliquePath(cl, L, view)
    res = is_clique_path(path)
    if not res:
        raise EmptyIntersection(f"constructed sequence is not a clique-path: {res.reason}")
    return path


# -- invariant axes ---------------------------------------------------------------

@dataclass(frozen=True)
class HyperbolicCertificate:
    """``g^(a m)`` maps ``cliques[r]`` to the clique ``m`` steps later.

    The bi-infinite path is ``sigma_(qm + r) = g^(a m q) cliques[r]``.
    """

    g: object
    view: object
    a: int
    L: Fraction
    base: object
    period: int
    cliques: tuple
    window: int

    def clique(self, n):
        q, r = divmod(n, self.period)
        return (self.g ** (self.a * self.period * q)).apply(self.cliques[r])

    def path(self, start, count):
        return CliquePath([self.clique(n) for n in range(start, start + count)], self.L, self.view)

    @property
    def translation_length(self):
        return Fraction(self.L) / self.a

    def verify(self, window=None):
        """Re-check displacement and local clique-path structure on a window."""
        w = self.window if window is None else window
        h = self.g ** self.a
        step = _to_hops(self.L, self.view)
        y = self.base
        for n in range(w + 1):
            if self.view.distance(self.base, y) != n * step:
                return Check(False, f"displacement at n={n}")
            y = h(y)
        if self.base not in self.clique(0):
            return Check(False, "base point not in the first clique")
        return is_local_clique_path(self.path(-w, 2 * w + 1))

    def to_json(self):
        return {"L": frac_str(self.L), "cliques": [clique_json(c) for c in self.cliques],
                "periodic": True, "period": self.period, "power_a": self.a,
                "base": vertex_json(self.base), "certificate_window": self.window}


def _linear_base(g, view, budget):
    """Smallest power ``a`` and base ``x`` with ``d(x, g^(an) x) = nL`` over the window."""
    origin = tuple([0] * view.dim) if hasattr(view, "dim") else 0
    if view.is_finite:
        candidates = sorted(view.vertices() if hasattr(view, "dim") else range(view.n))
    else:
        candidates = sorted(view.ball(origin, budget.base_radius),
                            key=lambda v: (view.distance(origin, v), v))
    for a in range(1, budget.a_max + 1):
        h = g ** a
        for x in candidates:
            y = h(x)
            step = view.distance(x, y)
            if step == 0:
                continue
            ok = True
            for n in range(2, budget.window + 1):
                y = h(y)
                if view.distance(x, y) != n * step:
                    ok = False
                    break
            if ok:
                return a, x, step
    raise BudgetExceeded(f"no base point with linear displacement (a <= {budget.a_max})")


def _equivariant_clique(h, x, step, view, budget):
    """Grow a clique around ``x`` whose translates ``h^n C`` stay transverse."""
    C = frozenset({x})
    h2 = h * h
    while True:
        grown = False
        for v in common_neighbors(C, view):
            bigger = C | {v}
            if (_transverse_hops(bigger, h.apply(bigger), view) == step
                    and _transverse_hops(bigger, h2.apply(bigger), view) == 2 * step):
                C = bigger
                grown = True
                break
        if not grown:
            return C


def invariant_clique_path(g, view, budget=DEFAULT_BUDGET):
    """Certificate of hyperbolicity: a periodic local L-clique-path along an orbit."""
    a, x, step = _linear_base(g, view, budget)
    h = g ** a
    L = view.metric(step)
    W = budget.window
    C = _equivariant_clique(h, x, step, view, budget)
    cert = HyperbolicCertificate(g, view, a, Fraction(L), x, 1, (C,), W)
    if cert.verify():
        return cert
    # maximal family on a window, then periodicity by pigeonhole
    size = 3 * W
    orbit = [x]
    for _ in range(size - 1):
        orbit.append(h(orbit[-1]))
    family = _maximalize([frozenset({p}) for p in orbit], step, view, frozen=())
    for m in range(1, W):
        hm = h ** m
        for r in range(W, 2 * W - m):
            if all(hm.apply(family[r + k]) == family[r + m + k] for k in range(3)):
                base = orbit[r]
                cl = tuple(family[r:r + m])
                cert = HyperbolicCertificate(g, view, a, Fraction(L), base, m, cl, W)
                if cert.verify():
                    return cert
    raise BudgetExceeded("no periodic local clique-path found in the window")
