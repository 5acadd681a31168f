"""k-largeness of flag complexes given by their 1-skeleton."""

from dataclasses import dataclass
from typing import Optional

from .errors import DEFAULT_BUDGET, BudgetExceeded, InvalidInput


@dataclass(frozen=True)
class LargenessReport:
    k_tested: int
    verdict: bool
    witness: Optional[tuple] = None

    def to_json(self):
        return {"k": self.k_tested, "k_large": self.verdict,
                "witness": None if self.witness is None else list(self.witness)}


def _first_induced_cycle(g, length, budget):
    """Lexicographically least induced cycle of the given length, or ``None``.

    Cycles are written from their smallest vertex, oriented so that the
    second vertex is smaller than the last.
    """
    adj = g.adj
    nodes = 0
    path = []

    def rec(s):
        nonlocal nodes
        m = len(path)
        last = path[-1]
        for v in g.neighbors(last):
            nodes += 1
            if nodes > budget.max_nodes:
                raise BudgetExceeded(f"induced cycle search exceeded {budget.max_nodes} nodes")
            if v <= s or v in path:
                continue
            # v must avoid every earlier path vertex except its predecessor (and s when closing)
            if any(v in adj[u] for u in path[1:-1]):
                continue
            if m == length - 1:
                if v in adj[s] and path[1] < v:
                    path.append(v)
                    return True
                continue
            if m >= 2 and v in adj[s]:
                continue
            path.append(v)
            if rec(s):
                return True
            path.pop()
        return False

    for s in range(g.n):
        path[:] = [s]
        if rec(s):
            return tuple(path)
    return None


def is_k_large(g, k, budget=DEFAULT_BUDGET):
    """k-large iff no induced cycle of length 4..k-1; the witness is the least shortest one."""
    if k < 4:
        raise InvalidInput("k must be at least 4")
    for length in range(4, min(k, g.n + 1)):
        cyc = _first_induced_cycle(g, length, budget)
        if cyc is not None:
            return LargenessReport(k, False, cyc)
    return LargenessReport(k, True, None)
