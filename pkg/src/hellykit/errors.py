"""Exception types and search budgets shared across the package."""

from dataclasses import dataclass, replace


class HellyError(Exception):
    """Base class for all errors raised by hellykit."""


class DisconnectedGraph(HellyError):
    pass


class InvalidInput(HellyError):
    """Malformed graph, family or automorphism description."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{line}:{column or 1}: {message}"
        super().__init__(message)


class BudgetExceeded(HellyError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NotHelly(HellyError):
    pass


class NotTransverse(HellyError):
    pass


class EmptyIntersection(HellyError):
    """A ball intersection the Helly property guarantees turned out empty."""


class SubdivisionInsufficient(HellyError):
    """No invariant point exists among the half-integer hull points."""


class SearchExhausted(HellyError):
    def __init__(self, message, prefix=None):
        super().__init__(message)
        self.prefix = prefix or []


@dataclass(frozen=True)
class Budget:
    """Limits for every semi-decision procedure.

    ``max_vertices`` caps hull enumeration input size, ``max_nodes`` caps
    search-tree nodes, ``max_word_len`` bounds group words per factor and
    ``window`` is the verification window for orbit/clique-path checks,
    ``a_max`` the largest power tried for a linear orbit, ``base_radius`` the
    search radius for base points, ``search_depth`` the geodesic length sought
    and ``max_orbit`` the largest group orbit explored.
    """

    max_vertices: int = 32
    max_nodes: int = 1 << 20
    max_word_len: int = 4
    window: int = 12
    a_max: int = 8
    base_radius: int = 3
    search_depth: int = 12
    max_orbit: int = 4096

    def with_(self, **kw):
        return replace(self, **kw)


DEFAULT_BUDGET = Budget()
