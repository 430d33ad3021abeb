"""Edge registry and weight-to-level arithmetic.

Every edge lives at exactly one integer level ``l`` such that
``alpha**(l + offset) <= w < alpha**(l + offset + 1)``.  The offset is 0 in
plain mode and the random shift ``r`` in rounded mode.  Levels may be
negative, so weights below 1 need no rescaling.
"""

from __future__ import annotations

import math
from collections import defaultdict


class GraphError(ValueError):
    """Raised for an update that the registry cannot accept."""


class DuplicateEdgeError(GraphError):
    pass


class UnknownEdgeError(GraphError):
    pass


class SelfLoopError(GraphError):
    pass


class InvalidWeightError(GraphError):
    pass


class VertexRangeError(GraphError):
    pass


def edge_key(u: int, v: int) -> tuple[int, int]:
    """Canonical (smaller, larger) form of an undirected pair."""
    return (u, v) if u < v else (v, u)


def level_of(w: float, alpha: float, offset: float = 0.0) -> int:
    """Return the unique integer ``l`` with ``alpha**(l+offset) <= w < alpha**(l+offset+1)``.

    The logarithm only supplies a candidate; the half-open interval is then
    enforced by direct comparison against the exponentiated boundaries, so the
    result agrees with ``alpha ** (l + offset) <= w`` bit for bit.
    """
    if not (isinstance(w, (int, float)) and math.isfinite(w) and w > 0):
        raise InvalidWeightError(f"weight must be a positive finite number, got {w!r}")
    if not alpha > 1:
        raise ValueError(f"alpha must exceed 1, got {alpha!r}")
    level = math.floor(math.log(w) / math.log(alpha) - offset)
    # the log candidate is off by at most one near a boundary; loop for safety
    while alpha ** (level + offset) > w:
        level -= 1
    while alpha ** (level + 1 + offset) <= w:
        level += 1
    return level


class EdgeRegistry:
    """Authoritative set of live edges with per-level adjacency.

    ``adjacency(l)`` maps each vertex to the set of its neighbours in ``E_l``.
    Only vertices with at least one edge at ``l`` appear, and a level with no
    edges is dropped entirely.
    """

    def __init__(self, n: int, alpha: float, offset: float = 0.0):
        if n < 0:
            raise ValueError("n must be non-negative")
        self.n = n
        self.alpha = alpha
        self.offset = offset
        self._edges: dict[tuple[int, int], tuple[float, int]] = {}
        self._adj: dict[int, dict[int, set[int]]] = {}
        self._level_size: dict[int, int] = defaultdict(int)

    def __len__(self) -> int:
        return len(self._edges)

    def __contains__(self, pair) -> bool:
        return edge_key(*pair) in self._edges

    def _check_vertex(self, x) -> None:
        if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < self.n:
            raise VertexRangeError(f"vertex {x!r} outside [0, {self.n})")

    def level_of(self, w: float) -> int:
        return level_of(w, self.alpha, self.offset)

    def register_edge(self, u: int, v: int, w: float) -> int:
        """Add edge ``{u, v}`` with weight ``w`` and return its level."""
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise SelfLoopError(f"self-loop on vertex {u}")
        key = edge_key(u, v)
        if key in self._edges:
            raise DuplicateEdgeError(f"edge {key} already present")
        level = self.level_of(w)
        self._edges[key] = (float(w), level)
        adj = self._adj.setdefault(level, {})
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
        self._level_size[level] += 1
        return level

    def unregister_edge(self, u: int, v: int) -> tuple[float, int]:
        """Remove edge ``{u, v}``; return its former ``(weight, level)``."""
        key = edge_key(u, v)
        try:
            w, level = self._edges.pop(key)
        except KeyError:
            raise UnknownEdgeError(f"edge {key} not present") from None
        adj = self._adj[level]
        for a, b in ((u, v), (v, u)):
            nbrs = adj[a]
            nbrs.discard(b)
            if not nbrs:
                del adj[a]
        self._level_size[level] -= 1
        if not self._level_size[level]:
            del self._level_size[level]
            del self._adj[level]
        return w, level

    def weight(self, u: int, v: int) -> float:
        return self._edges[edge_key(u, v)][0]

    def level(self, u: int, v: int) -> int:
        return self._edges[edge_key(u, v)][1]

    def get(self, u: int, v: int):
        return self._edges.get(edge_key(u, v))

    def neighbors(self, level: int, x: int) -> set[int]:
        adj = self._adj.get(level)
        if adj is None:
            return set()
        return adj.get(x, set())

    def adjacency(self, level: int) -> dict[int, set[int]]:
        return self._adj.get(level, {})

    def levels(self) -> list[int]:
        """Levels with at least one edge, ascending."""
        return sorted(self._level_size)

    def level_size(self, level: int) -> int:
        return self._level_size.get(level, 0)

    def edges(self):
        """Iterate ``(u, v, w, level)`` with ``u < v``."""
        for (u, v), (w, level) in self._edges.items():
            yield u, v, w, level

    def weighted_edges(self) -> list[tuple[int, int, float]]:
        return [(u, v, w) for (u, v), (w, _) in self._edges.items()]
