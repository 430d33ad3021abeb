"""Per-level maximal matchings with exact change reporting.

The hierarchy only needs each ``M_l`` to stay maximal and to report which
edges entered or left it.  ``SurrogateLevelMatcher`` is a deterministic
maintainer: an insertion matches two free endpoints, and deleting a matched
edge lets each endpoint (ascending id) grab its smallest free neighbour.
A randomised maintainer can replace it by implementing ``LevelMatcher``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol

from .graph import EdgeRegistry, edge_key


@dataclass
class DeltaReport:
    """Edges that entered (``added``) or left (``removed``) ``M_l`` in one update."""

    added: list[tuple[int, int]] = field(default_factory=list)
    removed: list[tuple[int, int]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return bool(self.added or self.removed)


class LevelMatcher(Protocol):
    def lm_insert(self, level: int, u: int, v: int) -> DeltaReport: ...

    def lm_delete(self, level: int, u: int, v: int) -> DeltaReport: ...

    def lm_is_empty(self, level: int) -> bool: ...

    def mate(self, level: int, x: int) -> int | None: ...

    def matched_edges(self, level: int) -> list[tuple[int, int]]: ...

    def levels(self) -> list[int]: ...


class SurrogateLevelMatcher:
    """Maximal matching per level over the registry's level adjacency.

    The registry must already reflect the update when ``lm_insert`` or
    ``lm_delete`` is called.
    """

    def __init__(self, registry: EdgeRegistry):
        self.registry = registry
        self._mates: dict[int, dict[int, int]] = {}

    def lm_insert(self, level: int, u: int, v: int) -> DeltaReport:
        mates = self._mates.setdefault(level, {})
        if u in mates or v in mates:
            return DeltaReport()
        mates[u] = v
        mates[v] = u
        return DeltaReport(added=[edge_key(u, v)])

    def lm_delete(self, level: int, u: int, v: int) -> DeltaReport:
        mates = self._mates.get(level)
        if mates is None or mates.get(u) != v:
            return DeltaReport()
        del mates[u]
        del mates[v]
        report = DeltaReport(removed=[edge_key(u, v)])
        adj = self.registry.adjacency(level)
        for x in sorted((u, v)):
            if x in mates:
                continue
            nbrs = adj.get(x)
            if not nbrs:
                continue
            y = min((y for y in nbrs if y not in mates), default=None)
            if y is not None:
                mates[x] = y
                mates[y] = x
                report.added.append(edge_key(x, y))
        if not mates:
            del self._mates[level]
        return report

    def lm_is_empty(self, level: int) -> bool:
        return not self._mates.get(level)

    def mate(self, level: int, x: int) -> int | None:
        mates = self._mates.get(level)
        return None if mates is None else mates.get(x)

    def matched_edges(self, level: int) -> list[tuple[int, int]]:
        mates = self._mates.get(level, {})
        return sorted((x, y) for x, y in mates.items() if x < y)

    def levels(self) -> list[int]:
        return sorted(l for l, m in self._mates.items() if m)
