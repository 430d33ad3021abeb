"""Fully dynamic approximate maximum-weight matching over leveled maximal matchings.

Edges are bucketed by weight into geometric levels and each level keeps a
maximal matching ``M_l``.  Their union ``H`` has at most one edge per level at
every vertex.  The engine maintains a matching ``M`` inside ``H`` such that
every edge of ``H`` is either in ``M`` or touches an ``M`` edge of strictly
higher level.  With ``alpha = 2`` this keeps ``w(M) >= w(M*) / 8``.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass

from .graph import EdgeRegistry, edge_key
from .levels import DeltaReport, LevelMatcher, SurrogateLevelMatcher
from .rounding import RoundingConfig, level_weight

INSERT = "insert"
DELETE = "delete"


@dataclass(frozen=True)
class UpdateSummary:
    kind: str
    edge: tuple[int, int]
    level: int
    removed: int
    added: int
    cascade_depth: int
    evictions: int


@dataclass
class InvariantReport:
    ok: bool
    violation: str | None = None
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return f"{self.violation}: {self.witness!r}"


class DynamicMatching:
    """Engine over a fixed vertex set ``0..n-1``.

    >>> eng = DynamicMatching(4)
    >>> _ = eng.insert(0, 1, 3.0)
    >>> eng.current_matching()
    ([(0, 1)], 3.0)
    """

    def __init__(self, n: int, cfg: RoundingConfig | None = None, matcher_factory=None):
        self.cfg = cfg if cfg is not None else RoundingConfig()
        self.n = n
        self.registry = EdgeRegistry(n, self.cfg.alpha, self.cfg.offset)
        factory = matcher_factory or SurrogateLevelMatcher
        self.matcher: LevelMatcher = factory(self.registry)
        self._mate: dict[int, int] = {}
        self._mlevel: dict[int, int] = {}  # level of the M-edge at each matched vertex
        self._nbr: dict[int, dict[int, int]] = {}  # N(v, l)
        self._occupied: list[int] = []
        self._depth = 0
        self._max_depth = 0
        self._evictions = 0

    # -- matching primitives ------------------------------------------------

    def add_to_matching(self, u: int, v: int, level: int) -> None:
        assert u not in self._mate and v not in self._mate, (u, v)
        self._mate[u] = v
        self._mate[v] = u
        self._mlevel[u] = level
        self._mlevel[v] = level

    def del_from_matching(self, u: int, v: int) -> None:
        assert self._mate.get(u) == v, (u, v)
        del self._mate[u], self._mate[v]
        del self._mlevel[u], self._mlevel[v]

    def _steal(self, v: int) -> tuple[int, int]:
        """Evict ``v``'s matched edge; return the ex-mate and that edge's level."""
        x = self._mate[v]
        lx = self._mlevel[v]
        self.del_from_matching(v, x)
        self._evictions += 1
        return x, lx

    # -- cascade --------------------------------------------------------------

    def handle_free(self, u: int, lev: int) -> None:
        """Re-match ``u`` by scanning its H-neighbours from ``lev`` downward.

        A free neighbour is taken outright; a neighbour whose matched edge sits
        below the current level is stolen and its ex-mate is processed
        recursively from that lower level.  If ``u`` was re-matched by an
        earlier cascade of the same update, only levels strictly above its
        current matched edge are examined, and taking an edge there releases
        ``u``'s old mate.
        """
        self._depth += 1
        if self._depth > self._max_depth:
            self._max_depth = self._depth
        try:
            nbrs = self._nbr.get(u)
            if not nbrs:
                return
            floor = self._mlevel.get(u)
            levels = sorted((l for l in nbrs if l <= lev and (floor is None or l > floor)),
                            reverse=True)
            for l in levels:
                v = nbrs[l]
                v_level = self._mlevel.get(v)
                if v_level is not None and v_level >= l:
                    continue
                released = self._steal(u) if floor is not None else None
                stolen = self._steal(v) if v_level is not None else None
                self.add_to_matching(u, v, l)
                if stolen is not None:
                    self.handle_free(*stolen)
                if released is not None:
                    self.handle_free(*released)
                return
        finally:
            self._depth -= 1

    # -- changes to H -----------------------------------------------------------

    def add_edge_h(self, u: int, v: int, level: int) -> None:
        """React to ``(u, v)`` entering ``M_level``."""
        self._nbr.setdefault(u, {})[level] = v
        self._nbr.setdefault(v, {})[level] = u
        lu = self._mlevel.get(u)
        lv = self._mlevel.get(v)
        if lu is None and lv is None:
            self.add_to_matching(u, v, level)
            return
        # every matched endpoint must sit strictly below, otherwise (u, v)
        # already touches a higher M-edge
        if (lu is not None and lu >= level) or (lv is not None and lv >= level):
            return
        freed = [self._steal(x) for x in sorted((u, v)) if x in self._mate]
        self.add_to_matching(u, v, level)
        for x, lx in freed:
            self.handle_free(x, lx)

    def delete_edge_h(self, u: int, v: int, level: int) -> None:
        """React to ``(u, v)`` leaving ``M_level``."""
        for a in (u, v):
            nbrs = self._nbr[a]
            del nbrs[level]
            if not nbrs:
                del self._nbr[a]
        if self._mate.get(u) != v:
            return
        self.del_from_matching(u, v)
        a, b = sorted((u, v))
        self.handle_free(a, level)
        self.handle_free(b, level)

    def _apply(self, level: int, report: DeltaReport) -> None:
        for x, y in report.removed:
            self.delete_edge_h(x, y, level)
        for x, y in report.added:
            self.add_edge_h(x, y, level)

    # -- updates to G -------------------------------------------------------------

    def insert(self, u: int, v: int, w: float) -> UpdateSummary:
        level = self.registry.register_edge(u, v, w)
        if self.registry.level_size(level) == 1:
            bisect.insort(self._occupied, level)
        report = self.matcher.lm_insert(level, u, v)
        return self._finish(INSERT, (u, v), level, report)

    def delete(self, u: int, v: int) -> UpdateSummary:
        _, level = self.registry.unregister_edge(u, v)
        report = self.matcher.lm_delete(level, u, v)
        if self.registry.level_size(level) == 0:
            del self._occupied[bisect.bisect_left(self._occupied, level)]
        return self._finish(DELETE, (u, v), level, report)

    def edge_update(self, u: int, v: int, w: float | None = None, kind: str = INSERT) -> UpdateSummary:
        if kind == INSERT:
            if w is None:
                raise ValueError("insert requires a weight")
            return self.insert(u, v, w)
        if kind == DELETE:
            return self.delete(u, v)
        raise ValueError(f"unknown update kind {kind!r}")

    def _finish(self, kind, edge, level, report: DeltaReport) -> UpdateSummary:
        self._max_depth = 0
        self._evictions = 0
        self._apply(level, report)
        return UpdateSummary(kind, edge_key(*edge), level, len(report.removed),
                             len(report.added), self._max_depth, self._evictions)

    # -- queries -------------------------------------------------------------------

    def mate_of(self, v: int) -> int | None:
        return self._mate.get(v)

    def is_free(self, v: int) -> bool:
        return v not in self._mate

    def matching_edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u, v in self._mate.items() if u < v)

    def matching_levels(self) -> dict[tuple[int, int], int]:
        return {(u, v): self._mlevel[u] for u, v in self._mate.items() if u < v}

    def current_matching(self) -> tuple[list[tuple[int, int]], float]:
        edges = self.matching_edges()
        return edges, sum(self.registry.weight(u, v) for u, v in edges)

    def matching_weight(self) -> float:
        return self.current_matching()[1]

    def rounded_matching_weight(self) -> float:
        return sum(level_weight(l, self.cfg) for l in self.matching_levels().values())

    def h_edges(self) -> dict[tuple[int, int], int]:
        """Edges of ``H`` mapped to their level."""
        out = {}
        for x, by_level in self._nbr.items():
            for l, y in by_level.items():
                if x < y:
                    out[(x, y)] = l
        return out

    def h_neighbor(self, v: int, level: int) -> int | None:
        return self._nbr.get(v, {}).get(level)

    @property
    def occupied_levels(self) -> list[int]:
        return list(self._occupied)

    @property
    def lmax(self) -> int | None:
        return self._occupied[-1] if self._occupied else None

    @property
    def lmin(self) -> int | None:
        return self._occupied[0] if self._occupied else None

    def static_combine(self) -> list[tuple[int, int]]:
        """Greedy top-down combination of the current ``M_l``; leaves state untouched."""
        used: set[int] = set()
        result = []
        for l in sorted(self.matcher.levels(), reverse=True):
            for u, v in self.matcher.matched_edges(l):
                if u not in used and v not in used:
                    used.update((u, v))
                    result.append((u, v))
        return sorted(result)

    # -- audit ---------------------------------------------------------------------

    def check_invariants(self) -> InvariantReport:
        """Check every structural invariant; report the first failure with a witness."""
        return check_invariants(self)


def check_invariants(eng: DynamicMatching) -> InvariantReport:
    reg = eng.registry
    alpha, offset = reg.alpha, reg.offset
    edges = reg._edges
    adj_by_level = reg._adj

    # registry: level intervals and adjacency
    per_level: dict[int, int] = {}
    bounds: dict[int, tuple[float, float]] = {}
    for (u, v), (w, l) in edges.items():
        b = bounds.get(l)
        if b is None:
            b = bounds[l] = (alpha ** (l + offset), alpha ** (l + 1 + offset))
        if not b[0] <= w < b[1]:
            return InvariantReport(False, "edge outside its level interval", (u, v, w, l))
        adj = adj_by_level.get(l)
        if adj is None or v not in adj.get(u, ()) or u not in adj.get(v, ()):
            return InvariantReport(False, "edge missing from level adjacency", (u, v, l))
        per_level[l] = per_level.get(l, 0) + 1
    for l, adj in adj_by_level.items():
        # every half-edge is matched by a registered edge, so symmetry follows from counts
        half = sum(len(nbrs) for nbrs in adj.values())
        if half != 2 * per_level.get(l, 0) or reg.level_size(l) != per_level.get(l, 0):
            return InvariantReport(False, "level size mismatch", l)
        if any(not nbrs for nbrs in adj.values()):
            return InvariantReport(False, "empty adjacency entry retained", l)

    # occupied levels
    levels = sorted(per_level)
    if eng._occupied != levels:
        return InvariantReport(False, "OccupiedLevels differs from nonempty levels",
                               (eng.occupied_levels, levels))

    # per-level maximal matchings
    h_expected: dict[tuple[int, int], int] = {}
    for l in set(levels) | set(eng.matcher.levels()):
        seen: set[int] = set()
        for u, v in eng.matcher.matched_edges(l):
            if u in seen or v in seen:
                return InvariantReport(False, "M_l is not a matching", (l, u, v))
            seen.add(u)
            seen.add(v)
            rec = edges.get((u, v))
            if rec is None or rec[1] != l:
                return InvariantReport(False, "M_l edge not in E_l", (l, u, v))
            h_expected[(u, v)] = l
        for x, nbrs in adj_by_level.get(l, {}).items():
            if x not in seen and not nbrs <= seen:
                y = min(nbrs - seen)
                return InvariantReport(False, "M_l not maximal", (l, edge_key(x, y)))
        if eng.matcher.lm_is_empty(l) != (l not in per_level):
            return InvariantReport(False, "M_l empty iff E_l empty fails", l)

    # N bookkeeping mirrors H
    nbr = eng._nbr
    h: dict[tuple[int, int], int] = {}
    for x, by_level in nbr.items():
        if not by_level:
            return InvariantReport(False, "empty neighbour table retained", x)
        for l, y in by_level.items():
            if nbr.get(y, {}).get(l) != x:
                return InvariantReport(False, "N not symmetric", (x, y, l))
            if x < y:
                h[(x, y)] = l
    if h != h_expected:
        diff = set(h.items()) ^ set(h_expected.items())
        return InvariantReport(False, "N disagrees with union of M_l", sorted(diff)[:1])

    # M is a matching inside H
    mate, mlevel = eng._mate, eng._mlevel
    if mate.keys() != mlevel.keys():
        return InvariantReport(False, "Free/Mate bookkeeping out of sync",
                               sorted(set(mlevel) ^ set(mate))[:1])
    for u, v in mate.items():
        if mate.get(v) != u or u == v:
            return InvariantReport(False, "Mate not symmetric", (u, v))
        if mlevel[u] != mlevel[v]:
            return InvariantReport(False, "matched edge level disagrees at endpoints", (u, v))
        key = (u, v) if u < v else (v, u)
        if h.get(key) != mlevel[u]:
            return InvariantReport(False, "M edge not in H at its level", key)

    # hierarchy invariant
    for (u, v), l in h.items():
        if mate.get(u) == v:
            continue
        lu = mlevel.get(u)
        lv = mlevel.get(v)
        if not ((lu is not None and lu > l) or (lv is not None and lv > l)):
            return InvariantReport(False, "H edge neither matched nor dominated by a higher M edge",
                                   ((u, v), l, lu, lv))
    return InvariantReport(True)
