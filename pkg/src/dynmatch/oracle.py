"""Exact maximum-weight matching for small graphs and the bound audits built on it."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from .graph import edge_key
from .rounding import level_weight, plain_ratio, rounded_lower_fraction, rounded_ratio

MAX_ORACLE_VERTICES = 24


class OracleSizeError(ValueError):
    pass


@dataclass(frozen=True)
class ExactMWMResult:
    weight: float
    matching: tuple[tuple[int, int], ...]


def _normalise(edges):
    out = {}
    for u, v, w in edges:
        out[edge_key(u, v)] = float(w)
    return out


def brute_force_mwm(edges) -> ExactMWMResult:
    """Maximum-weight matching by dynamic programming over vertex subsets.

    ``edges`` is an iterable of ``(u, v, w)``.  Only vertices that carry an
    edge count toward the limit of 24.  Vertices are processed in ascending
    id order; at reconstruction the smallest vertex is left unmatched when
    that is optimal, otherwise it is paired with its smallest optimal partner.

    For the subset ``S`` with smallest member ``i``::

        best[S] = max(best[S - i], max_j best[S - i - j] + w(i, j))
    """
    wmap = _normalise(edges)
    verts = sorted({x for e in wmap for x in e})
    k = len(verts)
    if k > MAX_ORACLE_VERTICES:
        raise OracleSizeError(f"{k} non-isolated vertices exceeds the oracle limit of "
                              f"{MAX_ORACLE_VERTICES}")
    if k == 0:
        return ExactMWMResult(0.0, ())
    index = {x: i for i, x in enumerate(verts)}
    wmat = np.full((k, k), -np.inf)
    for (u, v), w in wmap.items():
        wmat[index[u], index[v]] = wmat[index[v], index[u]] = w

    best = np.zeros(1 << k)
    # masks whose lowest member is i only depend on masks built from i+1..k-1
    for i in range(k - 1, -1, -1):
        bit = 1 << i
        high = np.arange(1 << (k - i - 1), dtype=np.int64) << (i + 1)
        masks = high | bit
        val = best[high].copy()
        for j in range(i + 1, k):
            w = wmat[i, j]
            if w == -np.inf:
                continue
            jb = 1 << j
            has = (high & jb) != 0
            cand = best[high[has] ^ jb] + w
            sub = val[has]
            np.maximum(sub, cand, out=sub)
            val[has] = sub
        best[masks] = val

    matching = []
    mask = (1 << k) - 1
    while mask:
        i = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << i)
        if best[rest] == best[mask]:
            mask = rest
            continue
        for j in range(i + 1, k):
            jb = 1 << j
            w = wmat[i, j]
            if rest & jb and w != -np.inf and best[rest ^ jb] + w == best[mask]:
                matching.append((verts[i], verts[j]))
                mask = rest ^ jb
                break
        else:  # pragma: no cover - reconstruction always finds a witness
            raise AssertionError("DP reconstruction failed")
    matching.sort()
    return ExactMWMResult(sum(wmap[e] for e in matching), tuple(matching))


def enumerate_mwm(edges) -> ExactMWMResult:
    """Maximum-weight matching by listing every matching; for checking the DP."""
    wmap = _normalise(edges)
    elist = sorted(wmap)
    best_w, best_m = 0.0, ()

    def rec(i, used, chosen, total):
        nonlocal best_w, best_m
        if i == len(elist):
            if total > best_w:
                best_w, best_m = total, tuple(chosen)
            return
        rec(i + 1, used, chosen, total)
        u, v = elist[i]
        if u not in used and v not in used:
            chosen.append((u, v))
            rec(i + 1, used | {u, v}, chosen, total + wmap[(u, v)])
            chosen.pop()

    rec(0, frozenset(), [], 0.0)
    return ExactMWMResult(best_w, best_m)


def count_matchings(edges) -> int:
    elist = sorted({edge_key(u, v) for u, v, *_ in edges})

    def rec(i, used):
        if i == len(elist):
            return 1
        u, v = elist[i]
        n = rec(i + 1, used)
        if u not in used and v not in used:
            n += rec(i + 1, used | {u, v})
        return n

    return rec(0, frozenset())


def engine_oracle(eng) -> ExactMWMResult:
    return brute_force_mwm(eng.registry.weighted_edges())


# -- weight bound ---------------------------------------------------------------


@dataclass
class RatioReport:
    ratio: float
    bound: float
    passed: bool
    matching_weight: float
    optimum_weight: float
    rounded_check: tuple[float, float] | None = None
    witness: dict | None = None

    def __str__(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return f"ratio={self.ratio:.6g} bound={self.bound:.6g} {status}"


def ratio_report(eng, optimum: ExactMWMResult | None = None) -> RatioReport:
    """Compare the engine's matching with the exact optimum.

    Plain mode passes when ``w(M*) / w(M) <= 2a/(a-1) + 2a``.  Rounded mode
    passes when the rounded weight of ``M`` is at least ``(a-1)/(2a)`` times
    the rounded weight of ``M*``; ``bound`` then reports the expected ratio.
    """
    if optimum is None:
        optimum = engine_oracle(eng)
    cfg = eng.cfg
    edges, weight = eng.current_matching()
    if optimum.weight == 0:
        ratio = 1.0
    elif weight == 0:
        ratio = math.inf
    else:
        ratio = optimum.weight / weight
    report = RatioReport(ratio, 0.0, True, weight, optimum.weight)
    if cfg.rounded:
        lhs = eng.rounded_matching_weight()
        opt_r = sum(level_weight(eng.registry.level(u, v), cfg) for u, v in optimum.matching)
        rhs = rounded_lower_fraction(cfg.alpha) * opt_r
        report.bound = rounded_ratio(cfg.alpha)
        report.rounded_check = (lhs, rhs)
        report.passed = lhs >= rhs
    else:
        report.bound = plain_ratio(cfg.alpha)
        report.passed = ratio <= report.bound
    if not report.passed:
        report.witness = {
            "matching": edges,
            "optimum": list(optimum.matching),
            "edges": sorted(eng.registry.edges()),
            "h": sorted(eng.h_edges().items()),
        }
    return report


# -- charging audit -------------------------------------------------------------


@dataclass
class MappingAudit:
    """Outcome of charging every optimum edge to an edge of ``M``.

    ``mapping`` sends each optimum edge to ``(target, kind)`` where ``kind`` is
    1 (edge in M), 2 (H edge dominated by a higher M edge), 3 (non-H edge
    covered by a matched level edge) or 4 (non-H edge reached through an
    unmatched level edge).
    """

    ok: bool
    mapping: dict = field(default_factory=dict)
    direct: dict = field(default_factory=dict)
    indirect: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _pick(candidates):
    # highest level first, then smallest edge
    return min(candidates, key=lambda c: (-c[1], c[0]))[0] if candidates else None


def audit_mapping(eng, optimum: ExactMWMResult | None = None) -> MappingAudit:
    """Build the charging map from ``M*`` into ``M`` and check its counting claims.

    Checks, for every ``e`` in ``M``: at most two optimum edges charged to it
    that are ``e`` itself or touch it (direct); at most two charged from any
    single lower level that do not touch it (indirect); direct weight below
    ``2 a w(e)``; indirect weight below ``2 a w(e) / (a - 1)``.
    """
    if optimum is None:
        optimum = engine_oracle(eng)
    reg = eng.registry
    alpha = eng.cfg.alpha
    m_level = eng.matching_levels()
    h = eng.h_edges()
    mate = {}
    for (u, v), l in m_level.items():
        mate[u] = ((u, v), l)
        mate[v] = ((u, v), l)

    def m_edges_at(vertices, above):
        return [mate[x] for x in vertices if x in mate and mate[x][1] > above]

    audit = MappingAudit(True)
    for estar in optimum.matching:
        a, b = estar
        i = reg.level(a, b)
        target = kind = None
        if estar in h:
            if estar in m_level:
                target, kind = estar, 1
            else:
                target, kind = _pick(m_edges_at(estar, i)), 2
        else:
            covering = []
            for x in estar:
                y = eng.matcher.mate(i, x)
                if y is not None:
                    covering.append(edge_key(x, y))
            in_m = sorted(e for e in covering if e in m_level)
            if in_m:
                target, kind = in_m[0], 3
            else:
                for e in sorted(covering):
                    t = _pick(m_edges_at(e, i))
                    if t is not None:
                        target, kind = t, 4
                        break
            if not covering:
                audit.violations.append(("level matching not maximal at optimum edge", estar))
        if target is None:
            audit.violations.append(("optimum edge left unmapped", estar))
            continue
        audit.mapping[estar] = (target, kind)
        if estar == target or set(estar) & set(target):
            audit.direct.setdefault(target, []).append(estar)
        else:
            audit.indirect.setdefault(target, []).append(estar)

    for e, charged in audit.direct.items():
        w = reg.weight(*e)
        if len(charged) > 2:
            audit.violations.append(("more than two direct charges", e, charged))
        total = sum(reg.weight(*c) for c in charged)
        if not total < 2 * alpha * w:
            audit.violations.append(("direct weight bound", e, total, 2 * alpha * w))
    for e, charged in audit.indirect.items():
        w = reg.weight(*e)
        le = m_level[e]
        by_level = defaultdict(list)
        for c in charged:
            by_level[reg.level(*c)].append(c)
        for l, cs in by_level.items():
            if l >= le:
                audit.violations.append(("indirect charge from a level not below", e, cs))
            if len(cs) > 2:
                audit.violations.append(("more than two indirect charges from one level", e, l, cs))
        total = sum(reg.weight(*c) for c in charged)
        if not total < 2 * alpha * w / (alpha - 1):
            audit.violations.append(("indirect weight bound", e, total,
                                     2 * alpha * w / (alpha - 1)))
    audit.ok = not audit.violations
    return audit
