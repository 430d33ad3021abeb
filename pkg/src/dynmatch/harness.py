"""Update streams: parsing, generation, replay and statistics.

Stream text format, one event per line::

    + <u> <v> <w>    insert edge {u, v} with weight w
    - <u> <v>        delete edge {u, v}
    q                record a checkpoint
    # ...            comment; blank lines are ignored too
"""

from __future__ import annotations

import json
import logging
import math
import random
import time
from dataclasses import dataclass, field
from typing import NamedTuple, Union

from .graph import GraphError, edge_key
from .hierarchy import DynamicMatching
from .oracle import MAX_ORACLE_VERTICES, audit_mapping, engine_oracle, ratio_report
from .rounding import RoundingConfig

log = logging.getLogger(__name__)


class Insert(NamedTuple):
    u: int
    v: int
    w: float


class Delete(NamedTuple):
    u: int
    v: int


class Query(NamedTuple):
    pass


Event = Union[Insert, Delete, Query]


class StreamParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


class StreamError(RuntimeError):
    """An event the engine rejected, tagged with its 1-based step index."""

    def __init__(self, step: int, msg: str):
        super().__init__(f"step {step}: {msg}")
        self.step = step


def _vertex(tok: str, lineno: int) -> int:
    try:
        x = int(tok)
    except ValueError:
        raise StreamParseError(lineno, f"bad vertex id {tok!r}") from None
    if x < 0:
        raise StreamParseError(lineno, f"negative vertex id {x}")
    return x


def parse_stream(text: str) -> list[Event]:
    events: list[Event] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        op = toks[0]
        if op == "+":
            if len(toks) != 4:
                raise StreamParseError(lineno, "insert needs '+ u v w'"
                                       + (" (missing weight)" if len(toks) == 3 else ""))
            try:
                w = float(toks[3])
            except ValueError:
                raise StreamParseError(lineno, f"bad weight {toks[3]!r}") from None
            if not (math.isfinite(w) and w > 0):
                raise StreamParseError(lineno, f"weight must be positive and finite, got {toks[3]}")
            events.append(Insert(_vertex(toks[1], lineno), _vertex(toks[2], lineno), w))
        elif op == "-":
            if len(toks) != 3:
                raise StreamParseError(lineno, "delete needs '- u v'")
            events.append(Delete(_vertex(toks[1], lineno), _vertex(toks[2], lineno)))
        elif op == "q":
            if len(toks) != 1:
                raise StreamParseError(lineno, "query takes no arguments")
            events.append(Query())
        else:
            raise StreamParseError(lineno, f"unknown event {op!r}")
    return events


def format_stream(events) -> str:
    lines = []
    for ev in events:
        if isinstance(ev, Insert):
            lines.append(f"+ {ev.u} {ev.v} {ev.w!r}")
        elif isinstance(ev, Delete):
            lines.append(f"- {ev.u} {ev.v}")
        else:
            lines.append("q")
    return "\n".join(lines) + ("\n" if lines else "")


def stream_vertex_count(events) -> int:
    """Smallest ``n`` whose vertex range covers every id in the stream."""
    top = -1
    for ev in events:
        if not isinstance(ev, Query):
            top = max(top, ev.u, ev.v)
    return top + 1


# -- generators ------------------------------------------------------------------


class _LiveEdges:
    """Live edge set with O(1) uniform sampling."""

    def __init__(self):
        self.items: list[tuple[int, int]] = []
        self.pos: dict[tuple[int, int], int] = {}

    def __len__(self):
        return len(self.items)

    def __contains__(self, e):
        return e in self.pos

    def add(self, e):
        self.pos[e] = len(self.items)
        self.items.append(e)

    def remove(self, e):
        i = self.pos.pop(e)
        last = self.items.pop()
        if i < len(self.items):
            self.items[i] = last
            self.pos[last] = i


def _random_absent_pair(rng: random.Random, n: int, live: _LiveEdges):
    total = n * (n - 1) // 2
    if len(live) * 2 < total:
        while True:
            u, v = rng.sample(range(n), 2)
            e = edge_key(u, v)
            if e not in live:
                return e
    absent = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in live]
    return rng.choice(absent)


def _random_stream(n, steps, wmin, wmax, seed, p_insert=0.6):
    if n < 2:
        raise ValueError("random streams need n >= 2")
    rng = random.Random(seed)
    live = _LiveEdges()
    total = n * (n - 1) // 2
    events = []
    for _ in range(steps):
        if len(live) == 0 or (len(live) < total and rng.random() < p_insert):
            u, v = _random_absent_pair(rng, n, live)
            live.add((u, v))
            events.append(Insert(u, v, rng.uniform(wmin, wmax)))
        else:
            e = live.items[rng.randrange(len(live))]
            live.remove(e)
            events.append(Delete(*e))
    return events


def _sliding_window_stream(n, steps, wmin, wmax, seed, window):
    """Event ``t`` deletes the edge inserted at ``t - window`` when there was one."""
    if window < 1:
        raise ValueError("window must be positive")
    if n * (n - 1) // 2 <= window:
        raise ValueError("window must be smaller than the number of vertex pairs")
    rng = random.Random(seed)
    live = _LiveEdges()
    events: list[Event] = []
    for t in range(steps):
        if t >= window and isinstance(events[t - window], Insert):
            old = events[t - window]
            live.remove(edge_key(old.u, old.v))
            events.append(Delete(old.u, old.v))
        else:
            u, v = _random_absent_pair(rng, n, live)
            live.add((u, v))
            events.append(Insert(u, v, rng.uniform(wmin, wmax)))
    return events


def adversarial_levels_stream(alpha=2.0, depth=3, offset=0.0):
    """Layered worst case for the charging argument.

    A matched edge ``(0, 1)`` at level ``depth`` with weight ``alpha**depth``;
    two pendant edges at the same level just under ``alpha**(depth+1)`` that
    the level matching cannot take; and, on every lower level ``j``, one H
    edge hanging off each endpoint whose far end carries an optimum edge just
    under ``alpha**(j+1)``.  The ratio approaches ``2a + 2a(1 - a**-depth)/(a-1)``.
    Uses ``4 * depth + 4`` vertices.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")

    def top_of(level):
        return math.nextafter(alpha ** (level + 1 + offset), 0.0)

    events: list[Event] = [Insert(0, 1, alpha ** (depth + offset))]
    events.append(Insert(0, 2, top_of(depth)))
    events.append(Insert(1, 3, top_of(depth)))
    nxt = 4
    for j in range(depth - 1, -1, -1):
        for centre in (0, 1):
            a, c = nxt, nxt + 1
            nxt += 2
            events.append(Insert(centre, a, alpha ** (j + offset)))
            events.append(Insert(a, c, top_of(j)))
    events.append(Query())
    return events


GENERATORS = ("random", "sliding-window", "adversarial-levels")


def generate_stream(kind: str, *, n=8, steps=200, wmin=1.0, wmax=100.0, seed=0,
                    p_insert=0.6, window=50, alpha=2.0, depth=3, offset=0.0) -> list[Event]:
    """Deterministic synthetic stream of the given ``kind``."""
    if not (0 < wmin <= wmax and math.isfinite(wmax)):
        raise ValueError("need 0 < wmin <= wmax < inf")
    if steps < 0:
        raise ValueError("steps must be non-negative")
    if kind == "random":
        return _random_stream(n, steps, wmin, wmax, seed, p_insert)
    if kind == "sliding-window":
        return _sliding_window_stream(n, steps, wmin, wmax, seed, window)
    if kind == "adversarial-levels":
        return adversarial_levels_stream(alpha, depth, offset)
    raise ValueError(f"unknown generator {kind!r}; choose from {', '.join(GENERATORS)}")


# -- replay ------------------------------------------------------------------------


def apply_event(engine: DynamicMatching, ev: Event):
    """Apply one insert or delete; queries are ignored and return None."""
    if isinstance(ev, Insert):
        return engine.insert(ev.u, ev.v, ev.w)
    if isinstance(ev, Delete):
        return engine.delete(ev.u, ev.v)
    return None


FIELDS = ("step", "edges", "levels", "matching_size", "matching_weight", "opt_weight",
          "ratio", "bound", "invariants", "audit", "cascade_depth_max")


@dataclass
class RunStats:
    rows: list[dict] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    steps: int = 0
    max_cascade_depth: int = 0
    w_min: float | None = None
    w_max: float | None = None
    elapsed: float = 0.0
    oracle_used: bool = False

    @property
    def passed(self) -> bool:
        return not self.failures

    def cascade_bound(self, alpha: float) -> int | None:
        """``floor(log_alpha C) + 2`` for the observed weight spread ``C``."""
        if self.w_min is None:
            return None
        return math.floor(math.log(self.w_max / self.w_min) / math.log(alpha)) + 2


def run(events, cfg: RoundingConfig | None = None, n: int | None = None, *,
        verify: bool = False, oracle: bool = False, stats_every: int | None = None,
        timing: bool = False, engine: DynamicMatching | None = None) -> RunStats:
    """Replay ``events`` and collect checkpoint rows.

    A checkpoint is taken at each query event and after every ``stats_every``
    updates.  ``verify`` audits the structural invariants and ``oracle``
    compares against the exact optimum, both at checkpoints only.
    """
    cfg = cfg if cfg is not None else RoundingConfig()
    if engine is None:
        if n is None:
            n = stream_vertex_count(events)
        engine = DynamicMatching(n, cfg)
    if oracle and engine.n > MAX_ORACLE_VERTICES:
        log.warning("oracle disabled: n=%d exceeds %d", engine.n, MAX_ORACLE_VERTICES)
        oracle = False
    stats = RunStats(oracle_used=oracle)
    start = time.perf_counter()
    depth_since = 0
    step = 0
    for ev in events:
        if isinstance(ev, Query):
            stats.rows.append(_checkpoint(engine, step, depth_since, verify, oracle, stats, start,
                                          timing))
            depth_since = 0
            continue
        step += 1
        try:
            if isinstance(ev, Insert):
                summary = engine.insert(ev.u, ev.v, ev.w)
                stats.w_min = ev.w if stats.w_min is None else min(stats.w_min, ev.w)
                stats.w_max = ev.w if stats.w_max is None else max(stats.w_max, ev.w)
            else:
                summary = engine.delete(ev.u, ev.v)
        except GraphError as exc:
            raise StreamError(step, str(exc)) from exc
        depth_since = max(depth_since, summary.cascade_depth)
        stats.max_cascade_depth = max(stats.max_cascade_depth, summary.cascade_depth)
        if stats_every and step % stats_every == 0:
            stats.rows.append(_checkpoint(engine, step, depth_since, verify, oracle, stats, start,
                                          timing))
            depth_since = 0
    stats.steps = step
    stats.elapsed = time.perf_counter() - start
    bound = stats.cascade_bound(cfg.alpha)
    if verify and bound is not None and stats.max_cascade_depth > bound:
        stats.failures.append(f"cascade depth {stats.max_cascade_depth} exceeds {bound}")
    return stats


def _checkpoint(engine, step, depth, verify, oracle, stats, start, timing) -> dict:
    edges, weight = engine.current_matching()
    row = {
        "step": step,
        "edges": len(engine.registry),
        "levels": len(engine.occupied_levels),
        "matching_size": len(edges),
        "matching_weight": weight,
        "opt_weight": None,
        "ratio": None,
        "bound": None,
        "invariants": None,
        "audit": None,
        "cascade_depth_max": depth,
    }
    if verify:
        rep = engine.check_invariants()
        row["invariants"] = "ok" if rep else "fail"
        if not rep:
            stats.failures.append(f"step {step}: invariant: {rep}")
    if oracle:
        opt = engine_oracle(engine)
        rr = ratio_report(engine, opt)
        row.update(opt_weight=opt.weight, ratio=rr.ratio, bound=rr.bound)
        if not rr.passed:
            stats.failures.append(f"step {step}: weight bound: {rr}")
        au = audit_mapping(engine, opt)
        row["audit"] = "ok" if au else "fail"
        if not au:
            stats.failures.append(f"step {step}: mapping audit: {au.violations[0]}")
    if timing:
        row["wall_time"] = time.perf_counter() - start
    return row


def _cell(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def format_tsv(rows, timing: bool = False) -> str:
    cols = FIELDS + (("wall_time",) if timing else ())
    out = ["\t".join(cols)]
    for row in rows:
        out.append("\t".join(_cell(row.get(c)) for c in cols))
    return "\n".join(out) + "\n"


def format_jsonl(rows) -> str:
    return "".join(json.dumps(row, allow_nan=True) + "\n" for row in rows)
