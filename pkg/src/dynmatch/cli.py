"""Command-line driver: replay or generate a stream and emit checkpoint statistics.

Exit status: 0 when every check passes, 1 on a failed check, 2 on bad input.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .harness import (GENERATORS, StreamError, StreamParseError, format_jsonl, format_stream,
                      format_tsv, generate_stream, parse_stream, run, stream_vertex_count)
from .rounding import DEFAULT_ALPHA, PLAIN, ROUNDED, RoundingConfig

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dynmatch", description=__doc__.splitlines()[0])
    p.add_argument("--alpha", type=float, help="level base (default 2.0 plain, 3.512 rounded)")
    p.add_argument("--mode", choices=(PLAIN, ROUNDED), default=PLAIN)
    p.add_argument("--r", type=float, help="rounding offset in (0, 1]; drawn from --seed if omitted")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, help="number of vertices")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="stream file, '-' for stdin")
    src.add_argument("--gen", choices=GENERATORS)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--wmin", type=float, default=1.0)
    p.add_argument("--wmax", type=float, default=100.0)
    p.add_argument("--p-insert", type=float, default=0.6)
    p.add_argument("--window", type=int, default=50)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--verify", action="store_true", help="check invariants at checkpoints")
    p.add_argument("--oracle", action="store_true", help="compare with the exact optimum (n <= 24)")
    p.add_argument("--stats-every", type=int, metavar="K", help="checkpoint every K updates")
    p.add_argument("--out", choices=("tsv", "json"), default="tsv")
    p.add_argument("--timing", action="store_true", help="add a wall_time column")
    p.add_argument("--dump-stream", metavar="PATH", help="write the replayed stream to PATH")
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="dynmatch: %(message)s")
    args = build_parser().parse_args(argv)
    alpha = args.alpha if args.alpha is not None else DEFAULT_ALPHA[args.mode]
    try:
        cfg = RoundingConfig(alpha=alpha, mode=args.mode, r=args.r, seed=args.seed)
        if args.input is not None:
            text = sys.stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
            events = parse_stream(text)
            n = args.n if args.n is not None else stream_vertex_count(events)
        else:
            n = args.n if args.n is not None else 8
            events = generate_stream(args.gen, n=n, steps=args.steps, wmin=args.wmin,
                                     wmax=args.wmax, seed=args.seed, p_insert=args.p_insert,
                                     window=args.window, alpha=alpha, depth=args.depth,
                                     offset=cfg.offset)
            if args.gen == "adversarial-levels":
                n = max(n, stream_vertex_count(events))
        if args.stats_every is not None and args.stats_every < 1:
            raise ValueError("--stats-every must be positive")
    except (OSError, ValueError) as exc:
        print(f"dynmatch: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if args.dump_stream:
        with open(args.dump_stream, "w", encoding="utf-8") as fp:
            fp.write(format_stream(events))
    try:
        stats = run(events, cfg, n, verify=args.verify, oracle=args.oracle,
                    stats_every=args.stats_every, timing=args.timing)
    except (StreamError, StreamParseError, ValueError) as exc:
        print(f"dynmatch: {exc}", file=sys.stderr)
        return EXIT_INPUT

    out = format_tsv(stats.rows, args.timing) if args.out == "tsv" else format_jsonl(stats.rows)
    sys.stdout.write(out)
    print(f"dynmatch: {stats.steps} updates in {stats.elapsed:.3f}s, "
          f"max cascade depth {stats.max_cascade_depth}, "
          f"{'all checks passed' if stats.passed else f'{len(stats.failures)} failed checks'}",
          file=sys.stderr)
    for msg in stats.failures[:20]:
        print(f"dynmatch: FAIL {msg}", file=sys.stderr)
    return EXIT_OK if stats.passed else EXIT_CHECK
