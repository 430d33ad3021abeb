#!/usr/bin/env python3
# Streams are plain text; the harness replays them and emits one stats row per
# checkpoint.  The same thing is available as the ``dynmatch`` command.

from dynmatch import RoundingConfig, format_stream, format_tsv, parse_stream, run

text = """\
# a path that gets rewired
+ 0 1 3
+ 1 2 9
+ 2 3 3
q
- 1 2
q
+ 0 3 20
q
"""
events = parse_stream(text)
print(format_stream(events))

stats = run(events, RoundingConfig(alpha=2.0), 4, verify=True, oracle=True)
print(format_tsv(stats.rows))
print("passed:", stats.passed, "max cascade depth:", stats.max_cascade_depth)

# equivalent shell call:
#   dynmatch --input path.txt --verify --oracle
#   dynmatch --gen sliding-window --n 1000 --steps 20000 --window 500 --verify --stats-every 5000
