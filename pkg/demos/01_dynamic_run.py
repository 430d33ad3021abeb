#!/usr/bin/env python3
# A small graph changing over time; after each update compare the maintained
# matching with the exact optimum.

from dynmatch import DynamicMatching, RoundingConfig, apply_event, generate_stream
from dynmatch.oracle import brute_force_mwm

n = 10
eng = DynamicMatching(n, RoundingConfig(alpha=2.0))
events = generate_stream("random", n=n, steps=40, wmin=1, wmax=100, seed=4)

print("step  event               |M|   w(M)     w(M*)    ratio  depth")
for step, ev in enumerate(events, 1):
    s = apply_event(eng, ev)
    opt = brute_force_mwm(eng.registry.weighted_edges()).weight
    w = eng.matching_weight()
    ratio = opt / w if w else 1.0
    print(f"{step:4d}  {str(tuple(ev)):18s}  {len(eng.matching_edges()):3d}  {w:7.2f}  "
          f"{opt:7.2f}  {ratio:5.2f}  {s.cascade_depth}")

# every update leaves the level structure consistent
print(eng.check_invariants())

# the matching sorted by level, highest first
for e, level in sorted(eng.matching_levels().items(), key=lambda kv: -kv[1]):
    print(level, e, eng.registry.weight(*e))
