#!/usr/bin/env python3
# The adversarial-levels stream pushes the ratio towards the worst case.
# One heavy matched edge sits above a ladder of lighter levels; the optimum
# collects two edges from every level below it.

from dynmatch import DynamicMatching, RoundingConfig, apply_event
from dynmatch.harness import adversarial_levels_stream
from dynmatch.oracle import audit_mapping, ratio_report
from dynmatch.rounding import plain_ratio

alpha = 2.0
print("bound:", plain_ratio(alpha))

for depth in range(1, 6):
    eng = DynamicMatching(4 * depth + 4, RoundingConfig(alpha=alpha))
    for ev in adversarial_levels_stream(alpha, depth=depth):
        apply_event(eng, ev)
    rep = ratio_report(eng)
    closed = 2 * alpha + 2 * alpha * (1 - alpha ** -depth) / (alpha - 1)
    print(f"depth {depth}: ratio {rep.ratio:.6f}  closed form {closed:.6f}")

# who gets charged to the single matched edge
audit = audit_mapping(eng)
top = eng.matching_edges()[0]
print("matched:", top, "level", eng.registry.level(*top))
print("direct:  ", audit.direct.get(top, []))
print("indirect:", sorted(audit.indirect.get(top, []), key=lambda e: eng.registry.level(*e)))
