#!/usr/bin/env python3
# Random geometric rounding: a uniform offset r shifts every level boundary.
# The rounded weight never exceeds the true one and on average keeps a fixed
# fraction of it.

import numpy as np

from dynmatch.rounding import (expected_rounding_factor, optimize_rounded_ratio,
                               plain_ratio, rounded_ratio, rounded_weights)

rng = np.random.default_rng(0)
ws = np.exp(rng.uniform(0, np.log(1e4), 5000))

for alpha in (1.5, 2.0, 3.512, 6.0):
    rs = 1.0 - rng.random(500)
    means = np.array([np.mean(rounded_weights(ws, alpha, r) / ws) for r in rs])
    print(f"alpha {alpha:5.3f}: sampled {means.mean():.4f}  exact {expected_rounding_factor(alpha):.4f}")

grid = np.linspace(1.2, 10, 12)
print("\nalpha   plain   rounded")
for a in grid:
    print(f"{a:5.2f}  {plain_ratio(a):6.3f}  {rounded_ratio(a):6.3f}")

a, ratio = optimize_rounded_ratio()
print(f"\nbest alpha {a:.4f} gives expected ratio {ratio:.4f}")
