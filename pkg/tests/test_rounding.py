import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dynmatch.rounding import (RoundingConfig, expected_rounding_factor, optimize_rounded_ratio,
                               plain_ratio, rounded_ratio, rounded_weight)


def test_config_defaults_and_validation():
    assert RoundingConfig().alpha == 2.0
    cfg = RoundingConfig(mode="rounded", seed=5)
    assert cfg.alpha == 3.512 and 0 < cfg.r <= 1
    assert RoundingConfig(mode="rounded", seed=5).r == cfg.r
    assert RoundingConfig(mode="rounded", seed=6).r != cfg.r
    with pytest.raises(ValueError):
        RoundingConfig(alpha=1.0)
    with pytest.raises(ValueError):
        RoundingConfig(mode="rounded", r=0.0)
    with pytest.raises(ValueError):
        RoundingConfig(mode="rounded", r=1.5)
    with pytest.raises(ValueError):
        RoundingConfig(r=0.5)
    with pytest.raises(ValueError):
        RoundingConfig(mode="exotic")


def test_rounded_weight_example():
    cfg = RoundingConfig(alpha=2.0, mode="rounded", r=0.5)
    # level 1 by direct interval check: 2**1.5 <= 5 < 2**2.5
    assert 2 ** 1.5 <= 5 < 2 ** 2.5
    assert rounded_weight(5, cfg) == pytest.approx(2.8284271247, abs=1e-9)


def test_rounded_weight_at_lower_boundary():
    cfg = RoundingConfig(alpha=3.512, mode="rounded", r=0.3)
    for i in range(-5, 6):
        w = 3.512 ** (i + 0.3)
        assert rounded_weight(w, cfg) == w


def test_rounded_weight_needs_rounded_mode():
    with pytest.raises(ValueError):
        rounded_weight(3.0, RoundingConfig())


def test_rounded_weight_never_exceeds_weight_bulk():
    rng = np.random.default_rng(0)
    ws = np.exp(rng.uniform(-10, 10, 10_000))
    rs = 1.0 - rng.random(10_000)
    for w, r in zip(ws, rs):
        cfg = RoundingConfig(alpha=2.0, mode="rounded", r=float(r))
        assert rounded_weight(float(w), cfg) <= w


@given(st.floats(1e-8, 1e8), st.floats(0, 1, exclude_min=True), st.floats(1.05, 20))
def test_rounded_weight_within_one_level(w, r, alpha):
    cfg = RoundingConfig(alpha=alpha, mode="rounded", r=r)
    wr = rounded_weight(w, cfg)
    assert wr <= w < wr * alpha * (1 + 1e-12)


def _mean_ratio_by_grid(w, alpha, k=20_000):
    """Midpoint rule over r in (0, 1] using the rounding map itself."""
    rs = (np.arange(k) + 0.5) / k
    vals = [rounded_weight(w, RoundingConfig(alpha=alpha, mode="rounded", r=float(r))) / w
            for r in rs]
    return float(np.mean(vals))


@pytest.mark.parametrize("alpha, expected", [
    (2.0, 0.72135),
    (math.e, 0.63212),
])
def test_expected_rounding_factor(alpha, expected):
    assert expected_rounding_factor(alpha) == pytest.approx(expected, abs=1e-5)
    # independent route: integrate the rounding map numerically
    for w in (1.0, 3.7, 55.5):
        assert _mean_ratio_by_grid(w, alpha) == pytest.approx(expected, abs=1e-4)


def test_expected_rounding_factor_monte_carlo():
    rng = np.random.default_rng(1)
    rs = 1.0 - rng.random(20_000)
    vals = np.array([rounded_weight(7.3, RoundingConfig(alpha=2.0, mode="rounded", r=float(r))) / 7.3
                     for r in rs])
    se = vals.std(ddof=1) / math.sqrt(len(vals))
    assert abs(vals.mean() - expected_rounding_factor(2.0)) < 3 * se


def test_expected_rounding_factor_limit():
    assert expected_rounding_factor(1.0001) == pytest.approx(1.0, abs=1e-3)
    with pytest.raises(ValueError):
        expected_rounding_factor(1.0)


def test_closed_forms():
    assert plain_ratio(2) == 8
    assert rounded_ratio(2) == pytest.approx(8 * math.log(2))
    assert rounded_ratio(2) == pytest.approx(5.5452, abs=1e-4)
    # plain ratio is minimised at alpha = 2
    grid = np.linspace(1.05, 10, 2000)
    assert min(plain_ratio(a) for a in grid) >= 8 - 1e-12


def test_optimize_rounded_ratio():
    a, ratio = optimize_rounded_ratio()
    assert a == pytest.approx(3.512, abs=0.01)
    assert ratio == pytest.approx(4.9108, abs=0.001)
    # cross-check against a dense scan
    grid = np.linspace(1.01, 100, 400_000)
    vals = 2 * grid**2 * np.log(grid) / (grid - 1) ** 2
    assert ratio <= vals.min() + 1e-9
    assert a == pytest.approx(grid[vals.argmin()], abs=1e-3)


def test_vectorised_rounding_matches_scalar():
    from dynmatch.rounding import rounded_weights

    rng = np.random.default_rng(3)
    for alpha in (2.0, 3.512):
        r = float(1.0 - rng.random())
        ws = np.concatenate([np.exp(rng.uniform(-6, 9, 3000)), alpha ** (np.arange(-4, 5) + r)])
        cfg = RoundingConfig(alpha=alpha, mode="rounded", r=r)
        expected = [rounded_weight(float(w), cfg) for w in ws]
        assert rounded_weights(ws, alpha, r).tolist() == expected
