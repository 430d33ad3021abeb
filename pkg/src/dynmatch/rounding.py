"""Geometric rounding of edge weights and the closed-form approximation ratios."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import level_of

PLAIN = "plain"
ROUNDED = "rounded"

DEFAULT_ALPHA = {PLAIN: 2.0, ROUNDED: 3.512}


@dataclass(frozen=True)
class RoundingConfig:
    """How weights are bucketed into levels.

    In rounded mode the offset ``r`` lies in (0, 1].  When ``r`` is left as
    None it is drawn once from a generator seeded with ``seed``; the drawn
    value is fixed for the lifetime of any engine built from the config.
    """

    alpha: float | None = None
    mode: str = PLAIN
    r: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.mode not in (PLAIN, ROUNDED):
            raise ValueError(f"mode must be 'plain' or 'rounded', got {self.mode!r}")
        if self.alpha is None:
            object.__setattr__(self, "alpha", DEFAULT_ALPHA[self.mode])
        if not (math.isfinite(self.alpha) and self.alpha > 1):
            raise ValueError(f"alpha must be a finite number > 1, got {self.alpha!r}")
        if self.mode == PLAIN:
            if self.r is not None:
                raise ValueError("r is only meaningful in rounded mode")
        else:
            if self.r is None:
                object.__setattr__(self, "r", draw_offset(self.seed))
            if not 0 < self.r <= 1:
                raise ValueError(f"r must lie in (0, 1], got {self.r!r}")

    @property
    def rounded(self) -> bool:
        return self.mode == ROUNDED

    @property
    def offset(self) -> float:
        return self.r if self.mode == ROUNDED else 0.0

    def level_of(self, w: float) -> int:
        return level_of(w, self.alpha, self.offset)


def draw_offset(seed: int) -> float:
    """Uniform draw from (0, 1]."""
    return 1.0 - np.random.default_rng(seed).random()


def rounded_weight(w: float, cfg: RoundingConfig) -> float:
    """``alpha**(i + r)`` where ``i`` is the level of ``w``; never exceeds ``w``."""
    if not cfg.rounded:
        raise ValueError("rounded_weight requires a rounded-mode config")
    return level_weight(cfg.level_of(w), cfg)


def rounded_weights(ws, alpha: float, r: float) -> np.ndarray:
    """Vectorised ``rounded_weight`` over an array of weights for one offset.

    Boundaries come from a per-level table computed with the scalar power
    function, so results match ``rounded_weight`` bit for bit.
    """
    ws = np.asarray(ws, dtype=float)
    if not (np.all(np.isfinite(ws)) and np.all(ws > 0)):
        raise ValueError("weights must be positive and finite")
    level = np.floor(np.log(ws) / math.log(alpha) - r).astype(np.int64)
    lo = int(level.min()) - 2
    table = np.array([alpha ** (l + r) for l in range(lo, int(level.max()) + 4)])
    idx = level - lo
    idx -= table[idx] > ws
    idx += table[idx + 1] <= ws
    return table[idx]


def level_weight(level: int, cfg: RoundingConfig) -> float:
    """Common rounded weight shared by every edge at ``level``."""
    return cfg.alpha ** (level + cfg.offset)


def expected_rounding_factor(alpha: float) -> float:
    """Mean of ``w_r / w`` over a uniform offset: ``(alpha - 1) / (alpha ln alpha)``."""
    if not alpha > 1:
        raise ValueError(f"alpha must exceed 1, got {alpha!r}")
    return (alpha - 1) / (alpha * math.log(alpha))


def plain_ratio(alpha: float) -> float:
    """Worst-case ratio of the deterministic scheme, ``2a/(a-1) + 2a``."""
    if not alpha > 1:
        raise ValueError(f"alpha must exceed 1, got {alpha!r}")
    return 2 * alpha / (alpha - 1) + 2 * alpha


def rounded_ratio(alpha: float) -> float:
    """Expected ratio with geometric rounding, ``2 a^2 ln a / (a-1)^2``."""
    if not alpha > 1:
        raise ValueError(f"alpha must exceed 1, got {alpha!r}")
    return 2 * alpha**2 * math.log(alpha) / (alpha - 1) ** 2


def rounded_lower_fraction(alpha: float) -> float:
    """Per-offset guarantee on rounded weights, ``(a-1)/(2a)``."""
    return (alpha - 1) / (2 * alpha)


def golden_section_min(f, lo: float, hi: float, tol: float = 1e-6) -> float:
    """Minimiser of a unimodal ``f`` on ``[lo, hi]`` to within ``tol``."""
    invphi = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return (a + b) / 2


def optimize_rounded_ratio(lo: float = 1.0 + 1e-9, hi: float = 100.0, tol: float = 1e-6):
    """Return ``(alpha*, rounded_ratio(alpha*))`` minimising the expected ratio."""
    a = golden_section_min(rounded_ratio, lo, hi, tol)
    return a, rounded_ratio(a)
