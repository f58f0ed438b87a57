"""Projection lengths for graph families too large to enumerate.

The graph is periodic inside every half-cell: the fine pattern of levels
above j repeats identically across all level-j half-cells.  So the
inflated projection of the whole family is a union of translated copies
of one per-level tile, built bottom-up with interval merging at each
level.  This is exact, identical to enumerating all 2 * 4**m_n segments,
but costs only what the merged unions cost, which the eps-inflation
keeps small.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .intervals import merge_sorted_arrays
from .schedule import ScheduleParams


def unit_vector(theta: float) -> tuple[float, float]:
    """(cos, sin) with the axis directions snapped exact."""
    t = theta % math.pi
    if t == 0.0:
        return (1.0, 0.0)
    if t == math.pi / 2:
        return (0.0, 1.0)
    return (math.cos(t), math.sin(t))


@dataclass(frozen=True)
class ImplicitGraphFamily:
    """A graph iterate addressed by schedule and level, never enumerated."""

    level: int
    params: ScheduleParams

    def __post_init__(self) -> None:
        if not 0 <= self.level <= self.params.depth:
            raise ConfigError(
                f"level {self.level} outside schedule depth {self.params.depth}"
            )

    def __len__(self) -> int:
        return self.params.segment_count(self.level)

    def projection_length(self, theta: float, eps: float) -> float:
        """|N(p_theta(graph), eps)| via the periodic tile recursion."""
        if eps < 0:
            raise ValueError("eps must be nonnegative")
        n, p = self.level, self.params
        c, s = unit_vector(theta)
        widths = [0.5 * 4.0 ** -p.scale(t) for t in range(n + 1)]
        heights = [0.75 * float(p.increment(t)) * 4.0 ** -p.scale(t) for t in range(n + 1)]
        # leaf: one flat segment of the finest width
        lo = np.array([min(0.0, c * widths[n]) - eps])
        hi = np.array([max(0.0, c * widths[n]) + eps])
        for t in range(n, -1, -1):
            prev = widths[t - 1] if t >= 1 else 1.0
            periods = int(round(prev / (2.0 * widths[t])))
            base = c * (2.0 * widths[t]) * np.arange(periods)
            offsets = np.concatenate([base, base + c * widths[t] + s * heights[t]])
            big_lo = (offsets[:, None] + lo[None, :]).ravel()
            big_hi = (offsets[:, None] + hi[None, :]).ravel()
            order = np.argsort(big_lo, kind="stable")
            lo, hi = merge_sorted_arrays(big_lo[order], big_hi[order])
        return float(np.sum(hi - lo))
