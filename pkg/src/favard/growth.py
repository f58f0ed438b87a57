"""Growth sequences and the per-level displacement increments.

A growth sequence is a finite monotone nondecreasing list of positive
targets g(1..N).  The construction consumes its increments, clamped into
(0, 1]: a_1 = min(1, g(1)) and a_k = min(1, g(k) - g(k-1)).  A flat step
(zero increment) cannot be realized and is rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError


@dataclass(frozen=True)
class GrowthSequence:
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.values) < 1:
            raise ConfigError("growth sequence must have at least one term")
        if self.values[0] <= 0:
            raise ConfigError("growth sequence must be positive at k=1")
        for k in range(1, len(self.values)):
            if self.values[k] < self.values[k - 1]:
                raise ConfigError(
                    f"growth sequence not monotone nondecreasing at index {k + 1}"
                )

    def __len__(self) -> int:
        return len(self.values)


def linear_growth(n: int) -> GrowthSequence:
    return GrowthSequence(tuple(float(k) for k in range(1, n + 1)))


def sqrt_growth(n: int) -> GrowthSequence:
    return GrowthSequence(tuple(math.sqrt(k) for k in range(1, n + 1)))


def log_growth(n: int) -> GrowthSequence:
    # log(k+1) scaled so the first term is 1
    scale = 1.0 / math.log(2.0)
    return GrowthSequence(tuple(scale * math.log(k + 1.0) for k in range(1, n + 1)))


GROWTH_PRESETS = {
    "linear": linear_growth,
    "sqrt": sqrt_growth,
    "log": log_growth,
}


def derive_increments(g: GrowthSequence) -> list[float]:
    """Per-level displacements a_k in (0, 1]; errors name the flat step."""
    out = [min(1.0, g.values[0])]
    for k in range(2, len(g.values) + 1):
        step = g.values[k - 1] - g.values[k - 2]
        if step <= 0.0:
            raise ConfigError(f"zero increment at k={k}: growth sequence is flat there")
        out.append(min(1.0, step))
    if out[0] <= 0.0:
        raise ConfigError("increment a_1 must be positive")
    return out
