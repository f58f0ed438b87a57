"""Step-function graphs with shrinking displacements, as finite families.

The base step is 0 on [0, 1/2) and 3/4 on [1/2, 1), extended 1-periodically.
Level k adds a copy scaled by a_k * 4**-m_k and compressed to period
4**-m_k, so the graph of

    f_n(x) = f(x) + sum_{j<=n} a_j * 4**-m_j * f(4**m_j * x)

is constant on 2 * 4**m_n half-cells of width 4**-m_n / 2.  A segment
family is that graph; a box family thickens each segment upward by the
finest cell height, giving nested compact carriers.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .dyadic import Dyadic, THREE_QUARTERS
from .errors import BudgetError, ConfigError
from .schedule import ScheduleParams

Scalar = Dyadic | Fraction


class Segment(NamedTuple):
    x_lo: Dyadic
    x_hi: Dyadic
    y: Dyadic


class Box(NamedTuple):
    x_lo: Scalar
    x_hi: Scalar
    y_lo: Scalar
    y_hi: Scalar


def eval_base_step(x: float | Dyadic) -> float | Dyadic:
    """0 on [0, 1/2) + Z, 3/4 on [1/2, 1) + Z."""
    if isinstance(x, Dyadic):
        frac = x - Dyadic(x.floor())
        return THREE_QUARTERS if frac >= Dyadic(1, 1) else Dyadic(0)
    frac = x - math.floor(x)
    return 0.75 if frac >= 0.5 else 0.0


def eval_fn(x: float | Dyadic, n: int, params: ScheduleParams) -> float | Dyadic:
    """Graph height at x for the level-n iterate; exact on dyadic input."""
    if not 0 <= n <= params.depth:
        raise ConfigError(f"level n={n} outside schedule depth {params.depth}")
    if isinstance(x, Dyadic):
        total = eval_base_step(x)
        for j in range(1, n + 1):
            m = params.scale(j)
            step = eval_base_step(x.mul_pow2(2 * m))
            total = total + params.increment(j) * Dyadic.pow4(-m) * step
        return total
    xf = float(x)
    total = eval_base_step(xf)
    for j in range(1, n + 1):
        m = params.scale(j)
        total += float(params.increment(j)) * 4.0 ** -m * eval_base_step(xf * 4.0 ** m)
    return total


def _cell_bits(indices: np.ndarray, n: int, params: ScheduleParams) -> np.ndarray:
    """bits[j, i] for levels j = 0..n over half-cell indices i."""
    m_n = params.scale(n)
    bits = np.empty((n + 1, indices.size), dtype=np.int64)
    for j in range(n + 1):
        d = 4 ** (m_n - params.scale(j))
        bits[j] = (indices // d) & 1
    return bits


@dataclass(frozen=True)
class SegmentFamily:
    """The horizontal segments composing one graph iterate."""

    level: int
    params: ScheduleParams
    segments: tuple[Segment, ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.segments)

    @property
    def segment_width(self) -> Dyadic:
        """Half of the finest cell: 4**-m_n / 2."""
        return Dyadic(1, 1) * Dyadic.pow4(-self.params.scale(self.level))

    def total_length(self) -> Dyadic:
        total = Dyadic(0)
        for s in self.segments:
            total = total + (s.x_hi - s.x_lo)
        return total

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(x_lo, x_hi, y) as float arrays, cached."""
        if "arrays" not in self._cache:
            x_lo = np.array([float(s.x_lo) for s in self.segments])
            x_hi = np.array([float(s.x_hi) for s in self.segments])
            y = np.array([float(s.y) for s in self.segments])
            self._cache["arrays"] = (x_lo, x_hi, y)
        return self._cache["arrays"]

    def indices(self) -> np.ndarray:
        """Half-cell index of each segment (x_lo / width)."""
        if "indices" not in self._cache:
            self._cache["indices"] = np.arange(len(self.segments), dtype=np.int64)
        return self._cache["indices"]


@dataclass(frozen=True)
class BoxFamily:
    """Axis-aligned boxes: graph carriers or self-similar baselines."""

    level: int
    boxes: tuple[Box, ...]
    kind: str
    params: ScheduleParams | None = None
    meta: tuple[tuple[str, object], ...] = ()
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.boxes)

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        if "arrays" not in self._cache:
            self._cache["arrays"] = tuple(
                np.array([float(getattr(b, f)) for b in self.boxes])
                for f in ("x_lo", "x_hi", "y_lo", "y_hi")
            )
        return self._cache["arrays"]


def build_segment_family(
    n: int, params: ScheduleParams, max_segments: int = 1 << 20
) -> SegmentFamily:
    """One segment per half-cell, height sampled at the cell midpoint."""
    if not 0 <= n <= params.depth:
        raise ConfigError(f"level n={n} outside schedule depth {params.depth}")
    count = params.segment_count(n)
    if count > max_segments:
        raise BudgetError(
            f"level {n} needs {count} segments, over budget {max_segments}"
        )
    m_n = params.scale(n)
    width = Dyadic(1, 1) * Dyadic.pow4(-m_n)  # 4^-m_n / 2
    idx = np.arange(count, dtype=np.int64)
    bits = _cell_bits(idx, n, params)
    pattern = np.zeros(count, dtype=np.int64)
    for j in range(n + 1):
        pattern |= bits[j] << j
    heights: dict[int, Dyadic] = {}
    for pat in np.unique(pattern):
        h = Dyadic(0)
        for j in range(n + 1):
            if (pat >> j) & 1:
                h = h + THREE_QUARTERS * params.increment(j) * Dyadic.pow4(
                    -params.scale(j)
                )
        heights[int(pat)] = h
    segs = tuple(
        Segment(Dyadic(i) * width, Dyadic(i + 1) * width, heights[int(p)])
        for i, p in zip(idx.tolist(), pattern.tolist())
    )
    return SegmentFamily(n, params, segs)


def build_box_family(
    n: int, params: ScheduleParams, max_segments: int = 1 << 20
) -> BoxFamily:
    """Segments thickened upward by the level height 4**-m_n.

    Level 0 has no own height scale; its boxes use the first scale 4**-m_1,
    which requires a schedule of depth >= 1.
    """
    if n == 0 and params.depth < 1:
        raise ConfigError("level-0 boxes need a schedule with at least one scale")
    fam = build_segment_family(n, params, max_segments)
    height = Dyadic.pow4(-params.scale(n if n >= 1 else 1))
    boxes = tuple(
        Box(s.x_lo, s.x_hi, s.y, s.y + height) for s in fam.segments
    )
    return BoxFamily(n, boxes, "graph-construction", params)


def box_family_nested(child: BoxFamily, parent: BoxFamily) -> bool:
    """Exact containment: every child box inside some parent box."""
    parents = sorted(
        (_frac(b.x_lo), _frac(b.x_hi), _frac(b.y_lo), _frac(b.y_hi))
        for b in parent.boxes
    )
    xs = [p[0] for p in parents]
    for b in child.boxes:
        lo, hi, ylo, yhi = _frac(b.x_lo), _frac(b.x_hi), _frac(b.y_lo), _frac(b.y_hi)
        # parents are sorted by x_lo; candidates are all entries at or left of lo
        i = bisect.bisect_right(xs, lo) - 1
        hit = False
        for j in range(i, -1, -1):
            px0, px1, py0, py1 = parents[j]
            if px0 <= lo and hi <= px1 and py0 <= ylo and yhi <= py1:
                hit = True
                break
        if not hit:
            return False
    return True


def _frac(x: Scalar) -> Fraction:
    if isinstance(x, Dyadic):
        return x.as_fraction()
    return Fraction(x)


def singleton_family(x: float | Dyadic = 0.0, y: float | Dyadic = 0.0) -> BoxFamily:
    """A single point as a degenerate box; useful as a decay baseline."""
    dx = x if isinstance(x, Dyadic) else Dyadic.from_float(float(x))
    dy = y if isinstance(y, Dyadic) else Dyadic.from_float(float(y))
    return BoxFamily(0, (Box(dx, dx, dy, dy),), "singleton")
