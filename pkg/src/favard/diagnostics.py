"""Numerical probes of the construction's measure-theoretic behavior.

closeness_fraction   how much of [0,1) ever comes within a_n * 4**-m_n of
                     the level-n grid, against an independence model
graph_length_over_interval   exact length of the graph over a dyadic
                     interval; flat pieces tile, so it equals |I|
oscillation_tail     exact sup of f_N - f_n, certifying how well the
                     deepest built level stands in for the limit
secant_probe         two secants from a base point whose angle stays
                     bounded below across scales
nestedness_check     exact box containment between consecutive levels
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .construction import build_box_family, box_family_nested, eval_fn
from .dyadic import Dyadic, THREE_QUARTERS
from .errors import BudgetError, ConfigError
from .intervals import measure_of_arrays
from .schedule import ScheduleParams


@dataclass(frozen=True)
class ClosenessReport:
    max_level: int
    grid_resolution: int  # 0 when the fraction was computed exactly
    fraction_hit: float
    predicted_fraction: float
    per_level_fraction: tuple[float, ...]


def _level_halfwidth(params: ScheduleParams, n: int) -> float:
    return float(params.increment(n)) * 4.0 ** -params.scale(n)


def closeness_fraction(
    params: ScheduleParams,
    max_level: int,
    grid: int | None = None,
    interval_budget: int = 1 << 21,
) -> ClosenessReport:
    """Fraction of t in [0,1) within a_n * 4**-m_n of the level-n grid
    for at least one n <= max_level.

    Exact interval arithmetic is used when the windows fit the budget;
    a uniform sample grid (which must resolve the finest window) is the
    fallback.  The prediction treats levels as independent with the
    integer-rounded per-level probabilities.
    """
    if not 1 <= max_level <= params.depth:
        raise ConfigError(f"max_level {max_level} outside schedule depth")
    probs = []
    for n in range(1, max_level + 1):
        a_n = float(params.increment(n))
        delta = params.scale(n) - params.scale(n - 1)
        b_n = math.floor(a_n * 4.0 ** delta) * 4.0 ** -delta
        probs.append(min(1.0, 2.0 * b_n))
    predicted = 1.0 - math.prod(1.0 - p for p in probs)

    per_level = tuple(
        min(1.0, 2.0 * float(params.increment(n)))
        for n in range(1, max_level + 1)
    )

    if any(p >= 1.0 for p in per_level):
        # some level's windows already tile the whole line
        return ClosenessReport(max_level, 0, 1.0, predicted, per_level)

    window_total = sum(4 ** params.scale(n) + 1 for n in range(1, max_level + 1))
    if grid is None and window_total <= interval_budget:
        lo_list, hi_list = [], []
        for n in range(1, max_level + 1):
            spacing = 4.0 ** -params.scale(n)
            r = _level_halfwidth(params, n)
            k = np.arange(4 ** params.scale(n) + 1, dtype=np.float64)
            lo_list.append(np.maximum(k * spacing - r, 0.0))
            hi_list.append(np.minimum(k * spacing + r, 1.0))
        lo = np.concatenate(lo_list)
        hi = np.concatenate(hi_list)
        return ClosenessReport(
            max_level, 0, measure_of_arrays(lo, hi), predicted, per_level
        )

    if grid is None:
        grid = 4 ** (params.scale(max_level) + 2)
    if grid < 4 ** params.scale(max_level):
        raise ConfigError(
            f"grid {grid} too coarse for scale 4**{params.scale(max_level)}"
        )
    t = (np.arange(grid) + 0.5) / grid
    hit = np.zeros(grid, dtype=bool)
    for n in range(1, max_level + 1):
        spacing = 4.0 ** -params.scale(n)
        r = _level_halfwidth(params, n)
        d = np.abs(t - np.round(t / spacing) * spacing)
        hit |= d <= r
    return ClosenessReport(
        max_level, grid, float(np.mean(hit)), predicted, per_level
    )


def graph_length_over_interval(
    interval: tuple[Dyadic, Dyadic], n: int, params: ScheduleParams
) -> Dyadic:
    """Exact length of the level-n graph over a dyadic subinterval of [0,1].

    The graph is horizontal over every half-cell, so the pieces tile the
    interval; the sum is assembled from whole-cell and fragment widths
    rather than asserted.
    """
    lo, hi = interval
    if not (Dyadic(0) <= lo <= hi <= Dyadic(1)):
        raise ConfigError("interval must be dyadic within [0, 1]")
    width = Dyadic(1, 1) * Dyadic.pow4(-params.scale(n))
    wf = width.as_fraction()
    lof, hif = lo.as_fraction(), hi.as_fraction()
    first = math.floor(lof / wf)
    last = math.ceil(hif / wf) - 1
    if last < first:
        return Dyadic(0)
    if first == last:
        return hi - lo
    head = Dyadic((first + 1)) * width - lo
    tail = hi - Dyadic(last) * width
    whole = Dyadic(last - first - 1) * width
    return head + whole + tail


@dataclass(frozen=True)
class OscillationTail:
    level: int
    sup: Dyadic
    reference: Dyadic  # a_n * 4**-m_n
    ratio: float

    def ratio_at_most(self, num: int, den: int) -> bool:
        """Exact comparison sup / reference <= num / den."""
        return self.sup * Dyadic(den) <= self.reference * Dyadic(num)


def oscillation_tail(n: int, params: ScheduleParams) -> OscillationTail:
    """Exact sup over [0,1] of f_N - f_n: (3/4) * sum of remaining terms."""
    if not 0 <= n <= params.depth:
        raise ConfigError(f"level {n} outside schedule depth")
    sup = Dyadic(0)
    for j in range(n + 1, params.depth + 1):
        sup = sup + THREE_QUARTERS * params.increment(j) * Dyadic.pow4(-params.scale(j))
    ref = params.increment(n) * Dyadic.pow4(-params.scale(n))
    ratio = float(sup.as_fraction() / ref.as_fraction()) if ref else math.inf
    return OscillationTail(n, sup, ref, ratio)


@dataclass(frozen=True)
class SecantRecord:
    x0: Dyadic
    level: int
    z1: Dyadic
    z2: Dyadic
    y0: Dyadic
    y1: Dyadic
    y2: Dyadic
    angle: float

    @property
    def displacement_near(self) -> Dyadic:
        return abs(self.y1 - self.y0)

    @property
    def displacement_far(self) -> Dyadic:
        return abs(self.y2 - self.y0)


@dataclass(frozen=True)
class SecantReport:
    x0: Dyadic
    records: tuple[SecantRecord, ...]


def _line_angle(s1: float, s2: float) -> float:
    a = abs(math.atan(s2) - math.atan(s1))
    return math.pi - a if a > math.pi / 2 else a


def secant_probe(
    x0: Dyadic,
    n: int,
    params: ScheduleParams,
    radius: Dyadic | None = None,
) -> SecantRecord:
    """Find graph points z1 (same step cell, height nearly unchanged) and
    z2 (adjacent step cell, height displaced by nearly the level jump) and
    return the angle between the two secants from (x0, f(x0)).

    Step cells are the constancy cells of the level-n term, of width
    4**-m_n / 2; the term flips at every cell boundary, so a full jump is
    always reachable within the search radius, whichever side is in
    domain.  The deepest built level stands in for the limit function;
    certify the substitution with oscillation_tail first.  Displacement
    gates scale with the actual jump magnitude (3/4) * a_n * 4**-m_n.
    """
    if not 1 <= n <= params.depth:
        raise ConfigError(f"level {n} outside schedule depth")
    depth = params.depth
    spacing = Dyadic.pow4(-params.scale(n))
    half = params.increment(n) * spacing  # a_n * 4^-m_n
    if radius is None:
        radius = half
    near = round(x0.as_fraction() / spacing.as_fraction())
    if abs(x0 - Dyadic(near) * spacing) > half:
        raise ConfigError(
            f"x0 does not satisfy the closeness condition at level {n}"
        )
    w = Dyadic(1, 1) * Dyadic.pow4(-params.scale(depth))
    span = math.floor(radius.as_fraction() / w.as_fraction())
    if span < 1:
        raise ConfigError("search radius below the finest cell width")
    base_cell = math.floor(x0.as_fraction() / w.as_fraction())
    y0 = eval_fn(x0, depth, params)
    cell_ratio = 4 ** (params.scale(depth) - params.scale(n))
    cell0 = math.floor(x0.as_fraction() * 2 * 4 ** params.scale(n))

    # candidate midpoints by integer cell index; heights from bit patterns
    count = 2 * 4 ** params.scale(depth)
    cells = np.arange(max(0, base_cell - span), min(count, base_cell + span + 1),
                      dtype=np.int64)
    wf = float(w)
    z = (cells.astype(np.float64) + 0.5) * wf
    x0f, y0f = float(x0), float(y0)
    radf = float(radius)
    keep = (np.abs(z - x0f) <= radf) & (z != x0f)
    cells, z = cells[keep], z[keep]
    if cells.size == 0:
        raise ConfigError("search radius contains no candidate points")
    heights = np.zeros(cells.size)
    for j in range(depth + 1):
        bit = (cells // (4 ** (params.scale(depth) - params.scale(j)))) & 1
        heights += bit * (0.75 * float(params.increment(j)) * 4.0 ** -params.scale(j))
    cell_n = cells // cell_ratio

    halff = float(half)
    same = (cell_n == cell0) & (np.abs(heights - y0f) <= halff / 10)
    if not np.any(same):
        raise ConfigError("no same-cell point with a small height change in radius")
    slopes = np.abs(heights - y0f) / np.abs(z - x0f)
    order = np.lexsort((-np.abs(z - x0f)[same], slopes[same]))
    pick1 = np.nonzero(same)[0][order[0]]

    quantum = 0.75 * halff
    adjacent = (np.abs(cell_n - cell0) == 1) & (np.abs(heights - y0f) >= 0.9 * quantum)
    if not np.any(np.abs(cell_n - cell0) == 1):
        raise ConfigError("search radius contains no adjacent-cell point")
    if not np.any(adjacent):
        raise ConfigError("no adjacent-cell point with a full height jump in radius")
    s1 = (heights[pick1] - y0f) / (z[pick1] - x0f)
    cand = np.nonzero(adjacent)[0]
    s2 = (heights[cand] - y0f) / (z[cand] - x0f)
    a = np.abs(np.arctan(s2) - math.atan(s1))
    angles = np.where(a > math.pi / 2, math.pi - a, a)
    pick2 = cand[int(np.argmax(angles))]

    def _exact(i: int) -> tuple[Dyadic, Dyadic]:
        zd = Dyadic(2 * i + 1) * w * Dyadic(1, 1)
        return zd, eval_fn(zd, depth, params)

    z1, y1 = _exact(int(cells[pick1]))
    z2, y2 = _exact(int(cells[pick2]))
    angle = _line_angle(
        float(y1 - y0) / float(z1 - x0), float(y2 - y0) / float(z2 - x0)
    )
    return SecantRecord(x0, n, z1, z2, y0, y1, y2, angle)


def secant_scan(
    x0: Dyadic, params: ScheduleParams, levels: tuple[int, ...]
) -> SecantReport:
    return SecantReport(
        x0, tuple(secant_probe(x0, n, params) for n in levels)
    )


def nestedness_check(
    n: int, params: ScheduleParams, max_segments: int = 1 << 20
) -> bool:
    """Every level-(n+1) box sits inside some level-n box, exactly."""
    if n + 1 > params.depth:
        raise BudgetError(f"nestedness at {n} needs schedule depth {n + 1}")
    child = build_box_family(n + 1, params, max_segments)
    parent = build_box_family(n, params, max_segments)
    return box_family_nested(child, parent)
