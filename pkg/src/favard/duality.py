"""Point-line duality: wedges, slices, pairwise areas, pair classes.

A point (a, b) corresponds to the line y = a*x + b, so a horizontal
segment [x0, x1] x {c} sweeps the wedge between y = x0*x + c and
y = x1*x + c.  Restricted to the vertical strip x in [0, 1], vertical
slice measures of the dual set encode projection lengths, and the
Cauchy-Schwarz inequality turns the sum of pairwise wedge intersection
areas into a lower bound on Favard length.

Pair bookkeeping: two segments of one family share a scale-k cell for
every k up to the last common level k*; the pair is classified at k*
when it also sits within the horizontal reach c_reach * a_k * 4**-m_k,
else as none.  Level 0 is the unit cell with unit displacement, so the
class-0 mass is the constant term of the pairwise-area budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .construction import Segment, SegmentFamily
from .dyadic import Dyadic
from .errors import BudgetError, ConfigError
from .intervals import measure_of_arrays
from .polygon import ConvexPolygon, HalfPlane
from .schedule import ScheduleParams

DEFAULT_C_REACH = 8.0


@dataclass(frozen=True)
class DualWedge:
    """Dual of [slope_lo, slope_hi] x {apex_y}; lives over the strip."""

    apex_y: float
    slope_lo: float
    slope_hi: float

    def __post_init__(self) -> None:
        if not self.slope_lo <= self.slope_hi:
            raise ValueError("slope_lo must not exceed slope_hi")


@dataclass(frozen=True)
class PairClass:
    k: int | None = None
    same_segment: bool = False


def dual_wedge(segment: Segment | tuple[float, float, float]) -> DualWedge:
    x0, x1, y = (float(v) for v in segment[:3])
    return DualWedge(y, x0, x1)


def wedge_area(w: DualWedge) -> float:
    """Area over the strip: integral of (hi - lo) * x on [0, 1]."""
    return (w.slope_hi - w.slope_lo) / 2.0


def slice_measure(fam: SegmentFamily, xi: float) -> float:
    """Measure of the dual set on the vertical line x = xi."""
    if not 0.0 <= xi <= 1.0:
        raise ConfigError(f"slice abscissa {xi} outside the strip [0, 1]")
    x0, x1, y = fam.as_arrays()
    return measure_of_arrays(x0 * xi + y, x1 * xi + y)


def dual_area(fam: SegmentFamily, nodes: int) -> float:
    """Midpoint quadrature of the slice measure over the strip."""
    if nodes < 2:
        raise ConfigError("need at least 2 quadrature nodes")
    return (
        math.fsum(slice_measure(fam, (i + 0.5) / nodes) for i in range(nodes)) / nodes
    )


def favard_dual_estimate(fam: SegmentFamily, nodes: int = 2048):
    """One-sided Favard bound from the dual area.

    The chart from slice abscissa to projection angle has Jacobian at
    most 2*sqrt(2), and the full-circle average divides by pi, so
    dual_area / (2*sqrt(2)*pi) never exceeds the true Favard length.
    """
    from .projection import FavardEstimate

    scale = 2.0 * math.sqrt(2.0) * math.pi
    value = dual_area(fam, nodes) / scale
    coarse = dual_area(fam, max(2, nodes // 2)) / scale
    err = abs(value - coarse) + 1e-13 * max(1.0, abs(value))
    return FavardEstimate(value, "dual-area", nodes, 0.0, err)


def wedge_pair_polygon(w1: DualWedge, w2: DualWedge) -> ConvexPolygon:
    """The intersection of both wedges with the strip, as a polygon."""
    ys = [
        w.apex_y + s
        for w in (w1, w2)
        for s in (0.0, w.slope_lo, w.slope_hi, min(w.slope_lo, 0.0))
    ]
    pad = 1.0 + max(ys) - min(ys)
    base = ConvexPolygon(
        [
            (0.0, min(ys) - pad),
            (1.0, min(ys) - pad),
            (1.0, max(ys) + pad),
            (0.0, max(ys) + pad),
        ]
    )
    for w in (w1, w2):
        base = base.clip(HalfPlane(-w.slope_hi, 1.0, w.apex_y))  # y <= hi*x + c
        base = base.clip(HalfPlane(w.slope_lo, -1.0, -w.apex_y))  # y >= lo*x + c
    return base


def wedge_pair_area(w1: DualWedge, w2: DualWedge) -> float:
    """Exact area of the pairwise wedge intersection within the strip."""
    return wedge_pair_polygon(w1, w2).area()


def _pair_area_arrays(
    l1: np.ndarray, h1: np.ndarray, y1: np.ndarray,
    l2: np.ndarray, h2: np.ndarray, y2: np.ndarray,
) -> np.ndarray:
    """Closed-form wedge intersection areas, vectorized.

    The overlap height min-top minus max-bottom is concave piecewise
    linear in x with at most two interior breakpoints (top crossing and
    bottom crossing); integrating its positive part per linear piece is
    exact, so pairs with empty intersections come out exactly 0.
    """
    dy = y2 - y1
    with np.errstate(divide="ignore", invalid="ignore"):
        bt = dy / (h1 - h2)
        bb = dy / (l1 - l2)
    cuts = [np.zeros_like(dy), np.ones_like(dy)]
    for b in (bt, bb):
        cuts.append(np.where(np.isfinite(b) & (b > 0.0) & (b < 1.0), b, 0.0))
    grid = np.sort(np.stack(cuts, axis=-1), axis=-1)

    def overlap(x: np.ndarray) -> np.ndarray:
        top = np.minimum(h1 * x + y1, h2 * x + y2)
        bot = np.maximum(l1 * x + y1, l2 * x + y2)
        return top - bot

    area = np.zeros_like(dy)
    for s in range(grid.shape[-1] - 1):
        a, b = grid[..., s], grid[..., s + 1]
        ma, mb = overlap(a), overlap(b)
        width = b - a
        pos_both = (ma >= 0.0) & (mb >= 0.0)
        area += np.where(pos_both, 0.5 * (ma + mb) * width, 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            tri_a = 0.5 * ma * (ma / (ma - mb)) * width
            tri_b = 0.5 * mb * (mb / (mb - ma)) * width
        area += np.where((ma > 0.0) & (mb < 0.0), tri_a, 0.0)
        area += np.where((mb > 0.0) & (ma < 0.0), tri_b, 0.0)
    return area


def _segment_index(s: Segment, fam: SegmentFamily) -> int:
    width = fam.segment_width
    lo_scaled = s.x_lo.as_fraction() / width.as_fraction()
    if lo_scaled.denominator != 1 or not (s.x_hi - s.x_lo) == width:
        raise ConfigError("segment does not belong to this family's grid")
    return int(lo_scaled)


def classify_pair(
    s1: Segment,
    s2: Segment,
    params: ScheduleParams,
    c_reach: float = DEFAULT_C_REACH,
    level: int | None = None,
) -> PairClass | None:
    """Deepest shared cell level, gated by horizontal reach.

    The family level is inferred from the segment width when not given.
    """
    if s1 == s2:
        return PairClass(same_segment=True)
    if level is None:
        w1 = s1.x_hi - s1.x_lo
        for cand in range(params.depth + 1):
            if w1 == Dyadic(1, 1) * Dyadic.pow4(-params.scale(cand)):
                level = cand
                break
        else:
            raise ConfigError("segment width matches no level of this schedule")
    n = level
    m_n = params.scale(n)
    width = Dyadic(1, 1) * Dyadic.pow4(-m_n)
    for s in (s1, s2):
        if not (s.x_hi - s.x_lo) == width:
            raise ConfigError("segments are not from the same family geometry")
    i1 = (s1.x_lo * Dyadic(2) * Dyadic.pow4(m_n)).floor()
    i2 = (s2.x_lo * Dyadic(2) * Dyadic.pow4(m_n)).floor()
    kstar = 0
    for k in range(n, 0, -1):
        shift = 1 + 2 * (m_n - params.scale(k))
        if (i1 >> shift) == (i2 >> shift):
            kstar = k
            break
    gap = (abs(i1 - i2) - 1) * float(width)
    reach = c_reach * float(params.increment(kstar)) * 4.0 ** -params.scale(kstar)
    if gap > reach:
        return None
    return PairClass(k=kstar)


@dataclass(frozen=True)
class PairTables:
    """Exhaustive pair statistics for one family."""

    level: int
    counts: dict[int, int]
    area_sums: dict[int, float]
    max_normalized_area: dict[int, float]
    none_count: int
    none_area_max: float
    self_count: int
    self_area_sum: float

    @property
    def ordered_area_sum(self) -> float:
        """Sum over ordered pairs: diagonal once, cross pairs twice."""
        return self.self_area_sum + 2.0 * math.fsum(self.area_sums.values())

    @property
    def cauchy_schwarz_statistic(self) -> float:
        """Normalized so that total length 1 gives 1 <= dual_area * this."""
        return 4.0 * self.ordered_area_sum

    @property
    def favard_lower_bound(self) -> float:
        return 1.0 / self.cauchy_schwarz_statistic


def analytic_pair_count(params: ScheduleParams, n: int, k: int) -> float:
    """Reference count 4**m_k * (a_k * 4**(m_n - m_k))**2."""
    a_k = float(params.increment(k))
    return 4.0 ** params.scale(k) * (a_k * 4.0 ** (params.scale(n) - params.scale(k))) ** 2


def pair_tables(
    fam: SegmentFamily,
    c_reach: float = DEFAULT_C_REACH,
    pair_budget: int = 1 << 26,
    block: int = 1024,
) -> PairTables:
    """Classify and measure every unordered pair, block by block."""
    n = fam.level
    params = fam.params
    count = len(fam)
    if count * (count - 1) // 2 > pair_budget:
        raise BudgetError(
            f"{count} segments give {count * (count - 1) // 2} pairs, "
            f"over budget {pair_budget}"
        )
    m_n = params.scale(n)
    x0, x1, y = fam.as_arrays()
    idx = fam.indices()
    w = float(fam.segment_width)
    shifts = np.array(
        [1 + 2 * (m_n - params.scale(k)) for k in range(n + 1)], dtype=np.int64
    )
    reach = np.array(
        [
            c_reach * float(params.increment(k)) * 4.0 ** -params.scale(k)
            for k in range(n + 1)
        ]
    )
    norm = np.array(
        [
            (4.0 ** -params.scale(k)) * float(params.increment(k)) / 4.0 ** (-2 * m_n)
            for k in range(n + 1)
        ]
    )
    counts = np.zeros(n + 1, dtype=np.int64)
    sums = np.zeros(n + 1)
    maxr = np.zeros(n + 1)
    none_count = 0
    none_area_max = 0.0
    js = np.arange(count, dtype=np.int64)
    for start in range(0, count, block):
        stop = min(start + block, count)
        I = np.repeat(np.arange(start, stop, dtype=np.int64), count)
        J = np.tile(js, stop - start)
        keep = J > I
        I, J = I[keep], J[keep]
        if I.size == 0:
            continue
        xor = idx[I] ^ idx[J]
        bl = np.frexp(xor.astype(np.float64))[1]
        kstar = np.searchsorted(-shifts, -bl, side="right") - 1
        gap = (np.abs(idx[I] - idx[J]) - 1) * w
        within = gap <= reach[kstar]
        areas = _pair_area_arrays(x0[I], x1[I], y[I], x0[J], x1[J], y[J])
        kw = kstar[within]
        counts += np.bincount(kw, minlength=n + 1)
        sums += np.bincount(kw, weights=areas[within], minlength=n + 1)
        ratios = areas * norm[kstar]
        for k in range(n + 1):
            sel = within & (kstar == k)
            if np.any(sel):
                maxr[k] = max(maxr[k], float(np.max(ratios[sel])))
        none_sel = ~within
        none_count += int(np.sum(none_sel))
        if np.any(none_sel):
            none_area_max = max(none_area_max, float(np.max(np.abs(areas[none_sel]))))
    self_area = float(np.sum(x1 - x0)) / 2.0
    return PairTables(
        level=n,
        counts={k: int(counts[k]) for k in range(n + 1)},
        area_sums={k: float(sums[k]) for k in range(n + 1)},
        max_normalized_area={k: float(maxr[k]) for k in range(n + 1)},
        none_count=none_count,
        none_area_max=none_area_max,
        self_count=count,
        self_area_sum=self_area,
    )


def enumerate_k_pairs(
    fam: SegmentFamily,
    c_reach: float = DEFAULT_C_REACH,
    pair_budget: int = 1 << 26,
) -> dict[int, int]:
    """Exact per-level pair counts (unordered, self-pairs excluded)."""
    return pair_tables(fam, c_reach, pair_budget).counts


@dataclass(frozen=True)
class PairSumResult:
    tables: PairTables
    favard_lower_bound: float
    cauchy_schwarz_statistic: float
    analytic_reference: float


def pair_sum_lower_bound(
    fam: SegmentFamily,
    c_reach: float = DEFAULT_C_REACH,
    pair_budget: int = 1 << 26,
) -> PairSumResult:
    """Reciprocal pairwise-area sum: a lower-bound statistic for Favard length.

    The analytic reference is 1 + sum of increments below the level, the
    expected order of the ordered pairwise-area sum.
    """
    t = pair_tables(fam, c_reach, pair_budget)
    ref = 1.0 + math.fsum(
        float(fam.params.increment(k)) for k in range(1, fam.level)
    )
    return PairSumResult(
        tables=t,
        favard_lower_bound=t.favard_lower_bound,
        cauchy_schwarz_statistic=t.cauchy_schwarz_statistic,
        analytic_reference=ref,
    )
