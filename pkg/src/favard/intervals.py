"""One-dimensional intervals and finite unions with exact measure.

The union keeps a sorted tuple of pairwise disjoint closed intervals.
Zero-length intervals carry no measure and are dropped unless they touch
an existing part; touching parts (hi == lo) merge so the canonical form
is unique regardless of insertion order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True, slots=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (self.lo <= self.hi):
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")

    @property
    def length(self) -> float:
        return self.hi - self.lo


class IntervalUnion:
    """Sorted disjoint intervals; value-semantics, never mutated."""

    __slots__ = ("_parts",)

    def __init__(self, parts: Sequence[Interval] = ()) -> None:
        self._parts = tuple(parts)
        for a, b in zip(self._parts, self._parts[1:]):
            if not a.hi < b.lo:
                raise ValueError("parts must be strictly increasing and disjoint")

    @property
    def parts(self) -> tuple[Interval, ...]:
        return self._parts

    @classmethod
    def empty(cls) -> IntervalUnion:
        return cls(())

    @classmethod
    def from_intervals(cls, intervals: Iterable[Interval]) -> IntervalUnion:
        items = sorted((i.lo, i.hi) for i in intervals)
        merged: list[list[float]] = []
        for lo, hi in items:
            if merged and lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        return _raw_union([Interval(lo, hi) for lo, hi in merged if hi > lo])

    def insert(self, interval: Interval) -> IntervalUnion:
        """Set-union with one interval; restores all invariants."""
        lo, hi = interval.lo, interval.hi
        out: list[Interval] = []
        placed = False
        degenerate = hi == lo
        absorbed = False
        for p in self._parts:
            if p.hi < lo:
                out.append(p)
            elif hi < p.lo:
                if not placed:
                    if not degenerate or absorbed:
                        out.append(Interval(lo, hi))
                    placed = True
                out.append(p)
            else:
                lo = min(lo, p.lo)
                hi = max(hi, p.hi)
                absorbed = True
        if not placed and (not degenerate or absorbed):
            out.append(Interval(lo, hi))
        out.sort(key=lambda i: i.lo)
        return _raw_union(out)

    def measure(self) -> float:
        return math.fsum(p.length for p in self._parts)

    def inflate(self, eps: float) -> IntervalUnion:
        """The eps-neighborhood within the line, re-merged."""
        if eps < 0:
            raise ValueError("eps must be nonnegative")
        if eps == 0:
            return self
        return IntervalUnion.from_intervals(
            Interval(p.lo - eps, p.hi + eps) for p in self._parts
        )

    def __len__(self) -> int:
        return len(self._parts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntervalUnion):
            return NotImplemented
        return self._parts == other._parts

    def __hash__(self) -> int:
        return hash(self._parts)

    def __repr__(self) -> str:
        inner = ", ".join(f"[{p.lo}, {p.hi}]" for p in self._parts)
        return f"IntervalUnion({inner})"

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        lo = np.array([p.lo for p in self._parts])
        hi = np.array([p.hi for p in self._parts])
        return lo, hi


def _raw_union(parts: list[Interval]) -> IntervalUnion:
    u = IntervalUnion.__new__(IntervalUnion)
    u._parts = tuple(parts)
    return u


def union_insert(u: IntervalUnion, interval: Interval) -> IntervalUnion:
    return u.insert(interval)


def union_measure(u: IntervalUnion) -> float:
    return u.measure()


def union_inflate(u: IntervalUnion, eps: float) -> IntervalUnion:
    return u.inflate(eps)


# ---------------------------------------------------------------------------
# array kernels used by the projection hot paths


def merge_sorted_arrays(lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Merge intervals already sorted by lo; touching intervals coalesce."""
    if lo.size == 0:
        return lo, hi
    run = np.maximum.accumulate(hi)
    new = np.empty(lo.size, dtype=bool)
    new[0] = True
    np.greater(lo[1:], run[:-1], out=new[1:])
    idx = np.nonzero(new)[0]
    starts = lo[idx]
    ends = run[np.append(idx[1:] - 1, lo.size - 1)]
    return starts, ends


def merge_arrays(lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sort then merge; the batch form of repeated union_insert."""
    order = np.argsort(lo, kind="stable")
    return merge_sorted_arrays(lo[order], hi[order])


def measure_of_arrays(lo: np.ndarray, hi: np.ndarray) -> float:
    starts, ends = merge_arrays(lo, hi)
    return float(np.sum(ends - starts))


def union_from_arrays(lo: np.ndarray, hi: np.ndarray) -> IntervalUnion:
    starts, ends = merge_arrays(lo, hi)
    keep = ends > starts
    return _raw_union(
        [Interval(float(a), float(b)) for a, b in zip(starts[keep], ends[keep])]
    )
