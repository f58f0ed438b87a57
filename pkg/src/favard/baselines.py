"""Self-similar baseline families: four-corner, general IFS, randomized.

These give reference decay rates to compare the graph construction
against.  All corners are exact rationals; the four-corner and random
variants stay dyadic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .construction import Box, BoxFamily
from .dyadic import Dyadic
from .errors import BudgetError, ConfigError


def build_four_corner(n: int, max_boxes: int = 1 << 20) -> BoxFamily:
    """4**n corner squares of side 4**-n inside the unit square."""
    if n < 0:
        raise ConfigError("depth must be nonnegative")
    if 4 ** n > max_boxes:
        raise BudgetError(f"four-corner depth {n} needs {4 ** n} boxes")
    cells = [(0, 0)]
    for _ in range(n):
        cells = [
            (4 * i + di, 4 * j + dj)
            for (i, j) in cells
            for di in (0, 3)
            for dj in (0, 3)
        ]
    side = Dyadic.pow4(-n)
    boxes = tuple(
        Box(Dyadic(i) * side, Dyadic(i + 1) * side, Dyadic(j) * side, Dyadic(j + 1) * side)
        for i, j in sorted(cells)
    )
    return BoxFamily(n, boxes, "four-corner")


@dataclass(frozen=True)
class IfsParams:
    """Similarity system z -> z / ratio + shift, with distinct non-colinear shifts."""

    branching: int
    translations: tuple[tuple[Fraction, Fraction], ...]
    depth: int

    def __post_init__(self) -> None:
        if self.branching < 2:
            raise ConfigError("branching factor must be at least 2")
        if len(self.translations) != self.branching:
            raise ConfigError("need exactly one translation per branch")
        if len(set(self.translations)) != self.branching:
            raise ConfigError("translations must be distinct")
        if self.depth < 0:
            raise ConfigError("depth must be nonnegative")
        if _colinear(self.translations):
            raise ConfigError("translations must not be co-linear")


def _colinear(pts: tuple[tuple[Fraction, Fraction], ...]) -> bool:
    if len(pts) <= 2:
        return True
    (x0, y0), (x1, y1) = pts[0], pts[1]
    for x2, y2 in pts[2:]:
        if (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0) != 0:
            return False
    return True


def build_ifs(params: IfsParams, max_boxes: int = 1 << 20) -> BoxFamily:
    """depth-fold images of the unit square under the similarity system."""
    L = params.branching
    if L ** params.depth > max_boxes:
        raise BudgetError(
            f"ifs depth {params.depth} needs {L ** params.depth} boxes"
        )
    corners: list[tuple[Fraction, Fraction]] = [(Fraction(0), Fraction(0))]
    for _ in range(params.depth):
        corners = [
            (x / L + zx, y / L + zy)
            for (x, y) in corners
            for (zx, zy) in params.translations
        ]
    side = Fraction(1, L ** params.depth)
    boxes = tuple(
        Box(x, x + side, y, y + side) for x, y in sorted(set(corners))
    )
    return BoxFamily(params.depth, boxes, "ifs", meta=(("branching", L),))


def four_corner_ifs_params(depth: int) -> IfsParams:
    q = Fraction(3, 4)
    return IfsParams(
        4,
        ((Fraction(0), Fraction(0)), (q, Fraction(0)), (Fraction(0), q), (q, q)),
        depth,
    )


def build_random_four_corner(n: int, seed: int, max_boxes: int = 1 << 20) -> BoxFamily:
    """Each surviving square splits 4x4 and keeps 4 children, uniformly
    without replacement, independently across squares; reproducible."""
    if n < 0:
        raise ConfigError("depth must be nonnegative")
    if 4 ** n > max_boxes:
        raise BudgetError(f"random four-corner depth {n} needs {4 ** n} boxes")
    rng = random.Random(seed)
    cells = [(0, 0)]
    for _ in range(n):
        nxt = []
        for i, j in cells:
            for pick in sorted(rng.sample(range(16), 4)):
                nxt.append((4 * i + pick % 4, 4 * j + pick // 4))
        cells = nxt
    side = Dyadic.pow4(-n)
    boxes = tuple(
        Box(Dyadic(i) * side, Dyadic(i + 1) * side, Dyadic(j) * side, Dyadic(j + 1) * side)
        for i, j in sorted(cells)
    )
    return BoxFamily(n, boxes, "random-four-corner", meta=(("seed", seed),))
