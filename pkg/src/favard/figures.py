"""Figures: construction boxes and dual wedge pairs, saved as SVG.

Output must be byte-identical across runs, so the SVG hash salt is
pinned and the date metadata is suppressed.
"""

from __future__ import annotations

import io

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "favard"

import matplotlib.pyplot as plt
from matplotlib.patches import Polygon as MplPolygon, Rectangle

from .construction import BoxFamily, Segment
from .duality import dual_wedge, wedge_pair_area, wedge_pair_polygon
from .errors import BudgetError

#: rendering budget in drawn primitives
MAX_PRIMITIVES = 1 << 14


def construction_figure(fam: BoxFamily) -> plt.Figure:
    """All boxes of one level, drawn to scale."""
    if len(fam) > MAX_PRIMITIVES:
        raise BudgetError(
            f"{len(fam)} boxes exceed the figure budget {MAX_PRIMITIVES}"
        )
    fig, ax = plt.subplots(figsize=(8.0, 5.0))
    x0, x1, y0, y1 = fam.as_arrays()
    for a, b, c, d in zip(x0, x1, y0, y1):
        ax.add_patch(Rectangle((a, c), b - a, d - c, facecolor="#1f3b70",
                               edgecolor="none"))
    ax.set_xlim(-0.02, 1.02)
    top = float(max(y1)) if len(fam) else 1.0
    ax.set_ylim(-0.05 * max(top, 0.1), max(top * 1.1, 0.1))
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(f"{fam.kind} boxes, level {fam.level} ({len(fam)} boxes)")
    return fig


def _wedge_polygon(seg: Segment) -> list[tuple[float, float]]:
    w = dual_wedge(seg)
    return [
        (0.0, w.apex_y),
        (1.0, w.slope_lo + w.apex_y),
        (1.0, w.slope_hi + w.apex_y),
    ]


def dual_pair_figure(s1: Segment, s2: Segment) -> plt.Figure:
    """Both dual wedges over the strip, intersection shaded."""
    fig, ax = plt.subplots(figsize=(6.0, 6.0))
    w1, w2 = dual_wedge(s1), dual_wedge(s2)
    for seg, color in ((s1, "#348abd"), (s2, "#a60628")):
        ax.add_patch(
            MplPolygon(_wedge_polygon(seg), closed=True, facecolor=color,
                       alpha=0.35, edgecolor=color, linewidth=1.0)
        )
    area = wedge_pair_area(w1, w2)
    poly = wedge_pair_polygon(w1, w2)
    if area > 0.0 and not poly.is_empty():
        ax.add_patch(
            MplPolygon(list(poly.vertices), closed=True, facecolor="#2d2d2d",
                       edgecolor="black", linewidth=0.8)
        )
    else:
        ax.text(0.5, 0.5, "zero-area intersection", transform=ax.transAxes,
                ha="center", va="center", fontsize=11)
    ys = [w.apex_y + s for w in (w1, w2) for s in (0.0, w.slope_lo, w.slope_hi)]
    pad = 0.15 * (max(ys) - min(ys) + 1.0)
    ax.axvline(0.0, color="gray", linewidth=0.8)
    ax.axvline(1.0, color="gray", linewidth=0.8)
    ax.set_xlim(-0.1, 1.1)
    ax.set_ylim(min(ys) - pad, max(ys) + pad)
    ax.set_xlabel("slope parameter")
    ax.set_ylabel("intercept")
    ax.set_title(f"dual wedge pair, intersection area {area:.3e}")
    return fig


def figure_svg(fig: plt.Figure) -> bytes:
    """Serialize deterministically (no date stamp, pinned hash salt)."""
    buf = io.BytesIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()


def save_svg(fig: plt.Figure, path) -> None:
    data = figure_svg(fig)
    with open(path, "wb") as fh:
        fh.write(data)
