"""Report bundles: CSV tables, JSON probe reports, SVG figures.

A run is fully determined by its RunConfig; all outputs are written with
stable formatting (shortest round-trip floats, sorted JSON keys, pinned
SVG salt) so identical configs give byte-identical bundles.
"""

from __future__ import annotations

import csv
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .construction import build_box_family, build_segment_family
from .diagnostics import (
    closeness_fraction,
    nestedness_check,
    oscillation_tail,
    secant_probe,
)
from .duality import (
    DEFAULT_C_REACH,
    analytic_pair_count,
    dual_area,
    pair_sum_lower_bound,
)
from .dyadic import Dyadic
from .errors import ConfigError
from .figures import construction_figure, dual_pair_figure, save_svg
from .growth import GROWTH_PRESETS, GrowthSequence, derive_increments
from .implicit import ImplicitGraphFamily
from .projection import favard_estimate, restricted_angle_integral
from .schedule import ScheduleParams, derive_schedule

#: exhaustive pair scans stop above this many segments
PAIR_SEGMENT_LIMIT = 1 << 13


@dataclass(frozen=True)
class RunConfig:
    growth: str = "linear"
    levels: int = 4
    c_sep: int = 4
    c_reach: float = DEFAULT_C_REACH
    eps: tuple[float, ...] | None = None  # None = 4**-m_n per level
    nodes: int = 512
    max_segments: int = 1 << 20
    pair_budget: int = 1 << 26
    seed: int = 0
    out_dir: str = "favard-out"

    def resolve_growth(self) -> GrowthSequence:
        if self.growth in GROWTH_PRESETS:
            return GROWTH_PRESETS[self.growth](self.levels)
        return load_growth_file(self.growth, self.levels)


def load_growth_file(path: str, levels: int) -> GrowthSequence:
    """A growth file is a JSON array of numbers, g(1), g(2), ..."""
    try:
        values = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise ConfigError(f"unknown growth preset or missing file: {path!r}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"growth file {path!r} is not valid JSON: {e}")
    if not isinstance(values, list) or not all(
        isinstance(v, (int, float)) for v in values
    ):
        raise ConfigError(f"growth file {path!r} must be a JSON array of numbers")
    if len(values) < levels:
        raise ConfigError(
            f"growth file {path!r} has {len(values)} terms, need {levels}"
        )
    return GrowthSequence(tuple(float(v) for v in values[:levels]))


def schedule_for(cfg: RunConfig) -> ScheduleParams:
    return derive_schedule(derive_increments(cfg.resolve_growth()), cfg.c_sep)


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def write_json(path: Path, doc) -> None:
    path.write_text(json.dumps(doc, sort_keys=True, indent=1) + "\n")


@dataclass
class ReportBundle:
    out_dir: Path
    files: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    def add(self, name: str) -> Path:
        self.files.append(name)
        return self.out_dir / name


def _family_for_level(cfg: RunConfig, params: ScheduleParams, n: int):
    if params.segment_count(n) <= cfg.max_segments:
        return build_segment_family(n, params, cfg.max_segments)
    return ImplicitGraphFamily(n, params)


def favard_rows(cfg: RunConfig, params: ScheduleParams) -> list[list]:
    rows = []
    fam_id = f"graph-{Path(cfg.growth).name}-csep{cfg.c_sep}"
    for n in range(1, cfg.levels + 1):
        fam = _family_for_level(cfg, params, n)
        eps_list = cfg.eps or (4.0 ** -params.scale(n),)
        below = math.fsum(float(params.increment(k)) for k in range(1, n))
        for eps in eps_list:
            est = favard_estimate(fam, eps, cfg.nodes)
            rows.append(
                [fam_id, n, eps, est.method, est.nodes, est.value,
                 est.error_bound, below, est.value * below]
            )
    return rows


def run_report(cfg: RunConfig) -> ReportBundle:
    """Build the full bundle; returns the paths written.

    Levels too large for a stage are skipped with a note instead of
    failing the run; a stage that cannot produce anything at all raises.
    """
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    bundle = ReportBundle(out)
    params = schedule_for(cfg)

    rows = favard_rows(cfg, params)
    write_csv(
        bundle.add("favard.csv"),
        ["family_id", "n", "eps", "method", "nodes", "value", "error_bound",
         "sum_increments_below", "normalized_statistic"],
        rows,
    )
    statistics = [r[8] for r in rows if r[8] > 0.0]
    statistic_spread = (
        max(statistics) / min(statistics) if statistics else None
    )

    dual_rows, pair_rows, summary_rows = [], [], []
    fam_id = f"graph-{Path(cfg.growth).name}-csep{cfg.c_sep}"
    for n in range(1, cfg.levels + 1):
        if params.segment_count(n) > cfg.max_segments:
            bundle.skipped.append(f"dual/pairs level {n}: needs "
                                  f"{params.segment_count(n)} segments")
            continue
        fam = build_segment_family(n, params, cfg.max_segments)
        da = dual_area(fam, cfg.nodes)
        restricted = restricted_angle_integral(fam, 0.0, cfg.nodes)
        dual_rows.append(
            [fam_id, n, cfg.nodes, da, restricted,
             da / restricted if restricted else math.inf,
             da / (2.0 * math.sqrt(2.0) * math.pi)]
        )
        if params.segment_count(n) > PAIR_SEGMENT_LIMIT:
            bundle.skipped.append(f"pairs level {n}: over segment limit")
            continue
        res = pair_sum_lower_bound(fam, cfg.c_reach, cfg.pair_budget)
        t = res.tables
        for k in range(0, n + 1):
            pred = analytic_pair_count(params, n, k)
            pair_rows.append(
                [fam_id, n, k, t.counts[k], pred,
                 t.counts[k] / pred if pred else math.inf,
                 t.area_sums[k], t.max_normalized_area[k]]
            )
        summary_rows.append(
            [fam_id, n, sum(t.counts.values()), t.none_count,
             t.none_area_max, t.ordered_area_sum,
             res.cauchy_schwarz_statistic, res.favard_lower_bound,
             res.analytic_reference]
        )
    write_csv(
        bundle.add("duality.csv"),
        ["family_id", "n", "nodes", "dual_area", "restricted_integral",
         "chart_ratio", "favard_lower_bound"],
        dual_rows,
    )
    write_csv(
        bundle.add("pairs.csv"),
        ["family_id", "n", "k", "count", "analytic_count", "count_ratio",
         "area_sum", "max_normalized_area"],
        pair_rows,
    )
    write_csv(
        bundle.add("pair_summary.csv"),
        ["family_id", "n", "pair_count", "none_count", "none_area_max",
         "ordered_area_sum", "cs_statistic", "favard_lower_bound",
         "analytic_reference"],
        summary_rows,
    )

    _diagnostics_stage(cfg, params, bundle)
    _figure_stage(cfg, params, bundle)

    write_json(
        bundle.add("run.json"),
        {
            "config": {
                "growth": cfg.growth, "levels": cfg.levels, "c_sep": cfg.c_sep,
                "c_reach": cfg.c_reach,
                "eps": list(cfg.eps) if cfg.eps else "auto",
                "nodes": cfg.nodes, "max_segments": cfg.max_segments,
                "pair_budget": cfg.pair_budget, "seed": cfg.seed,
            },
            "schedule": {
                "m": list(params.scales),
                "a": [float(a) for a in params.increments],
            },
            "normalized_statistic_spread": statistic_spread,
            "files": sorted(bundle.files),
            "skipped": bundle.skipped,
        },
    )
    for note in bundle.skipped:
        print(f"note: skipped {note}", file=sys.stderr)
    return bundle


def _diagnostics_stage(cfg: RunConfig, params: ScheduleParams, bundle: ReportBundle):
    close = closeness_fraction(params, cfg.levels)
    write_json(
        bundle.add("diagnostics_closeness.json"),
        {
            "max_level": close.max_level,
            "grid_resolution": close.grid_resolution,
            "fraction_hit": close.fraction_hit,
            "predicted_fraction": close.predicted_fraction,
            "per_level_fraction": list(close.per_level_fraction),
        },
    )
    osc = [oscillation_tail(n, params) for n in range(1, cfg.levels + 1)]
    write_json(
        bundle.add("diagnostics_oscillation.json"),
        [
            {"n": o.level, "sup": float(o.sup), "reference": float(o.reference),
             "ratio": o.ratio}
            for o in osc
        ],
    )
    nested = {}
    for n in range(1, cfg.levels):
        if params.segment_count(n + 1) > cfg.max_segments:
            bundle.skipped.append(f"nestedness level {n}")
            continue
        nested[str(n)] = nestedness_check(n, params, cfg.max_segments)
    write_json(bundle.add("diagnostics_nestedness.json"), nested)

    secant = []
    for n in range(2, min(cfg.levels, 4) + 1):
        if n > params.depth:
            break
        spacing = Dyadic.pow4(-params.scale(n))
        for j in (1, 2, 3):
            x0 = Dyadic(j * (4 ** params.scale(n) // 4)) * spacing
            try:
                rec = secant_probe(x0, n, params)
            except ConfigError as e:
                bundle.skipped.append(f"secant n={n} x0={float(x0)}: {e}")
                continue
            secant.append(
                {"n": n, "x0": float(rec.x0), "z1": float(rec.z1),
                 "z2": float(rec.z2), "angle": rec.angle,
                 "near_displacement": float(rec.displacement_near),
                 "far_displacement": float(rec.displacement_far)}
            )
    write_json(bundle.add("diagnostics_secant.json"), secant)

    rows = [
        ["closeness_fraction", close.fraction_hit, close.predicted_fraction],
        ["oscillation_ratio_n1", osc[0].ratio if osc else "", ""],
        ["nestedness_all", all(nested.values()) if nested else "", ""],
        ["secant_min_angle", min((r["angle"] for r in secant), default=""), ""],
    ]
    write_csv(bundle.add("diagnostics_summary.csv"),
              ["probe", "value", "reference"], rows)


def _figure_stage(cfg: RunConfig, params: ScheduleParams, bundle: ReportBundle):
    from .figures import MAX_PRIMITIVES

    level = 0
    for n in range(min(3, cfg.levels), 0, -1):
        if params.segment_count(n) <= min(MAX_PRIMITIVES, cfg.max_segments):
            level = n
            break
    if level >= 1:
        boxes = build_box_family(level, params, cfg.max_segments)
        save_svg(construction_figure(boxes), bundle.add("construction.svg"))
    else:
        bundle.skipped.append("construction figure: no feasible level")
    f0 = build_segment_family(0, params, max(cfg.max_segments, 2))
    save_svg(dual_pair_figure(f0.segments[0], f0.segments[1]),
             bundle.add("dual_pair.svg"))
