"""Command line front end.

Subcommands: construct, favard, dual, pairs, diagnose, figure, report.
Exit codes: 0 success, 2 config error, 3 budget error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .baselines import build_four_corner, build_random_four_corner
from .construction import build_box_family, build_segment_family
from .diagnostics import (
    closeness_fraction,
    nestedness_check,
    oscillation_tail,
    secant_probe,
)
from .duality import analytic_pair_count, dual_area, pair_sum_lower_bound
from .dyadic import Dyadic
from .errors import BudgetError, ConfigError
from .figures import construction_figure, dual_pair_figure, save_svg
from .projection import favard_estimate, restricted_angle_integral
from .report import (
    PAIR_SEGMENT_LIMIT,
    RunConfig,
    _family_for_level,
    run_report,
    schedule_for,
    write_csv,
    write_json,
)
from .serialize import family_to_json


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--growth", default="linear",
                   help="growth preset (linear|sqrt|log) or JSON file of values")
    p.add_argument("--levels", type=int, default=4)
    p.add_argument("--c-sep", type=int, default=4, dest="c_sep",
                   help="separation constant (4 at desk scale, 1000 in the analysis)")
    p.add_argument("--c-reach", type=float, default=8.0, dest="c_reach")
    p.add_argument("--eps", default="auto",
                   help="'auto' (4^-m_n per level) or comma-separated values")
    p.add_argument("--nodes", type=int, default=512)
    p.add_argument("--max-segments", type=int, default=1 << 20,
                   dest="max_segments")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="favard-out")


def _config(args: argparse.Namespace) -> RunConfig:
    eps: tuple[float, ...] | None
    if args.eps == "auto":
        eps = None
    else:
        try:
            eps = tuple(float(v) for v in args.eps.split(","))
        except ValueError:
            raise ConfigError(f"bad --eps value {args.eps!r}")
        if any(e < 0 for e in eps):
            raise ConfigError("eps values must be nonnegative")
    if args.levels < 1:
        raise ConfigError("--levels must be at least 1")
    if args.nodes < 2:
        raise ConfigError("--nodes must be at least 2")
    return RunConfig(
        growth=args.growth, levels=args.levels, c_sep=args.c_sep,
        c_reach=args.c_reach, eps=eps, nodes=args.nodes,
        max_segments=args.max_segments, seed=args.seed, out_dir=args.out,
    )


def cmd_construct(args) -> int:
    cfg = _config(args)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if args.family == "graph":
        params = schedule_for(cfg)
        for n in range(0, cfg.levels + 1):
            fam = (build_box_family if args.boxes else build_segment_family)(
                n, params, cfg.max_segments
            )
            path = out / f"family-graph-n{n}.json"
            path.write_text(family_to_json(fam))
            print(path)
    elif args.family == "four-corner":
        fam = build_four_corner(cfg.levels, cfg.max_segments)
        path = out / f"family-four-corner-n{cfg.levels}.json"
        path.write_text(family_to_json(fam))
        print(path)
    else:
        fam = build_random_four_corner(cfg.levels, cfg.seed, cfg.max_segments)
        path = out / f"family-random-n{cfg.levels}-s{cfg.seed}.json"
        path.write_text(family_to_json(fam))
        print(path)
    return 0


def cmd_favard(args) -> int:
    cfg = _config(args)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    if args.family == "graph":
        params = schedule_for(cfg)
        for n in range(1, cfg.levels + 1):
            fam = _family_for_level(cfg, params, n)
            eps_list = cfg.eps or (4.0 ** -params.scale(n),)
            for eps in eps_list:
                est = favard_estimate(fam, eps, cfg.nodes)
                rows.append([args.family, n, eps, est.method, est.nodes,
                             est.value, est.error_bound])
    else:
        builder = (build_four_corner if args.family == "four-corner"
                   else lambda n, m: build_random_four_corner(n, cfg.seed, m))
        for n in range(1, cfg.levels + 1):
            fam = builder(n, cfg.max_segments)
            eps_list = cfg.eps or (4.0 ** -n,)
            for eps in eps_list:
                est = favard_estimate(fam, eps, cfg.nodes)
                rows.append([args.family, n, eps, est.method, est.nodes,
                             est.value, est.error_bound])
    path = out / "favard.csv"
    write_csv(path, ["family_id", "n", "eps", "method", "nodes", "value",
                     "error_bound"], rows)
    print(path)
    return 0


def cmd_dual(args) -> int:
    cfg = _config(args)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    params = schedule_for(cfg)
    rows = []
    for n in range(1, cfg.levels + 1):
        fam = build_segment_family(n, params, cfg.max_segments)
        da = dual_area(fam, cfg.nodes)
        restricted = restricted_angle_integral(fam, 0.0, cfg.nodes)
        rows.append([n, cfg.nodes, da, restricted, da / restricted,
                     da / (2.0 * math.sqrt(2.0) * math.pi)])
    path = out / "duality.csv"
    write_csv(path, ["n", "nodes", "dual_area", "restricted_integral",
                     "chart_ratio", "favard_lower_bound"], rows)
    print(path)
    return 0


def cmd_pairs(args) -> int:
    cfg = _config(args)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    params = schedule_for(cfg)
    rows, summary = [], []
    for n in range(1, cfg.levels + 1):
        if params.segment_count(n) > PAIR_SEGMENT_LIMIT:
            raise BudgetError(
                f"level {n} has {params.segment_count(n)} segments; pair scans "
                f"stop at {PAIR_SEGMENT_LIMIT}"
            )
        fam = build_segment_family(n, params, cfg.max_segments)
        res = pair_sum_lower_bound(fam, cfg.c_reach, cfg.pair_budget)
        t = res.tables
        for k in range(0, n + 1):
            pred = analytic_pair_count(params, n, k)
            rows.append([n, k, t.counts[k], pred,
                         t.counts[k] / pred if pred else math.inf,
                         t.area_sums[k], t.max_normalized_area[k]])
        summary.append([n, sum(t.counts.values()), t.none_count,
                        t.none_area_max, t.ordered_area_sum,
                        res.cauchy_schwarz_statistic, res.favard_lower_bound,
                        res.analytic_reference])
    path = out / "pairs.csv"
    write_csv(path, ["n", "k", "count", "analytic_count", "count_ratio",
                     "area_sum", "max_normalized_area"], rows)
    write_csv(out / "pair_summary.csv",
              ["n", "pair_count", "none_count", "none_area_max",
               "ordered_area_sum", "cs_statistic", "favard_lower_bound",
               "analytic_reference"], summary)
    print(path)
    return 0


def cmd_diagnose(args) -> int:
    cfg = _config(args)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    params = schedule_for(cfg)
    close = closeness_fraction(params, cfg.levels)
    osc = [oscillation_tail(n, params) for n in range(1, cfg.levels + 1)]
    nested = {
        str(n): nestedness_check(n, params, cfg.max_segments)
        for n in range(1, cfg.levels)
        if params.segment_count(n + 1) <= cfg.max_segments
    }
    secant = []
    for n in range(2, min(cfg.levels, 4) + 1):
        spacing = Dyadic.pow4(-params.scale(n))
        for j in (1, 2, 3):
            x0 = Dyadic(j * (4 ** params.scale(n) // 4)) * spacing
            try:
                rec = secant_probe(x0, n, params)
            except ConfigError:
                continue
            secant.append({"n": n, "x0": float(rec.x0), "angle": rec.angle})
    doc = {
        "closeness": {
            "fraction_hit": close.fraction_hit,
            "predicted_fraction": close.predicted_fraction,
            "grid_resolution": close.grid_resolution,
        },
        "oscillation": [
            {"n": o.level, "sup": float(o.sup), "ratio": o.ratio} for o in osc
        ],
        "nestedness": nested,
        "secant": secant,
    }
    path = out / "diagnostics.json"
    write_json(path, doc)
    print(path)
    return 0


def cmd_figure(args) -> int:
    cfg = _config(args)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    params = schedule_for(cfg)
    if args.kind == "construction":
        fam = build_box_family(args.level, params, cfg.max_segments)
        path = out / f"construction-n{args.level}.svg"
        save_svg(construction_figure(fam), path)
    else:
        fam = build_segment_family(args.level, params, cfg.max_segments)
        try:
            i, j = (int(v) for v in args.pair.split(","))
            s1, s2 = fam.segments[i], fam.segments[j]
        except (ValueError, IndexError):
            raise ConfigError(f"bad --pair {args.pair!r} for {len(fam)} segments")
        path = out / f"dual-pair-n{args.level}-{i}-{j}.svg"
        save_svg(dual_pair_figure(s1, s2), path)
    print(path)
    return 0


def cmd_report(args) -> int:
    cfg = _config(args)
    bundle = run_report(cfg)
    for name in sorted(bundle.files):
        print(bundle.out_dir / name)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="favard",
        description="Favard length experiments on slowly decaying Cantor graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build families and write family JSON")
    _add_common(p)
    p.add_argument("--family", choices=["graph", "four-corner", "random-four-corner"],
                   default="graph")
    p.add_argument("--boxes", action="store_true", help="emit boxes instead of segments")
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("favard", help="Favard estimates per level")
    _add_common(p)
    p.add_argument("--family", choices=["graph", "four-corner", "random-four-corner"],
                   default="graph")
    p.set_defaults(fn=cmd_favard)

    p = sub.add_parser("dual", help="dual areas and chart ratios per level")
    _add_common(p)
    p.set_defaults(fn=cmd_dual)

    p = sub.add_parser("pairs", help="pair classes, counts and area sums")
    _add_common(p)
    p.set_defaults(fn=cmd_pairs)

    p = sub.add_parser("diagnose", help="closeness, oscillation, nestedness probes")
    _add_common(p)
    p.set_defaults(fn=cmd_diagnose)

    p = sub.add_parser("figure", help="render one SVG figure")
    _add_common(p)
    p.add_argument("--kind", choices=["construction", "dual-pair"],
                   default="construction")
    p.add_argument("--level", type=int, default=3)
    p.add_argument("--pair", default="0,1", help="segment indices for dual-pair")
    p.set_defaults(fn=cmd_figure)

    p = sub.add_parser("report", help="full bundle: tables, diagnostics, figures")
    _add_common(p)
    p.set_defaults(fn=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    except BudgetError as e:
        print(f"budget error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
