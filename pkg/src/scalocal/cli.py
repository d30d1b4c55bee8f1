"""Command-line front end: generate point sets, run sweeps, emit curves.

Exit codes: 0 on success, 1 for user errors (bad parameters, malformed
input), 2 for I/O failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io as sio
from .analytic import ReferenceSpec, reference_dimension_curve, reference_entropy_curve
from .config import AnalysisConfig, FORMAT_CHOICES, LOG_BASE_CHOICES
from .entropy import entropy_sweep
from .exceptions import PointFileError
from .generators import HierarchySpec, condensation_sequence, hierarchy_points, uniform_points
from .measures import CurvePair, dimension_curve, dimension_transport, information

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with code 1, not 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _ranks(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse rank list {text!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse integer list {text!r}")


def _add_analysis_options(p: _Parser) -> None:
    p.add_argument("--q", type=_ranks, default=[0.0], metavar="Q[,Q...]",
                   help="comma-separated entropy ranks (default: 0)")
    p.add_argument("--e-min", type=float, default=1e-3, help="smallest scale (default: 1e-3)")
    p.add_argument("--e-max", type=float, default=3.0, help="largest scale (default: 3.0)")
    p.add_argument("--per-decade", type=int, default=8,
                   help="scale-grid points per decade (default: 8)")
    p.add_argument("--format", choices=FORMAT_CHOICES, default="csv", dest="out_format")
    p.add_argument("--log-base", choices=LOG_BASE_CHOICES, default="natural",
                   help="reporting base for entropy-like columns (default: natural)")
    p.add_argument("--out", type=Path, default=None,
                   help="output file (default: stdout)")
    p.add_argument("--plot", action="store_true",
                   help="also render a PNG figure next to --out")


def build_parser() -> _Parser:
    parser = _Parser(prog="scalocal",
                     description="Scale-local entropy, information, and dimension "
                                 "analysis of point sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a synthetic point-set file",
                         parents=[], add_help=True)
    gen_sub = gen.add_subparsers(dest="kind", required=True)

    g_uni = gen_sub.add_parser("uniform", help="uniform random points in a box")
    g_uni.add_argument("--n", type=int, required=True, help="point count")
    g_uni.add_argument("--d", type=int, default=2, help="dimension count (default: 2)")
    g_uni.add_argument("--L", type=float, default=1.0, help="support side (default: 1)")
    g_uni.add_argument("--seed", type=int, default=0)
    g_uni.add_argument("--out", type=Path, required=True)

    g_hier = gen_sub.add_parser("hierarchy", help="two-tier cluster hierarchy")
    g_hier.add_argument("--n0", type=int, required=True, help="cluster-site count")
    g_hier.add_argument("--n1", type=int, required=True, help="points per cluster")
    g_hier.add_argument("--delta1", type=float, required=True, help="cluster width")
    g_hier.add_argument("--d", type=int, default=2)
    g_hier.add_argument("--L", type=float, default=1.0)
    g_hier.add_argument("--seed", type=int, default=0)
    g_hier.add_argument("--out", type=Path, required=True)

    g_cond = gen_sub.add_parser("condensation",
                                help="fixed-multiplicity hierarchies over site counts")
    g_cond.add_argument("--n-total", type=int, required=True)
    g_cond.add_argument("--sites", type=_int_list, required=True, metavar="N0[,N0...]")
    g_cond.add_argument("--delta1", type=float, required=True)
    g_cond.add_argument("--d", type=int, default=2)
    g_cond.add_argument("--L", type=float, default=1.0)
    g_cond.add_argument("--seed", type=int, default=0)
    g_cond.add_argument("--out", type=Path, required=True,
                        help="output template; each member gets a _<sites>sites suffix")

    ana = sub.add_parser("analyze", help="entropy sweep of a point-set file")
    ana.add_argument("points", type=Path, help="point-set file to analyze")
    _add_analysis_options(ana)
    ana.add_argument("--dither", "-J", type=int, default=16, dest="dithers",
                     help="dithering phases per scale (default: 16)")
    ana.add_argument("--seed", type=int, default=0, help="dithering seed (default: 0)")
    ana.add_argument("--reference", choices=["brud", "bud", "file"], default=None,
                     help="reference for information/transport curves")
    ana.add_argument("--reference-file", type=Path, default=None,
                     help="point-set file for --reference file")

    ref = sub.add_parser("reference", help="analytic reference curves, no point data")
    ref.add_argument("--d", type=int, required=True)
    ref.add_argument("--L", type=float, default=1.0)
    ref.add_argument("--n", type=int, default=None,
                     help="point count (omit for the continuum reference)")
    _add_analysis_options(ref)

    rec = sub.add_parser("recipe", help="run a JSON recipe (generate + analyze + plot)")
    rec.add_argument("recipe", type=Path)
    rec.add_argument("--outdir", type=Path, required=True)

    return parser


def _write_points(path: Path, points, label: str) -> None:
    sio.save_points(path, points)
    print(f"wrote {points.n} points (d={points.d}, L={points.L:g}, {label}) to {path}")


def _cmd_generate(args) -> int:
    if args.kind == "uniform":
        points = uniform_points(args.n, args.d, args.L, args.seed)
        _write_points(args.out, points, "uniform")
    elif args.kind == "hierarchy":
        spec = HierarchySpec(n0=args.n0, n1=args.n1, delta1=args.delta1,
                             L=args.L, d=args.d, seed=args.seed)
        points = hierarchy_points(spec)
        _write_points(args.out, points, f"hierarchy n0={args.n0} n1={args.n1}")
    else:
        members = condensation_sequence(args.n_total, args.sites, args.delta1,
                                        args.L, args.d, args.seed)
        for n0, points in zip(args.sites, members):
            out = args.out.with_name(f"{args.out.stem}_{n0}sites{args.out.suffix}")
            _write_points(out, points, f"condensation n0={n0}")
    return 0


def _reference_spec(kind: str, d: int, L: float, n: int | None, q: float) -> ReferenceSpec:
    if kind == "bud":
        return ReferenceSpec(d=d, L=L, q=q, n=None)
    return ReferenceSpec(d=d, L=L, q=q, n=n)


def _analysis_results(points, config: AnalysisConfig) -> list[sio.QResult]:
    grid = config.grid()
    curves = entropy_sweep(points, config.qs, grid, config.dithers, config.seed)

    ref_curves = {}
    if config.reference == "file":
        ref_points = sio.load_points(config.reference_path)
        ref_sweep = entropy_sweep(ref_points, config.qs, grid, config.dithers, config.seed)
        ref_curves = {c.q: c for c in ref_sweep}
    elif config.reference in ("brud", "bud"):
        n = points.n if config.reference == "brud" else None
        for q in config.qs:
            spec = ReferenceSpec(d=points.d, L=points.L, q=q, n=n)
            ref_curves[q] = reference_entropy_curve(grid, spec)

    results = []
    for curve in curves:
        res = sio.QResult(q=curve.q, entropy=curve)
        if len(grid) >= 3:
            res.dimension = dimension_curve(curve)
        ref = ref_curves.get(curve.q)
        if ref is not None:
            res.reference = ref
            res.information = information(CurvePair(reference=ref, obj=curve))
            if len(grid) >= 3:
                res.transport = dimension_transport(res.information)
        results.append(res)
    return results


def _emit(results, L: float, config: AnalysisConfig, out: Path | None,
          plot: bool, input_meta: dict | None, title: str) -> None:
    def write(fh):
        if config.out_format == "json":
            sio.write_curves_json(fh, results, L, config.dithers,
                                  config_dict=config.to_dict(), input_meta=input_meta)
        else:
            sio.write_curves_csv(fh, results, L, config.dithers, log_base=config.log_base)

    if out is None:
        if plot:
            raise ValueError("--plot needs --out to place the figure next to")
        write(sys.stdout)
        return
    with open(out, "w", encoding="ascii") as fh:
        write(fh)
    print(f"wrote curves to {out}")
    if plot:
        from .plotting import render_report

        png = out.with_suffix(".png")
        render_report(results, L, png, title=title)
        print(f"wrote figure to {png}")


def _cmd_analyze(args) -> int:
    config = AnalysisConfig(
        qs=args.q, e_min=args.e_min, e_max=args.e_max, per_decade=args.per_decade,
        dithers=args.dithers, seed=args.seed, reference=args.reference,
        reference_path=str(args.reference_file) if args.reference_file else None,
        out_format=args.out_format, log_base=args.log_base,
    ).validate()
    points = sio.load_points(args.points)
    results = _analysis_results(points, config)
    meta = {"path": str(args.points), "n": points.n, "d": points.d, "L": points.L}
    _emit(results, points.L, config, args.out, args.plot, meta, title=str(args.points))
    return 0


def _cmd_reference(args) -> int:
    config = AnalysisConfig(
        qs=args.q, e_min=args.e_min, e_max=args.e_max, per_decade=args.per_decade,
        out_format=args.out_format, log_base=args.log_base,
    ).validate()
    if args.n is not None and args.n < 1:
        raise ValueError("point count must be >= 1")
    grid = config.grid()
    results = []
    for q in config.qs:
        spec = ReferenceSpec(d=args.d, L=args.L, q=q, n=args.n)
        results.append(sio.QResult(
            q=q,
            reference=reference_entropy_curve(grid, spec),
            dimension=reference_dimension_curve(grid, spec),
        ))
    kind = "bud" if args.n is None else f"brud n={args.n}"
    _emit(results, args.L, config, args.out, args.plot, {"reference": kind},
          title=f"analytic reference ({kind})")
    return 0


def _cmd_recipe(args) -> int:
    with open(args.recipe, "r", encoding="utf-8") as fh:
        recipe = json.load(fh)
    name = recipe.get("name", args.recipe.stem)
    gen = recipe["generate"]
    analysis = AnalysisConfig.from_dict(recipe["analysis"])
    outdir = args.outdir
    outdir.mkdir(parents=True, exist_ok=True)

    members: list[tuple[str, object]] = []
    kind = gen["kind"]
    if kind == "uniform":
        members.append((name, uniform_points(gen["n"], gen["d"], gen["L"], gen["seed"])))
    elif kind == "hierarchy":
        spec = HierarchySpec(n0=gen["n0"], n1=gen["n1"], delta1=gen["delta1"],
                             L=gen["L"], d=gen["d"], seed=gen["seed"])
        members.append((name, hierarchy_points(spec)))
    elif kind == "condensation":
        sets = condensation_sequence(gen["n_total"], gen["sites"], gen["delta1"],
                                     gen["L"], gen["d"], gen["seed"])
        members = [(f"{name}_{n0}sites", ps) for n0, ps in zip(gen["sites"], sets)]
    else:
        raise ValueError(f"unknown generator kind {kind!r} in recipe")

    for label, points in members:
        pts_path = outdir / f"{label}_points.txt"
        _write_points(pts_path, points, label)
        results = _analysis_results(points, analysis)
        ext = "json" if analysis.out_format == "json" else "csv"
        out = outdir / f"{label}_curves.{ext}"
        meta = {"path": str(pts_path), "n": points.n, "d": points.d, "L": points.L}
        _emit(results, points.L, analysis, out, True, meta, title=label)
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "analyze": _cmd_analyze,
    "reference": _cmd_reference,
    "recipe": _cmd_recipe,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except PointFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
