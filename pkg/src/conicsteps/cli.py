"""Command-line interface.

Subcommands::

    residual   signed curve residual at a point
    tangent    analytic tangent/normal at a point or parameter
    walk       the two-equal-steps construction (optionally exact-return)
    converge   halving sweep -> CSV convergence report
    reflect    reflect an incoming direction at a curve point
    trace      trace a scene file's rays; optional SVG
    figure     render a named construction figure as SVG

Conics are selected with ``--ellipse a,b``, ``--parabola p`` or
``--hyperbola a,b [--branch 1|-1]``, optionally posed with
``--translate x,y --rotate r``.  Human-facing numbers use 15 significant
digits; CSV and scene files keep full precision.  Every failure exits
nonzero with a one-line ``error: <category>: <reason>`` on stderr.
"""
from __future__ import annotations

import argparse
import math
import sys

from .config import DEFAULT, Tolerances
from .conics import Conic, Ellipse, Hyperbola, Parabola, Placement
from .construction import exact_return, two_step
from .convergence import METRICS, SweepConfig, run_sweep
from .errors import (
    BracketError,
    ConicError,
    DegenerateDirectionError,
    DegenerateTriangleError,
    IterationError,
    NoBranchError,
    OffCurveError,
    SceneFormatError,
    UnsupportedVariantError,
)
from .geometry import Direction, Point
from .optics import reflect_at, spot_report, trace
from .sceneio import load_scene
from .svgout import FIGURE_IDS, figure_svg, trace_svg

__all__ = ["main"]

_CATEGORIES = (
    (SceneFormatError, "scene-format"),
    (OffCurveError, "off-curve"),
    (NoBranchError, "no-branch"),
    (DegenerateTriangleError, "degenerate-triangle"),
    (DegenerateDirectionError, "degenerate-direction"),
    (UnsupportedVariantError, "unsupported-variant"),
    (BracketError, "bracket"),
    (IterationError, "iteration"),
    (ConicError, "conic"),
    (ValueError, "value"),
    (OSError, "io"),
)


def _g(v: float) -> str:
    return "%.15g" % v


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.exit(2, f"error: usage: {message}\n")


def _pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'x,y', got {text!r}")
    try:
        x, y = float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected numbers in {text!r}") from exc
    if not (math.isfinite(x) and math.isfinite(y)):
        raise argparse.ArgumentTypeError(f"values must be finite in {text!r}")
    return (x, y)


def _add_conic_args(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--ellipse", type=_pair, metavar="A,B")
    group.add_argument("--parabola", type=float, metavar="P")
    group.add_argument("--hyperbola", type=_pair, metavar="A,B")
    p.add_argument("--branch", type=int, choices=(1, -1), default=1)
    p.add_argument("--translate", type=_pair, metavar="X,Y", default=(0.0, 0.0))
    p.add_argument("--rotate", type=float, metavar="RAD", default=0.0)


def _conic_from(args: argparse.Namespace, parser: argparse.ArgumentParser) -> Conic:
    placement = Placement(tx=args.translate[0], ty=args.translate[1], rotate=args.rotate)
    if args.ellipse is not None:
        return Conic(Ellipse(*args.ellipse), placement)
    if args.parabola is not None:
        return Conic(Parabola(args.parabola), placement)
    if args.hyperbola is not None:
        return Conic(Hyperbola(args.hyperbola[0], args.hyperbola[1], args.branch), placement)
    parser.error("a conic is required: --ellipse A,B | --parabola P | --hyperbola A,B")
    raise AssertionError("unreachable")


def _point_from(args: argparse.Namespace, conic: Conic,
                parser: argparse.ArgumentParser) -> Point:
    if getattr(args, "point", None) is not None and getattr(args, "param", None) is not None:
        parser.error("give either --point or --param, not both")
    if getattr(args, "point", None) is not None:
        return Point(*args.point)
    if getattr(args, "param", None) is not None:
        return conic.point_at(args.param)
    parser.error("a location is required: --point X,Y or --param T")
    raise AssertionError("unreachable")


def _tolerances(args: argparse.Namespace) -> Tolerances:
    if args.tol is not None:
        return DEFAULT.with_on_curve(args.tol)
    return DEFAULT


def _write_or_print(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> _Parser:
    parser = _Parser(prog="conicsteps", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="override the on-curve tolerance")
    common.add_argument("--seed", type=int, default=None,
                        help="seed for randomized self-checks (accepted for "
                             "reproducible pipelines; commands here are deterministic)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("residual", parents=[common],
                       help="signed curve residual at a point")
    _add_conic_args(p)
    p.add_argument("--point", type=_pair, required=True, metavar="X,Y")

    p = sub.add_parser("tangent", parents=[common],
                       help="analytic tangent and normal at a curve point")
    _add_conic_args(p)
    p.add_argument("--point", type=_pair, metavar="X,Y")
    p.add_argument("--param", type=float, metavar="T")

    p = sub.add_parser("walk", parents=[common],
                       help="two-equal-steps construction from an anchor")
    _add_conic_args(p)
    p.add_argument("--anchor-param", type=float, required=True, metavar="T")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--orientation", choices=("forward", "backward"), default="forward")
    p.add_argument("--exact-return", action="store_true")

    p = sub.add_parser("converge", parents=[common],
                       help="halving sweep and CSV convergence report")
    _add_conic_args(p)
    p.add_argument("--anchor-param", type=float, required=True, metavar="T")
    p.add_argument("--delta0", type=float, required=True)
    p.add_argument("--halvings", type=int, required=True)
    p.add_argument("--metrics", type=str, default=None,
                   help=f"comma-separated subset of: {','.join(METRICS)}")
    p.add_argument("--orientation", choices=("forward", "backward"), default="forward")
    p.add_argument("--csv", type=str, default=None, metavar="PATH")

    p = sub.add_parser("reflect", parents=[common],
                       help="reflect a direction at a curve point")
    _add_conic_args(p)
    p.add_argument("--point", type=_pair, metavar="X,Y")
    p.add_argument("--param", type=float, metavar="T")
    p.add_argument("--incoming", type=_pair, required=True, metavar="DX,DY")

    p = sub.add_parser("trace", parents=[common],
                       help="trace all rays of a scene file")
    p.add_argument("scene", type=str, help="scene JSON path")
    p.add_argument("--max-bounces", type=int, default=None)
    p.add_argument("--svg", type=str, default=None, metavar="PATH")

    p = sub.add_parser("figure", parents=[common],
                       help="render a construction figure as SVG")
    p.add_argument("figure_id", type=str, metavar="FIGURE",
                   help=f"one of: {', '.join(FIGURE_IDS)}")
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--anchor-param", type=float, default=None)
    p.add_argument("--width", type=int, default=640)
    p.add_argument("--height", type=int, default=480)
    p.add_argument("--svg", type=str, default=None, metavar="PATH")
    return parser


def _cmd_residual(args, parser) -> int:
    conic = _conic_from(args, parser)
    print(_g(conic.residual(Point(*args.point))))
    return 0


def _cmd_tangent(args, parser) -> int:
    conic = _conic_from(args, parser)
    q = _point_from(args, conic, parser)
    tangent, normal = conic.tangent_normal(q, args.tol)
    print(f"tangent {_g(tangent.x)} {_g(tangent.y)}")
    print(f"normal {_g(normal.x)} {_g(normal.y)}")
    return 0


def _cmd_walk(args, parser) -> int:
    if not (math.isfinite(args.delta) and args.delta > 0.0):
        parser.error(f"--delta must be positive, got {args.delta}")
    conic = _conic_from(args, parser)
    anchor = conic.point_at(args.anchor_param)
    tols = _tolerances(args)
    if args.exact_return:
        result = exact_return(conic, anchor, args.delta, args.orientation, tols)
        tri = result.triangle
    else:
        result = None
        tri = two_step(conic, anchor, args.delta, args.orientation, tols)
    print(f"A {_g(tri.A.x)} {_g(tri.A.y)}")
    print(f"D {_g(tri.D.x)} {_g(tri.D.y)}")
    print(f"B {_g(tri.B.x)} {_g(tri.B.y)}")
    print(f"residual_B {_g(tri.residual_b)}")
    if result is not None:
        print(f"t_star {_g(result.t_star)}")
        print(f"gap {_g(result.gap)}")
    if tri.degenerate:
        print("degenerate retraced walk: B == A")
    return 0


def _cmd_converge(args, parser) -> int:
    if args.halvings < 2:
        parser.error(f"need >= 2 halving levels, got {args.halvings}")
    if not (math.isfinite(args.delta0) and args.delta0 > 0.0):
        parser.error(f"--delta0 must be positive, got {args.delta0}")
    conic = _conic_from(args, parser)
    metrics = tuple(args.metrics.split(",")) if args.metrics else None
    cfg = SweepConfig(
        conic=conic,
        anchor=conic.point_at(args.anchor_param),
        delta0=args.delta0,
        halvings=args.halvings,
        metrics=metrics,
        orientation=args.orientation,
    )
    report = run_sweep(cfg, _tolerances(args))
    if report.failure is not None:
        print(
            f"note: sweep truncated at level {report.failed_level}: {report.failure}",
            file=sys.stderr,
        )
    _write_or_print(report.to_csv(), args.csv)
    return 0


def _cmd_reflect(args, parser) -> int:
    conic = _conic_from(args, parser)
    q = _point_from(args, conic, parser)
    out = reflect_at(conic, q, Direction(*args.incoming), args.tol)
    print(f"outgoing {_g(out.x)} {_g(out.y)}")
    return 0


def _cmd_trace(args, parser) -> int:
    scene = load_scene(args.scene)
    for i, ray in enumerate(scene.rays):
        path = trace(scene, ray, max_bounces=args.max_bounces)
        print(f"ray {i} bounces {len(path.hits)}")
        for hit in path.hits:
            print(f"  hit {hit.mirror_index} {_g(hit.point.x)} {_g(hit.point.y)}")
        print(
            f"  final {_g(path.final.origin.x)} {_g(path.final.origin.y)} "
            f"dir {_g(path.final.dir.x)} {_g(path.final.dir.y)}"
        )
    if scene.telescope_pair() is not None and scene.rays:
        rep = spot_report(scene, scene.rays)
        print(f"spot target {_g(rep.target.x)} {_g(rep.target.y)}")
        print(
            f"spot rays {rep.n_rays} focused {rep.n_focused} "
            f"blocked {rep.n_blocked} missed {rep.n_missed}"
        )
        print(f"spot max {_g(rep.max_distance)}")
        print(f"spot rms {_g(rep.rms_distance)}")
    if args.svg:
        _write_or_print(trace_svg(scene, max_bounces=args.max_bounces), args.svg)
    return 0


def _cmd_figure(args, parser) -> int:
    svg = figure_svg(
        args.figure_id,
        delta=args.delta,
        anchor_param=args.anchor_param,
        width=args.width,
        height=args.height,
    )
    _write_or_print(svg, args.svg)
    return 0


_DISPATCH = {
    "residual": _cmd_residual,
    "tangent": _cmd_tangent,
    "walk": _cmd_walk,
    "converge": _cmd_converge,
    "reflect": _cmd_reflect,
    "trace": _cmd_trace,
    "figure": _cmd_figure,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args, parser)
    except tuple(cls for cls, _ in _CATEGORIES) as exc:
        for cls, category in _CATEGORIES:
            if isinstance(exc, cls):
                print(f"error: {category}: {exc}", file=sys.stderr)
                return 2
        raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
