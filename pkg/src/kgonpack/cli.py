"""Command-line front end and SVG figure output."""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import bounds
from .constructions import construct, verify_optimal
from .errors import KgonError
from .geom_core import ConvexPolygon, as_points, polygon_from_lines
from .optimizer import SolveConfig, format_result, solve
from .packing import (
    classify,
    read_packing,
    read_polygon,
    write_packing,
    write_polygon,
)
from .trisectrix import format_samples, trisectrix_samples

POLYGON_STYLE = "fill:#dde8f5;stroke:#1f3b73"
DISK_STYLE = "fill:#f5d7a1;stroke:#7a4b00"
CURVE_STYLE = "fill:none;stroke:#b0002a"


@dataclass
class Scene:
    polygons: list = field(default_factory=list)  # (vertices, style)
    disks: list = field(default_factory=list)  # (centre, style)
    curves: list = field(default_factory=list)  # (points, style)

    def add_polygon(self, polygon, style: str = POLYGON_STYLE) -> "Scene":
        verts = polygon.vertices if isinstance(polygon, ConvexPolygon) else polygon
        self.polygons.append((as_points(verts), style))
        return self

    def add_disks(self, centers, style: str = DISK_STYLE) -> "Scene":
        for c in as_points(centers):
            self.disks.append((c, style))
        return self

    def add_curve(self, points, style: str = CURVE_STYLE) -> "Scene":
        self.curves.append((as_points(points), style))
        return self

    def bbox(self) -> tuple[float, float, float, float]:
        chunks = [p for p, _ in self.polygons] + [p for p, _ in self.curves]
        chunks += [np.array([c - 1.0, c + 1.0]) for c, _ in self.disks]
        if not chunks:
            raise ValueError("empty scene")
        pts = np.vstack(chunks)
        if not np.all(np.isfinite(pts)):
            raise ValueError("scene has non-finite coordinates")
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])


def _xy(p) -> str:
    # y is flipped so that counterclockwise stays counterclockwise on screen
    return f"{p[0] + 0.0:.6f},{0.0 - p[1]:.6f}"


def svg_text(scene: Scene) -> str:
    x0, y0, x1, y1 = scene.bbox()
    size = max(x1 - x0, y1 - y0, 1e-9)
    pad = 0.05 * size
    vb = (x0 - pad, -y1 - pad, (x1 - x0) + 2 * pad, (y1 - y0) + 2 * pad)
    sw = 0.004 * size
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{vb[0]:.6f} {vb[1]:.6f} {vb[2]:.6f} {vb[3]:.6f}">',
    ]
    for verts, style in scene.polygons:
        d = "M " + " L ".join(_xy(p) for p in verts) + " Z"
        out.append(f'<path d="{d}" style="{style};stroke-width:{sw:.6f}"/>')
    for c, style in scene.disks:
        out.append(
            f'<circle cx="{c[0] + 0.0:.6f}" cy="{0.0 - c[1]:.6f}" r="{1.0:.6f}" '
            f'style="{style};stroke-width:{sw:.6f}"/>'
        )
    for pts, style in scene.curves:
        out.append(
            f'<polyline points="{" ".join(_xy(p) for p in pts)}" '
            f'style="{style};stroke-width:{sw:.6f}"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(scene: Scene, path) -> None:
    Path(path).write_text(svg_text(scene))


# --------------------------------------------------------------------------
# Subcommands
# --------------------------------------------------------------------------

def _flag(b: bool) -> str:
    return "true" if b else "false"


def _cmd_bound(args) -> int:
    r = bounds.bound_report(args.n, args.k)
    print(f"n = {r.n}")
    print(f"k = {r.k}")
    print(f"ceil_term = {r.ceil_term}")
    print(f"wegner_bound = {r.wegner_bound:.12f}")
    print(f"kgon_bound = {r.kgon_bound:.12f}")
    print(f"tightness = {r.tightness}")
    return 0


def _print_report(rep) -> None:
    print(f"each_side_tangent = {_flag(rep.each_side_tangent)}")
    print(f"wegner_packed = {_flag(rep.wegner_packed)}")
    print(f"caps_unit_disk = {_flag(rep.caps_unit_disk)}")
    print(f"equiangular = {_flag(rep.equiangular)}")
    print(f"bound = {rep.bound:.12f}")
    print(f"area = {rep.area:.12f} optimal = {_flag(rep.optimal)}")


def _cmd_construct(args) -> int:
    out = construct(args.n, args.k)
    # re-certify from scratch; the printed flag comes only from this report
    rep = verify_optimal(out.polygon, out.packing, args.n, args.k)
    _print_report(rep)
    if args.output:
        render_svg(Scene().add_polygon(out.polygon).add_disks(out.packing.centers), args.output)
    if args.polygon_out:
        write_polygon(args.polygon_out, out.polygon, f"construct {args.n} {args.k}")
    if args.packing_out:
        write_packing(args.packing_out, out.packing, f"construct {args.n} {args.k}")
    return 0


def _cmd_classify(args) -> int:
    cls = classify(read_packing(args.file))
    print(f"{cls.tag} (perimeter {cls.hull_perimeter:.6f}, required {cls.required_perimeter:.0f})")
    return 0


def _cmd_optimize(args) -> int:
    res = solve(args.n, args.k, SolveConfig(restarts=args.restarts, seed=args.seed))
    text = format_result(res)
    sys.stdout.write(text)
    if args.output:
        if str(args.output).endswith(".svg"):
            poly = polygon_from_lines(res.best.halfplanes())
            render_svg(Scene().add_polygon(poly).add_disks(res.best.centers), args.output)
        else:
            Path(args.output).write_text(text)
    return 0


def _cmd_trisectrix(args) -> int:
    samples = trisectrix_samples(args.a, args.samples)
    text = format_samples(samples)
    if not args.output:
        sys.stdout.write(text)
    elif str(args.output).endswith(".svg"):
        render_svg(Scene().add_curve(np.array([s.Xp for s in samples])), args.output)
    else:
        Path(args.output).write_text(text)
    return 0


def _cmd_verify(args) -> int:
    rep = verify_optimal(read_polygon(args.polyfile), read_packing(args.packfile), args.n, args.k)
    _print_report(rep)
    return 0


def _positive_int(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def _positive_float(s: str) -> float:
    v = float(s)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {s}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="kgonpack",
        description="Smallest convex k-gons around n unit disks: bounds, constructions, search.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("bound", help="area bounds and tightness for (n, k)")
    s.add_argument("n", type=_positive_int)
    s.add_argument("k", type=int)
    s.set_defaults(func=_cmd_bound)

    s = sub.add_parser("construct", help="build and certify the optimal k-gon")
    s.add_argument("n", type=_positive_int)
    s.add_argument("k", type=int)
    s.add_argument("-o", "--output", help="SVG file to write")
    s.add_argument("--polygon-out", help="write the polygon vertices here")
    s.add_argument("--packing-out", help="write the disk centres here")
    s.set_defaults(func=_cmd_construct)

    s = sub.add_parser("classify", help="Groemer/Wegner status of a packing file")
    s.add_argument("file")
    s.set_defaults(func=_cmd_classify)

    s = sub.add_parser("optimize", help="numerical search for small n, k")
    s.add_argument("n", type=_positive_int)
    s.add_argument("k", type=int)
    s.add_argument("--restarts", type=_positive_int, default=SolveConfig.restarts)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output", help="result file (.svg renders a figure)")
    s.set_defaults(func=_cmd_optimize)

    s = sub.add_parser("trisectrix", help="sample the reflected-tangent trisectrix")
    s.add_argument("a", type=_positive_float)
    s.add_argument("--samples", type=_positive_int, default=200)
    s.add_argument("-o", "--output", help="sample dump file (.svg renders the curve)")
    s.set_defaults(func=_cmd_trisectrix)

    s = sub.add_parser("verify", help="check a polygon file against the equality conditions")
    s.add_argument("polyfile")
    s.add_argument("packfile")
    s.add_argument("n", type=_positive_int)
    s.add_argument("k", type=int)
    s.set_defaults(func=_cmd_verify)
    return p


def run(argv=None) -> int:
    """Execute one subcommand; 0 on success, 1 on a domain error, 2 on bad usage."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (KgonError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
