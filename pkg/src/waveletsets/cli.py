"""Command-line front end: fractal functions, surfaces, filter banks, tilings.

Exit codes: 0 success, 1 numerical or verification failure, 2 usage error.
Relative output paths are resolved against $WAVELETSETS_OUTDIR when set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import fif, mra, render, surfaces, tiles
from .reflections import box_figure, centered_square_figure

ENV_OUTDIR = "WAVELETSETS_OUTDIR"


def _frac(text) -> Fraction:
    try:
        return Fraction(str(text))
    except ValueError:
        return Fraction(float(text))


def _outpath(path: str) -> str:
    base = os.environ.get(ENV_OUTDIR)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _write(path: str, text: str) -> None:
    path = _outpath(path)
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w") as fh:
        fh.write(text)
    print(f"wrote {path}")


# -- fif ---------------------------------------------------------------------


def cmd_fif_example(args) -> int:
    f = fif.fixture(args.name, args.mode)
    knots = f.knot_values()
    print("knots: " + ", ".join(render.fnum(v) for v in knots))
    xs, ys = f.mesh(args.depth)
    if args.csv:
        _write(args.csv, render.function_csv(xs, ys))
    if args.svg:
        curve = list(zip(map(float, xs), map(float, ys)))
        _write(args.svg, render.polylines_svg([curve]))
    return 0


def cmd_fif_basis(args) -> int:
    s = _frac(args.scaling)
    basis = fif.uniform_cardinal_basis(args.n, s, args.mode)
    print(f"{len(basis)} basis functions on [0, {args.n}], mode {args.mode}")
    meshes = [b.mesh(args.depth) for b in basis]
    if args.csv:
        header = ["x"] + [f"y{k}" for k in range(len(basis))]
        xs = meshes[0][0]
        rows = [[x] + [m[1][i] for m in meshes] for i, x in enumerate(xs)]
        _write(args.csv, render.csv_text(header, rows))
    if args.svg:
        curves = [list(zip(map(float, xs), map(float, ys))) for xs, ys in meshes]
        _write(args.svg, render.polylines_svg(curves))
    return 0


# -- surface -----------------------------------------------------------------


def cmd_surface_fixture(args) -> int:
    spec = surfaces.fixture(args.name)
    surf = surfaces.fixed_point(spec)
    for v, val in surf.vertex_values().items():
        print(f"outer vertex ({render.fnum(v[0])}, {render.fnum(v[1])}): {val}")
    inner = {p: v for p, v in surf.level1_values().items() if p not in spec.vertices}
    for p in sorted(inner):
        print(f"inner vertex ({render.fnum(p[0])}, {render.fnum(p[1])}): {inner[p]}")
    if args.name == "ex5.2":
        print("note: the fixed-point relations force f(1/2, 0) = 1/5; the value "
              "1/2 sometimes quoted for this vertex does not satisfy them")
    mesh = surf.mesh(args.depth)
    if args.csv:
        _write(args.csv, render.surface_csv(mesh))
    if args.svg:
        _write(args.svg, render.heightmap_svg(mesh))
    return 0


# -- mra ---------------------------------------------------------------------

FIGURES = {
    "square": lambda: box_figure("unit-square", [(0, 1), (0, 1)]),
    "interval": lambda: box_figure("unit-interval", [(0, 1)]),
}


def cmd_mra_build(args) -> int:
    if args.figure not in FIGURES:
        print(f"error: unknown figure {args.figure!r}", file=sys.stderr)
        return 2
    config = mra.MRAConfig(figure=FIGURES[args.figure](), kappa=args.kappa,
                           degree=args.degree, scaling=_frac(args.scaling))
    basis = mra.build(config)
    print(f"scaling functions: {config.generator_count}")
    print(f"wavelets: {config.wavelet_count}")
    if args.out:
        _write(args.out, basis.filter_bank().to_json())
    return 0


# -- tiles -------------------------------------------------------------------


def _run_planar(args, builder, copies_label: str) -> int:
    fx = builder(args.depth)
    measure = fx.wavelet_set.measure
    print(f"measure: {measure} pi^2 ({render.fnum(float(measure) * 9.869604401089358)})")
    print(f"omitted tail per copy: {fx.tail} pi^2 x {fx.copies} {copies_label}")
    identity = fx.measure_identity_holds
    print(f"exact measure identity m(W) + {fx.copies}*tail = 4 pi^2: "
          f"{'holds' if identity else 'FAILS'}")
    ok = identity
    if args.verify:
        rep = tiles.three_way_check(fx.wavelet_set, centered_square_figure(), (2, 2))
        bound = 8 * fx.tail
        print(f"certified bound: {bound} pi^2 ({render.fnum(bound)})")
        for label, res in (("translation", rep.translation_residual),
                           ("dilation", rep.dilation_residual),
                           ("weyl", rep.weyl_residual)):
            if res is None:
                print(f"{label} residual: unavailable ({rep.dilation_error})")
            else:
                print(f"{label} residual: {res} pi^2 ({render.fnum(res)})")
        ok = ok and rep.within(bound)
        print("verification: " + ("pass" if ok else "FAIL"))
    if args.svg:
        layers = [(fx.wavelet_set, "#1f77b4")]
        _write(args.svg, render.boxes_svg(layers))
    return 0 if ok else 1


def cmd_tiles_w1(args) -> int:
    return _run_planar(args, tiles.build_w1, "quadrant copies")


def cmd_tiles_w2(args) -> int:
    return _run_planar(args, tiles.build_w2, "mirror copies")


def cmd_tiles_construct(args) -> int:
    start = tiles.DyadicBoxSet.from_box((-1, 1))
    try:
        res = tiles.construct_wavelet_set(
            start, tiles.shannon_set(), [2], kappa=2,
            epsilon=_frac(args.epsilon), max_iterations=args.max_iterations)
    except tiles.ConstructionError as exc:
        print(f"construction failed: best residual {exc.best_residual}")
        return 1
    print(f"iterations: {res.iterations}")
    print(f"final dilation residual: {res.residual_history[-1]} "
          f"({render.fnum(res.residual_history[-1])})")
    t_ok = res.translation_certificate.verify().ok
    d_ok = res.dilation_certificate.verify().ok
    print(f"translation certificate re-verified: {'ok' if t_ok else 'FAIL'}")
    print(f"dilation certificate re-verified: {'ok' if d_ok else 'FAIL'}")
    if args.out:
        _write(args.out, res.wavelet_set.to_json())
    return 0 if t_ok and d_ok else 1


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    leaves = []
    parser = argparse.ArgumentParser(
        prog="waveletsets",
        description="Exact wavelet-set tilings, fractal interpolation, and "
                    "reflection-group multiresolution filters.")
    parser.add_argument("--config", help="JSON file overriding flag defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    p_fif = sub.add_parser("fif", help="fractal interpolation functions")
    fif_sub = p_fif.add_subparsers(dest="subcommand", required=True)
    p_ex = fif_sub.add_parser("example", help="evaluate a named example")
    p_ex.add_argument("--name", required=True)
    p_ex.add_argument("--mode", default="translation",
                      choices=["translation", "reflection"])
    p_ex.add_argument("--depth", type=int, default=10)
    p_ex.add_argument("--csv")
    p_ex.add_argument("--svg")
    leaves.append(p_ex)
    p_ex.set_defaults(func=cmd_fif_example)
    p_basis = fif_sub.add_parser("basis", help="cardinal basis family")
    p_basis.add_argument("--n", type=int, default=3)
    p_basis.add_argument("--mode", default="translation",
                         choices=["translation", "reflection"])
    p_basis.add_argument("--scaling", default="1/2")
    p_basis.add_argument("--depth", type=int, default=8)
    p_basis.add_argument("--csv")
    p_basis.add_argument("--svg")
    leaves.append(p_basis)
    p_basis.set_defaults(func=cmd_fif_basis)

    p_surface = sub.add_parser("surface", help="self-affine surfaces")
    surf_sub = p_surface.add_subparsers(dest="subcommand", required=True)
    p_fix = surf_sub.add_parser("fixture", help="evaluate a named surface")
    p_fix.add_argument("--name", required=True)
    p_fix.add_argument("--depth", type=int, default=6)
    p_fix.add_argument("--csv")
    p_fix.add_argument("--svg")
    leaves.append(p_fix)
    p_fix.set_defaults(func=cmd_surface_fixture)

    p_mra = sub.add_parser("mra", help="multiresolution filter banks")
    mra_sub = p_mra.add_subparsers(dest="subcommand", required=True)
    p_build = mra_sub.add_parser("build", help="build the filter bank")
    p_build.add_argument("--figure", default="square")
    p_build.add_argument("--kappa", type=int, default=2)
    p_build.add_argument("--degree", type=int, default=1)
    p_build.add_argument("--scaling", default="1/2")
    p_build.add_argument("--out")
    leaves.append(p_build)
    p_build.set_defaults(func=cmd_mra_build)

    p_tiles = sub.add_parser("tiles", help="wavelet-set tilings")
    tiles_sub = p_tiles.add_subparsers(dest="subcommand", required=True)
    for name, func in (("w1", cmd_tiles_w1), ("w2", cmd_tiles_w2)):
        p = tiles_sub.add_parser(name, help=f"planar fixture {name}")
        p.add_argument("--depth", type=int, default=8)
        p.add_argument("--verify", nargs="?", const="all", default=None,
                       choices=["all"])
        p.add_argument("--svg")
        leaves.append(p)
        p.set_defaults(func=func)
    p_con = tiles_sub.add_parser("construct", help="run the 1-D constructor")
    p_con.add_argument("--epsilon", default="1/1000000")
    p_con.add_argument("--max-iterations", type=int, default=50)
    p_con.add_argument("--out")
    leaves.append(p_con)
    p_con.set_defaults(func=cmd_tiles_construct)
    parser.leaf_parsers = leaves
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    if "--config" in argv:
        idx = argv.index("--config")
        try:
            with open(argv[idx + 1]) as fh:
                overrides = json.load(fh)
            for leaf in parser.leaf_parsers:
                leaf.set_defaults(**overrides)
        except (IndexError, OSError, json.JSONDecodeError) as exc:
            print(f"error: bad config file: {exc}", file=sys.stderr)
            return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (KeyError, ValueError, tiles.ConstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
