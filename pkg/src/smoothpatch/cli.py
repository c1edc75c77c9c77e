"""Command-line interface.

Subcommands::

    smoothpatch check-g1 surface.json [--report out.json]
    smoothpatch check-g2 surface.json [--report out.json]
    smoothpatch complete-4patch surface.json -o out.json [--alpha23 X ...]
    smoothpatch fill-hole surface.json -o out.json [--deg6] [--alpha A45 A25 A65 A85]
    smoothpatch fillet a.json b.json -n N -o out.json
    smoothpatch export surface.json --obj out.obj --samples nu,nv

Exit codes: 0 = pass/success, 2 = continuity failure, 1 = usage or input
error.  Check commands print a residual table and optionally write a JSON
report; reports are byte-stable for identical inputs and flags.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .bezier import BezierPatch, eval_grid, flip_u, flip_v, transpose_patch, bounding_diagonal
from .continuity import (
    G0_TOL,
    CornerConfig,
    EdgeCorrespondence,
    GeometryError,
    check_g1_edge,
    check_g2_edge,
    check_vertex_g1,
    check_vertex_g2,
)
from .construct import NinePatchRing, build_fillet, complete_fourth_patch, fill_hole, fill_hole_deg6, solve_hole_params
from .surfio import SurfaceDocument, SurfaceFormatError, dumps_json, export_obj, load_surface, save_surface

__all__ = ["main"]


# --- corner detection -------------------------------------------------------

_REORIENT_OPS = tuple(
    (swap, fu, fv) for swap in (False, True) for fu in (False, True) for fv in (False, True)
)


def _reorient(patch: BezierPatch, op) -> BezierPatch:
    swap, fu, fv = op
    p = transpose_patch(patch) if swap else patch
    if fu:
        p = flip_u(p)
    if fv:
        p = flip_v(p)
    return p


def _edge_samples(patch: BezierPatch, side: str, n: int = 9) -> np.ndarray:
    t = np.linspace(0.0, 1.0, n)
    if side == "u0":
        return eval_grid(patch, [0.0], t)[0]
    if side == "u1":
        return eval_grid(patch, [1.0], t)[0]
    if side == "v0":
        return eval_grid(patch, t, [0.0])[:, 0]
    return eval_grid(patch, t, [1.0])[:, 0]


def _find_orientation(patch, requirements, tol):
    """First reorientation op satisfying all (side, target_curve) requirements."""
    for op in _REORIENT_OPS:
        cand = _reorient(patch, op)
        if all(
            float(np.max(np.linalg.norm(_edge_samples(cand, side) - target, axis=1))) < tol
            for side, target in requirements
        ):
            return cand
    return None


def _corner_clusters(doc: SurfaceDocument, tol: float):
    """Groups of (patch name, corner point) meeting at a common location."""
    items = []
    for name, p in doc.patches.items():
        for iu in (0, 1):
            for jv in (0, 1):
                items.append((name, p.corner(iu, jv)))
    clusters: list[list] = []
    for name, pt in items:
        for cluster in clusters:
            if np.linalg.norm(cluster[0][1] - pt) < tol:
                cluster.append((name, pt))
                break
        else:
            clusters.append([(name, pt)])
    return clusters


def find_corner_configs(doc: SurfaceDocument):
    """Detect 4-patch vertices and return (names-in-role-order, CornerConfig).

    A vertex qualifies when four distinct patches share a corner point and
    the document's edge list connects them in a cycle; the patches are then
    reoriented into the canonical corner arrangement.
    """
    if not doc.patches:
        return []
    scale = bounding_diagonal(*doc.patches.values())
    tol = max(G0_TOL, 1e-12) * scale * 10.0
    neighbours: dict[str, set] = {name: set() for name in doc.patches}
    for corr in doc.edges:
        neighbours[corr.a].add(corr.b)
        neighbours[corr.b].add(corr.a)
    out = []
    for cluster in _corner_clusters(doc, tol):
        names = sorted({name for name, _ in cluster})
        if len(names) != 4 or len(cluster) != 4:
            continue
        vertex = cluster[0][1]
        group = set(names)
        local = {n: (neighbours[n] & group) - {n} for n in names}
        if any(len(local[n]) != 2 for n in names):
            continue
        r1_name = names[0]
        n1, n2 = sorted(local[r1_name])
        for r2_name, r4_name in ((n1, n2), (n2, n1)):
            r3_name = next(iter(group - {r1_name, r2_name, r4_name}))
            config = _orient_corner(doc, vertex, r1_name, r2_name, r3_name, r4_name, tol)
            if config is not None:
                out.append(((r1_name, r2_name, r3_name, r4_name), config))
                break
    return out


def _orient_corner(doc, vertex, n1, n2, n3, n4, tol):
    p1 = None
    for op in _REORIENT_OPS:
        cand = _reorient(doc.patches[n1], op)
        if np.linalg.norm(cand.corner(1, 1) - vertex) < tol:
            curve12 = _edge_samples(cand, "u1")
            curve14 = _edge_samples(cand, "v1")
            p2 = _find_orientation(doc.patches[n2], [("u0", curve12)], tol)
            p4 = _find_orientation(doc.patches[n4], [("v0", curve14)], tol)
            if p2 is None or p4 is None:
                continue
            p3 = _find_orientation(
                doc.patches[n3],
                [("v0", _edge_samples(p2, "v1")), ("u0", _edge_samples(p4, "u1"))],
                tol,
            )
            if p3 is None:
                continue
            p1 = cand
            break
    if p1 is None:
        return None
    try:
        return CornerConfig.from_patches(p1, p2, p3, p4)
    except GeometryError:
        return None


# --- check commands ---------------------------------------------------------

def _fmt(x: float) -> str:
    return format(float(x), ".3e")


def _run_checks(doc: SurfaceDocument, order: int):
    edge_rows = []
    all_ok = True
    for corr in doc.edges:
        a, b = doc.patch(corr.a), doc.patch(corr.b)
        if order == 1:
            rep = check_g1_edge(a, b, corr)
            oracle_name = "normal_angle"
        else:
            rep = check_g2_edge(a, b, corr)
            oracle_name = "curvature_gap"
        edge_rows.append({
            "a": corr.a, "a_side": corr.a_side, "b": corr.b, "b_side": corr.b_side,
            "reversed": bool(corr.reversed),
            "link_residual": float(rep.link_residual),
            oracle_name: float(rep.oracle_residual),
            "link_ok": bool(rep.link_ok), "oracle_ok": bool(rep.oracle_ok),
            "ok": bool(rep.ok),
        })
        all_ok &= rep.ok
    vertex_rows = []
    for names, config in find_corner_configs(doc):
        if order == 2:
            config = config.solve_g2()
            rep = check_vertex_g2(config)
        else:
            rep = check_vertex_g1(config)
        row = {
            "patches": list(names),
            "g1_residuals": [float(r) for r in rep.g1_residuals],
            "lambda_product_residual": float(rep.lambda_product_residual),
            "ok": bool(rep.ok),
        }
        if rep.g2_residuals is not None:
            row["g2_residuals"] = [float(r) for r in rep.g2_residuals]
        vertex_rows.append(row)
        all_ok &= rep.ok
    vertex_rows.sort(key=lambda r: r["patches"])
    return edge_rows, vertex_rows, all_ok


def _print_table(edge_rows, vertex_rows, overall_ok, order, out=None):
    out = out if out is not None else sys.stdout
    label = "G1" if order == 1 else "G2"
    for row in edge_rows:
        oracle_key = "normal_angle" if order == 1 else "curvature_gap"
        out.write(
            f"edge {row['a']}:{row['a_side']} ~ {row['b']}:{row['b_side']}  "
            f"link {_fmt(row['link_residual'])}  {oracle_key} {_fmt(row[oracle_key])}  "
            f"{'PASS' if row['ok'] else 'FAIL'}\n"
        )
    for row in vertex_rows:
        residuals = row["g1_residuals"] + [row["lambda_product_residual"]]
        residuals += row.get("g2_residuals", [])
        out.write(
            f"vertex ({', '.join(row['patches'])})  max residual "
            f"{_fmt(max(residuals))}  {'PASS' if row['ok'] else 'FAIL'}\n"
        )
    out.write(f"{label} overall: {'PASS' if overall_ok else 'FAIL'}\n")


def _cmd_check(args, order: int) -> int:
    from .continuity import G1_TOL, G2_TOL, NORMAL_ANGLE_TOL

    doc = load_surface(args.surface)
    edge_rows, vertex_rows, ok = _run_checks(doc, order)
    _print_table(edge_rows, vertex_rows, ok, order)
    if args.report:
        tolerances = {"g0": G0_TOL, "g1": G1_TOL, "normal_angle": NORMAL_ANGLE_TOL}
        if order == 2:
            tolerances["g2"] = G2_TOL
        report = {
            "command": "check-g1" if order == 1 else "check-g2",
            "surface": str(args.surface),
            "tolerances": tolerances,
            "edges": edge_rows,
            "vertices": vertex_rows,
            "overall": "pass" if ok else "fail",
        }
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(dumps_json(report))
            fh.write("\n")
    return 0 if ok else 2


# --- construction commands --------------------------------------------------

def _cmd_complete(args) -> int:
    doc = load_surface(args.surface)
    for name in ("r1", "r2", "r4"):
        doc.patch(name)
    kwargs = {}
    for flag in ("alpha23", "alpha43", "lambda23_1", "lambda43_1"):
        value = getattr(args, flag)
        if value is not None:
            kwargs[flag] = value
    kwargs.update(
        kappa23_1=args.kappa23_1, kappa43_1=args.kappa43_1,
        beta2_23=args.beta2_23, beta2_43=args.beta2_43, degree=args.degree,
    )
    r3 = complete_fourth_patch(doc.patch("r1"), doc.patch("r2"), doc.patch("r4"), **kwargs)
    patches = dict(doc.patches)
    patches["r3"] = r3
    edges = list(doc.edges) + [
        EdgeCorrespondence("v1", "v0", a="r2", b="r3"),
        EdgeCorrespondence("u1", "u0", a="r4", b="r3"),
    ]
    save_surface(SurfaceDocument(patches=patches, edges=edges), args.output)
    print(f"wrote {args.output} (r3 bi-degree ({r3.degree_u}, {r3.degree_v}))")
    return 0


_RING_NAMES = {pos: f"r{pos}" for pos in (1, 2, 3, 4, 6, 7, 8, 9)}


def _cmd_fill_hole(args) -> int:
    doc = load_surface(args.surface)
    patches = {pos: doc.patch(name) for pos, name in _RING_NAMES.items()}
    ring = NinePatchRing.from_patches(patches)
    if args.deg6:
        if args.alpha is not None:
            raise SurfaceFormatError("--alpha has no effect with --deg6 (all ordinates pinned)")
        r5 = fill_hole_deg6(ring)
    else:
        params = solve_hole_params(ring, args.alpha)
        r5 = fill_hole(ring, params)
    out_patches = dict(doc.patches)
    out_patches["r5"] = r5
    edges = list(doc.edges) + [
        EdgeCorrespondence("v1", "v0", a="r4", b="r5"),
        EdgeCorrespondence("u1", "u0", a="r2", b="r5"),
        EdgeCorrespondence("v1", "v0", a="r5", b="r6"),
        EdgeCorrespondence("u1", "u0", a="r5", b="r8"),
    ]
    save_surface(SurfaceDocument(patches=out_patches, edges=edges), args.output)
    print(f"wrote {args.output} (r5 bi-degree ({r5.degree_u}, {r5.degree_v}))")
    return 0


def _cmd_fillet(args) -> int:
    doc_a = load_surface(args.strip_a)
    doc_b = load_surface(args.strip_b)
    strip_a = list(doc_a.patches.values())
    strip_b = list(doc_b.patches.values())
    n = args.rows
    if n < 1 or len(strip_a) < n or len(strip_b) < n:
        raise SurfaceFormatError(
            f"both strips need at least {n} patches (got {len(strip_a)}, {len(strip_b)})"
        )
    middle = build_fillet(strip_a, strip_b, n,
                          bridge_lambdas=(args.lambda_left, args.lambda_right))
    strip_a, strip_b = strip_a[:n], strip_b[:n]
    patches = {}
    edges = []
    for r in range(n):
        patches[f"r{1 + 3 * r}"] = strip_a[r]
        patches[f"r{2 + 3 * r}"] = middle[r]
        patches[f"r{3 + 3 * r}"] = strip_b[r]
    for r in range(n):
        edges.append(EdgeCorrespondence("u1", "u0", a=f"r{1 + 3 * r}", b=f"r{2 + 3 * r}"))
        edges.append(EdgeCorrespondence("u1", "u0", a=f"r{2 + 3 * r}", b=f"r{3 + 3 * r}"))
    for r in range(n - 1):
        for c in range(3):
            edges.append(EdgeCorrespondence(
                "v1", "v0", a=f"r{1 + c + 3 * r}", b=f"r{1 + c + 3 * (r + 1)}"
            ))
    save_surface(SurfaceDocument(patches=patches, edges=edges), args.output)
    print(f"wrote {args.output} ({len(middle)} fillet patches)")
    return 0


def _cmd_export(args) -> int:
    doc = load_surface(args.surface)
    try:
        nu, nv = (int(x) for x in args.samples.split(","))
    except ValueError:
        raise SurfaceFormatError("--samples expects 'nu,nv' with two integers") from None
    export_obj(doc, nu, nv, args.obj)
    print(f"wrote {args.obj}")
    return 0


# --- entry point -------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smoothpatch",
        description="Verify and construct G1/G2-smooth multi-patch Bezier surfaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, order in (("check-g1", 1), ("check-g2", 2)):
        p = sub.add_parser(name, help=f"check G{order} continuity of a surface document")
        p.add_argument("surface")
        p.add_argument("--report", help="write a JSON report to this path")
        p.set_defaults(func=lambda a, order=order: _cmd_check(a, order))

    p = sub.add_parser("complete-4patch", help="construct the diagonal patch of a G1 corner")
    p.add_argument("surface", help="document containing patches r1, r2, r4")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--alpha23", type=float, default=None)
    p.add_argument("--alpha43", type=float, default=None)
    p.add_argument("--lambda23-1", dest="lambda23_1", type=float, default=None)
    p.add_argument("--lambda43-1", dest="lambda43_1", type=float, default=None)
    p.add_argument("--kappa23-1", dest="kappa23_1", type=float, default=0.0)
    p.add_argument("--kappa43-1", dest="kappa43_1", type=float, default=0.0)
    p.add_argument("--beta2-23", dest="beta2_23", type=float, default=0.0)
    p.add_argument("--beta2-43", dest="beta2_43", type=float, default=0.0)
    p.add_argument("--degree", type=int, choices=(4, 5), default=5)
    p.set_defaults(func=_cmd_complete)

    p = sub.add_parser("fill-hole", help="fill the centre of a nine-patch ring")
    p.add_argument("surface", help="document containing patches r1..r9 except r5")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--deg6", action="store_true", help="bi-degree (6,6) fill (cubic lambdas)")
    p.add_argument("--alpha", type=float, nargs=4, metavar=("A45", "A25", "A65", "A85"),
                   default=None, help="free alpha ordinates for the (5,5) fill")
    p.set_defaults(func=_cmd_fill_hole)

    p = sub.add_parser("fillet", help="bridge two strips with a smooth fillet")
    p.add_argument("strip_a")
    p.add_argument("strip_b")
    p.add_argument("-n", "--rows", type=int, required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--lambda-left", dest="lambda_left", type=float, default=1.0)
    p.add_argument("--lambda-right", dest="lambda_right", type=float, default=1.0)
    p.set_defaults(func=_cmd_fillet)

    p = sub.add_parser("export", help="tessellate all patches to a Wavefront OBJ")
    p.add_argument("surface")
    p.add_argument("--obj", required=True)
    p.add_argument("--samples", default="16,16", help="grid resolution 'nu,nv'")
    p.set_defaults(func=_cmd_export)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except SurfaceFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except GeometryError as exc:
        print(f"continuity failure: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
