"""Command-line front end.

Subcommands: analyze, member, region, bounds, volume.  Reports are JSON
envelopes with exact "p/q" rationals; region geometry can also be exported
as CSV (vertices) or SVG (2-D polygons).  Exit codes: 0 success,
2 validation, 3 guard tripped, 4 parse error.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from . import bounds as bounds_mod
from .codes import profile
from .errors import (
    GuardError,
    LengthMismatch,
    ParseError,
    SrrError,
    UnsupportedDimension,
    ValidationError,
)
from .matrixfile import parse_matrix_file
from .polytope import volume as polytope_volume
from .ratio import parse_rational
from .recovery import minimal_recovery_system
from .region import (
    closed_form_volumes,
    region_params,
    region_polytope,
    srr_membership,
    to_integer_allocation,
)
from .reports import make_envelope, render
from .svg import render_polygons

EXIT_VALIDATION = 2
EXIT_GUARD = 3
EXIT_PARSE = 4

BOUND_NAMES = ("dual", "sysnode", "hybrid", "uniform")


def _read_input(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _parse_lambda(text: str, k: int) -> tuple[Fraction, ...]:
    parts = [p for p in text.split(",") if p.strip()]
    values = tuple(parse_rational(p) for p in parts)
    if len(values) != k:
        raise LengthMismatch(f"expected {k} rates, got {len(values)}")
    if any(v < 0 for v in values):
        raise ValidationError("rates must be nonnegative")
    return values


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> None:
    raw = _read_input(args.file)
    start = time.monotonic()
    matrix = parse_matrix_file(raw.decode())
    system = minimal_recovery_system(matrix)
    prof = profile(matrix, system)
    rs = [2] if args.r2 else []
    params = region_params(system, rs=rs)
    payload = {
        "profile": {
            "n": prof.n, "k": prof.k, "q": prof.q,
            "min_distance": prof.d, "dual_distance": prof.d_dual,
            "is_mds": prof.is_mds, "is_systematic": prof.is_systematic,
            "is_replication": prof.is_replication,
            "systematic_nodes": list(prof.s),
            "availability": prof.availability_t,
            "max_hyperplane_points": prof.max_hyperplane_points,
        },
        "recovery": system.to_json(),
        "params": {
            "max_sum": params.max_sum,
            "axis_maxima": list(params.axis_maxima),
            "lambda_star": params.lambda_star,
            "hypercube": params.hypercube,
            "simplex": params.simplex_delta,
            "power_sums": {str(r): v for r, v in params.r_sums.items()},
        },
    }
    ms = int((time.monotonic() - start) * 1000)
    _emit(args, render(make_envelope("analyze", raw, payload, ms)))


def cmd_member(args) -> None:
    raw = _read_input(args.file)
    start = time.monotonic()
    matrix = parse_matrix_file(raw.decode())
    system = minimal_recovery_system(matrix)
    lam = _parse_lambda(args.rates, system.k)
    mu = parse_rational(args.mu)
    result = srr_membership(system, mu, lam)
    payload = {"lambda": list(lam), "mu": mu, "inside": result.inside}
    if result.inside:
        payload["allocation"] = result.allocation.to_json()
        if args.integerize:
            if mu != 1:
                raise ValidationError("--integerize requires --mu 1")
            s, integer = to_integer_allocation(result.allocation)
            payload["integerization"] = {
                "s": s,
                "counts": [{"object": i, "set": list(r), "count": c}
                           for (i, r), c in zip(integer.index.pairs, integer.counts)
                           if c],
                "server_contacts": list(integer.delta_loads()),
            }
    else:
        coeffs, rhs = result.separator
        payload["violated_halfspace"] = {"coeffs": list(coeffs), "rhs": rhs}
    ms = int((time.monotonic() - start) * 1000)
    _emit(args, render(make_envelope("member", raw, payload, ms)))


def cmd_region(args) -> None:
    raw = _read_input(args.file)
    start = time.monotonic()
    matrix = parse_matrix_file(raw.decode())
    system = minimal_recovery_system(matrix)
    mu = parse_rational(args.mu)
    if args.format == "svg" and system.k != 2:
        raise UnsupportedDimension("svg output draws 2-D regions only")
    geometry = region_polytope(system, mu)
    if args.format == "csv":
        _emit(args, geometry.vpoly.to_csv())
        return
    if args.format == "svg":
        _emit(args, render_polygons([("region", geometry.vpoly.vertices)]))
        return
    payload = {"h_rep": geometry.hpoly.to_json(), "v_rep": geometry.vpoly.to_json()}
    ms = int((time.monotonic() - start) * 1000)
    _emit(args, render(make_envelope("region", raw, payload, ms)))


def _bound_reports(matrix, system, names):
    reports = []
    for name in names:
        try:
            if name == "dual":
                reports.append(bounds_mod.build_dual_distance_bound(matrix))
            elif name == "sysnode":
                reports.append(bounds_mod.build_systematic_node_bound(matrix))
            elif name == "hybrid":
                reports.append(bounds_mod.build_hybrid_bound(matrix))
            elif name == "uniform":
                reports.append(bounds_mod.build_uniform_size_bound(matrix, system))
            else:
                raise ValidationError(
                    f"unknown bound {name!r}; valid names: {', '.join(BOUND_NAMES)}")
        except ValidationError as exc:
            if name in BOUND_NAMES:
                reports.append(("skipped", name, str(exc)))
            else:
                raise
    return reports


def cmd_bounds(args) -> None:
    raw = _read_input(args.file)
    start = time.monotonic()
    matrix = parse_matrix_file(raw.decode())
    system = minimal_recovery_system(matrix)
    names = BOUND_NAMES if args.set == "all" else tuple(args.set.split(","))
    geometry = region_polytope(system)
    entries = []
    layers = []
    for item in _bound_reports(matrix, system, names):
        if isinstance(item, tuple):
            _, name, reason = item
            entries.append({"name": name, "skipped": reason})
            continue
        report = item
        entry = report.to_json()
        entry["region_vertices_satisfy"] = all(
            report.evaluate(v).satisfied for v in geometry.vpoly.vertices)
        if report.pieces is not None and system.k <= 3:
            poly = bounds_mod.bound_polytope(report, system.k)
            from .polytope import enumerate_vertices
            verts = enumerate_vertices(poly)
            entry["polytope"] = {"h_rep": poly.to_json(), "v_rep": verts.to_json()}
            if system.k == 2:
                layers.append((report.name, verts.vertices))
        entries.append(entry)
    clip_cuts = []
    for spec_text in args.b or []:
        weights = tuple(parse_rational(p) for p in spec_text.split(","))
        if len(weights) != system.k:
            raise LengthMismatch(f"--b needs {system.k} weights")
        coeffs, cap = bounds_mod.clip_srr_bound(system, weights)
        clip_cuts.append((coeffs, cap))
        entries.append({"name": "clip", "kind": "half-space",
                        "metadata": {"b": list(coeffs), "cap": cap},
                        "region_vertices_satisfy": all(
                            sum(c * x for c, x in zip(coeffs, v)) <= cap
                            for v in geometry.vpoly.vertices)})
    if clip_cuts and system.k <= 3:
        poly = bounds_mod.halfspace_polytope(system.k, clip_cuts)
        from .polytope import enumerate_vertices
        verts = enumerate_vertices(poly)
        entries.append({"name": "clip-polytope",
                        "polytope": {"h_rep": poly.to_json(),
                                     "v_rep": verts.to_json()},
                        "area": bounds_mod.polytope_area(poly)})
        if system.k == 2:
            layers.append(("clip", verts.vertices))
    if args.svg:
        if system.k != 2:
            raise UnsupportedDimension("svg output draws 2-D bound polygons only")
        layers.append(("region", geometry.vpoly.vertices))
        ordered = sorted(layers, key=lambda lv: -max((p[0] + p[1] for p in lv[1]),
                                                     default=Fraction(0)))
        _emit(args, render_polygons(ordered))
        return
    payload = {"bounds": entries}
    ms = int((time.monotonic() - start) * 1000)
    _emit(args, render(make_envelope("bounds", raw, payload, ms)))


def cmd_volume(args) -> None:
    raw = _read_input(args.file)
    start = time.monotonic()
    matrix = parse_matrix_file(raw.decode())
    system = minimal_recovery_system(matrix)
    prof = profile(matrix, system)
    k, n = prof.k, prof.n

    def closed_form():
        if prof.is_replication:
            return "replication", closed_form_volumes("replication", s=prof.s)
        if prof.is_mds and prof.is_systematic and k in (2, 3) and n >= 2 * k:
            return f"mds{k}", closed_form_volumes(f"mds{k}", n)
        return None

    def triangulate():
        geometry = region_polytope(system)
        return polytope_volume(geometry.vpoly, geometry.hpoly).value

    payload = {}
    if args.method in ("auto", "closed-form"):
        cf = closed_form()
        if cf is not None:
            payload["method"] = cf[0]
            payload["volume"] = cf[1]
        elif args.method == "closed-form":
            raise ValidationError("no closed form applies to this matrix")
    if "volume" not in payload:
        payload["method"] = "triangulation"
        payload["volume"] = triangulate()
    if args.verify and payload["method"] != "triangulation":
        tri = triangulate()
        payload["triangulated"] = tri
        payload["verified_equal"] = tri == payload["volume"]
        if not payload["verified_equal"]:
            raise ValidationError("closed form and triangulation disagree")
    ms = int((time.monotonic() - start) * 1000)
    _emit(args, render(make_envelope("volume", raw, payload, ms)))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="srr",
        description="Exact service rate regions of coded storage systems")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="code profile, recovery sets, shape parameters")
    p.add_argument("file")
    p.add_argument("--r2", action="store_true",
                   help="also maximize the 2nd power sum (needs vertex enumeration)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("member", help="demand vector membership with certificate")
    p.add_argument("file")
    p.add_argument("--lambda", dest="rates", required=True,
                   help="comma-separated rates, e.g. 3/2,3/2,1/2")
    p.add_argument("--mu", default="1")
    p.add_argument("--integerize", action="store_true",
                   help="also emit the scaled integer allocation")
    p.add_argument("--out")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("region", help="region geometry (H-rep and V-rep)")
    p.add_argument("file")
    p.add_argument("--format", choices=("json", "csv", "svg"), default="json")
    p.add_argument("--mu", default="1")
    p.add_argument("--out")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("bounds", help="outer bounds, polygons, containment checks")
    p.add_argument("file")
    p.add_argument("--set", default="all",
                   help="comma-separated bound names or 'all' "
                        f"(valid: {', '.join(BOUND_NAMES)})")
    p.add_argument("--b", action="append",
                   help="extra clip half-space weights, e.g. --b 3,2 (repeatable)")
    p.add_argument("--svg", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("volume", help="exact region volume")
    p.add_argument("file")
    p.add_argument("--method", choices=("auto", "closed-form", "triangulate"),
                   default="auto")
    p.add_argument("--verify", action="store_true",
                   help="when a closed form ran, also triangulate and compare")
    p.add_argument("--out")
    p.set_defaults(func=cmd_volume)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except ParseError as exc:
        print(f"srr: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GuardError as exc:
        print(f"srr: guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ValidationError as exc:
        print(f"srr: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except SrrError as exc:
        print(f"srr: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"srr: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return 0


if __name__ == "__main__":
    sys.exit(main())
