"""Exact rational H- and V-representations of polytopes.

Vertex enumeration walks basic solutions (row subsets of size dim), volume
uses the triangulation method (fan over facet triangles from a fixed base
point), and convex hulls in dimension <= 3 come from exhaustive facet
candidate checks.  Everything is Fraction-exact and order-canonicalized.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from . import guards
from .errors import EmptyPolytope, TooManyBases, ValidationError
from .lp import LPOutcome, feasible_point, lp_solve, solve_standard
from .ratio import format_rational, parse_rational

Row = tuple[Fraction, ...]


def _frac_vec(values: Iterable) -> Row:
    return tuple(Fraction(v) for v in values)


def canonical_row(coeffs: Sequence[Fraction], rhs: Fraction) -> tuple[Row, Fraction]:
    """Scale a row so coefficients are coprime integers with positive leader."""
    nums = [Fraction(c) for c in coeffs] + [Fraction(rhs)]
    from math import gcd, lcm
    denom = lcm(*(f.denominator for f in nums)) if nums else 1
    ints = [int(f * denom) for f in nums]
    g = 0
    for v in ints[:-1]:
        g = gcd(g, abs(v))
    if g == 0:
        g = gcd(g, abs(ints[-1])) or 1
    scaled = [Fraction(v, g) for v in ints]
    return tuple(scaled[:-1]), scaled[-1]


@dataclass(frozen=True)
class HPolytope:
    """The set {x in R^dim : A x <= b}; nonnegativity rows are explicit."""

    dim: int
    A: tuple[Row, ...]
    b: tuple[Fraction, ...]

    def __post_init__(self):
        for row in self.A:
            if len(row) != self.dim:
                raise ValidationError("constraint row length differs from dim")
        if len(self.A) != len(self.b):
            raise ValidationError("A and b row counts differ")

    @classmethod
    def from_rows(cls, dim: int, rows: Sequence[Sequence], rhs: Sequence) -> "HPolytope":
        return cls(dim=dim,
                   A=tuple(_frac_vec(r) for r in rows),
                   b=tuple(Fraction(v) for v in rhs))

    def contains(self, point: Sequence) -> bool:
        p = _frac_vec(point)
        return all(sum(a * x for a, x in zip(row, p)) <= bb
                   for row, bb in zip(self.A, self.b))

    def canonicalized(self) -> "HPolytope":
        rows = sorted(set(canonical_row(r, bb) for r, bb in zip(self.A, self.b)))
        return HPolytope(dim=self.dim,
                         A=tuple(r for r, _ in rows),
                         b=tuple(bb for _, bb in rows))

    def is_bounded(self) -> bool:
        for j in range(self.dim):
            obj = [Fraction(0)] * self.dim
            obj[j] = Fraction(1)
            for sense in ("max", "min"):
                if lp_solve(self, obj, sense).status == "unbounded":
                    return False
        return True

    def to_json(self) -> dict:
        return {"dim": self.dim,
                "rows": [{"a": [format_rational(v) for v in row],
                          "b": format_rational(bb)}
                         for row, bb in zip(self.A, self.b)]}

    @classmethod
    def from_json(cls, data: dict) -> "HPolytope":
        rows = [[parse_rational(v) for v in item["a"]] for item in data["rows"]]
        rhs = [parse_rational(item["b"]) for item in data["rows"]]
        return cls.from_rows(data["dim"], rows, rhs)


@dataclass(frozen=True)
class VPolytope:
    """Vertex list, sorted lexicographically; coordinates exact rationals."""

    dim: int
    vertices: tuple[Row, ...]

    @classmethod
    def from_points(cls, dim: int, points: Iterable[Sequence]) -> "VPolytope":
        pts = sorted(set(_frac_vec(p) for p in points))
        return cls(dim=dim, vertices=tuple(pts))

    def to_json(self) -> dict:
        return {"dim": self.dim,
                "vertices": [[format_rational(v) for v in p] for p in self.vertices]}

    @classmethod
    def from_json(cls, data: dict) -> "VPolytope":
        return cls.from_points(data["dim"],
                               [[parse_rational(v) for v in p] for p in data["vertices"]])

    def to_csv(self) -> str:
        lines = [",".join(f"x{i+1}" for i in range(self.dim))]
        for p in self.vertices:
            lines.append(",".join(format_rational(v) for v in p))
        return "\n".join(lines) + "\n"


def solve_square(rows: Sequence[Row], rhs: Sequence[Fraction]) -> Row | None:
    """Solve a square rational system exactly; None when singular."""
    n = len(rows)
    a = [list(r) + [v] for r, v in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / Fraction(a[col][col])
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return tuple(a[r][n] for r in range(n))


def enumerate_vertices(poly: HPolytope) -> VPolytope:
    """All vertices of a bounded nonempty H-polytope, exactly.

    Basic solutions are enumerated over row subsets of size dim, checked for
    feasibility, and deduplicated.  Guarded by TooManyBases.
    """
    feas = feasible_point([list(r) + [-v for v in r] for r in poly.A], list(poly.b))
    if feas.status == "infeasible":
        raise EmptyPolytope("polytope has no points")
    n_rows = len(poly.A)
    if n_rows < poly.dim:
        raise ValidationError("fewer constraints than dimensions: unbounded")
    guards.check_bases(comb(n_rows, poly.dim), guards.BASIS_COMBINATIONS,
                       "enumerate_vertices")
    found = set()
    for combo in itertools.combinations(range(n_rows), poly.dim):
        point = solve_square([poly.A[i] for i in combo],
                             [poly.b[i] for i in combo])
        if point is not None and poly.contains(point):
            found.add(point)
    return VPolytope.from_points(poly.dim, found)


def extreme_points(dim: int, points: Sequence[Sequence]) -> list[Row]:
    """Filter a point list down to the extreme points of its convex hull."""
    pts = [_frac_vec(p) for p in points]
    uniq = sorted(set(pts))
    out = []
    for p in uniq:
        others = [q for q in uniq if q != p]
        if not others:
            out.append(p)
            continue
        # p extreme iff no convex combination of the others equals p.
        A_eq = [[Fraction(q[i]) for q in others] for i in range(dim)]
        A_eq.append([Fraction(1)] * len(others))
        b_eq = list(p) + [Fraction(1)]
        res = feasible_point([], [], A_eq, b_eq)
        if res.status == "infeasible":
            out.append(p)
    return out


def hull_facets(dim: int, points: Sequence[Row]) -> HPolytope:
    """Facet H-representation of conv(points) for a full-dimensional hull, dim <= 3.

    Candidate hyperplanes run over all dim-subsets of points; a candidate is
    a facet when every point lies weakly on one side.
    """
    if dim > 3:
        raise ValidationError("hull facets supported for dim <= 3 only")
    pts = sorted(set(_frac_vec(p) for p in points))
    rows = {}
    for combo in itertools.combinations(pts, dim):
        normal = _hyperplane_normal(dim, combo)
        if normal is None:
            continue
        offset = sum(a * x for a, x in zip(normal, combo[0]))
        lo = hi = False
        for p in pts:
            val = sum(a * x for a, x in zip(normal, p))
            if val < offset:
                lo = True
            elif val > offset:
                hi = True
            if lo and hi:
                break
        if lo and hi:
            continue
        if hi:
            normal = tuple(-v for v in normal)
            offset = -offset
        rows[canonical_row(normal, offset)] = None
    if not rows:
        raise ValidationError("point set is not full-dimensional")
    keys = sorted(rows)
    return HPolytope(dim=dim, A=tuple(r for r, _ in keys), b=tuple(bb for _, bb in keys))


def _hyperplane_normal(dim: int, combo: Sequence[Row]) -> Row | None:
    if dim == 1:
        return (Fraction(1),)
    if dim == 2:
        (x1, y1), (x2, y2) = combo
        n = (y2 - y1, x1 - x2)
        return None if n == (0, 0) else (Fraction(n[0]), Fraction(n[1]))
    p0, p1, p2 = combo
    u = tuple(a - b for a, b in zip(p1, p0))
    v = tuple(a - b for a, b in zip(p2, p0))
    n = (u[1] * v[2] - u[2] * v[1],
         u[2] * v[0] - u[0] * v[2],
         u[0] * v[1] - u[1] * v[0])
    return None if n == (0, 0, 0) else tuple(Fraction(x) for x in n)


@dataclass(frozen=True)
class PolytopeVolume:
    value: Fraction
    degenerate: bool = False


def _affine_dim(points: Sequence[Row]) -> int:
    if not points:
        return -1
    base = points[0]
    vecs = [tuple(a - b for a, b in zip(p, base)) for p in points[1:]]
    rank = 0
    cols = len(base)
    mat = [list(v) for v in vecs]
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / Fraction(mat[r][c])
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [v - f * w for v, w in zip(mat[i], mat[r])]
        r += 1
    rank = r
    return rank


def _ccw_order(points: Sequence[Row]) -> list[Row]:
    """Order 2-D extreme points counterclockwise (exact angular sort)."""
    n = len(points)
    cx = sum(p[0] for p in points) / n
    cy = sum(p[1] for p in points) / n

    def quadrant(p):
        dx, dy = p[0] - cx, p[1] - cy
        if dx > 0 and dy >= 0:
            return 0
        if dx <= 0 and dy > 0:
            return 1
        if dx < 0 and dy <= 0:
            return 2
        return 3

    import functools

    def cmp(p, q):
        qp, qq_ = quadrant(p), quadrant(q)
        if qp != qq_:
            return -1 if qp < qq_ else 1
        cross = (p[0] - cx) * (q[1] - cy) - (q[0] - cx) * (p[1] - cy)
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        return 0

    return sorted(points, key=functools.cmp_to_key(cmp))


def _dedup_facets(poly: HPolytope) -> HPolytope:
    return poly.canonicalized()


def volume(vpoly: VPolytope, hpoly: HPolytope | None = None) -> PolytopeVolume:
    """Exact volume of conv(vertices) for dim <= 3 via facet triangulation.

    A polytope that is not full-dimensional gets volume 0 with the
    degenerate flag set.  The facet structure comes from `hpoly` when given
    (rows tight at dim-many vertices), otherwise it is derived from the
    vertex set.
    """
    dim = vpoly.dim
    pts = extreme_points(dim, vpoly.vertices)
    if _affine_dim(pts) < dim:
        return PolytopeVolume(value=Fraction(0), degenerate=True)
    if dim == 1:
        xs = [p[0] for p in pts]
        return PolytopeVolume(value=max(xs) - min(xs))
    if dim == 2:
        ring = _ccw_order(pts)
        twice = Fraction(0)
        for (x1, y1), (x2, y2) in zip(ring, ring[1:] + ring[:1]):
            twice += x1 * y2 - x2 * y1
        return PolytopeVolume(value=abs(twice) / 2)
    if dim != 3:
        raise ValidationError("volume supported for dim <= 3 only")
    facets = _dedup_facets(hpoly) if hpoly is not None else hull_facets(3, pts)
    base = pts[0]
    total = Fraction(0)
    for row, rhs in zip(facets.A, facets.b):
        tight = [p for p in pts
                 if sum(a * x for a, x in zip(row, p)) == rhs]
        if len(tight) < 3:
            continue
        ring = _facet_ring(row, tight)
        if ring is None:
            continue
        apex = ring[0]
        for p, q in zip(ring[1:], ring[2:]):
            total += _signed_tet_volume(base, apex, p, q, row)
    return PolytopeVolume(value=abs(total))


def _facet_ring(normal: Row, tight: Sequence[Row]) -> list[Row] | None:
    """Order the vertices of one facet consistently around its boundary."""
    drop = max(range(3), key=lambda i: abs(normal[i]))
    keep = [i for i in range(3) if i != drop]
    flat = [(p[keep[0]], p[keep[1]]) for p in tight]
    if _affine_dim([(*f,) for f in flat]) < 2:
        return None
    order = _ccw_order([tuple(f) for f in flat])
    index = {f: i for i, f in enumerate(order)}
    return sorted(tight, key=lambda p: index[(p[keep[0]], p[keep[1]])])


def _signed_tet_volume(o: Row, a: Row, b: Row, c: Row, outward: Row) -> Fraction:
    u = tuple(x - y for x, y in zip(a, o))
    v = tuple(x - y for x, y in zip(b, o))
    w = tuple(x - y for x, y in zip(c, o))
    det = (u[0] * (v[1] * w[2] - v[2] * w[1])
           - u[1] * (v[0] * w[2] - v[2] * w[0])
           + u[2] * (v[0] * w[1] - v[1] * w[0]))
    # Orient the facet triangle so its normal agrees with the outward row.
    n = _hyperplane_normal(3, (a, b, c))
    if n is None:
        return Fraction(0)
    dot = sum(x * y for x, y in zip(n, outward))
    if dot < 0:
        det = -det
    return det / 6


def prune_redundant(poly: HPolytope) -> HPolytope:
    """Drop rows implied by the others (one exact LP per row)."""
    rows = list(zip(poly.A, poly.b))
    kept = rows[:]
    i = 0
    while i < len(kept):
        row, rhs = kept[i]
        others = kept[:i] + kept[i + 1:]
        if not others:
            break
        # Max row.x subject to the others, with this row relaxed by 1 to keep
        # the test problem bounded in the polytope's recession directions.
        test = HPolytope(dim=poly.dim,
                         A=tuple(r for r, _ in others) + (row,),
                         b=tuple(v for _, v in others) + (rhs + 1,))
        out = lp_solve(test, list(row), "max")
        if out.status == "optimal" and out.value <= rhs:
            kept.pop(i)
        else:
            i += 1
    kept_rows = sorted(canonical_row(r, v) for r, v in kept)
    return HPolytope(dim=poly.dim,
                     A=tuple(r for r, _ in kept_rows),
                     b=tuple(v for _, v in kept_rows))
