"""Polytope projection.

Two exact routes to the image of a polytope under a linear map:

* `fm_project` - Fourier-Motzkin elimination with redundancy removal after
  every step.  Faithful and fully general, but the intermediate systems can
  grow, so it is the right tool for small coordinate counts.

* `project_by_cuts` - outer refinement driven by a membership oracle that
  returns separating half-spaces (Farkas certificates).  The projection is
  finished when every vertex of the outer approximation is certified to be
  in the image.  This scales to allocation polytopes with dozens of
  coordinates because all work happens in the target dimension.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from . import guards
from .errors import Explosion
from .polytope import (
    HPolytope,
    VPolytope,
    canonical_row,
    enumerate_vertices,
    lp_solve,
    prune_redundant,
)

Cut = tuple[tuple[Fraction, ...], Fraction]


def _dedup_rows(rows: list[tuple[tuple[Fraction, ...], Fraction]]):
    seen = {}
    for coeffs, rhs in rows:
        key, val = canonical_row(coeffs, rhs)
        if all(c == 0 for c in key):
            if val >= 0:
                continue  # trivially true
            raise Explosion("fm_project: inconsistent constant row (empty input?)")
        if key in seen:
            seen[key] = min(seen[key], val)
        else:
            seen[key] = val
    return [(k, v) for k, v in sorted(seen.items())]


def _eliminate(rows, col):
    pos, neg, zero = [], [], []
    for coeffs, rhs in rows:
        c = coeffs[col]
        if c > 0:
            pos.append((coeffs, rhs))
        elif c < 0:
            neg.append((coeffs, rhs))
        else:
            zero.append((coeffs, rhs))
    out = list(zero)
    for pc, pb in pos:
        a = pc[col]
        for nc, nb in neg:
            b = -nc[col]
            combo = tuple(b * x + a * y for x, y in zip(pc, nc))
            out.append((combo, b * pb + a * nb))
    return out


def _drop_column(rows, col):
    return [(coeffs[:col] + coeffs[col + 1:], rhs) for coeffs, rhs in rows]


def _lp_prune(rows, dim):
    if len(rows) <= 1:
        return rows
    poly = HPolytope(dim=dim, A=tuple(r for r, _ in rows), b=tuple(v for _, v in rows))
    pruned = prune_redundant(poly)
    return list(zip(pruned.A, pruned.b))


def fm_project(poly: HPolytope, keep: Sequence[int] | None = None,
               lin_map: Sequence[Sequence] | None = None,
               cap: int = guards.FM_CONSTRAINTS) -> HPolytope:
    """Project a bounded H-polytope onto kept coordinates or through a map.

    With `lin_map` (a k x dim rational matrix L), image coordinates
    y = L x are appended first and the original x block is eliminated.
    After every elimination step duplicate and dominated rows are dropped
    and the remainder is pruned with one LP per row, so the final system
    describes the image exactly with no redundant constraints.
    """
    if (keep is None) == (lin_map is None):
        raise ValueError("pass exactly one of keep= or lin_map=")
    dim = poly.dim
    rows = [(tuple(Fraction(v) for v in row), Fraction(rhs))
            for row, rhs in zip(poly.A, poly.b)]
    if lin_map is not None:
        k = len(lin_map)
        ext = [(coeffs + (Fraction(0),) * k, rhs) for coeffs, rhs in rows]
        for i, lrow in enumerate(lin_map):
            lrow = tuple(Fraction(v) for v in lrow)
            unit = tuple(Fraction(1) if j == i else Fraction(0) for j in range(k))
            ext.append((lrow + tuple(-u for u in unit), Fraction(0)))
            ext.append((tuple(-v for v in lrow) + unit, Fraction(0)))
        rows = ext
        eliminate = list(range(dim))
        total = dim + k
    else:
        keep = sorted(keep)
        eliminate = [j for j in range(dim) if j not in keep]
        total = dim

    live = list(range(total))
    while eliminate:
        # Greedy order: eliminate the column with the fewest pos*neg products.
        def cost(col):
            idx = live.index(col)
            p = sum(1 for c, _ in rows if c[idx] > 0)
            n = sum(1 for c, _ in rows if c[idx] < 0)
            return p * n - p - n

        col = min(eliminate, key=cost)
        idx = live.index(col)
        rows = _eliminate(rows, idx)
        rows = _drop_column(rows, idx)
        live.pop(idx)
        eliminate.remove(col)
        rows = _dedup_rows(rows)
        guards.check_explosion(len(rows), cap, "fm_project")
        rows = _lp_prune(rows, len(live))
    rows = _dedup_rows(rows)
    rows = _lp_prune(rows, len(live))
    rows.sort()
    return HPolytope(dim=len(live),
                     A=tuple(r for r, _ in rows),
                     b=tuple(v for _, v in rows))


def project_by_cuts(dim: int,
                    upper_bounds: Sequence[Fraction],
                    oracle: Callable[[tuple[Fraction, ...]], Cut | None],
                    ) -> tuple[HPolytope, VPolytope]:
    """Reconstruct a down-monotone projection from a separation oracle.

    `upper_bounds[i]` must be a valid bound on coordinate i (the axis
    maximum).  `oracle(point)` returns None when the point belongs to the
    image and otherwise a cut (c, d) with c.point > d valid on the image.
    On return every vertex of the H-polytope has been certified inside, so
    the pair of representations is exact.
    """
    rows: list[Cut] = []
    for i in range(dim):
        unit = [Fraction(0)] * dim
        unit[i] = Fraction(-1)
        rows.append((tuple(unit), Fraction(0)))
        rows.append((tuple(-v for v in unit), Fraction(upper_bounds[i])))
    verified: set[tuple[Fraction, ...]] = set()
    rounds = 0
    while True:
        poly = HPolytope(dim=dim, A=tuple(r for r, _ in rows), b=tuple(v for _, v in rows))
        vpoly = enumerate_vertices(poly)
        new_cuts = []
        for vertex in vpoly.vertices:
            if vertex in verified:
                continue
            cut = oracle(vertex)
            if cut is None:
                verified.add(vertex)
            else:
                coeffs, rhs = canonical_row(*cut)
                new_cuts.append((coeffs, rhs))
        if not new_cuts:
            pruned = prune_redundant(poly)
            return pruned, vpoly
        for cut in new_cuts:
            if cut not in rows:
                rows.append(cut)
        rounds += 1
        guards.check_explosion(rounds, guards.CUT_ROUNDS, "project_by_cuts")
