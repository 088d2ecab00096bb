"""Outer bounds on the service rate region.

Every bound is an evaluable constraint: given a demand vector it reports
the left-hand side, the right-hand side, and whether the point survives.
The piecewise-linear convex bounds (dual-distance, systematic-node, hybrid,
and the MDS closed form) additionally expose explicit H-polytopes obtained
by enumerating the 2^k linearization cells of their min/max terms, which is
what the figure-style comparisons and polygon exports consume.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .codes import dual_min_distance, pg_hyperplane_stats, systematic_profile
from .errors import NegativeObjective, NotSystematic, ValidationError
from .fields import FFMatrix
from .knapsack import dantzig_max
from .polytope import HPolytope, enumerate_vertices, prune_redundant, volume
from .ratio import format_rational
from .recovery import RecoverySystem, minimal_recovery_system
from .region import FractionalAllocation

F = Fraction


@dataclass(frozen=True)
class BoundEvaluation:
    lhs: Fraction
    rhs: Fraction
    satisfied: bool


@dataclass(frozen=True)
class BoundReport:
    """A named outer bound with its evaluator and certificate metadata."""

    name: str
    kind: str  # "half-space" | "piecewise-convex" | "scalar-cap"
    evaluate: Callable[[Sequence], BoundEvaluation]
    metadata: dict = field(default_factory=dict)
    pieces: tuple[tuple[tuple[Fraction, Fraction], ...], ...] | None = None
    budget: Fraction | None = None

    def to_json(self) -> dict:
        meta = {}
        for key, val in self.metadata.items():
            if isinstance(val, Fraction):
                meta[key] = format_rational(val)
            elif isinstance(val, (tuple, list)):
                meta[key] = [format_rational(v) if isinstance(v, Fraction) else v
                             for v in val]
            else:
                meta[key] = val
        return {"name": self.name, "kind": self.kind, "metadata": meta}


def _eval_pieces(pieces, budget, lam) -> BoundEvaluation:
    lamq = [F(v) for v in lam]
    if len(lamq) != len(pieces):
        raise ValidationError(f"demand vector needs {len(pieces)} entries")
    lhs = F(0)
    for coord_pieces, v in zip(pieces, lamq):
        lhs += max(slope * v + intercept for slope, intercept in coord_pieces)
    return BoundEvaluation(lhs=lhs, rhs=budget, satisfied=lhs <= budget)


def _piecewise_report(name, pieces, budget, metadata) -> BoundReport:
    pieces = tuple(tuple((F(s), F(i)) for s, i in coord) for coord in pieces)
    budget = F(budget)
    return BoundReport(
        name=name, kind="piecewise-convex",
        evaluate=lambda lam: _eval_pieces(pieces, budget, lam),
        metadata=metadata, pieces=pieces, budget=budget)


# --- the individual bounds ---


def total_capacity_check(alloc: FractionalAllocation, n: int, mu) -> BoundEvaluation:
    """Total stored-and-served mass: sum |R| * lambda_{i,R} <= mu * n."""
    mu = F(mu)
    lhs = F(0)
    for (_, rset), v in zip(alloc.index.pairs, alloc.values):
        lhs += len(rset) * v
    rhs = mu * n
    return BoundEvaluation(lhs=lhs, rhs=rhs, satisfied=lhs <= rhs)


def build_dual_distance_bound(g: FFMatrix, d_dual: int | None = None) -> BoundReport:
    """For systematic G: sum(min(l_i,1) + (d_dual-1) max(0, l_i-1)) <= n.

    Every recovery set other than the systematic singleton has at least
    d_dual - 1 servers, which prices the rate above 1 at that multiplier.
    """
    is_sys, _, _ = systematic_profile(g)
    if not is_sys:
        raise NotSystematic("the dual-distance bound needs a systematic matrix")
    dd = dual_min_distance(g) if d_dual is None else d_dual
    pieces = [[(1, 0), (dd - 1, 2 - dd)]] * g.rows
    return _piecewise_report("dual-distance", pieces, g.cols,
                             {"d_dual": dd, "n": g.cols})


def dual_distance_bound(g: FFMatrix, lam: Sequence) -> BoundEvaluation:
    return build_dual_distance_bound(g).evaluate(lam)


def build_systematic_node_bound(g: FFMatrix) -> BoundReport:
    """For systematic G: sum(min(l_i,s_i) + 2 max(0, l_i-s_i)) <= n."""
    is_sys, s, _ = systematic_profile(g)
    if not is_sys:
        raise NotSystematic("the systematic-node bound needs a systematic matrix")
    pieces = [[(1, 0), (2, -si)] for si in s]
    return _piecewise_report("systematic-node", pieces, g.cols,
                             {"s": list(s), "n": g.cols})


def systematic_node_bound(g: FFMatrix, lam: Sequence) -> BoundEvaluation:
    return build_systematic_node_bound(g).evaluate(lam)


def build_hybrid_bound(g: FFMatrix, d_dual: int | None = None) -> BoundReport:
    """Mixes the node counts with the dual distance; handles s_i = 0 objects.

    Objects with systematic copies pay max(2, d_dual - 1) above s_i; objects
    without any systematic copy pay 2 per unit of rate.
    """
    _, s, _ = systematic_profile(g)
    dd = dual_min_distance(g) if d_dual is None else d_dual
    m = max(2, dd - 1)
    pieces = []
    for si in s:
        if si:
            pieces.append([(1, 0), (m, -(m - 1) * si)])
        else:
            pieces.append([(2, 0)])
    return _piecewise_report("hybrid", pieces, g.cols,
                             {"d_dual": dd, "s": list(s), "n": g.cols})


def hybrid_bound(g: FFMatrix, lam: Sequence) -> BoundEvaluation:
    return build_hybrid_bound(g).evaluate(lam)


def build_mds_closed_form(k: int, n: int) -> BoundReport:
    """The exact region of a systematic MDS matrix when n >= 2k, as a bound."""
    pieces = [[(1, 0), (k, 1 - k)]] * k
    return _piecewise_report("mds-closed-form", pieces, n, {"k": k, "n": n})


def uniform_size_bound(g: FFMatrix, lam: Sequence,
                       recovery: RecoverySystem | None = None) -> BoundEvaluation:
    """Refines the hybrid bound where an object's non-singleton minimal sets
    all share one cardinality mu_i; see build_uniform_size_bound."""
    report = build_uniform_size_bound(g, recovery)
    return report.evaluate(lam)


def build_uniform_size_bound(g: FFMatrix,
                             recovery: RecoverySystem | None = None,
                             d_dual: int | None = None) -> BoundReport:
    """Five-term bound from per-object recovery-set sizes.

    mu_i is the mean size of object i's non-singleton minimal sets; J holds
    the objects where that size is constant.  Objects whose minimal system
    is exactly their systematic singletons are flagged (their mu_i is a
    0/0) and contribute min(s_i, l_i), the exact contact mass of an object
    that can only be served one copy per systematic node.  For i in J with
    s_i > 0 the term is mu_i*l_i - (mu_i-1)*min(s_i, l_i): the singleton
    mass is at most min(s_i, l_i) and every other set costs mu_i servers.
    """
    system = recovery if recovery is not None else minimal_recovery_system(g)
    _, s, _ = systematic_profile(g)
    dd = dual_min_distance(g) if d_dual is None else d_dual
    m = max(2, dd - 1)
    k, n = g.rows, g.cols
    mu: list[Fraction | None] = []
    in_j: list[bool] = []
    singleton_only: list[bool] = []
    for i in range(1, k + 1):
        coll = system.sets[i - 1]
        big = [len(r) for r in coll if len(r) != 1]
        denominator = len(coll) - s[i - 1]
        if denominator == 0:
            mu.append(None)  # 0/0: object served by its singletons alone
            in_j.append(True)
            singleton_only.append(True)
            continue
        mu.append(F(sum(big), denominator))
        in_j.append(len(set(big)) <= 1)
        singleton_only.append(False)

    def evaluate(lam: Sequence) -> BoundEvaluation:
        lamq = [F(v) for v in lam]
        if len(lamq) != k:
            raise ValidationError(f"demand vector needs {k} entries")
        lhs = F(0)
        for i in range(k):
            li = lamq[i]
            si = s[i]
            if si and singleton_only[i]:
                lhs += min(F(si), li)
                continue
            if si and not in_j[i]:
                lhs += min(si, li) + m * max(F(0), li - si)
            elif si and in_j[i]:
                lhs += mu[i] * li - (mu[i] - 1) * min(F(si), li)
            elif not si and in_j[i]:
                lhs += mu[i] * li
            else:
                lhs += 2 * li
        return BoundEvaluation(lhs=lhs, rhs=F(n), satisfied=lhs <= n)

    return BoundReport(
        name="uniform-size", kind="piecewise-convex", evaluate=evaluate,
        metadata={"mu": [v if v is not None else "undefined" for v in mu],
                  "J": [i + 1 for i in range(k) if in_j[i]],
                  "singleton_only": [i + 1 for i in range(k) if singleton_only[i]],
                  "d_dual": dd, "s": list(s), "n": n})


def hyperplane_bound(g: FFMatrix, objects: Sequence[int],
                     ) -> tuple[Fraction, tuple[int, ...] | None]:
    """Best cap on sum of lambda_i over i in objects from projective geometry.

    Minimizes, over hyperplanes avoiding the selected basis vectors, the
    number of matrix columns off the hyperplane.  Returns (cap, witness
    normal); the empty selection gives the vacuous cap n.
    """
    k, n = g.rows, g.cols
    objects = sorted(set(objects))
    for i in objects:
        if not 1 <= i <= k:
            raise ValidationError(f"object index {i} outside 1..{k}")
    if not objects:
        return F(n), None
    stats, _ = pg_hyperplane_stats(g)
    best: tuple[Fraction, tuple[int, ...] | None] = (F(n), None)
    for normal, on_count in stats:
        if any(normal[i - 1] == 0 for i in objects):
            continue  # hyperplane contains e_i, not allowed
        off = F(n - on_count)
        if off < best[0]:
            best = (off, normal)
    return best


def recovery_set_size_vector(system: RecoverySystem) -> tuple[int, ...]:
    return system.set_sizes()


def clipped_sum_bound(system: RecoverySystem, c: Sequence,
                      ) -> tuple[Fraction, dict]:
    """Greedy cap on c.x over the allocation polytope via its knapsack relaxation.

    Allocation coordinates sit in [0,1] (each is bounded by one server's
    unit capacity) and weigh |R| against the total capacity n, so the
    greedy closed form applies.  Returns the cap and the greedy data.
    """
    cq = [F(v) for v in c]
    if any(v < 0 for v in cq):
        raise NegativeObjective("clipped-sum bound needs c >= 0")
    y = [F(v) for v in system.set_sizes()]
    if len(cq) != len(y):
        raise ValidationError("objective length differs from coordinate count")
    value, point = dantzig_max(cq, y, system.n)
    ratios = sorted(range(len(y)), key=lambda j: (-(cq[j] / y[j]), j))
    meta = {"y": y, "order": ratios, "point": point}
    return value, meta


def clip_srr_bound(system: RecoverySystem, b: Sequence,
                   ) -> tuple[tuple[Fraction, ...], Fraction]:
    """Half-space b.lambda <= cap on the region, by lifting b to the
    allocation coordinates (c_j = b_i on object i's block)."""
    bq = [F(v) for v in b]
    if len(bq) != system.k:
        raise ValidationError(f"need one weight per object ({system.k})")
    if any(v < 0 for v in bq):
        raise NegativeObjective("clip bound needs b >= 0")
    c = []
    for i, coll in enumerate(system.sets):
        c.extend([bq[i]] * len(coll))
    value, _ = clipped_sum_bound(system, c)
    return tuple(bq), value


# --- scalar caps on shape parameters ---


def hcube_cap(params) -> Fraction:
    """Upper bound on the hypercube size: min(max_sum / k, delta)."""
    k = len(params.axis_maxima)
    return min(params.max_sum / k, params.simplex_delta)


def bhatia_davis_cap(params, k: int) -> Fraction:
    """Upper bound on the 2nd power-sum from the spread of coordinates."""
    return (F(k - 1, k) * params.lambda_star * params.max_sum
            + params.max_sum ** 2 / k)


def mds_maxsum_cap(k: int, n: int) -> Fraction:
    if not 2 <= k < n:
        raise ValidationError(f"need n > k >= 2, got k={k}, n={n}")
    return k + F(n - k, k)


# --- polytopes and polygons for the figure-style comparisons ---


def bound_polytope(report: BoundReport, k: int) -> HPolytope:
    """Cell-enumerated H-polytope of a piecewise-convex bound, k <= 3.

    Each coordinate's term is a max of linear pieces; a convex sum of such
    maxima stays under the budget iff every choice of one piece per
    coordinate does, which yields at most prod(len(pieces)) rows plus
    nonnegativity.
    """
    if report.pieces is None or report.budget is None:
        raise ValidationError(f"bound {report.name!r} has no piecewise form")
    if k > 3:
        raise ValidationError("bound polytopes are built for k <= 3 only")
    rows, rhs = [], []
    for combo in itertools.product(*report.pieces):
        row = [slope for slope, _ in combo]
        shift = sum(intercept for _, intercept in combo)
        rows.append(row)
        rhs.append(report.budget - shift)
    for i in range(k):
        e = [F(0)] * k
        e[i] = F(-1)
        rows.append(e)
        rhs.append(F(0))
    return prune_redundant(HPolytope.from_rows(k, rows, rhs))


def halfspace_polytope(k: int, cuts: Sequence[tuple[Sequence, Fraction]],
                       ) -> HPolytope:
    """Intersection of half-spaces with the nonnegative orthant."""
    rows, rhs = [], []
    for coeffs, cap in cuts:
        rows.append([F(v) for v in coeffs])
        rhs.append(F(cap))
    for i in range(k):
        e = [F(0)] * k
        e[i] = F(-1)
        rows.append(e)
        rhs.append(F(0))
    return prune_redundant(HPolytope.from_rows(k, rows, rhs))


def polytope_area(poly: HPolytope) -> Fraction:
    """Exact area/volume of a bounded H-polytope (dim <= 3)."""
    verts = enumerate_vertices(poly)
    return volume(verts, poly).value
