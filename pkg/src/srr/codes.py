"""Coding-theoretic profile of a generator matrix.

Minimum distance by codeword enumeration, dual distance through an exact
parity-check construction, MDS and systematic classification, availability
by exact set packing over minimal recovery sets, and projective hyperplane
statistics (which give the minimum distance a second, independent route:
d = n - max points of the column multiset on a hyperplane).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import guards
from .errors import (
    FieldTooSmall,
    NotPrimitive,
    NotSystematic,
    ValidationError,
)
from .fields import FFMatrix, FieldContext, in_span, make_field, rank, rref
from .recovery import RecoverySystem, minimal_recovery_system


@dataclass(frozen=True)
class CodeProfile:
    n: int
    k: int
    q: int
    d: int
    d_dual: int
    is_mds: bool
    is_systematic: bool
    is_replication: bool
    s: tuple[int, ...]
    availability_t: int | None
    max_hyperplane_points: int


def _codeword_messages(ctx: FieldContext, k: int):
    """One representative per projective point of F_q^k (first nonzero = 1).

    Scaling a message scales the codeword, preserving its weight, so these
    representatives cover all nonzero weights.
    """
    q = ctx.q
    for lead in range(k):
        prefix = (0,) * lead + (1,)
        for tail in itertools.product(range(q), repeat=k - lead - 1):
            yield prefix + tail


def min_distance(g: FFMatrix) -> int:
    """Minimum Hamming weight over the q^k - 1 nonzero codewords of G."""
    ctx = g.ctx
    k, n = g.rows, g.cols
    guards.check_too_large(ctx.q ** k, guards.CODEWORD_ENUM, "min_distance")
    if rank(g) != k:
        raise ValidationError("min_distance needs a full-rank matrix")
    cols = [g.column(j) for j in range(n)]
    best = n
    for msg in _codeword_messages(ctx, k):
        weight = 0
        for col in cols:
            acc = 0
            for m, c in zip(msg, col):
                if m and c:
                    acc = ctx.add(acc, ctx.mul(m, c))
            if acc:
                weight += 1
                if weight >= best:
                    break
        if weight < best:
            best = weight
            if best == 1:
                break
    return best


def dual_matrix(g: FFMatrix) -> FFMatrix:
    """A parity-check matrix H: (n-k) x n, rank n-k, with G H^T = 0."""
    ctx = g.ctx
    k, n = g.rows, g.cols
    red, pivots = rref(g)
    if len(pivots) != k:
        raise ValidationError("dual_matrix needs a full-rank matrix")
    free = [j for j in range(n) if j not in pivots]
    rows = []
    for f in free:
        row = [0] * n
        row[f] = 1
        for r, p in enumerate(pivots):
            row[p] = ctx.neg(red.entry(r, f))
        rows.append(row)
    return FFMatrix.from_rows(ctx, rows)


def dual_min_distance(g: FFMatrix) -> int:
    ctx = g.ctx
    guards.check_too_large(ctx.q ** (g.cols - g.rows), guards.CODEWORD_ENUM,
                           "dual_min_distance")
    return min_distance(dual_matrix(g))


def is_mds(g: FFMatrix) -> bool:
    """True iff every k columns of G are linearly independent."""
    k, n = g.rows, g.cols
    if rank(g) != k:
        return False
    for combo in itertools.combinations(range(n), k):
        sub = FFMatrix.from_rows(g.ctx, [[g.entry(r, c) for c in combo]
                                         for r in range(k)])
        if rank(sub) != k:
            return False
    return True


def systematic_profile(g: FFMatrix) -> tuple[bool, tuple[int, ...], bool]:
    """(is_systematic, per-object systematic node counts, is_replication)."""
    k, n = g.rows, g.cols
    s = [0] * k
    for j in range(n):
        col = g.column(j)
        support = [i for i, v in enumerate(col) if v]
        if len(support) == 1:
            s[support[0]] += 1
    is_sys = all(
        g.entry(r, c) == (1 if r == c else 0) for r in range(k) for c in range(k)
    ) if n >= k else False
    is_repl = sum(s) == n
    return is_sys, tuple(s), is_repl


def _max_disjoint(sets: list[frozenset[int]]) -> int:
    """Maximum number of pairwise disjoint sets, exact backtracking."""
    order = sorted(sets, key=lambda s: (len(s), sorted(s)))
    best = 0

    def extend(start: int, used: frozenset[int], count: int):
        nonlocal best
        if count > best:
            best = count
        for idx in range(start, len(order)):
            cand = order[idx]
            if used & cand:
                continue
            extend(idx + 1, used | cand, count + 1)

    extend(0, frozenset(), 0)
    return best


def availability(g: FFMatrix, recovery: RecoverySystem | None = None) -> int:
    """Largest t such that every object has t+1 pairwise disjoint recovery sets.

    Only defined for systematic G.  Disjoint minimal sets suffice: any
    recovery set contains a minimal one, so a disjoint family of recovery
    sets yields a disjoint family of minimal sets of the same size.
    """
    is_sys, _, _ = systematic_profile(g)
    if not is_sys:
        raise NotSystematic("availability is defined for systematic matrices only")
    system = recovery if recovery is not None else minimal_recovery_system(g)
    best = None
    for coll in system.sets:
        count = _max_disjoint([frozenset(r) for r in coll])
        best = count if best is None else min(best, count)
    return best - 1


def pg_hyperplane_stats(g: FFMatrix) -> tuple[list[tuple[tuple[int, ...], int]], int]:
    """Column-multiset counts on every hyperplane of PG(k-1, q).

    Normals are canonicalized with first nonzero coordinate 1, one per
    projective point.  The maximum count equals n - d.
    """
    ctx = g.ctx
    k, n = g.rows, g.cols
    points = (ctx.q ** k - 1) // (ctx.q - 1)
    guards.check_too_large(points, guards.PROJECTIVE_POINTS, "pg_hyperplane_stats")
    cols = [g.column(j) for j in range(n)]
    stats = []
    best = 0
    for normal in _codeword_messages(ctx, k):
        count = 0
        for col in cols:
            acc = 0
            for a, c in zip(normal, col):
                if a and c:
                    acc = ctx.add(acc, ctx.mul(a, c))
            if acc == 0:
                count += 1
        stats.append((normal, count))
        best = max(best, count)
    return stats, best


def rs_matrix(a: int, b: int, q: int, alpha: int,
              ctx: FieldContext | None = None) -> FFMatrix:
    """The a x b power matrix with entry (r, c) = alpha^((c-1)(r-1)) over F_q.

    Requires 2 <= a < b < q (q > b makes the columns pairwise distinct) and
    alpha of multiplicative order q - 1.  The result generates an MDS code.
    """
    if not 2 <= a < b:
        raise ValidationError(f"need 2 <= a < b, got a={a}, b={b}")
    if b >= q:
        raise FieldTooSmall(f"need q > b for distinct columns, got q={q}, b={b}")
    if ctx is None:
        ctx = make_field(q)
    elif ctx.q != q:
        raise ValidationError("context order disagrees with q")
    if ctx.mult_order(alpha) != q - 1:
        raise NotPrimitive(f"{alpha} does not generate the multiplicative group")
    rows = [[ctx.pow(alpha, (c) * (r)) for c in range(b)] for r in range(a)]
    return FFMatrix.from_rows(ctx, rows)


def systematic_mds_matrix(k: int, n: int, q: int, alpha: int | None = None,
                          ) -> FFMatrix:
    """A systematic MDS generator [I_k | P] obtained by row-reducing rs_matrix.

    Row operations preserve the code, so the reduced matrix generates the
    same MDS code and starts with the identity block.
    """
    if alpha is None:
        alpha = _find_primitive(q)
    wide = rs_matrix(k, n, q, alpha)
    red, pivots = rref(wide)
    if pivots != tuple(range(k)):
        raise ValidationError("row reduction did not produce an identity block")
    return red


def _find_primitive(q: int) -> int:
    ctx = make_field(q)
    for cand in range(2, q):
        if ctx.mult_order(cand) == q - 1:
            return cand
    raise ValidationError(f"no primitive element found for q={q}")


def profile(g: FFMatrix, recovery: RecoverySystem | None = None) -> CodeProfile:
    """Assemble the full coding profile; availability only when systematic."""
    k, n = g.rows, g.cols
    d = min_distance(g)
    dd = dual_min_distance(g)
    is_sys, s, is_repl = systematic_profile(g)
    _, max_pts = pg_hyperplane_stats(g)
    t = availability(g, recovery) if is_sys else None
    return CodeProfile(n=n, k=k, q=g.ctx.q, d=d, d_dual=dd,
                       is_mds=(d == n - k + 1),
                       is_systematic=is_sys, is_replication=is_repl,
                       s=s, availability_t=t, max_hyperplane_points=max_pts)
