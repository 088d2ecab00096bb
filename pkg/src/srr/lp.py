"""Exact rational linear programming.

A dense two-phase simplex with Bland's anti-cycling rule.  All arithmetic
is exact (gmpy2.mpq when available, Fraction otherwise), so termination is
guaranteed and optimal points are exact basic feasible solutions.  On
infeasible systems the solver returns a Farkas certificate, which the
projection machinery turns into separating half-spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ratio import QONE, QZERO, qq, to_fraction


@dataclass(frozen=True)
class LPOutcome:
    """Public result of optimizing over an H-polytope."""

    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    point: tuple[Fraction, ...] | None = None


@dataclass(frozen=True)
class SimplexResult:
    """Result of the standard-form kernel (min cx, A_ub x <= b_ub, A_eq x = b_eq, x >= 0).

    On "infeasible" the Farkas pair (u over ub-rows, w over eq-rows) certifies
    u >= 0, u A_ub + w A_eq >= 0 componentwise, and u b_ub + w b_eq < 0.
    """

    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None
    farkas_ub: tuple[Fraction, ...] | None = None
    farkas_eq: tuple[Fraction, ...] | None = None


def _pivot(tableau, basis, row, col, ncols):
    piv_row = tableau[row]
    inv = QONE / piv_row[col]
    if inv != 1:
        tableau[row] = piv_row = [v * inv for v in piv_row]
    for r, other in enumerate(tableau):
        if r == row:
            continue
        factor = other[col]
        if factor:
            tableau[r] = [a - factor * b for a, b in zip(other, piv_row)]
    basis[row] = col


def _run_simplex(tableau, basis, cost, ncols):
    """Minimize over the tableau in place; cost is the current objective row.

    The objective row stores reduced costs in cost[:ncols] and -objective in
    cost[ncols].  Returns "optimal" or "unbounded" (entering column index on
    unbounded for ray extraction).
    """
    nrows = len(tableau)
    while True:
        enter = -1
        for j in range(ncols):
            if cost[j] < QZERO:
                enter = j
                break
        if enter < 0:
            return "optimal", -1
        leave = -1
        best = None
        for r in range(nrows):
            a = tableau[r][enter]
            if a > QZERO:
                ratio = tableau[r][ncols] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best = ratio
                    leave = r
        if leave < 0:
            return "unbounded", enter
        _pivot(tableau, basis, leave, enter, ncols)
        factor = cost[enter]
        if factor:
            piv = tableau[leave]
            for j in range(ncols + 1):
                cost[j] -= factor * piv[j]


def solve_standard(c: Sequence, A_ub: Sequence[Sequence], b_ub: Sequence,
                   A_eq: Sequence[Sequence] = (), b_eq: Sequence = (),
                   maximize: bool = False) -> SimplexResult:
    """Solve min (or max) c.x subject to A_ub x <= b_ub, A_eq x = b_eq, x >= 0."""
    nx = len(c)
    n_ub = len(A_ub)
    n_eq = len(A_eq)
    nrows = n_ub + n_eq

    cq = [qq(v) for v in c]
    if maximize:
        cq = [-v for v in cq]

    # Column layout: x (nx) | slacks (n_ub) | artificials (appended as needed).
    sign = [1] * nrows
    rows = []
    rhs = []
    for i in range(n_ub):
        row = [qq(v) for v in A_ub[i]]
        b = qq(b_ub[i])
        if b < QZERO:
            row = [-v for v in row]
            b = -b
            sign[i] = -1
        rows.append(row)
        rhs.append(b)
    for j in range(n_eq):
        row = [qq(v) for v in A_eq[j]]
        b = qq(b_eq[j])
        if b < QZERO:
            row = [-v for v in row]
            b = -b
            sign[n_ub + j] = -1
        rows.append(row)
        rhs.append(b)

    n_art = 0
    art_col_of_row = [-1] * nrows
    for i in range(nrows):
        needs_art = i >= n_ub or sign[i] == -1
        if needs_art:
            art_col_of_row[i] = n_art
            n_art += 1

    ncols = nx + n_ub + n_art
    tableau = []
    basis = [-1] * nrows
    for i in range(nrows):
        row = rows[i] + [QZERO] * (n_ub + n_art) + [rhs[i]]
        if i < n_ub:
            row[nx + i] = qq(sign[i])
        if art_col_of_row[i] >= 0:
            acol = nx + n_ub + art_col_of_row[i]
            row[acol] = QONE
            basis[i] = acol
        else:
            basis[i] = nx + i
        tableau.append(row)

    # Phase 1: minimize the sum of artificials.
    if n_art:
        cost = [QZERO] * (ncols + 1)
        for j in range(nx + n_ub, ncols):
            cost[j] = QONE
        for i in range(nrows):
            if basis[i] >= nx + n_ub:
                for j in range(ncols + 1):
                    cost[j] -= tableau[i][j]
        _run_simplex(tableau, basis, cost, ncols)
        infeas = -cost[ncols]
        if infeas > QZERO:
            # Duals: y_i = (phase-1 cost of row i's initial basic col) - reduced cost.
            y = []
            for i in range(nrows):
                if art_col_of_row[i] >= 0:
                    col = nx + n_ub + art_col_of_row[i]
                    y.append(QONE - cost[col])
                else:
                    col = nx + i
                    y.append(-cost[col] * qq(sign[i]))
            u = [to_fraction(-qq(sign[i]) * y[i]) for i in range(n_ub)]
            w = [to_fraction(-qq(sign[n_ub + j]) * y[n_ub + j]) for j in range(n_eq)]
            return SimplexResult(status="infeasible",
                                 farkas_ub=tuple(u), farkas_eq=tuple(w))
        # Drive basic artificials out of the basis (degenerate rows drop).
        keep = []
        for i in range(nrows):
            if basis[i] >= nx + n_ub:
                pivot_col = -1
                for j in range(nx + n_ub):
                    if tableau[i][j]:
                        pivot_col = j
                        break
                if pivot_col >= 0:
                    _pivot(tableau, basis, i, pivot_col, ncols)
                    keep.append(i)
                # else: redundant all-zero row, drop it
            else:
                keep.append(i)
        if len(keep) != nrows:
            tableau = [tableau[i] for i in keep]
            basis = [basis[i] for i in keep]
            nrows = len(keep)
        # Truncate artificial columns.
        ncols = nx + n_ub
        tableau = [row[:ncols] + [row[-1]] for row in tableau]

    else:
        ncols = nx + n_ub

    # Phase 2.
    cost = [QZERO] * (ncols + 1)
    for j in range(nx):
        cost[j] = cq[j]
    for i in range(nrows):
        factor = cost[basis[i]] if basis[i] < ncols else QZERO
        if factor:
            for j in range(ncols + 1):
                cost[j] -= factor * tableau[i][j]
    status, _ = _run_simplex(tableau, basis, cost, ncols)
    if status == "unbounded":
        return SimplexResult(status="unbounded")
    x = [QZERO] * nx
    for i in range(nrows):
        if basis[i] < nx:
            x[basis[i]] = tableau[i][ncols]
    value = -cost[ncols]
    if maximize:
        value = -value
    return SimplexResult(status="optimal",
                         x=tuple(to_fraction(v) for v in x),
                         value=to_fraction(value))


def feasible_point(A_ub, b_ub, A_eq=(), b_eq=()) -> SimplexResult:
    """Phase-1 only: find any feasible x >= 0 or a Farkas certificate."""
    nx = len(A_ub[0]) if A_ub else (len(A_eq[0]) if A_eq else 0)
    return solve_standard([0] * nx, A_ub, b_ub, A_eq, b_eq)


def lp_solve(poly, objective: Sequence, sense: str = "max") -> LPOutcome:
    """Exact LP over an HPolytope with free variables.

    Free coordinates are split into differences of nonnegative variables
    before entering the standard-form kernel, so the polytope may lie
    anywhere in R^m.  The returned point is a basic optimal solution.
    """
    if sense not in ("max", "min"):
        raise ValueError(f"sense must be 'max' or 'min', got {sense!r}")
    m = poly.dim
    A = [list(row) + [-v for v in row] for row in poly.A]
    c = list(objective) + [-v for v in objective]
    res = solve_standard(c, A, list(poly.b), maximize=(sense == "max"))
    if res.status != "optimal":
        return LPOutcome(status=res.status)
    point = tuple(res.x[j] - res.x[m + j] for j in range(m))
    return LPOutcome(status="optimal", value=res.value, point=point)
