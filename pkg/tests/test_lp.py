import random
from fractions import Fraction

from srr.lp import feasible_point, lp_solve, solve_standard
from srr.polytope import HPolytope, enumerate_vertices


def box(dim, hi=1):
    rows, rhs = [], []
    for i in range(dim):
        e = [0] * dim
        e[i] = 1
        rows.append(list(e))
        rhs.append(hi)
        rows.append([-v for v in e])
        rhs.append(0)
    return HPolytope.from_rows(dim, rows, rhs)


def test_point_at_origin():
    poly = HPolytope.from_rows(1, [[1], [-1]], [0, 0])
    out = lp_solve(poly, [1], "max")
    assert out.status == "optimal"
    assert out.value == 0
    assert out.point == (Fraction(0),)


def test_box_corners():
    poly = box(3)
    out = lp_solve(poly, [1, 2, 3], "max")
    assert out.value == 6 and out.point == (1, 1, 1)
    out = lp_solve(poly, [1, -2, 3], "min")
    assert out.value == -2 and out.point == (0, 1, 0)


def test_unbounded_and_infeasible():
    ray = HPolytope.from_rows(2, [[-1, 0], [0, -1]], [0, 0])
    assert lp_solve(ray, [1, 1], "max").status == "unbounded"
    empty = HPolytope.from_rows(1, [[1], [-1]], [0, -1])
    assert lp_solve(empty, [1], "max").status == "infeasible"


def test_degenerate_bland_terminates():
    # A classically cycling example (Beale); Bland's rule must terminate.
    A_ub = [[Fraction(1, 4), -8, -1, 9],
            [Fraction(1, 2), -12, Fraction(-1, 2), 3],
            [0, 0, 1, 0]]
    b_ub = [0, 0, 1]
    c = [Fraction(-3, 4), 20, Fraction(-1, 2), 6]
    res = solve_standard(c, A_ub, b_ub)
    assert res.status == "optimal"
    assert res.value == Fraction(-5, 4)


def test_farkas_certificate_exact():
    rng = random.Random(11)
    found_infeasible = 0
    for _ in range(120):
        nx = rng.randint(1, 4)
        n_ub = rng.randint(0, 3)
        n_eq = rng.randint(0, 2)
        A_ub = [[Fraction(rng.randint(-3, 3)) for _ in range(nx)] for _ in range(n_ub)]
        b_ub = [Fraction(rng.randint(-4, 4)) for _ in range(n_ub)]
        A_eq = [[Fraction(rng.randint(-3, 3)) for _ in range(nx)] for _ in range(n_eq)]
        b_eq = [Fraction(rng.randint(-4, 4)) for _ in range(n_eq)]
        res = feasible_point(A_ub, b_ub, A_eq, b_eq)
        if res.status == "optimal":
            x = res.x
            assert all(v >= 0 for v in x)
            for row, b in zip(A_ub, b_ub):
                assert sum(a * v for a, v in zip(row, x)) <= b
            for row, b in zip(A_eq, b_eq):
                assert sum(a * v for a, v in zip(row, x)) == b
        else:
            found_infeasible += 1
            u, w = res.farkas_ub, res.farkas_eq
            assert all(v >= 0 for v in u)
            for j in range(nx):
                combo = sum(u[i] * A_ub[i][j] for i in range(n_ub)) + \
                    sum(w[i] * A_eq[i][j] for i in range(n_eq))
                assert combo >= 0
            slack = sum(u[i] * b_ub[i] for i in range(n_ub)) + \
                sum(w[i] * b_eq[i] for i in range(n_eq))
            assert slack < 0
    assert found_infeasible > 10


def test_lp_optimum_matches_vertex_enumeration():
    rng = random.Random(23)
    for _ in range(40):
        dim = rng.randint(1, 3)
        rows, rhs = [], []
        for i in range(dim):
            e = [0] * dim
            e[i] = -1
            rows.append(e)
            rhs.append(0)
        for _ in range(rng.randint(1, 4)):
            rows.append([rng.randint(0, 3) for _ in range(dim)])
            rhs.append(rng.randint(1, 6))
        if not any(all(r[j] > 0 for j in range(dim)) for r in rows):
            rows.append([1] * dim)
            rhs.append(10)
        poly = HPolytope.from_rows(dim, rows, rhs)
        obj = [Fraction(rng.randint(-3, 3)) for _ in range(dim)]
        out = lp_solve(poly, obj, "max")
        assert out.status == "optimal"
        verts = enumerate_vertices(poly).vertices
        best = max(sum(c * v for c, v in zip(obj, p)) for p in verts)
        assert out.value == best
        assert poly.contains(out.point)
        assert sum(c * v for c, v in zip(obj, out.point)) == best
