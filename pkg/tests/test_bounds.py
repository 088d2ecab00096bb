import itertools
import random
from fractions import Fraction

import pytest

from srr.bounds import (
    bhatia_davis_cap,
    bound_polytope,
    build_dual_distance_bound,
    build_hybrid_bound,
    build_mds_closed_form,
    build_systematic_node_bound,
    build_uniform_size_bound,
    clip_srr_bound,
    clipped_sum_bound,
    dual_distance_bound,
    halfspace_polytope,
    hcube_cap,
    hybrid_bound,
    hyperplane_bound,
    mds_maxsum_cap,
    polytope_area,
    systematic_node_bound,
    total_capacity_check,
    uniform_size_bound,
)
from srr.codes import systematic_mds_matrix
from srr.errors import NegativeObjective, NotSystematic
from srr.lp import lp_solve
from srr.polytope import HPolytope, enumerate_vertices
from srr.recovery import minimal_recovery_system
from srr.region import region_params, region_polytope, srr_membership

F = Fraction


def test_total_capacity_check(g2):
    system = minimal_recovery_system(g2)
    res = srr_membership(system, 1, (F(3, 2), F(3, 2), F(1, 2)))
    ev = total_capacity_check(res.allocation, n=6, mu=1)
    assert ev.satisfied
    zero = srr_membership(system, 1, (0, 0, 0))
    ev = total_capacity_check(zero.allocation, n=6, mu=1)
    assert ev.lhs == 0


def test_total_capacity_exact_mass(g2, g1):
    # The hand-built splitting of (3/2, 3/2, 1/2): unit mass on {1} and {2},
    # half on {5,6}, {3,5} and {3}; weighted by set sizes that is 9/2.
    from srr.region import AllocationIndex, FractionalAllocation
    system = minimal_recovery_system(g2)
    index = AllocationIndex.for_system(system)
    spread = {(1, (1,)): F(1), (1, (5, 6)): F(1, 2),
              (2, (2,)): F(1), (2, (3, 5)): F(1, 2),
              (3, (3,)): F(1, 2)}
    alloc = FractionalAllocation(
        index=index,
        values=tuple(spread.get(pair, F(0)) for pair in index.pairs))
    assert alloc.is_feasible()
    ev = total_capacity_check(alloc, n=6, mu=1)
    assert ev.lhs == F(9, 2) and ev.satisfied

    # One unit on each singleton of a replication layout sits exactly on
    # the capacity boundary.
    sys1 = minimal_recovery_system(g1)
    idx1 = AllocationIndex.for_system(sys1)
    ones = FractionalAllocation(index=idx1, values=(F(1),) * idx1.m)
    ev = total_capacity_check(ones, n=4, mu=1)
    assert ev.lhs == 4 == ev.rhs and ev.satisfied


def test_bhatia_davis_degenerate_single_object():
    from srr.region import RegionParams
    params = RegionParams(max_sum=F(7, 2), r_sums={}, axis_maxima=(F(7, 2),),
                          lambda_star=F(7, 2), hypercube=F(7, 2),
                          simplex_delta=F(7, 2))
    assert bhatia_davis_cap(params, 1) == F(49, 4)


def test_dual_distance_bound_values(g2, ident_parity):
    # d_dual(g2) = 3: rates above 1 are priced at multiplier 2.
    ev = dual_distance_bound(g2, (4, 0, 0))
    assert not ev.satisfied and ev.lhs == 7

    ev = dual_distance_bound(g2, (0, 0, 0))
    assert ev.satisfied and ev.lhs == 0

    # Systematic MDS 2x4: d_dual = 3, boundary at (1, 2).
    g = systematic_mds_matrix(2, 4, 5)
    ev = dual_distance_bound(g, (1, 2))
    assert ev.lhs == 4 == ev.rhs and ev.satisfied


def test_dual_distance_requires_systematic(uniform36):
    with pytest.raises(NotSystematic):
        dual_distance_bound(uniform36, (0, 0, 0))


def test_systematic_node_bound_values(g2):
    ev = systematic_node_bound(g2, (3, 1, 0))
    assert ev.lhs == 6 == ev.rhs and ev.satisfied
    ev = systematic_node_bound(g2, (0, F(7, 2), 0))
    assert ev.lhs == 6 and ev.satisfied
    ev = systematic_node_bound(g2, (F(301, 100), 1, 0))
    assert not ev.satisfied


def test_hybrid_bound_values(uniform36):
    # Object 1 has no systematic copy: it contributes 2 * lambda_1.
    ev = hybrid_bound(uniform36, (1, 0, 0))
    assert ev.lhs == 2 and ev.satisfied
    ev = hybrid_bound(uniform36, (0, 0, 0))
    assert ev.satisfied


def test_hybrid_degenerates_to_dual_distance(g2):
    # All s_i = 1 and d_dual - 1 = 2: the two formulas coincide.
    rng = random.Random(2)
    for _ in range(100):
        lam = tuple(F(rng.randint(0, 16), 4) for _ in range(3))
        assert hybrid_bound(g2, lam) == dual_distance_bound(g2, lam)


def test_hybrid_degenerates_to_systematic_node(g1):
    # All s_i >= 1 with some s_i >= 2: the hybrid equals the node bound.
    rng = random.Random(3)
    for _ in range(100):
        lam = tuple(F(rng.randint(0, 20), 4) for _ in range(2))
        assert hybrid_bound(g1, lam) == systematic_node_bound(g1, lam)


def test_hybrid_matches_dual_on_mds_fixture():
    g = systematic_mds_matrix(2, 6, 7)
    rng = random.Random(4)
    for _ in range(100):
        lam = tuple(F(rng.randint(0, 24), 4) for _ in range(2))
        assert hybrid_bound(g, lam) == dual_distance_bound(g, lam)


def test_uniform_size_bound_metadata(uniform36):
    report = build_uniform_size_bound(uniform36)
    assert report.metadata["mu"] == [2, 3, F(11, 4)]
    assert report.metadata["J"] == [1, 2]
    assert report.metadata["d_dual"] == 2
    assert report.metadata["s"] == [0, 1, 0]


def test_uniform_size_bound_sound_on_region(uniform36):
    system = minimal_recovery_system(uniform36)
    geo = region_polytope(system)
    report = build_uniform_size_bound(uniform36, system)
    for vertex in geo.vpoly.vertices:
        assert report.evaluate(vertex).satisfied


def test_uniform_size_strictly_tighter_than_hybrid_somewhere(uniform36):
    # On the lambda_2 axis the uniform-size bound stops at 8/3 while the
    # hybrid allows 7/2.
    hybrid = build_hybrid_bound(uniform36)
    uniform = build_uniform_size_bound(uniform36)
    probe = (0, 3, 0)
    assert hybrid.evaluate(probe).satisfied
    assert not uniform.evaluate(probe).satisfied
    assert uniform.evaluate((0, F(8, 3), 0)).lhs == 6


def test_uniform_size_singleton_only_objects(g1, skew_h):
    # Both objects of g1 are served purely by systematic copies, so the
    # bound saturates at the number of copies per object.
    report = build_uniform_size_bound(g1)
    assert report.metadata["singleton_only"] == [1, 2]
    ev = report.evaluate((3, 1))
    assert ev.lhs == 4 == ev.rhs and ev.satisfied
    assert report.evaluate((0, 0)).lhs == 0

    # Saturating (rather than constant) copy terms keep the bound sound on
    # matrices that mix singleton-only objects with coded ones.
    mixed = build_uniform_size_bound(skew_h)
    assert mixed.metadata["singleton_only"] == [1, 2]
    assert mixed.evaluate((0, 0, 1)).satisfied
    assert mixed.evaluate((1, 0, 1)).satisfied


def test_hyperplane_bound_examples(g1):
    cap, normal = hyperplane_bound(g1, [2])
    assert cap == 1 and normal == (0, 1)
    cap, normal = hyperplane_bound(g1, [])
    assert cap == 4 and normal is None

    g = systematic_mds_matrix(2, 5, 7)
    cap, _ = hyperplane_bound(g, [1, 2])
    assert cap == 4  # one collinear column can sit on the chosen point


def test_hyperplane_bound_soundness(g1, g2):
    for g in (g1, g2):
        system = minimal_recovery_system(g)
        geo = region_polytope(system)
        k = g.rows
        for size in range(1, k + 1):
            for objs in itertools.combinations(range(1, k + 1), size):
                cap, _ = hyperplane_bound(g, objs)
                for vertex in geo.vpoly.vertices:
                    assert sum(vertex[i - 1] for i in objs) <= cap


def test_clipped_sum_bound_examples(ident_parity):
    system = minimal_recovery_system(ident_parity)
    value, meta = clipped_sum_bound(system, [1] * system.m)
    assert value == F(10, 3)
    assert sorted(meta["y"]) == [1, 1, 1, 3, 3, 3]

    value, _ = clipped_sum_bound(system, [0] * system.m)
    assert value == 0


def test_clipped_sum_bound_negative(ident_parity):
    system = minimal_recovery_system(ident_parity)
    with pytest.raises(NegativeObjective):
        clipped_sum_bound(system, [-1] * system.m)


def test_clipped_sum_matches_lp_on_random_systems():
    rng = random.Random(77)
    for _ in range(200):
        m = rng.randint(1, 7)
        n = rng.randint(2, 6)
        sizes = [rng.randint(1, n) for _ in range(m)]
        c = [F(rng.randint(0, 8)) for _ in range(m)]
        from srr.knapsack import dantzig_max
        value, _ = dantzig_max(c, [F(s) for s in sizes], n)
        rows = [list(map(F, sizes))]
        rhs = [F(n)]
        for i in range(m):
            e = [F(0)] * m
            e[i] = F(1)
            rows.append(list(e))
            rhs.append(F(1))
            rows.append([-v for v in e])
            rhs.append(F(0))
        out = lp_solve(HPolytope.from_rows(m, rows, rhs), c, "max")
        assert out.value == value


def test_clip_srr_bound_examples(ident_parity, mds24):
    system = minimal_recovery_system(ident_parity)
    coeffs, cap = clip_srr_bound(system, [1, 1, 1])
    assert cap == F(10, 3)

    sys24 = minimal_recovery_system(mds24)
    _, cap = clip_srr_bound(sys24, [1, 0])
    assert cap >= region_params(sys24).axis_maxima[0]


def test_clip_bound_caps_max_sum(g1, g2, mds24, ident_parity):
    for g in (g1, g2, mds24, ident_parity):
        system = minimal_recovery_system(g)
        _, cap = clip_srr_bound(system, [1] * system.k)
        assert region_params(system).max_sum <= cap


def test_scalar_caps(mds24, skew_h, g1, simplex37):
    params = region_params(minimal_recovery_system(mds24), rs=[2])
    cap = hcube_cap(params)
    assert cap == F(3, 2)  # min(3/2, 5/2); the hypercube meets it here
    assert params.hypercube <= cap
    bd = bhatia_davis_cap(params, 2)
    assert bd == F(33, 4)
    assert params.r_sums[2] <= bd

    params = region_params(minimal_recovery_system(skew_h))
    assert hcube_cap(params) == 1
    assert params.hypercube == F(1, 2)  # strictly below the cap

    params = region_params(minimal_recovery_system(g1))
    assert hcube_cap(params) == 1 == params.hypercube  # met with equality

    params = region_params(minimal_recovery_system(simplex37), rs=[2])
    assert params.r_sums[2] == bhatia_davis_cap(params, 3)  # sharp here


def test_mds_maxsum_cap(nonsys_f7):
    assert mds_maxsum_cap(2, 4) == 3
    assert mds_maxsum_cap(3, 6) == 4
    params = region_params(minimal_recovery_system(nonsys_f7))
    assert params.max_sum == 2 < mds_maxsum_cap(2, 4)


def test_bound_polytope_mds_closed_form_matches_region():
    g = systematic_mds_matrix(2, 4, 5)
    system = minimal_recovery_system(g)
    geo = region_polytope(system)
    closed = bound_polytope(build_mds_closed_form(2, 4), 2)
    assert enumerate_vertices(closed).vertices == geo.vpoly.vertices


def test_bound_polytopes_contain_region(g1, g2):
    for g in (g1, g2):
        system = minimal_recovery_system(g)
        geo = region_polytope(system)
        for builder in (build_dual_distance_bound, build_systematic_node_bound,
                        build_hybrid_bound):
            poly = bound_polytope(builder(g), g.rows)
            for vertex in geo.vpoly.vertices:
                assert poly.contains(vertex)


def test_figure_ordering_on_replication_fixture(g1):
    # The systematic-node polygon is strictly inside the dual-distance
    # polygon for a matrix with repeated systematic columns: (0,4) satisfies
    # the dual-distance bound with equality but breaks the node bound.
    dual = bound_polytope(build_dual_distance_bound(g1), 2)
    node = bound_polytope(build_systematic_node_bound(g1), 2)
    assert dual.contains((0, 4))
    assert not node.contains((0, 4))
    node_verts = enumerate_vertices(node).vertices
    assert all(dual.contains(v) for v in node_verts)


def test_dual_distance_tighter_on_short_mds(ident_parity):
    # With d_dual = 4 the dual-distance bound prices high rates harder than
    # the node bound: (2.2, 0, 0) passes the node bound but not this one.
    probe = (F(11, 5), 0, 0)
    assert systematic_node_bound(ident_parity, probe).satisfied
    assert not dual_distance_bound(ident_parity, probe).satisfied


def test_halfspace_polygon_area_strictly_shrinks(wide28):
    system = minimal_recovery_system(wide28)
    binary = [clip_srr_bound(system, b) for b in [(0, 1), (1, 0), (1, 1)]]
    poly_01 = halfspace_polytope(2, binary)
    extra = binary + [clip_srr_bound(system, (3, 2)), clip_srr_bound(system, (3, 5))]
    poly_plus = halfspace_polytope(2, extra)
    area_01 = polytope_area(poly_01)
    area_plus = polytope_area(poly_plus)
    assert area_plus < area_01


def test_wide28_bound_values(wide28):
    system = minimal_recovery_system(wide28)
    assert clip_srr_bound(system, (1, 0))[1] == F(11, 2)
    assert clip_srr_bound(system, (0, 1))[1] == F(11, 2)
    assert clip_srr_bound(system, (1, 1))[1] == 7
    assert clip_srr_bound(system, (3, 2))[1] == 18
    assert clip_srr_bound(system, (3, 5))[1] == 29
