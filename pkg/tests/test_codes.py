import itertools

import pytest

from srr.codes import (
    availability,
    dual_matrix,
    dual_min_distance,
    is_mds,
    min_distance,
    pg_hyperplane_stats,
    profile,
    rs_matrix,
    systematic_mds_matrix,
    systematic_profile,
)
from srr.errors import FieldTooSmall, NotPrimitive, NotSystematic
from srr.fields import FFMatrix, make_field, rank
from srr.recovery import minimal_recovery_system


def test_min_distance_examples(g1, ident_parity, simplex37):
    assert min_distance(ident_parity) == 2
    assert min_distance(simplex37) == 4
    assert min_distance(g1) == 1


def test_min_distance_brute_force_oracle(g2, mds24):
    # Full q**k enumeration, including scalar multiples, as the slow oracle.
    for g in (g2, mds24):
        ctx, k, n = g.ctx, g.rows, g.cols
        best = n
        for msg in itertools.product(range(ctx.q), repeat=k):
            if not any(msg):
                continue
            weight = 0
            for j in range(n):
                acc = 0
                for m, c in zip(msg, g.column(j)):
                    acc = ctx.add(acc, ctx.mul(m, c))
                if acc:
                    weight += 1
            best = min(best, weight)
        assert min_distance(g) == best


def test_dual_matrix_properties(g1, g2, mds24, ident_parity):
    for g in (g1, g2, mds24, ident_parity):
        h = dual_matrix(g)
        assert h.rows == g.cols - g.rows
        assert rank(h) == h.rows
        ctx = g.ctx
        for r in range(g.rows):
            for hr in range(h.rows):
                acc = 0
                for a, b in zip(g.row(r), h.row(hr)):
                    acc = ctx.add(acc, ctx.mul(a, b))
                assert acc == 0


def test_dual_matrix_standard_form():
    f5 = make_field(5)
    g = FFMatrix.from_rows(f5, [[1, 0, 2, 3], [0, 1, 4, 1]])
    h = dual_matrix(g)
    # [I | P] pairs with [-P^T | I].
    assert h.row_list() == [[3, 1, 1, 0], [2, 4, 0, 1]]


def test_dual_min_distance_examples(g1, ident_parity, uniform36):
    assert dual_min_distance(ident_parity) == 4
    assert dual_min_distance(g1) == 2
    assert dual_min_distance(uniform36) == 2


def test_dual_min_distance_g2(g2):
    assert dual_min_distance(g2) == 3


def test_is_mds_examples(g1, mds24, ident_parity, nonsys_f7):
    assert is_mds(mds24)
    assert not is_mds(g1)
    assert is_mds(ident_parity)
    assert is_mds(nonsys_f7)


def test_is_mds_matches_singleton_equality(g1, g2, mds24, ident_parity, simplex37):
    for g in (g1, g2, mds24, ident_parity, simplex37):
        assert is_mds(g) == (min_distance(g) == g.cols - g.rows + 1)


def test_systematic_profile_examples(g1, g2, uniform36, skew_h):
    assert systematic_profile(uniform36) == (False, (0, 1, 0), False)
    is_sys, s, is_repl = systematic_profile(g1)
    assert (is_sys, s, is_repl) == (True, (3, 1), True)
    assert systematic_profile(g2) == (True, (1, 1, 1), False)
    assert systematic_profile(skew_h) == (False, (2, 1, 0), False)


def test_availability_examples(g2, ident_parity, simplex37):
    assert availability(simplex37) == 3
    assert availability(ident_parity) == 1
    # Three pairwise disjoint minimal sets exist for every object of g2
    # ({1},{5,6},{2,3,4} / {2},{3,5},{4,6} / {3},{2,5},{1,4,6}); a fourth is
    # impossible since the first family already uses all six columns.
    assert availability(g2) == 2


def test_availability_requires_systematic(uniform36):
    with pytest.raises(NotSystematic):
        availability(uniform36)


def test_availability_bounds_distance(g2, ident_parity, simplex37):
    for g in (g2, ident_parity, simplex37):
        assert min_distance(g) >= availability(g) + 1


def test_pg_hyperplane_stats(g1, ident_parity, mds24):
    stats, best = pg_hyperplane_stats(g1)
    assert best == 3
    assert ((0, 1), 3) in stats
    assert len(stats) == 3  # points of PG(1,2)

    stats, best = pg_hyperplane_stats(ident_parity)
    assert len(stats) == 7
    assert best == 2

    _, best = pg_hyperplane_stats(mds24)
    assert best == 1


def test_distance_equals_hyperplane_complement(g1, g2, mds24, ident_parity,
                                               simplex37, uniform36, skew_h):
    for g in (g1, g2, mds24, ident_parity, simplex37, uniform36, skew_h):
        _, best = pg_hyperplane_stats(g)
        assert min_distance(g) == g.cols - best


def test_rs_matrix_small():
    m = rs_matrix(2, 3, 5, 2)
    assert m.row_list() == [[1, 1, 1], [1, 2, 4]]

    m = rs_matrix(2, 4, 5, 2)
    cols = [m.column(j) for j in range(4)]
    assert len(set(cols)) == 4
    assert is_mds(m)


def test_rs_matrix_errors():
    with pytest.raises(FieldTooSmall):
        rs_matrix(2, 5, 5, 2)
    with pytest.raises(NotPrimitive):
        rs_matrix(2, 3, 5, 4)  # 4 has order 2 mod 5


def test_rs_matrix_every_a_columns_independent():
    m = rs_matrix(3, 6, 11, 2)
    assert is_mds(m)


def test_rs_recovery_sets_are_all_a_subsets():
    import math
    # For a = 2 any q > b works; for larger a keep b <= (q-1)/2 so that no
    # two evaluation points sum to zero (otherwise a middle object becomes
    # recoverable from a smaller set).
    for a, b, q, alpha in [(2, 4, 5, 2), (2, 6, 7, 3), (3, 5, 11, 2)]:
        system = minimal_recovery_system(rs_matrix(a, b, q, alpha))
        expected = set(itertools.combinations(range(1, b + 1), a))
        for coll in system.sets:
            assert set(coll) == expected
            assert len(coll) == math.comb(b, a)


def test_rs_middle_object_can_beat_the_subset_size():
    # Counterexample to the all-a-subsets pattern outside the safe regime:
    # over F_7 with all six powers as columns, 3 + 4 = 0 makes e_2
    # recoverable from a pair, so object 2 has minimal sets of size 2.
    system = minimal_recovery_system(rs_matrix(3, 6, 7, 3))
    sizes = {len(r) for r in system.sets[1]}
    assert 2 in sizes
    assert system.m_per_object[1] < 20


def test_systematic_mds_fixture():
    for k, n, q in [(2, 4, 5), (2, 6, 7), (3, 6, 7), (3, 9, 11)]:
        g = systematic_mds_matrix(k, n, q)
        is_sys, _, _ = systematic_profile(g)
        assert is_sys
        assert is_mds(g)
        assert min_distance(g) == n - k + 1


def test_profile_assembly(g2):
    p = profile(g2)
    assert (p.n, p.k, p.q) == (6, 3, 3)
    assert p.d == 3 and p.d_dual == 3
    assert not p.is_mds and p.is_systematic and not p.is_replication
    assert p.s == (1, 1, 1)
    assert p.availability_t == 2
    assert p.d == p.n - p.max_hyperplane_points
