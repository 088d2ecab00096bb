"""The service rate region and its allocation polytope.

A demand vector (lambda_1, ..., lambda_k) is servable when each lambda_i
can be split across object i's recovery sets without pushing any server's
total load above its capacity mu.  The allocation polytope collects the
feasible splittings; the region is its image under per-object summation.
Everything here is exact: membership certificates are rational, integer
allocations come from the lcm-of-denominators scaling, and the region
geometry is produced as matched H- and V-representations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm
from typing import Sequence

from . import guards
from .errors import (
    DemandTooLarge,
    RegimeViolation,
    ValidationError,
)
from .lp import feasible_point, solve_standard
from .polytope import HPolytope, VPolytope, enumerate_vertices, volume
from .project import fm_project, project_by_cuts
from .ratio import format_rational
from .recovery import RecoverySet, RecoverySystem

FM_COORD_LIMIT = 12  # above this, region_polytope switches to the cut method


@dataclass(frozen=True)
class AllocationIndex:
    """Canonical coordinate order of the allocation polytope.

    Coordinates are the pairs (object i, recovery set R), concatenated over
    objects in the recovery system's stored order.  The order is stable for
    a given RecoverySystem, so serialized allocations are reproducible.
    """

    system: RecoverySystem
    pairs: tuple[tuple[int, RecoverySet], ...]

    @classmethod
    def for_system(cls, system: RecoverySystem) -> "AllocationIndex":
        pairs = tuple((i, rset)
                      for i, coll in enumerate(system.sets, start=1)
                      for rset in coll)
        return cls(system=system, pairs=pairs)

    @property
    def m(self) -> int:
        return len(self.pairs)

    def block(self, i: int) -> range:
        start = sum(len(self.system.sets[j]) for j in range(i - 1))
        return range(start, start + len(self.system.sets[i - 1]))

    def position(self, i: int, rset: RecoverySet) -> int:
        return self.block(i)[0] + self.system.sets[i - 1].index(tuple(rset))


@dataclass(frozen=True)
class FractionalAllocation:
    """Rational request splitting; feasible when every server load is <= mu."""

    index: AllocationIndex
    values: tuple[Fraction, ...]
    mu: Fraction = Fraction(1)

    def __post_init__(self):
        if len(self.values) != self.index.m:
            raise ValidationError("allocation length differs from index size")
        if any(v < 0 for v in self.values):
            raise ValidationError("allocation values must be nonnegative")

    def demand(self) -> tuple[Fraction, ...]:
        out = []
        for i in range(1, self.index.system.k + 1):
            out.append(sum((self.values[p] for p in self.index.block(i)),
                           Fraction(0)))
        return tuple(out)

    def server_loads(self) -> tuple[Fraction, ...]:
        n = self.index.system.n
        loads = [Fraction(0)] * n
        for (i, rset), v in zip(self.index.pairs, self.values):
            if v:
                for server in rset:
                    loads[server - 1] += v
        return tuple(loads)

    def is_feasible(self) -> bool:
        return all(load <= self.mu for load in self.server_loads())

    def to_json(self) -> list[dict]:
        return [{"object": i, "set": list(rset), "value": format_rational(v)}
                for (i, rset), v in zip(self.index.pairs, self.values) if v]


@dataclass(frozen=True)
class IntegerAllocation:
    """Natural-number usage counts over s uses of the system."""

    index: AllocationIndex
    counts: tuple[int, ...]
    s: int

    def delta_loads(self) -> tuple[int, ...]:
        n = self.index.system.n
        loads = [0] * n
        for (i, rset), v in zip(self.index.pairs, self.counts):
            if v:
                for server in rset:
                    loads[server - 1] += v
        return tuple(loads)

    def rate(self) -> tuple[int, ...]:
        out = []
        for i in range(1, self.index.system.k + 1):
            out.append(sum(self.counts[p] for p in self.index.block(i)))
        return tuple(out)

    def is_feasible(self) -> bool:
        return all(load <= self.s for load in self.delta_loads())


@dataclass(frozen=True)
class MembershipResult:
    inside: bool
    allocation: FractionalAllocation | None = None
    separator: tuple[tuple[Fraction, ...], Fraction] | None = None


def _server_rows(index: AllocationIndex) -> list[list[Fraction]]:
    n = index.system.n
    rows = [[Fraction(0)] * index.m for _ in range(n)]
    for pos, (_, rset) in enumerate(index.pairs):
        for server in rset:
            rows[server - 1][pos] = Fraction(1)
    return rows


def _block_rows(index: AllocationIndex) -> list[list[Fraction]]:
    k = index.system.k
    rows = [[Fraction(0)] * index.m for _ in range(k)]
    for i in range(1, k + 1):
        for pos in index.block(i):
            rows[i - 1][pos] = Fraction(1)
    return rows


def allocation_polytope(system: RecoverySystem, mu=Fraction(1)) -> HPolytope:
    """H-representation of the feasible splittings: n capacity rows plus
    one nonnegativity row per coordinate."""
    index = AllocationIndex.for_system(system)
    mu = Fraction(mu)
    rows = _server_rows(index)
    rhs = [mu] * system.n
    for pos in range(index.m):
        row = [Fraction(0)] * index.m
        row[pos] = Fraction(-1)
        rows.append(row)
        rhs.append(Fraction(0))
    return HPolytope.from_rows(index.m, rows, rhs)


def srr_membership(system: RecoverySystem, mu, lam: Sequence) -> MembershipResult:
    """Exact membership of a demand vector, with a certificate either way.

    Inside: a rational feasible allocation realizing the demand.  Outside:
    a separating half-space (c, d) with c.x <= d on the whole region and
    c.lam > d.
    """
    index = AllocationIndex.for_system(system)
    mu = Fraction(mu)
    lamq = [Fraction(v) for v in lam]
    if len(lamq) != system.k:
        raise ValidationError(f"demand vector needs {system.k} entries")
    res = feasible_point(_server_rows(index), [mu] * system.n,
                         _block_rows(index), lamq)
    if res.status == "optimal":
        alloc = FractionalAllocation(index=index, values=res.x, mu=mu)
        return MembershipResult(inside=True, allocation=alloc)
    coeffs = tuple(-w for w in res.farkas_eq)
    rhs = sum((u * mu for u in res.farkas_ub), Fraction(0))
    return MembershipResult(inside=False, separator=(coeffs, rhs))


def to_integer_allocation(alloc: FractionalAllocation) -> tuple[int, IntegerAllocation]:
    """Scale a rational allocation by the lcm of its denominators.

    The result uses the system s times with integer counts and per-server
    contact numbers at most s; dividing by s recovers the original rates.
    Defined at capacity mu = 1.
    """
    if alloc.mu != 1:
        raise ValidationError("integerization is defined at capacity 1 "
                              "(normalize rates first)")
    s = lcm(*(v.denominator for v in alloc.values)) if alloc.values else 1
    counts = tuple(int(v * s) for v in alloc.values)
    integer = IntegerAllocation(index=alloc.index, counts=counts, s=s)
    if not integer.is_feasible():
        raise ValidationError("scaled allocation exceeds the contact budget; "
                              "input was not feasible")
    return s, integer


def one_shot_region(system: RecoverySystem, s: int) -> list[tuple[int, ...]]:
    """All integer rate vectors achievable in s uses (the set s * region_1).

    Exhaustive search over integer allocations with per-server contact
    counts at most s; vectors are returned deduplicated and sorted, not
    divided by s.
    """
    if s < 1:
        raise ValidationError("capacity s must be a positive integer")
    index = AllocationIndex.for_system(system)
    guards.check_too_large(index.m * s, guards.ONE_SHOT_WORK, "one_shot_region")
    n = system.n
    loads = [0] * n
    rates = [0] * system.k
    seen: set[tuple[int, ...]] = set()

    def walk(pos: int):
        if pos == index.m:
            seen.add(tuple(rates))
            return
        i, rset = index.pairs[pos]
        max_count = min(s - loads[server - 1] for server in rset)
        for count in range(max_count + 1):
            if count:
                for server in rset:
                    loads[server - 1] += 1
                rates[i - 1] += 1
            walk(pos + 1)
        for _ in range(max_count):
            for server in rset:
                loads[server - 1] -= 1
            rates[i - 1] -= 1

    walk(0)
    return sorted(seen)


def one_shot_witness(system: RecoverySystem, s: int,
                     target: Sequence[int]) -> IntegerAllocation | None:
    """One integer allocation with rate `target` and contact counts <= s,
    or None when no such allocation exists."""
    if s < 1:
        raise ValidationError("capacity s must be a positive integer")
    index = AllocationIndex.for_system(system)
    guards.check_too_large(index.m * s, guards.ONE_SHOT_WORK, "one_shot_witness")
    target = tuple(int(v) for v in target)
    if len(target) != system.k:
        raise ValidationError(f"rate vector needs {system.k} entries")
    n = system.n
    loads = [0] * n
    rates = [0] * system.k
    counts = [0] * index.m
    block_end = [max(index.block(i)) for i in range(1, system.k + 1)]

    def walk(pos: int):
        if pos == index.m:
            return tuple(rates) == target
        i, rset = index.pairs[pos]
        remaining = target[i - 1] - rates[i - 1]
        if remaining < 0:
            return False
        if pos == block_end[i - 1]:
            lo = hi = remaining  # last set of the block must close the rate
        else:
            lo, hi = 0, remaining
        hi = min(hi, *(s - loads[server - 1] for server in rset))
        for count in range(lo, hi + 1):
            counts[pos] = count
            for server in rset:
                loads[server - 1] += count
            rates[i - 1] += count
            if walk(pos + 1):
                return True
            for server in rset:
                loads[server - 1] -= count
            rates[i - 1] -= count
            counts[pos] = 0
        return False

    if walk(0):
        return IntegerAllocation(index=index, counts=tuple(counts), s=s)
    return None


@dataclass(frozen=True)
class RegionGeometry:
    hpoly: HPolytope
    vpoly: VPolytope


def axis_maxima(system: RecoverySystem, mu=Fraction(1)) -> tuple[Fraction, ...]:
    """Per-object axis maxima: the largest servable x with x*e_i in the region."""
    index = AllocationIndex.for_system(system)
    mu = Fraction(mu)
    server = _server_rows(index)
    blocks = _block_rows(index)
    out = []
    for i in range(1, system.k + 1):
        res = solve_standard(blocks[i - 1], server, [mu] * system.n, maximize=True)
        if res.status != "optimal":
            raise ValidationError("allocation polytope must be bounded")
        out.append(res.value)
    return tuple(out)


def region_polytope(system: RecoverySystem, mu=Fraction(1),
                    method: str = "auto") -> RegionGeometry:
    """Matched H- and V-representations of the service rate region.

    method "fm" projects the allocation polytope through the per-object
    summation map with Fourier-Motzkin elimination; "cuts" refines an outer
    approximation with separating half-spaces from membership certificates.
    Both are exact; "auto" picks by coordinate count.
    """
    mu = Fraction(mu)
    index = AllocationIndex.for_system(system)
    if method == "auto":
        method = "fm" if index.m <= FM_COORD_LIMIT else "cuts"
    if method == "fm":
        apoly = allocation_polytope(system, mu)
        hpoly = fm_project(apoly, lin_map=_block_rows(index))
        return RegionGeometry(hpoly=hpoly, vpoly=enumerate_vertices(hpoly))
    if method != "cuts":
        raise ValueError(f"unknown method {method!r}")

    def oracle(point):
        result = srr_membership(system, mu, point)
        return None if result.inside else result.separator

    hpoly, vpoly = project_by_cuts(system.k, axis_maxima(system, mu), oracle)
    return RegionGeometry(hpoly=hpoly, vpoly=vpoly)


@dataclass(frozen=True)
class RegionParams:
    max_sum: Fraction
    r_sums: dict[int, Fraction]
    axis_maxima: tuple[Fraction, ...]
    lambda_star: Fraction
    hypercube: Fraction
    simplex_delta: Fraction
    volume: Fraction | None = None


def region_params(system: RecoverySystem, rs: Sequence[int] = (),
                  mu=Fraction(1), with_volume: bool = False) -> RegionParams:
    """Shape parameters of the region.

    The max-sum capacity and axis maxima are single LPs over the lifted
    allocation program; the hypercube size ties all object rates to one
    variable and maximizes it; r-th power sums for r >= 2 are maximized
    over the vertex list (power sums are convex, so vertex maxima are
    global).
    """
    mu = Fraction(mu)
    index = AllocationIndex.for_system(system)
    server = _server_rows(index)
    cap = [mu] * system.n
    total = [Fraction(1)] * index.m
    res = solve_standard(total, server, cap, maximize=True)
    max_sum = res.value

    axes = axis_maxima(system, mu)
    lam_star = max(axes)
    delta = min(axes)

    # Hypercube: append the tied rate t as one extra variable.
    blocks = _block_rows(index)
    a_eq = [row + [Fraction(-1)] for row in blocks]
    b_eq = [Fraction(0)] * system.k
    a_ub = [row + [Fraction(0)] for row in server]
    obj = [Fraction(0)] * index.m + [Fraction(1)]
    res = solve_standard(obj, a_ub, cap, a_eq, b_eq, maximize=True)
    hypercube = res.value

    r_sums: dict[int, Fraction] = {}
    want = [r for r in rs if r != 1]
    if want:
        geometry = region_polytope(system, mu)
        for r in want:
            r_sums[r] = max(sum(v ** r for v in vertex)
                            for vertex in geometry.vpoly.vertices)
    for r in rs:
        if r == 1:
            r_sums[1] = max_sum

    vol = None
    if with_volume:
        geometry = region_polytope(system, mu)
        vol = volume(geometry.vpoly, geometry.hpoly).value

    return RegionParams(max_sum=max_sum, r_sums=r_sums, axis_maxima=axes,
                        lambda_star=lam_star, hypercube=hypercube,
                        simplex_delta=delta, volume=vol)


def mds_region_membership(k: int, n: int, lam: Sequence) -> bool:
    """Closed-form membership for the region of a systematic MDS matrix, n >= 2k.

    Uses the piecewise description with per-coordinate weight 1 below rate 1
    and k above it; no LP is involved.
    """
    if n < 2 * k:
        raise RegimeViolation(f"closed form requires n >= 2k, got n={n}, k={k}")
    lamq = [Fraction(v) for v in lam]
    if len(lamq) != k:
        raise ValidationError(f"demand vector needs {k} entries")
    if any(v < 0 for v in lamq):
        raise ValidationError("demand vectors are componentwise nonnegative")
    below = [i for i, v in enumerate(lamq) if v < 1]
    chi = [Fraction(1) if v < 1 else Fraction(k) for v in lamq]
    lhs = sum(c * v for c, v in zip(chi, lamq))
    return lhs <= n + (k - 1) * (k - len(below))


def closed_form_volumes(kind: str, n: int | None = None,
                        s: Sequence[int] | None = None) -> Fraction:
    """Closed-form region volumes: MDS k=2, MDS k=3, and replication."""
    if kind == "mds2":
        if n is None or n < 4:
            raise RegimeViolation("mds2 volume needs n >= 4")
        return Fraction(n * n + 4 * n, 8)
    if kind == "mds3":
        if n is None or n < 6:
            raise RegimeViolation("mds3 volume needs n >= 6")
        return Fraction(n ** 3 + 18 * n ** 2 + 54 * n - 18, 162)
    if kind == "replication":
        if not s:
            raise RegimeViolation("replication volume needs the per-object counts")
        out = Fraction(1)
        for v in s:
            if v < 1:
                raise RegimeViolation("replication counts must be positive")
            out *= v
        return out
    raise ValidationError(f"unknown volume kind {kind!r}")


def rs_uniform_allocation(a: int, b: int, q: int, alpha: int,
                          lam: Sequence) -> FractionalAllocation:
    """Uniform spreading over all C(b, a) recovery sets of the power matrix.

    Each object's rate is split evenly over all C(b, a) subsets of size a
    (every one of them decodes every object, since any a columns of the
    power matrix are independent); the load on every server is then
    (a/b) * sum(lam), so the allocation is feasible exactly when
    sum(lam) <= b/a.
    """
    import itertools

    from .codes import rs_matrix
    from .recovery import validate_user_system

    lamq = [Fraction(v) for v in lam]
    if len(lamq) != a:
        raise ValidationError(f"demand vector needs {a} entries")
    if any(v < 0 for v in lamq):
        raise ValidationError("demand vectors are componentwise nonnegative")
    if sum(lamq) > Fraction(b, a):
        raise DemandTooLarge(f"uniform spreading needs sum(lam) <= {b}/{a}")
    g = rs_matrix(a, b, q, alpha)
    subsets = tuple(itertools.combinations(range(1, b + 1), a))
    system = RecoverySystem(k=a, n=b, sets=tuple(subsets for _ in range(a)),
                            origin="user-supplied")
    validate_user_system(g, system)
    index = AllocationIndex.for_system(system)
    per_set = Fraction(1, comb(b, a))
    values = tuple(lamq[i - 1] * per_set for i, _ in index.pairs)
    return FractionalAllocation(index=index, values=values)
