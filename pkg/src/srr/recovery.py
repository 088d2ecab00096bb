"""Recovery sets and recovery systems.

A recovery set for object i is a set of column indices whose span contains
the standard basis vector e_i.  Column and object indices are 1-based
throughout this module, matching the usual write-up of such systems; the
linear algebra underneath is 0-based.

The canonical system holds, per object, exactly the inclusion-minimal
recovery sets, listed by cardinality and then lexicographically.  The full
upward-closed family is never materialized; it is represented implicitly by
the minimal sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import guards
from .errors import IndexOutOfRange, NotARecoverySet, ValidationError
from .fields import FFMatrix, in_span

RecoverySet = tuple[int, ...]


@dataclass(frozen=True)
class RecoverySystem:
    """k nonempty collections of recovery sets, one per object."""

    k: int
    n: int
    sets: tuple[tuple[RecoverySet, ...], ...]
    origin: str = "user-supplied"

    def __post_init__(self):
        if len(self.sets) != self.k:
            raise ValidationError("need one collection per object")
        for i, coll in enumerate(self.sets, start=1):
            if not coll:
                raise ValidationError(f"object {i} has no recovery sets")
            for rset in coll:
                if not rset:
                    raise ValidationError(f"object {i} has an empty recovery set")
                if list(rset) != sorted(set(rset)):
                    raise ValidationError(f"recovery set {rset} not strictly increasing")
                if rset[0] < 1 or rset[-1] > self.n:
                    raise IndexOutOfRange(f"recovery set {rset} outside 1..{self.n}")
            if len(set(coll)) != len(coll):
                raise ValidationError(f"object {i} lists a duplicate recovery set")

    @property
    def m_per_object(self) -> tuple[int, ...]:
        return tuple(len(coll) for coll in self.sets)

    @property
    def m(self) -> int:
        """Total coordinate count of the allocation polytope."""
        return sum(len(coll) for coll in self.sets)

    def set_sizes(self) -> tuple[int, ...]:
        """Recovery-set cardinalities in canonical coordinate order."""
        return tuple(len(r) for coll in self.sets for r in coll)

    def to_json(self) -> list[dict]:
        return [{"object": i, "sets": [list(r) for r in coll]}
                for i, coll in enumerate(self.sets, start=1)]

    @classmethod
    def from_json(cls, data: list[dict], n: int, origin: str = "user-supplied",
                  ) -> "RecoverySystem":
        ordered = sorted(data, key=lambda item: item["object"])
        sets = tuple(tuple(tuple(r) for r in item["sets"]) for item in ordered)
        return cls(k=len(ordered), n=n, sets=sets, origin=origin)


def _column(g: FFMatrix, index_1based: int) -> tuple[int, ...]:
    return g.column(index_1based - 1)


def _unit(k: int, i_1based: int) -> tuple[int, ...]:
    return tuple(1 if j == i_1based - 1 else 0 for j in range(k))


def is_recovery_set(g: FFMatrix, i: int, rset: RecoverySet) -> bool:
    """True iff e_i lies in the span of the columns indexed by rset."""
    if not 1 <= i <= g.rows:
        raise IndexOutOfRange(f"object index {i} outside 1..{g.rows}")
    for v in rset:
        if not 1 <= v <= g.cols:
            raise IndexOutOfRange(f"column index {v} outside 1..{g.cols}")
    columns = [_column(g, v) for v in rset]
    ok, _ = in_span(g.ctx, columns, _unit(g.rows, i))
    return ok


def is_minimal(g: FFMatrix, i: int, rset: RecoverySet) -> bool:
    """True iff rset is a recovery set for i with no proper recovery subset.

    Span monotonicity means it suffices to test the subsets obtained by
    removing a single index.
    """
    if not is_recovery_set(g, i, rset):
        raise NotARecoverySet(f"{rset} does not recover object {i}")
    for drop in range(len(rset)):
        sub = rset[:drop] + rset[drop + 1:]
        if sub and is_recovery_set(g, i, sub):
            return False
    return True


def minimal_recovery_system(g: FFMatrix) -> RecoverySystem:
    """The canonical system of all i-minimal recovery sets of G.

    Subsets are scanned by increasing cardinality, lexicographically within
    a cardinality; a subset is kept iff it is a recovery set containing no
    previously kept set.  Minimal sets have linearly independent columns,
    so cardinalities above k never occur.
    """
    from .fields import rank, rref

    k, n = g.rows, g.cols
    guards.check_too_large(n, guards.SUBSET_GROUND, "minimal_recovery_system")
    if rank(g) != k:
        raise ValidationError(f"matrix must have full rank {k}")
    all_sets = []
    for i in range(1, k + 1):
        target = _unit(k, i)
        kept: list[RecoverySet] = []
        kept_masks: list[int] = []
        for size in range(1, k + 1):
            for combo in itertools.combinations(range(1, n + 1), size):
                mask = 0
                for v in combo:
                    mask |= 1 << v
                if any(km & mask == km for km in kept_masks):
                    continue
                columns = [_column(g, v) for v in combo]
                ok, _ = in_span(g.ctx, columns, target)
                if ok:
                    kept.append(combo)
                    kept_masks.append(mask)
        all_sets.append(tuple(kept))
    return RecoverySystem(k=k, n=n, sets=tuple(all_sets), origin="minimal-of-G")


def validate_user_system(g: FFMatrix, system: RecoverySystem) -> None:
    """Check a user-supplied G-system: nonempty collections of true recovery sets."""
    if system.k != g.rows or system.n != g.cols:
        raise ValidationError("system shape does not match the matrix")
    for i, coll in enumerate(system.sets, start=1):
        for rset in coll:
            if not is_recovery_set(g, i, rset):
                raise NotARecoverySet(f"{rset} does not recover object {i}")


def all_recovery_supersets_count(g: FFMatrix, i: int) -> int:
    """|R_i^all(G)| by inclusion-exclusion over the upward closure of R_i^min."""
    guards.check_too_large(g.cols, guards.SUBSET_GROUND, "all_recovery_supersets_count")
    system = minimal_recovery_system(g)
    minimal = system.sets[i - 1]
    guards.check_too_large(len(minimal), guards.SUBSET_GROUND,
                           "all_recovery_supersets_count")
    masks = []
    for rset in minimal:
        mask = 0
        for v in rset:
            mask |= 1 << v
        masks.append(mask)
    n = g.cols
    total = 0
    for choose in range(1, len(masks) + 1):
        for combo in itertools.combinations(masks, choose):
            union = 0
            for m in combo:
                union |= m
            size = bin(union).count("1")
            term = 2 ** (n - size)
            total += term if choose % 2 == 1 else -term
    return total


def subsystem(system: RecoverySystem, keep: dict[int, list[RecoverySet]]) -> RecoverySystem:
    """A sub-system retaining, per object, only the listed recovery sets."""
    new_sets = []
    for i, coll in enumerate(system.sets, start=1):
        if i in keep:
            chosen = tuple(r for r in coll if r in set(map(tuple, keep[i])))
        else:
            chosen = coll
        new_sets.append(chosen)
    return RecoverySystem(k=system.k, n=system.n, sets=tuple(new_sets),
                          origin="user-supplied")
