"""Enumeration guards.

Every brute-force enumeration in the package is capped.  Guards fail loudly
(GuardError) instead of silently degrading, and every limit can be scaled
with the SRR_GUARD_SCALE environment variable (a positive float multiplier).
"""

from __future__ import annotations

import os

from .errors import Explosion, TooLarge, TooManyBases

# Baseline limits, before SRR_GUARD_SCALE is applied.
CODEWORD_ENUM = 2 ** 24        # q**k codeword enumeration
PROJECTIVE_POINTS = 2 ** 20    # hyperplanes of PG(k-1, q)
SUBSET_GROUND = 20             # n for 2**n subset enumerations
FM_CONSTRAINTS = 50_000        # Fourier-Motzkin intermediate rows
BASIS_COMBINATIONS = 200_000   # C(rows, dim) in vertex enumeration
KNAPSACK_DIM = 24              # {0,1}**m signed volume sum
ONE_SHOT_WORK = 72             # m(R) * s for integer allocation search
CUT_ROUNDS = 5_000             # separating cuts in projection-by-cuts


def scale() -> float:
    raw = os.environ.get("SRR_GUARD_SCALE", "")
    if not raw:
        return 1.0
    try:
        value = float(raw)
    except ValueError:
        return 1.0
    return value if value > 0 else 1.0


def limit(base: int | float) -> float:
    return base * scale()


def check(kind: type, actual: int | float, base: int | float, where: str) -> None:
    """Raise `kind` if actual exceeds the scaled limit; message names the guard site."""
    lim = limit(base)
    if actual > lim:
        raise kind(f"{where}: size {actual} exceeds guard {lim:g} "
                   f"(set SRR_GUARD_SCALE to raise)")


def check_too_large(actual: int | float, base: int | float, where: str) -> None:
    check(TooLarge, actual, base, where)


def check_explosion(actual: int | float, base: int | float, where: str) -> None:
    check(Explosion, actual, base, where)


def check_bases(actual: int | float, base: int | float, where: str) -> None:
    check(TooManyBases, actual, base, where)
