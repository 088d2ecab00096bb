"""Relaxed knapsack polytopes: exact volume and Dantzig's greedy maximum.

The polytope is {x in [0,1]^m : y.x <= cap} for strictly positive y.  Its
volume has a signed closed form (alternating sum of cap - y.x powers over
the feasible binary points), and linear maximization over it is solved by
the classical greedy rule: sort by c_j / y_j, fill to the capacity, fill
the breaking coordinate fractionally.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Sequence

from . import guards
from .errors import NegativeObjective, ValidationError


def knapsack_volume(y: Sequence, cap) -> Fraction:
    """Volume of {x in [0,1]^m : y.x <= cap}, exact.

    Evaluates sum over binary x with y.x <= cap of (-1)^wt(x) (cap - y.x)^m,
    scaled by 1 / (m! * prod y_i).
    """
    yq = [Fraction(v) for v in y]
    capq = Fraction(cap)
    m = len(yq)
    if any(v <= 0 for v in yq):
        raise ValidationError("knapsack weights must be strictly positive")
    guards.check_too_large(m, guards.KNAPSACK_DIM, "knapsack_volume")
    total = Fraction(0)

    def walk(j: int, weight: Fraction, parity: int):
        nonlocal total
        if j == m:
            total += parity * (capq - weight) ** m
            return
        walk(j + 1, weight, parity)
        w2 = weight + yq[j]
        if w2 <= capq:
            walk(j + 1, w2, -parity)

    walk(0, Fraction(0), 1)
    denom = factorial(m)
    for v in yq:
        denom *= v
    return total / denom


def dantzig_max(c: Sequence, y: Sequence, cap) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Greedy maximum of c.x over {x in [0,1]^m : y.x <= cap} with c, y >= 0.

    Indices are ranked by c_j / y_j, descending, ties broken by smallest
    index.  When the total weight never exceeds cap the all-ones point is
    optimal; otherwise the first overflowing coordinate is filled
    fractionally.  Returns the exact optimal value and the maximizer.
    """
    cq = [Fraction(v) for v in c]
    yq = [Fraction(v) for v in y]
    capq = Fraction(cap)
    if len(cq) != len(yq):
        raise ValidationError("objective and weight lengths differ")
    if any(v < 0 for v in cq):
        raise NegativeObjective("dantzig_max requires a componentwise nonnegative objective")
    if any(v <= 0 for v in yq):
        raise ValidationError("knapsack weights must be strictly positive")
    m = len(cq)
    order = sorted(range(m), key=lambda j: (-(cq[j] / yq[j]), j))
    x = [Fraction(0)] * m
    value = Fraction(0)
    weight = Fraction(0)
    for j in order:
        if weight + yq[j] > capq:
            sigma = (capq - weight) / yq[j]
            x[j] = sigma
            value += cq[j] * sigma
            return value, tuple(x)
        x[j] = Fraction(1)
        weight += yq[j]
        value += cq[j]
    return value, tuple(x)
