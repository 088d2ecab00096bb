"""Finite field arithmetic and exact linear algebra over F_q.

Elements of F_q with q = p**e are encoded as integers in 0..q-1, read as
base-p digit strings: the integer sum(c_i * p**i) stands for the polynomial
sum(c_i * x**i) in F_p[x] / (modulus).  With e = 1 this makes prime-field
arithmetic the plain mod-p case with zero overhead.  Extension fields need
a caller-supplied monic irreducible modulus; no Conway polynomial table is
shipped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import guards
from .errors import (
    DimensionMismatch,
    MissingModulus,
    NotPrime,
    ReducibleModulus,
    ValidationError,
)

MAX_FIELD_ORDER = 2 ** 16


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _poly_trim(poly: list[int]) -> list[int]:
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _poly_mod(num: list[int], den: Sequence[int], p: int) -> list[int]:
    """Remainder of num by monic den, coefficients mod p."""
    num = list(num)
    dd = len(den) - 1
    while len(num) - 1 >= dd and num:
        lead = num[-1]
        shift = len(num) - 1 - dd
        for i, c in enumerate(den):
            num[shift + i] = (num[shift + i] - lead * c) % p
        _poly_trim(num)
        if not num:
            break
    return num


def _monic_polys(degree: int, p: int) -> Iterable[list[int]]:
    for code in range(p ** degree):
        coeffs = []
        v = code
        for _ in range(degree):
            coeffs.append(v % p)
            v //= p
        coeffs.append(1)
        yield coeffs


@dataclass(frozen=True)
class FieldContext:
    """Arithmetic context for F_q, q = p**e.  Immutable and shareable."""

    q: int
    p: int
    e: int
    modulus: tuple[int, ...] | None = None
    _mul_table: tuple[tuple[int, ...], ...] | None = field(
        default=None, repr=False, compare=False)

    # -- element arithmetic on integer codes --

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        result = 0
        shift = 1
        while a or b:
            result += ((a + b) % self.p) * shift
            a //= self.p
            b //= self.p
            shift *= self.p
        return result

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        result = 0
        shift = 1
        while a:
            result += (-a % self.p) * shift
            a //= self.p
            shift *= self.p
        return result

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        if self._mul_table is not None:
            return self._mul_table[a][b]
        return self._mul_slow(a, b)

    def _mul_slow(self, a: int, b: int) -> int:
        pa = self._digits(a)
        pb = self._digits(b)
        prod = [0] * (len(pa) + len(pb) - 1) if pa and pb else []
        for i, ca in enumerate(pa):
            for j, cb in enumerate(pb):
                prod[i + j] = (prod[i + j] + ca * cb) % self.p
        return self._code(_poly_mod(prod, self.modulus, self.p))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, exp: int) -> int:
        if exp < 0:
            return self.pow(self.inv(a), -exp)
        result = 1
        base = a
        while exp:
            if exp & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            exp >>= 1
        return result

    def elements(self) -> range:
        return range(self.q)

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ValidationError("0 has no multiplicative order")
        order = 1
        acc = a
        while acc != 1:
            acc = self.mul(acc, a)
            order += 1
        return order

    def _digits(self, a: int) -> list[int]:
        out = []
        while a:
            out.append(a % self.p)
            a //= self.p
        return out

    def _code(self, poly: Sequence[int]) -> int:
        code = 0
        for c in reversed(list(poly)):
            code = code * self.p + c
        return code


def make_field(p: int, e: int = 1, modulus: Sequence[int] | None = None) -> FieldContext:
    """Build a verified F_{p**e} context.

    For e > 1 `modulus` is the coefficient list (constant term first) of a
    monic degree-e polynomial over F_p; irreducibility is checked by trial
    division against all monic polynomials of degree at most e//2.
    """
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise ValidationError(f"extension degree must be >= 1, got {e}")
    q = p ** e
    if q > MAX_FIELD_ORDER:
        raise ValidationError(f"field order {q} exceeds supported maximum {MAX_FIELD_ORDER}")
    if e == 1:
        if modulus is not None:
            raise ValidationError("prime fields take no modulus")
        return FieldContext(q=q, p=p, e=1)
    if modulus is None:
        raise MissingModulus(f"extension degree {e} needs an explicit modulus")
    mod = tuple(c % p for c in modulus)
    if len(mod) != e + 1 or mod[-1] != 1:
        raise ValidationError(f"modulus must be monic of degree {e}")
    for d in range(1, e // 2 + 1):
        for candidate in _monic_polys(d, p):
            if not _poly_mod(list(mod), candidate, p):
                raise ReducibleModulus(
                    f"modulus {list(mod)} divisible by a degree-{d} factor")
    ctx = FieldContext(q=q, p=p, e=e, modulus=mod)
    if q <= 256:
        table = tuple(tuple(ctx._mul_slow(a, b) for b in range(q)) for a in range(q))
        object.__setattr__(ctx, "_mul_table", table)
    return ctx


@dataclass(frozen=True)
class FFMatrix:
    """Dense matrix over a FieldContext, row-major integer codes."""

    ctx: FieldContext
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}")
        q = self.ctx.q
        for v in self.entries:
            if not 0 <= v < q:
                raise ValidationError(f"entry {v} outside field of order {q}")

    @classmethod
    def from_rows(cls, ctx: FieldContext, rows: Sequence[Sequence[int]]) -> "FFMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise DimensionMismatch("ragged rows")
            flat.extend(int(v) % ctx.q if ctx.e == 1 else int(v) for v in row)
        return cls(ctx=ctx, rows=r, cols=c, entries=tuple(flat))

    def entry(self, r: int, c: int) -> int:
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> tuple[int, ...]:
        return self.entries[r * self.cols:(r + 1) * self.cols]

    def column(self, c: int) -> tuple[int, ...]:
        return tuple(self.entries[r * self.cols + c] for r in range(self.rows))

    def row_list(self) -> list[list[int]]:
        return [list(self.row(r)) for r in range(self.rows)]


def rref(m: FFMatrix) -> tuple[FFMatrix, tuple[int, ...]]:
    """Reduced row echelon form and 0-based pivot columns.

    Elimination is deterministic: the pivot for each column is the surviving
    row with the smallest index.
    """
    ctx = m.ctx
    a = m.row_list()
    pivots: list[int] = []
    pr = 0
    for col in range(m.cols):
        pivot_row = None
        for r in range(pr, m.rows):
            if a[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        a[pr], a[pivot_row] = a[pivot_row], a[pr]
        inv = ctx.inv(a[pr][col])
        a[pr] = [ctx.mul(inv, v) for v in a[pr]]
        for r in range(m.rows):
            if r != pr and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [ctx.sub(v, ctx.mul(factor, w)) for v, w in zip(a[r], a[pr])]
        pivots.append(col)
        pr += 1
        if pr == m.rows:
            break
    flat = tuple(v for row in a for v in row)
    return FFMatrix(ctx=ctx, rows=m.rows, cols=m.cols, entries=flat), tuple(pivots)


def rank(m: FFMatrix) -> int:
    return len(rref(m)[1])


def in_span(ctx: FieldContext, columns: Sequence[Sequence[int]], target: Sequence[int],
            ) -> tuple[bool, tuple[int, ...] | None]:
    """Decide target in span(columns) over F_q; on success return one witness.

    The witness w satisfies sum_j w[j] * columns[j] == target exactly.
    """
    dim = len(target)
    for col in columns:
        if len(col) != dim:
            raise DimensionMismatch("column length differs from target length")
    if not columns:
        if all(v == 0 for v in target):
            return True, ()
        return False, None
    ncols = len(columns)
    aug_rows = [[columns[j][i] for j in range(ncols)] + [target[i]] for i in range(dim)]
    aug = FFMatrix.from_rows(ctx, aug_rows)
    red, pivots = rref(aug)
    if ncols in pivots:
        return False, None
    coeffs = [0] * ncols
    for r, col in enumerate(pivots):
        coeffs[col] = red.entry(r, ncols)
    return True, tuple(coeffs)


def guard_enumeration(count: int, where: str) -> None:
    guards.check_too_large(count, guards.CODEWORD_ENUM, where)
