"""Rational scalar conventions.

All public interfaces speak `fractions.Fraction`.  The LP / projection
kernels run on `gmpy2.mpq` when gmpy2 is importable (about an order of
magnitude faster) and fall back to Fraction otherwise; `qq` converts into
the kernel scalar and `to_fraction` converts back out.  Serialized form is
the string "p/q" (or "p" when the denominator is 1), never a float.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError

try:
    from gmpy2 import mpq as _mpq
    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - gmpy2 is normally present
    _mpq = Fraction
    HAVE_GMPY2 = False

#: Kernel scalar constructor. Values interoperate with Fraction arithmetic.
qq = _mpq

QZERO = qq(0)
QONE = qq(1)


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    # gmpy2 numerators are mpz; coerce so the Fraction holds plain ints.
    return Fraction(int(x.numerator), int(x.denominator))


def format_rational(x) -> str:
    x = to_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num.strip()), int(den.strip()))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational literal: {text!r}") from exc
