"""Matrix file format.

Line 1 is the header "q k n", optionally extended to
"q k n p e c0 c1 ... ce" for extension fields (modulus coefficients,
constant term first).  The next k non-comment lines hold n whitespace
separated element codes each.  '#' starts a comment anywhere.
"""

from __future__ import annotations

from .errors import ParseError, ValidationError
from .fields import FFMatrix, make_field, rank


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_matrix_file(text: str) -> FFMatrix:
    lines = list(_tokens(text))
    if not lines:
        raise ParseError("line 1: empty matrix file")
    lineno, header = lines[0]
    if len(header) not in (3, 5) and len(header) < 6:
        raise ParseError(f"line {lineno}: header must be 'q k n' "
                         "or 'q k n p e c0..ce'")
    try:
        q, k, n = (int(v) for v in header[:3])
    except ValueError as exc:
        raise ParseError(f"line {lineno}: header fields must be integers") from exc
    if len(header) == 3:
        ctx = make_field(q)
    else:
        try:
            p, e = int(header[3]), int(header[4])
            modulus = [int(v) for v in header[5:]]
        except ValueError as exc:
            raise ParseError(f"line {lineno}: extension header fields must be "
                             "integers") from exc
        if p ** e != q:
            raise ParseError(f"line {lineno}: q must equal p**e")
        ctx = make_field(p, e, modulus)
    rows = []
    for lineno, toks in lines[1:]:
        try:
            rows.append([int(v) for v in toks])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: matrix entries must be integers") from exc
        if len(rows[-1]) != n:
            raise ParseError(f"line {lineno}: expected {n} entries, got {len(toks)}")
    if len(rows) != k:
        raise ParseError(f"expected {k} matrix rows, found {len(rows)}")
    try:
        matrix = FFMatrix.from_rows(ctx, rows)
    except ValidationError as exc:
        raise ParseError(str(exc)) from exc
    validate_matrix(matrix)
    return matrix


def validate_matrix(matrix: FFMatrix) -> None:
    """Shared storage-model sanity: full rank and no zero column."""
    for j in range(matrix.cols):
        if all(v == 0 for v in matrix.column(j)):
            raise ValidationError(f"column {j + 1} is the zero vector")
    if rank(matrix) != matrix.rows:
        raise ValidationError(f"matrix rank is below {matrix.rows}")


def format_matrix_file(matrix: FFMatrix, comment: str | None = None) -> str:
    ctx = matrix.ctx
    lines = []
    if comment:
        lines.append(f"# {comment}")
    if ctx.e == 1:
        lines.append(f"{ctx.q} {matrix.rows} {matrix.cols}")
    else:
        mod = " ".join(str(c) for c in ctx.modulus)
        lines.append(f"{ctx.q} {matrix.rows} {matrix.cols} {ctx.p} {ctx.e} {mod}")
    for r in range(matrix.rows):
        lines.append(" ".join(str(v) for v in matrix.row(r)))
    return "\n".join(lines) + "\n"
