"""Text formats for matrices, identifiers and polynomials.

F_q entries: a decimal digit for prime q <= 10, a decimal integer for larger
primes, and base-field coefficients joined by ``.`` (constant first) when q is
a proper prime power.  ``|`` may separate blocks and is ignored on read.
"""

from __future__ import annotations

import re
from typing import Sequence

from spreadec.field_tower import Field
from spreadec.matspace import Matrix, Subspace
from spreadec.spread_code import Gamma, SpreadParams

__all__ = [
    "ParseError",
    "format_element",
    "format_gamma",
    "format_matrix",
    "format_poly",
    "parse_element",
    "parse_gamma",
    "parse_matrix",
    "parse_poly",
]


class ParseError(ValueError):
    pass


def _digit_mode(F: Field) -> bool:
    return F.is_prime and F.order <= 10


def format_element(F: Field, a: int) -> str:
    if F.is_prime:
        return str(a)
    return ".".join(map(str, F.prime_digits(a)))


def parse_element(F: Field, token: str) -> int:
    try:
        if F.is_prime:
            value = int(token)
            if not 0 <= value < F.order:
                raise ParseError(f"{token!r} is not an element of {F.name}")
            return value
        parts = [int(x) for x in token.split(".")]
    except ValueError as exc:
        raise ParseError(f"bad field element {token!r}") from exc
    if len(parts) != F.degree or any(not 0 <= x < F.characteristic for x in parts):
        raise ParseError(f"bad field element {token!r} for {F.name}")
    return F.from_digits(parts)


def format_matrix(m: Matrix | Subspace, block: int | None = None) -> str:
    """One row per line; ``block`` inserts ``|`` every that many columns."""
    if isinstance(m, Subspace):
        m = m.matrix
    F = m.field
    sep = "" if _digit_mode(F) else " "
    lines = []
    for row in m.rows:
        tokens = [format_element(F, x) for x in row]
        if block:
            groups = [sep.join(tokens[i : i + block]) for i in range(0, len(tokens), block)]
            lines.append(f"{sep}|{sep}".join(groups))
        else:
            lines.append(sep.join(tokens))
    return "\n".join(lines)


def parse_matrix(text: str, F: Field, ncols: int | None = None) -> Matrix:
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        line = line.replace("|", " ")
        if _digit_mode(F):
            chars = re.sub(r"[\s,]", "", line)
            if not chars.isdigit():
                raise ParseError(f"bad matrix row {line!r}")
            rows.append([parse_element(F, c) for c in chars])
        else:
            rows.append([parse_element(F, tok) for tok in re.split(r"[\s,]+", line) if tok])
    if not rows:
        raise ParseError("empty matrix")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ParseError("rows have different lengths")
    if ncols is not None and width != ncols:
        raise ParseError(f"expected {ncols} columns, got {width}")
    return Matrix.of(F, rows, width)


def format_gamma(params: SpreadParams, g: Gamma) -> str:
    """``;``-separated coordinates, each the comma-separated F_q coefficients over alpha."""
    F, ext = params.field, params.ext
    return ";".join(",".join(format_element(F, c) for c in ext.digits(x)) for x in g.coords)


def parse_gamma(params: SpreadParams, text: str) -> Gamma:
    F, ext = params.field, params.ext
    coords = text.strip().split(";")
    if len(coords) != params.l:
        raise ParseError(f"gamma needs {params.l} coordinates, got {len(coords)}")
    values = []
    for c in coords:
        parts = [p.strip() for p in c.split(",")]
        if len(parts) != params.k:
            raise ParseError(f"coordinate {c!r} needs {params.k} coefficients")
        values.append(ext.from_digits([parse_element(F, p) for p in parts]))
    try:
        return Gamma(tuple(values))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_poly(coeffs: Sequence[int]) -> str:
    return ",".join(map(str, coeffs))


def parse_poly(text: str) -> tuple[int, ...]:
    """Comma-separated integer-encoded coefficients, constant term first."""
    try:
        coeffs = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ParseError(f"bad polynomial {text!r}") from exc
    if any(c < 0 for c in coeffs):
        raise ParseError(f"negative coefficient in {text!r}")
    return coeffs
