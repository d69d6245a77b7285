"""Exact rational matrices, index sets, minors, and compound matrices.

Every entry is a :class:`fractions.Fraction`, so every sign decision made
downstream is exact; nothing in this package touches floating point.
Matrices and index sets are immutable after construction and safe to share
between threads.

Matrix text format (consumed by the CLI): the first line is the dimension
``n``, followed by ``n`` lines of ``n`` whitespace-separated rationals,
each written ``p``, ``-p``, or ``p/q`` with ``q > 0``. ``parse_matrix`` /
``render_matrix`` round-trip this format bit-exactly, and
``matrix_from_dict`` / ``matrix_to_dict`` do the same for the structured
form ``{"n": ..., "rows": [["1", "2"], ...]}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, lcm
from typing import Iterator, Sequence

Rational = Fraction

#: Operations that enumerate all minors refuse dimensions above this bound
#: unless the caller overrides it; the minor count grows as sum_k C(n,k)^2.
DEFAULT_ENUMERATION_GUARD = 12


class DimensionGuardError(ValueError):
    """An enumerating operation was asked for a dimension above its bound."""


class MatrixParseError(ValueError):
    """Malformed matrix text or document; carries a line/column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            message = f"{where}: {message}"
        super().__init__(message)


def check_enumeration_dim(n: int, max_dim: int | None = None) -> None:
    """Raise DimensionGuardError if n exceeds the minor-enumeration bound."""
    limit = DEFAULT_ENUMERATION_GUARD if max_dim is None else max_dim
    if n > limit:
        raise DimensionGuardError(
            f"dimension {n} exceeds the minor-enumeration bound {limit}; "
            "pass a larger max_dim to override"
        )


_RATIONAL_TOKEN = re.compile(r"-?[0-9]+(?:/[0-9]+)?\Z")


def parse_rational(token: str) -> Fraction:
    """Parse ``p``, ``-p``, or ``p/q`` (q > 0) into an exact Fraction."""
    if not _RATIONAL_TOKEN.match(token):
        raise ValueError(f"not a rational literal: {token!r}")
    if "/" in token:
        num, den = token.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator: {token!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(token))


def render_rational(value: Fraction) -> str:
    """Lowest-terms ``p/q``; plain ``p`` when the denominator is 1."""
    return str(value)


def _coerce_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(
        f"matrix entries must be exact rationals (int or Fraction), got {type(value).__name__}"
    )


@dataclass(frozen=True)
class IndexSet:
    """A strictly increasing subset of {1..n}, addressing rows/columns.

    Indices are 1-based. The empty set is allowed only where an order-0
    minor (conventionally 1) makes sense.
    """

    n: int
    members: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ambient dimension must be >= 1")
        members = tuple(int(m) for m in self.members)
        object.__setattr__(self, "members", members)
        prev = 0
        for m in members:
            if m <= prev:
                raise ValueError(f"members must be strictly increasing in 1..{self.n}, got {members}")
            prev = m
        if members and members[-1] > self.n:
            raise ValueError(f"member {members[-1]} out of range 1..{self.n}")

    @classmethod
    def of(cls, n: int, *members: int) -> "IndexSet":
        return cls(n, tuple(sorted(members)))

    def rank(self) -> int:
        """1-based position in the lexicographic order of equal-size subsets."""
        r = 0
        k = len(self.members)
        prev = 0
        for i, m in enumerate(self.members, start=1):
            for skipped in range(prev + 1, m):
                r += comb(self.n - skipped, k - i)
            prev = m
        return r + 1

    def complement(self) -> "IndexSet":
        inside = set(self.members)
        return IndexSet(self.n, tuple(i for i in range(1, self.n + 1) if i not in inside))

    def zero_based(self) -> tuple[int, ...]:
        return tuple(m - 1 for m in self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, item: int) -> bool:
        return item in self.members

    def __str__(self) -> str:
        return "{" + ",".join(str(m) for m in self.members) + "}"


def index_sets(n: int, k: int) -> Iterator[IndexSet]:
    """All size-k subsets of {1..n} in lexicographic order."""
    for combo in combinations(range(1, n + 1), k):
        yield IndexSet(n, combo)


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable square matrix of exact rationals (row-major tuples)."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(_coerce_rational(e) for e in row) for row in self.rows)
        if not rows:
            raise ValueError("matrix dimension must be at least 1")
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ValueError(f"matrix must be square; got a row of length {len(row)} with {n} rows")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence) -> "RationalMatrix":
        zero = Fraction(0)
        vals = [_coerce_rational(v) for v in values]
        n = len(vals)
        return cls(tuple(tuple(vals[i] if i == j else zero for j in range(n)) for i in range(n)))

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.n)), Fraction(0))

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(tuple(zip(*self.rows)))

    def scale_rows(self, factors: Sequence) -> "RationalMatrix":
        """Left-multiplication by diag(factors): row i is scaled by factors[i]."""
        if len(factors) != self.n:
            raise ValueError(f"need {self.n} row factors, got {len(factors)}")
        coerced = [_coerce_rational(f) for f in factors]
        return RationalMatrix(tuple(tuple(f * e for e in row) for f, row in zip(coerced, self.rows)))

    def submatrix(self, row_set: IndexSet, col_set: IndexSet) -> "RationalMatrix":
        if not row_set.members or not col_set.members:
            raise ValueError("submatrix selection must be nonempty")
        _check_in_range(self, row_set, col_set)
        return RationalMatrix(
            tuple(tuple(self.rows[i][j] for j in col_set.zero_based()) for i in row_set.zero_based())
        )

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        return RationalMatrix(
            tuple(tuple(x + y for x, y in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows))
        )

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        return mat_mul(self, other)


def mat_mul(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    """Exact matrix product; both operands must share the same dimension."""
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n}x{a.n} times {b.n}x{b.n}")
    cols = tuple(zip(*b.rows))
    return RationalMatrix(
        tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a.rows)
    )


def _bareiss_int(rows: list[list[int]]) -> int:
    """Fraction-free Bareiss elimination on an integer matrix."""
    n = len(rows)
    a = [row[:] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        pivot = next((r for r in range(k, n) if a[r][k] != 0), None)
        if pivot is None:
            return 0
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        pkk = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                # exact division: prev divides the 2x2 determinant by Sylvester's identity
                row_i[j] = (row_i[j] * pkk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pkk
    return sign * a[n - 1][n - 1]


def _det_rows(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant of a small row tuple; direct formulas up to 3x3, Bareiss above."""
    k = len(rows)
    if k == 0:
        return Fraction(1)
    if k == 1:
        return rows[0][0]
    if k == 2:
        (a, b), (c, d) = rows
        return a * d - b * c
    if k == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * e * i + b * f * g + c * d * h - c * e * g - b * d * i - a * f * h
    scale = 1
    int_rows = []
    for row in rows:
        row_lcm = 1
        for e in row:
            row_lcm = lcm(row_lcm, e.denominator)
        scale *= row_lcm
        int_rows.append([e.numerator * (row_lcm // e.denominator) for e in row])
    return Fraction(_bareiss_int(int_rows), scale)


def determinant(matrix: RationalMatrix) -> Fraction:
    """Exact determinant via fraction-free elimination.

    Denominators are cleared row by row, the integer matrix is reduced with
    Bareiss' identity-preserving recurrence, and the accumulated row scale
    is divided back out at the end.
    """
    return _det_rows(matrix.rows)


def cofactor_determinant(matrix: RationalMatrix) -> Fraction:
    """Naive cofactor-expansion determinant, kept as an independent cross-check.

    Exponential cost; intended for small matrices and for validating
    :func:`determinant`, never for production paths.
    """
    return _cofactor(matrix.rows)


def _cofactor(rows: Sequence[tuple[Fraction, ...]]) -> Fraction:
    k = len(rows)
    if k == 1:
        return rows[0][0]
    total = Fraction(0)
    head, tail = rows[0], rows[1:]
    sign = 1
    for j in range(k):
        coeff = head[j]
        if coeff:
            sub = tuple(row[:j] + row[j + 1:] for row in tail)
            total += sign * coeff * _cofactor(sub)
        sign = -sign
    return total


def _check_in_range(matrix: RationalMatrix, *sets: IndexSet) -> None:
    for index_set in sets:
        if index_set.members and index_set.members[-1] > matrix.n:
            raise ValueError(
                f"index {index_set.members[-1]} out of range for a {matrix.n}x{matrix.n} matrix"
            )


def minor(matrix: RationalMatrix, row_set: IndexSet, col_set: IndexSet) -> Fraction:
    """Determinant of the submatrix on rows ``row_set`` and columns ``col_set``.

    The order-0 minor (both sets empty) is 1 by convention.
    """
    if len(row_set) != len(col_set):
        raise ValueError(f"row and column sets must have equal size, got {len(row_set)} and {len(col_set)}")
    _check_in_range(matrix, row_set, col_set)
    if not row_set.members:
        return Fraction(1)
    rows = matrix.rows
    sub = tuple(tuple(rows[i][j] for j in col_set.zero_based()) for i in row_set.zero_based())
    return _det_rows(sub)


@dataclass(frozen=True)
class CompoundMatrix:
    """All order-j minors of a source matrix, indexed lexicographically.

    Entry (rank(a), rank(b)) is the minor on rows a, columns b, where rank
    is the 1-based lexicographic rank among size-j subsets.
    """

    source_n: int
    order: int
    entries: RationalMatrix

    @property
    def size(self) -> int:
        return self.entries.n

    def index_sets(self) -> tuple[IndexSet, ...]:
        return tuple(index_sets(self.source_n, self.order))

    def minor_at(self, row_set: IndexSet, col_set: IndexSet) -> Fraction:
        for index_set in (row_set, col_set):
            if index_set.n != self.source_n or len(index_set) != self.order:
                raise ValueError(
                    f"index sets must have size {self.order} in ambient dimension {self.source_n}"
                )
        return self.entries.rows[row_set.rank() - 1][col_set.rank() - 1]

    def trace(self) -> Fraction:
        return self.entries.trace()


def compound(matrix: RationalMatrix, order: int, max_dim: int | None = None) -> CompoundMatrix:
    """The order-j compound: the C(n,j) x C(n,j) matrix of all order-j minors."""
    n = matrix.n
    if not 1 <= order <= n:
        raise ValueError(f"compound order must be in 1..{n}, got {order}")
    check_enumeration_dim(n, max_dim)
    subsets = list(combinations(range(n), order))
    rows = matrix.rows
    entries = tuple(
        tuple(_det_rows(tuple(tuple(rows[i][j] for j in cols) for i in rws)) for cols in subsets)
        for rws in subsets
    )
    return CompoundMatrix(source_n=n, order=order, entries=RationalMatrix(entries))


def zero_rows_outside(matrix: RationalMatrix, alpha: IndexSet) -> RationalMatrix:
    """Copy of the matrix with every row outside ``alpha`` replaced by zeros.

    This is the exact limit of scaling the outside rows by epsilon as
    epsilon goes to 0. ``alpha`` must be nonempty.
    """
    if not alpha.members:
        raise ValueError("alpha must be a nonempty index set")
    _check_in_range(matrix, alpha)
    keep = set(alpha.zero_based())
    zero = Fraction(0)
    rows = tuple(
        row if i in keep else tuple(zero for _ in row) for i, row in enumerate(matrix.rows)
    )
    return RationalMatrix(rows)


# ---------------------------------------------------------------------------
# Text and structured-document formats


def parse_matrix(text: str) -> RationalMatrix:
    """Parse the matrix text format, reporting 1-based line/column on errors."""
    lines = text.splitlines()
    pos = 0

    def next_content_line() -> int | None:
        nonlocal pos
        while pos < len(lines) and lines[pos].strip() == "":
            pos += 1
        if pos >= len(lines):
            return None
        here = pos
        pos += 1
        return here

    header_idx = next_content_line()
    if header_idx is None:
        raise MatrixParseError("empty input, expected a dimension line", line=1, column=1)
    header = lines[header_idx].strip()
    if not header.isdigit() or int(header) < 1:
        raise MatrixParseError(f"expected a positive dimension, found {header!r}", line=header_idx + 1, column=1)
    n = int(header)

    rows = []
    for r in range(n):
        row_idx = next_content_line()
        if row_idx is None:
            raise MatrixParseError(f"expected {n} rows, found only {r}", line=len(lines) + 1, column=1)
        raw = lines[row_idx]
        tokens = list(re.finditer(r"\S+", raw))
        if len(tokens) != n:
            raise MatrixParseError(
                f"expected {n} entries in row {r + 1}, found {len(tokens)}",
                line=row_idx + 1,
                column=(tokens[-1].start() + 1 if tokens else 1),
            )
        row = []
        for match in tokens:
            try:
                row.append(parse_rational(match.group()))
            except ValueError as exc:
                raise MatrixParseError(str(exc), line=row_idx + 1, column=match.start() + 1) from None
        rows.append(tuple(row))

    trailing = next_content_line()
    if trailing is not None:
        raise MatrixParseError("unexpected content after the last matrix row", line=trailing + 1, column=1)
    return RationalMatrix(tuple(rows))


def render_matrix(matrix: RationalMatrix) -> str:
    lines = [str(matrix.n)]
    lines.extend(" ".join(render_rational(e) for e in row) for row in matrix.rows)
    return "\n".join(lines) + "\n"


def matrix_to_dict(matrix: RationalMatrix) -> dict:
    return {
        "n": matrix.n,
        "rows": [[render_rational(e) for e in row] for row in matrix.rows],
    }


def matrix_from_dict(document: dict) -> RationalMatrix:
    """Parse the structured form ``{"n": ..., "rows": [[str, ...], ...]}``."""
    if not isinstance(document, dict):
        raise MatrixParseError(f"expected an object, got {type(document).__name__}")
    n = document.get("n")
    rows = document.get("rows")
    if not isinstance(n, int) or n < 1:
        raise MatrixParseError(f"field 'n' must be a positive integer, got {n!r}")
    if not isinstance(rows, list) or len(rows) != n:
        raise MatrixParseError(f"field 'rows' must be a list of {n} rows")
    parsed = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise MatrixParseError(f"rows[{i}] must be a list of {n} entries")
        out = []
        for j, token in enumerate(row):
            if not isinstance(token, str):
                raise MatrixParseError(f"rows[{i}][{j}] must be a rational string, got {token!r}")
            try:
                out.append(parse_rational(token))
            except ValueError as exc:
                raise MatrixParseError(f"rows[{i}][{j}]: {exc}") from None
        parsed.append(tuple(out))
    return RationalMatrix(tuple(parsed))
