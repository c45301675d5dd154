"""Exact integer matrix values and reconstruction checks.

Everything here works on Python ints, so there is no wrapping; the
``MAX_ENTRY`` cap exists to keep the square/factorization routines at desk
scale and to make oversized input an explicit error instead of a slow one.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

MAX_ENTRY = 2**48


class ValidationError(ValueError):
    """Input violates a matrix invariant (negativity, PSD, symmetry, shape)."""


class RangeError(ValidationError):
    """Input exceeds the checked arithmetic range."""


def check_range(*values: int) -> None:
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool):
            raise ValidationError(f"expected an integer, got {v!r}")
        if abs(v) > MAX_ENTRY:
            raise RangeError(f"entry {v} exceeds checked range 2**48")


@dataclass(frozen=True)
class Mat2:
    """Symmetric 2x2 integer matrix ``[[a, b], [b, c]]``."""

    a: int
    b: int
    c: int

    @property
    def det(self) -> int:
        return self.a * self.c - self.b * self.b

    def swapped(self) -> Mat2:
        return Mat2(self.c, self.b, self.a)

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.b, self.c]]

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"


@dataclass(frozen=True)
class MatN:
    """Symmetric n x n integer matrix stored as a tuple of row tuples."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValidationError("matrix is not square")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> MatN:
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def from_mat2(cls, m: Mat2) -> MatN:
        return cls(((m.a, m.b), (m.b, m.c)))

    @property
    def n(self) -> int:
        return len(self.entries)

    def diagonal(self) -> list[int]:
        return [self.entries[i][i] for i in range(self.n)]

    def is_symmetric(self) -> bool:
        e = self.entries
        return all(e[i][j] == e[j][i] for i in range(self.n) for j in range(i))

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for row in self.entries for x in row)


@dataclass(frozen=True)
class Factorization:
    """Columns of a nonnegative integer V with ``A = V V^T``.

    Zero columns are dropped on construction since they never change the
    reconstructed matrix.
    """

    columns: tuple[tuple[int, ...], ...]
    method: str = ""
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        cols = tuple(tuple(int(x) for x in col) for col in self.columns)
        if cols and len({len(col) for col in cols}) != 1:
            raise ValidationError("columns have differing lengths")
        for col in cols:
            if any(x < 0 for x in col):
                raise ValidationError(f"negative entry in column {col}")
        object.__setattr__(self, "columns", tuple(c for c in cols if any(c)))

    def __len__(self) -> int:
        return len(self.columns)

    @property
    def size(self) -> int:
        return len(self.columns)

    def as_multiset(self) -> Counter:
        return Counter(self.columns)

    def same_columns(self, other: Factorization) -> bool:
        return self.as_multiset() == other.as_multiset()

    def to_dict(self) -> dict:
        return {
            "columns": [list(c) for c in self.columns],
            "count": self.size,
            "method": self.method,
        }


def is_dnn(m: Mat2) -> bool:
    a, b, c = m
    return a >= 0 and b >= 0 and c >= 0 and a * c >= b * b


def dnn_violation(m: Mat2) -> str | None:
    """Describe why ``m`` is not doubly nonnegative, or None if it is."""
    a, b, c = m
    neg = [name for name, v in zip("abc", (a, b, c)) if v < 0]
    if neg:
        return "not nonnegative: " + ", ".join(f"{k}={v}" for k, v in zip("abc", m) if k in neg)
    if a * c < b * b:
        return f"not PSD: {a}·{c} < {b * b}"
    return None


def require_dnn(m: Mat2) -> Mat2:
    check_range(m.a, m.b, m.c)
    msg = dnn_violation(m)
    if msg:
        raise ValidationError(msg)
    return m


def is_rank1_dnn(m: MatN) -> bool:
    """True iff ``m`` is zero or a rank-one PSD matrix.

    Raises ValidationError for non-symmetric or negative input.
    """
    if not m.is_symmetric():
        raise ValidationError("matrix is not symmetric")
    if not m.is_nonnegative():
        raise ValidationError("matrix has a negative entry")
    e = m.entries
    n = m.n
    return all(e[i][j] * e[i][j] == e[i][i] * e[j][j] for i in range(n) for j in range(i + 1))


def outer_sum(columns: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    out = [[0] * n for _ in range(n)]
    for col in columns:
        for i in range(n):
            if col[i]:
                ci = col[i]
                row = out[i]
                for j in range(n):
                    row[j] += ci * col[j]
    return out


def verify(m: Mat2 | MatN, f: Factorization) -> bool:
    """Exact check that the columns of ``f`` reconstruct ``m``."""
    rows = m.rows() if isinstance(m, Mat2) else [list(r) for r in m.entries]
    n = len(rows)
    for col in f.columns:
        if len(col) != n:
            raise ValidationError(f"column {col} has length {len(col)}, matrix has order {n}")
    return outer_sum(f.columns, n) == rows
