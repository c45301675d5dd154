"""Integer cp-factorization of rank-one doubly nonnegative matrices.

A rank-one DNN integer matrix is ``d * v v^T`` with ``d`` the gcd of the
diagonal and ``v`` an integer vector; its integer cp-rank is the number of
squares needed for ``d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd, isqrt

from .exact_matrix import Factorization, MatN, ValidationError, check_range, is_rank1_dnn
from .squares import SquareDecomp, decompose, min_square_count


@dataclass(frozen=True)
class Rank1Cert:
    d: int
    base: tuple[int, ...]
    squares: SquareDecomp


def _exact_sqrt(x: int) -> int:
    r = isqrt(x)
    if r * r != x:
        raise ArithmeticError(f"{x} is not a perfect square")
    return r


def _require(m: MatN) -> None:
    for row in m.entries:
        check_range(*row)
    if not is_rank1_dnn(m):
        raise ValidationError("matrix is not rank-one doubly nonnegative")


def rank1_certificate(m: MatN) -> Rank1Cert | None:
    """Split m into gcd-of-diagonal times an outer square; None for zero m."""
    _require(m)
    diag = m.diagonal()
    d = reduce(gcd, diag)
    if d == 0:
        return None
    # every diagonal entry of m/d is a perfect square; _exact_sqrt enforces it
    base = tuple(_exact_sqrt(x // d) for x in diag)
    return Rank1Cert(d, base, decompose(d))


def factor_rank1(m: MatN) -> Factorization:
    cert = rank1_certificate(m)
    if cert is None:
        return Factorization((), method="rank1")
    cols = tuple(tuple(s * v for v in cert.base) for s in cert.squares.parts)
    return Factorization(cols, method="rank1")


def rank1_cp_rank(m: MatN) -> int:
    _require(m)
    return min_square_count(reduce(gcd, m.diagonal()))
