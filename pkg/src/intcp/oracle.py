"""Exact integer cp-rank of 2x2 matrices by iterative-deepening branch and bound.

Columns are enumerated as a non-increasing (lexicographic) sequence so each
multiset is visited once. A node survives only if what is left to represent
is still doubly nonnegative; for a fixed first coordinate ``x`` this confines
``y`` to an interval computed exactly from the remainder's determinant.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import isqrt

from . import cp2
from .exact_matrix import Factorization, Mat2, MatN, ValidationError, require_dnn, verify
from .rank1 import rank1_cp_rank
from .squares import min_square_count

DEFAULT_BUDGET = 10**8
DEFAULT_MAX_ENTRY = 512
MAX_DEPTH = 11


class Method(enum.Enum):
    EXACT = "EXACT"
    UPPER_BOUND = "UPPER_BOUND"


class OracleInconclusive(RuntimeError):
    """Node budget ran out; carries the bounds known at that point."""

    def __init__(self, lower: int, upper: int | None, nodes: int):
        super().__init__(f"inconclusive after {nodes} nodes: {lower} <= rank <= {upper}")
        self.lower = lower
        self.upper = upper
        self.nodes = nodes


@dataclass(frozen=True)
class RankReport:
    rank: int
    certificate: Factorization
    method: Method
    nodes_explored: int = 0

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "method": self.method.value,
            "nodes": self.nodes_explored,
            "certificate": self.certificate.to_dict(),
        }


def _y_window(ra: int, rb: int, rc: int, det: int, x: int) -> tuple[int, int]:
    """Exact range of y keeping (ra-x^2, rb-xy, rc-y^2) PSD.

    The remainder determinant equals -(ra*y^2 - 2*rb*x*y + x^2*rc - det),
    a concave function of y, so the feasible set is an interval.
    """
    if ra == 0:
        return 0, isqrt(rc)

    def g(y):
        return ra * y * y - 2 * rb * x * y + x * x * rc - det

    disc = det * (ra - x * x)
    s = isqrt(disc)
    lo = max(0, (rb * x - s - 1) // ra)
    hi = (rb * x + s + 1) // ra + 1
    while lo <= hi and g(lo) > 0:
        lo += 1
    while hi >= lo and g(hi) > 0:
        hi -= 1
    return lo, hi


class _Search:
    def __init__(self, budget: int, prune: bool):
        self.budget = budget
        self.prune = prune
        self.nodes = 0
        self.cols: list[tuple[int, int]] = []

    def run(self, m: Mat2, depth: int) -> bool:
        self.cols = []
        return self._dfs(m.a, m.b, m.c, depth, None)

    def _dfs(self, ra, rb, rc, k, last) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExceeded
        if ra == 0 and rb == 0 and rc == 0:
            return True
        if k == 0:
            return False
        det = ra * rc - rb * rb
        if self.prune:
            if det < 0:
                return False
            if min_square_count(ra) > k or min_square_count(rc) > k:
                return False
            xcap = isqrt(ra) if last is None else min(last[0], isqrt(ra))
            if k * xcap * xcap < ra:
                return False
            # b-coverage: each remaining column contributes at most xcap * sqrt(rc)
            if rb > 0 and k * xcap * isqrt(rc) < rb:
                return False
        if k == 1:
            x, y = isqrt(ra), isqrt(rc)
            if x * x == ra and y * y == rc and x * y == rb and (last is None or (x, y) <= last):
                self.cols.append((x, y))
                return True
            return False

        xmax = isqrt(ra) if last is None else min(last[0], isqrt(ra))
        for x in range(xmax, -1, -1):
            ymax = isqrt(rc)
            if last is not None and x == last[0]:
                ymax = min(ymax, last[1])
            if x:
                ymax = min(ymax, rb // x)
            ymin = 0
            if self.prune:
                lo, hi = _y_window(ra, rb, rc, det, x)
                ymin, ymax = max(ymin, lo), min(ymax, hi)
            for y in range(ymax, ymin - 1, -1):
                if x == 0 and y == 0:
                    continue
                self.cols.append((x, y))
                if self._dfs(ra - x * x, rb - x * y, rc - y * y, k - 1, (x, y)):
                    return True
                self.cols.pop()
        return False


class _BudgetExceeded(Exception):
    pass


def exact_cp_rank(
    m: Mat2,
    budget: int = DEFAULT_BUDGET,
    *,
    max_entry: int = DEFAULT_MAX_ENTRY,
    prune: bool = True,
    seed: bool = True,
) -> RankReport:
    """Least number of nonnegative integer columns reconstructing m.

    With ``seed`` the template factorization from ``cp2.factor`` caps the
    deepening: once every smaller depth has failed, its certificate is exact.
    Raises OracleInconclusive when the node budget is exhausted.
    """
    require_dnn(m)
    if max(m.a, m.c) > max_entry:
        raise ValidationError(f"{m} exceeds the oracle cap {max_entry} on diagonal entries")
    if m.a == m.b == m.c == 0:
        return RankReport(0, Factorization((), method="oracle"), Method.EXACT, 0)

    upper = cp2.factor(m) if seed else None
    stop = upper.size if upper is not None else MAX_DEPTH + 1
    search = _Search(budget, prune)
    for depth in range(1, stop):
        try:
            found = search.run(m, depth)
        except _BudgetExceeded:
            raise OracleInconclusive(depth, upper.size if upper else None, search.nodes) from None
        if found:
            cert = Factorization(tuple(search.cols), method="oracle")
            assert verify(m, cert)
            return RankReport(cert.size, cert, Method.EXACT, search.nodes)
    if upper is None:
        raise OracleInconclusive(stop, None, search.nodes)
    cert = Factorization(upper.columns, method="oracle", meta={"source": upper.method})
    return RankReport(cert.size, cert, Method.EXACT, search.nodes)


def upper_bound_report(m: Mat2) -> RankReport:
    f = cp2.factor(m)
    return RankReport(f.size, f, Method.UPPER_BOUND, 0)


def exact_matches_formula_rank1(d: int, v, **kwargs) -> bool:
    """Differential check of the rank-one gcd formula against the search."""
    if len(v) != 2:
        raise ValidationError("oracle handles 2x2 instances only")
    x, y = v
    m = Mat2(d * x * x, d * x * y, d * y * y)
    kwargs.setdefault("max_entry", max(DEFAULT_MAX_ENTRY, m.a, m.c))
    report = exact_cp_rank(m, **kwargs)
    return report.rank == rank1_cp_rank(MatN.from_mat2(m))


__all__ = [
    "Method",
    "OracleInconclusive",
    "RankReport",
    "exact_cp_rank",
    "upper_bound_report",
    "exact_matches_formula_rank1",
]
