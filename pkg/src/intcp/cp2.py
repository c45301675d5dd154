"""Integer cp-factorization of 2x2 doubly nonnegative matrices, at most 11 columns.

Pipeline: a unimodular congruence shrinks the off-diagonal entry until
``b <= min(a, c)``; then the matrix is written as

    diag(d1, d2) + beta * J + (x, y)(x, y)^T,    beta + x*y = b

with ``J`` the all-ones matrix, and each of ``d1``, ``d2``, ``beta`` is split
into squares. The cheapest template over a small (x, y) box is kept, and the
reduction is undone on the columns.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import isqrt

from .exact_matrix import Factorization, Mat2, ValidationError, require_dnn
from .squares import decompose, is_form_4r8k7, min_square_count

SEARCH_MAX = 6


class Side(enum.Enum):
    UPPER = "UPPER"  # b reduced against c, a changes
    LOWER = "LOWER"  # b reduced against a, c changes


@dataclass(frozen=True)
class ReduceStep:
    side: Side
    alpha: int

    def apply(self, m: Mat2) -> Mat2:
        a, b, c = m
        k = self.alpha
        if self.side is Side.UPPER:
            return Mat2(a - 2 * k * b + k * k * c, b - k * c, c)
        return Mat2(a, b - k * a, c - 2 * k * b + k * k * a)

    def lift(self, col: tuple[int, int]) -> tuple[int, int]:
        """Apply the inverse congruence (entrywise nonnegative) to a column."""
        x, y = col
        if self.side is Side.UPPER:
            return (x + self.alpha * y, y)
        return (x, y + self.alpha * x)


@dataclass(frozen=True)
class TransformLog:
    steps: tuple[ReduceStep, ...] = ()

    def replay(self, f: Factorization) -> Factorization:
        """Map a factorization of the reduced matrix back to the original."""
        cols = list(f.columns)
        for step in reversed(self.steps):
            cols = [step.lift(col) for col in cols]
        return Factorization(tuple(cols), method=f.method, meta=f.meta)

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class Template:
    """``A = diag(d1, d2) + beta*J + (x, y)(x, y)^T``."""

    x: int
    y: int
    beta: int
    columns_bound: int = 12

    def parts(self, m: Mat2) -> tuple[int, int]:
        return (m.a - self.beta - self.x * self.x, m.c - self.beta - self.y * self.y)

    def feasible(self, m: Mat2) -> bool:
        d1, d2 = self.parts(m)
        return self.beta >= 0 and d1 >= 0 and d2 >= 0 and self.beta + self.x * self.y == m.b

    def cost(self, m: Mat2) -> int:
        d1, d2 = self.parts(m)
        return (
            min_square_count(d1)
            + min_square_count(d2)
            + min_square_count(self.beta)
            + (1 if (self.x or self.y) else 0)
        )

    @property
    def tag(self) -> str:
        return f"template({self.x},{self.y},{self.beta})"

    def realize(self, m: Mat2) -> Factorization:
        if not self.feasible(m):
            raise ValidationError(f"{self.tag} does not fit {m}")
        d1, d2 = self.parts(m)
        cols = [(s, s) for s in decompose(self.beta).parts]
        cols += [(s, 0) for s in decompose(d1).parts]
        cols += [(0, s) for s in decompose(d2).parts]
        cols.append((self.x, self.y))
        return Factorization(tuple(cols), method=self.tag)


def reduce(m: Mat2) -> tuple[Mat2, TransformLog]:
    """Congruence-reduce m until b <= min(a, c); det is unchanged."""
    require_dnn(m)
    steps = []
    while m.b > min(m.a, m.c):
        # b > 0 here, so a, c > 0; ties reduce against c
        if m.c <= m.a:
            step = ReduceStep(Side.UPPER, m.b // m.c)
        else:
            step = ReduceStep(Side.LOWER, m.b // m.a)
        m = step.apply(m)
        steps.append(step)
    return m, TransformLog(tuple(steps))


def _require_reduced(m: Mat2) -> None:
    require_dnn(m)
    if m.b > min(m.a, m.c):
        raise ValidationError(f"{m} is not reduced: b > min(a, c)")


def base_template(m: Mat2) -> Factorization:
    _require_reduced(m)
    return Template(0, 0, m.b).realize(m)


def theorem_templates(m: Mat2) -> list[Template]:
    """Templates that beat the 12-column bound when b, a-b, c-b all need 4 squares."""
    _require_reduced(m)
    a, b, c = m
    if not (is_form_4r8k7(b) and is_form_4r8k7(a - b) and is_form_4r8k7(c - b)):
        return []
    out = []
    if (a - b) % 8 != 7:
        out.append(Template(3, 2, b - 6, columns_bound=10))
    if (c - b) % 8 != 7:
        out.append(Template(2, 3, b - 6, columns_bound=10))
    if not out:
        # d1 = a-b+1 may itself need four squares, hence 11
        out.append(Template(1, 2, b - 2, columns_bound=11))
    return out


def candidate_templates(m: Mat2) -> list[Template]:
    """Every feasible template with 0 <= x, y <= 6 (includes base and theorem ones)."""
    a, b, c = m
    found = {(0, 0): Template(0, 0, b)}
    for t in theorem_templates(m):
        found[(t.x, t.y)] = t
    for x in range(min(SEARCH_MAX, isqrt(a)) + 1):
        for y in range(min(SEARCH_MAX, isqrt(c)) + 1):
            if (x, y) in found or x * y > b:
                continue
            t = Template(x, y, b - x * y)
            if t.feasible(m):
                found[(x, y)] = t
    return [found[k] for k in sorted(found)]


def best_template(m: Mat2) -> Template:
    """Fewest-column template; ties go to the smallest (x, y)."""
    _require_reduced(m)
    floor = 1 if m.det == 0 else 2
    best, best_cost = None, None
    for t in candidate_templates(m):
        d1, d2 = t.parts(m)
        cost = (1 if (t.x or t.y) else 0) + min_square_count(t.beta)
        for d in (d1, d2):
            if best_cost is not None and cost >= best_cost:
                break
            cost += min_square_count(d)
        if best_cost is None or cost < best_cost:
            best, best_cost = t, cost
            if cost <= floor:
                break
    return best


def factor(m: Mat2) -> Factorization:
    """Integer cp-factorization of a 2x2 DNN matrix with at most 11 columns.

    Not claimed minimal; see ``oracle.exact_cp_rank`` for the exact rank.
    """
    require_dnn(m)
    if m.a == m.b == m.c == 0:
        return Factorization((), method="zero")
    reduced, log = reduce(m)
    t = best_template(reduced)
    f = log.replay(t.realize(reduced))
    f.meta.update(reduced=tuple(reduced), steps=len(log))
    return f


def cp_rank_upper(m: Mat2) -> int:
    return factor(m).size


__all__ = [
    "Side",
    "ReduceStep",
    "TransformLog",
    "Template",
    "reduce",
    "base_template",
    "theorem_templates",
    "candidate_templates",
    "best_template",
    "factor",
    "cp_rank_upper",
]
