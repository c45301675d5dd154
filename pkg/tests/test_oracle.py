from math import isqrt

import pytest

from _oracles import naive_cp_rank
from intcp.cp2 import cp_rank_upper
from intcp.exact_matrix import Mat2, MatN, ValidationError, verify
from intcp.oracle import (
    Method,
    OracleInconclusive,
    exact_cp_rank,
    exact_matches_formula_rank1,
    upper_bound_report,
)
from intcp.rank1 import rank1_cp_rank
from intcp.squares import min_square_count


def small_grid(n):
    for a in range(n + 1):
        for c in range(a, n + 1):
            for b in range(isqrt(a * c) + 1):
                yield Mat2(a, b, c)


def test_rank_one_all_ones():
    r = exact_cp_rank(Mat2(1, 1, 1))
    assert r.rank == 1 and r.certificate.columns == ((1, 1),) and r.method is Method.EXACT


def test_example_one():
    r = exact_cp_rank(Mat2(8, 1, 8))
    assert r.rank == 9 and r.certificate.size == 9
    assert verify(Mat2(8, 1, 8), r.certificate)


def test_diagonal_seven():
    r = exact_cp_rank(Mat2(7, 0, 0))
    assert r.rank == 4 == min_square_count(7)
    assert r.certificate.same_columns(r.certificate.__class__(((2, 0), (1, 0), (1, 0), (1, 0))))


def test_zero_matrix():
    r = exact_cp_rank(Mat2(0, 0, 0))
    assert r.rank == 0 and r.certificate.size == 0


@pytest.mark.parametrize("d, v", [(7, (1, 1)), (1, (2, 3)), (3, (1, 2)), (200, (20, 19)), (6, (0, 5))])
def test_rank1_formula_examples(d, v):
    assert exact_matches_formula_rank1(d, v)


def test_rank1_formula_three_needs_three():
    m = Mat2(3, 6, 12)
    assert exact_cp_rank(m).rank == 3 == rank1_cp_rank(MatN.from_mat2(m))


@pytest.mark.parametrize("seed", [True, False])
def test_agrees_with_naive_small(seed):
    for m in small_grid(8):
        r = exact_cp_rank(m, seed=seed)
        assert r.rank == naive_cp_rank(*m), m
        assert verify(m, r.certificate)


def test_prune_does_not_change_rank():
    for m in small_grid(10):
        with_prune = exact_cp_rank(m, seed=False)
        without = exact_cp_rank(m, seed=False, prune=False)
        assert with_prune.rank == without.rank, m
        assert with_prune.nodes_explored <= without.nodes_explored


def test_lower_bounded_by_matrix_rank_and_upper_by_templates():
    for m in small_grid(9):
        r = exact_cp_rank(m).rank
        if m != Mat2(0, 0, 0):
            assert r >= (2 if m.det > 0 else 1)
        assert r <= cp_rank_upper(m)


def test_budget_exhaustion_is_explicit():
    with pytest.raises(OracleInconclusive) as err:
        exact_cp_rank(Mat2(300, 1, 300), budget=10)
    assert err.value.lower >= 1 and err.value.upper == cp_rank_upper(Mat2(300, 1, 300))


def test_entry_cap():
    with pytest.raises(ValidationError):
        exact_cp_rank(Mat2(513, 0, 1))
    assert exact_cp_rank(Mat2(600, 0, 1), max_entry=600).rank == min_square_count(600) + 1


def test_upper_bound_report():
    r = upper_bound_report(Mat2(8, 1, 8))
    assert r.method is Method.UPPER_BOUND and r.rank == 9
    d = r.to_dict()
    assert d["method"] == "UPPER_BOUND" and d["certificate"]["count"] == 9


def test_moderate_instances_verify():
    for m in (Mat2(325, 256, 459), Mat2(511, 17, 500), Mat2(120, 60, 200)):
        r = exact_cp_rank(m)
        assert verify(m, r.certificate) and r.rank <= cp_rank_upper(m)
