"""Integer completely positive factorizations of 2x2 matrices."""

from .cp2 import cp_rank_upper, factor, reduce
from .exact_matrix import Factorization, Mat2, MatN, RangeError, ValidationError, is_dnn, is_rank1_dnn, verify
from .oracle import OracleInconclusive, RankReport, exact_cp_rank
from .rank1 import factor_rank1, rank1_cp_rank
from .squares import SquareDecomp, decompose, is_form_4r8k7, min_square_count, neighbor_excluded

__version__ = "0.1.0"
