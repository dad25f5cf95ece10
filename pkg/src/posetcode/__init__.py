"""Perfect binary codes under poset metrics."""

from __future__ import annotations

__version__ = "0.1.0"

from .codes import (
    Code,
    M2_SHAPES,
    VerificationResult,
    classify_m2,
    construct_m1_perfect,
    construct_m_perfect,
    format_code,
    is_error_correcting,
    is_perfect,
    parse_code,
    theorem_th1_check,
)
from .criteria import CriterionReport, CriterionResult, lift_code, reduce, run_battery
from .errors import (
    BudgetExceeded,
    CapExceeded,
    CycleError,
    InvalidIdeal,
    NotUnique,
    ParseError,
    PosetCodeError,
    RangeError,
    ShapeMismatch,
    SizeMismatch,
)
from .ideals import IdealFamily, enumerate_ideals, ideal_path, johnson_distance
from .metric import ball, ball_oracle, ball_size, p_distance, p_weight
from .poset import Poset, SubsetVec, antichain, chain, crown, disjoint_chains, format_poset, gen_poset, parse_poset
from .search import SearchConfig, SearchResult, exhaust_small_posets, find_perfect_code, find_poset_labeling
