from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import posets
from posetcode.codes import Code, construct_m_perfect, is_perfect
from posetcode.criteria import (
    EXISTENCE,
    INCONCLUSIVE,
    NONEXISTENCE,
    admissible_lambda_k_pairs,
    auto_v_search,
    check_abcc,
    check_ball_packing,
    check_cor_II,
    check_height,
    check_k_inequality,
    check_lambda_range,
    check_rm,
    check_two_cover,
    check_union_bound,
    check_upset_ball,
    check_v_cover,
    crown_v,
    k_inequality_lhs,
    lift_code,
    reduce,
    run_battery,
)
from posetcode.errors import InvalidIdeal, RangeError
from posetcode.ideals import enumerate_ideals
from posetcode.metric import ball_size
from posetcode.poset import Poset, antichain, chain, crown, disjoint_chains, elements, mask, popcount, principal_ideal
from posetcode.search import find_perfect_code

# upsets from the height-2 case analysis: 5 maximal elements with one or two pendant minimals
UPSET_H = Poset.from_covers(6, [(6, 1)])
UPSET_M = Poset.from_covers(7, [(6, 1), (7, 2)])


def test_rm():
    assert check_rm(5, 2, 3).proves_nonexistence
    assert not check_rm(5, 3, 3).proves_nonexistence
    with pytest.raises(RangeError):
        check_rm(3, 4, 1)


def test_lambda_range():
    assert check_lambda_range(4, 2, 1).proves_nonexistence  # crown(3)
    assert not check_lambda_range(4, 2, 3).proves_nonexistence
    assert check_lambda_range(4, 2, 7).proves_nonexistence
    with pytest.raises(RangeError):
        check_lambda_range(2, 2, 0)


def test_k_inequality_exact():
    assert k_inequality_lhs(1, 3, 3) == 2
    assert not check_k_inequality(3, 1, 3, 3).proves_nonexistence
    assert check_k_inequality(5, 3, 3, 8).proves_nonexistence
    assert k_inequality_lhs(0, 3, 5) == Fraction(2**3) - Fraction(1, 4) * 16
    assert check_k_inequality(4, 2, 4, 3).verdict == INCONCLUSIVE


def test_lambda_k_pairs():
    pairs = admissible_lambda_k_pairs()
    assert (6, 7) in pairs and len(pairs) == 15
    assert set(pairs) - {(6, 7)} == {
        (3, 3), (3, 4), (3, 5), (4, 3), (4, 4), (4, 5),
        (5, 3), (5, 4), (5, 5), (5, 6), (6, 3), (6, 4), (6, 5), (6, 6),
    }


def test_union_bound():
    res = check_union_bound(antichain(5), 3, 2)
    assert res.proves_nonexistence and popcount(res.witness["I1"] | res.witness["I2"]) == 4
    assert not check_union_bound(chain(5), 2, 2).proves_nonexistence
    assert not check_union_bound(crown(3), 4, 2).proves_nonexistence


def test_v_cover():
    res = check_v_cover(crown(3), 2, {1, 2, 3})
    assert res.proves_nonexistence and len(res.witness["covers"]) == 3
    assert not check_v_cover(chain(5), 2, {1, 2, 3}).proves_nonexistence
    with pytest.raises(RangeError):
        check_v_cover(chain(5), 2, {1})


def test_cor_II():
    res = check_cor_II(crown(3), 2, {1, 2, 3})
    assert res.proves_nonexistence and res.witness["W"] == 0
    res = check_cor_II(disjoint_chains([2, 2]), 1, {1, 3})
    assert res.proves_nonexistence and res.witness["W"] == 0
    assert not check_cor_II(chain(5), 2, {1, 2, 3}).proves_nonexistence
    with pytest.raises(InvalidIdeal):
        check_cor_II(chain(5), 2, {1, 2, 4})


def test_crown_choices_of_v():
    assert elements(crown_v(4, 4)) == [1, 2, 3, 4, 5]
    assert elements(crown_v(6, 3)) == [1, 3, 5, 6]
    res = auto_v_search(crown(4), 4)
    assert res.proves_nonexistence
    assert check_cor_II(crown(6), 3, crown_v(6, 3)).proves_nonexistence
    assert auto_v_search(crown(6), 3).proves_nonexistence
    assert not auto_v_search(antichain(5), 2).proves_nonexistence


def test_two_cover():
    assert check_two_cover(crown(3), 2).proves_nonexistence
    assert not check_two_cover(chain(5), 2).proves_nonexistence
    assert check_two_cover(antichain(4), 2).proves_nonexistence


def test_height():
    assert not check_height(chain(5), 3, 2).proves_nonexistence
    three_level = Poset.from_covers(6, [(1, 2), (2, 3)])
    fam = enumerate_ideals(three_level, 3)
    assert fam.essential_mask == three_level.full
    assert check_height(three_level, 5, 3).proves_nonexistence
    assert not find_perfect_code(three_level, 3).found
    assert not check_height(crown(3), 4, 2).proves_nonexistence


def test_upset_ball_spot_values():
    res = check_upset_ball(UPSET_H, UPSET_H.full, 4, 2)
    assert res.witness["ball"] == 18 and res.proves_nonexistence
    res = check_upset_ball(UPSET_M, UPSET_M.full, 4, 2)
    assert res.witness["ball"] == 20 and res.proves_nonexistence
    res = check_upset_ball(antichain(5), antichain(5).full, 4, 2)
    assert res.verdict == INCONCLUSIVE and res.witness["equality"]
    with pytest.raises(RangeError):
        check_upset_ball(chain(3), {1}, 2, 1)


def test_upset_ball_with_removed_ideal():
    # chain below the subcase-(h) upset: l = 1, radius 2 inside U, 2^(m-l) = 16
    P = Poset.from_covers(7, [(7, i) for i in range(1, 7)] + [(6, 1)])
    U = P.full & ~mask({7})
    res = check_upset_ball(P, U, 5, 3)
    assert res.witness["l"] == 1 and res.witness["ball"] == 18 and res.proves_nonexistence


def test_ball_packing():
    assert check_ball_packing(crown(3), 4, 2).proves_nonexistence
    assert not check_ball_packing(antichain(5), 4, 2).proves_nonexistence


def test_abcc():
    assert not check_abcc(antichain(5), 4, 2).proves_nonexistence
    # two 2-chains at r=2, m=2: only one element outside <1,4>, bound r + lam - m = 2
    P = disjoint_chains([2, 2])
    fam = enumerate_ideals(P, 2)
    assert fam.union_mask == P.full and fam.core_mask == 0
    res = check_abcc(P, 2, 2)
    assert res.proves_nonexistence and res.witness["part"] == "b"
    assert res.witness["outside"] == 1 and res.witness["bound"] == 2
    assert not find_perfect_code(P, 2).found
    with pytest.raises(RangeError):
        check_abcc(chain(5), 3, 2)


def test_reduce_examples():
    red = reduce(chain(5), 2)
    assert red.Q.n == 0 and red.r_prime == 0
    red = reduce(crown(3), 2)
    assert red.Q == antichain(3) and red.r_prime == 2
    assert ball_size(red.Q, 2) == 7
    red = reduce(antichain(5), 2)
    assert red.Q == antichain(5) and red.r_prime == 2 and red.factor_log2 == 0


def test_lift_chain_code():
    red = reduce(chain(5), 2)
    lifted = lift_code(chain(5), red, Code.explicit(0, [0]))
    assert set(lifted.codewords) == set(construct_m_perfect(chain(5), 2).codewords)


@settings(max_examples=40, deadline=None)
@given(posets(min_n=1, max_n=6))
def test_reduction_preserves_existence(P):
    for r in range(P.n + 1):
        red = reduce(P, r)
        full = find_perfect_code(P, r)
        part = find_perfect_code(red.Q, red.r_prime) if red.Q.n else None
        part_found = part.found if part else True
        assert full.found == part_found
        if part and part.found:
            lifted = lift_code(P, red, part.code)
            assert lifted.cardinality == part.code.cardinality << red.factor_log2
            assert is_perfect(P, lifted, r, oracle=True).perfect


def test_battery_examples():
    rep = run_battery(crown(3), 4, 2)
    assert rep.verdict == NONEXISTENCE and len(rep.fired()) >= 3
    assert len(rep.entries) >= 10
    rep = run_battery(antichain(5), 4, 2)
    assert rep.verdict == EXISTENCE and set(rep.code.codewords) == {0, 0b11111}
    rep = run_battery(chain(7), 3, 3)
    assert rep.verdict == EXISTENCE and rep.entries[-1].criterion == "th0"


@settings(max_examples=40, deadline=None)
@given(posets(min_n=1, max_n=6))
def test_battery_is_sound(P):
    for r in range(P.n + 1):
        res = find_perfect_code(P, r)
        for m in range(P.n + 1):
            exists = res.found and res.ball_size == 1 << m
            rep = run_battery(P, m, r)
            if rep.verdict == NONEXISTENCE:
                assert not exists, rep.fired()
            elif rep.verdict == EXISTENCE:
                assert exists and is_perfect(P, rep.code, r).perfect
