from __future__ import annotations

import pytest
from hypothesis import given

from conftest import posets
from posetcode.errors import CycleError, ParseError, RangeError
from posetcode.poset import (
    Poset,
    SubsetVec,
    antichain,
    chain,
    crown,
    disjoint_chains,
    elements,
    extremal,
    format_poset,
    gen_poset,
    height,
    is_ideal,
    is_upset,
    mask,
    parse_poset,
    principal_ideal,
    principal_upset,
)


def test_from_covers_antichain_and_chain():
    P = Poset.from_covers(3, [])
    assert [elements(d) for d in P.down] == [[1], [2], [3]]
    Q = Poset.from_covers(3, [(1, 2), (2, 3)])
    assert elements(Q.down[2]) == [1, 2, 3]
    assert Q == chain(3)


def test_cycle_and_range_errors():
    with pytest.raises(CycleError):
        Poset.from_covers(3, [(1, 2), (2, 3), (3, 1)])
    with pytest.raises(RangeError):
        Poset.from_covers(3, [(1, 4)])


def test_generators():
    assert crown(3).covers() == [(1, 4), (1, 6), (2, 4), (2, 5), (3, 5), (3, 6)]
    assert disjoint_chains([2, 2]).covers() == [(1, 2), (3, 4)]
    assert antichain(5).relations() == []
    assert gen_poset("crown", 4).n == 8
    with pytest.raises(RangeError):
        gen_poset("lattice", 3)


def test_closures():
    assert elements(principal_ideal(chain(5), {2, 4})) == [1, 2, 3, 4]
    assert elements(principal_ideal(antichain(5), {2, 4, 5})) == [2, 4, 5]
    assert elements(principal_ideal(crown(3), {4})) == [1, 2, 4]
    assert elements(principal_upset(chain(5), {3})) == [3, 4, 5]
    assert elements(principal_upset(antichain(4), {1, 2})) == [1, 2]
    assert elements(principal_upset(crown(3), {1})) == [1, 4, 6]


def test_extremal_and_height():
    assert elements(extremal(crown(3), range(1, 7), "max")) == [4, 5, 6]
    assert elements(extremal(chain(5), {1, 3, 5}, "min")) == [1]
    assert extremal(crown(3), 0) == 0
    assert height(chain(5)) == 5
    assert height(antichain(4)) == 1
    assert height(crown(3)) == 2
    assert height(crown(3), 0) == 0


def test_ideal_predicates():
    assert is_ideal(chain(5), {1, 2})
    assert not is_ideal(crown(3), {4})
    assert is_ideal(crown(3), 0)
    assert is_upset(crown(3), {4, 5, 6})
    assert not is_upset(chain(3), {1})


def test_subset_vec_word_convention():
    v = SubsetVec.from_string("01011")
    assert v.elements == [2, 4, 5]
    assert v.to_string() == "01011"
    w = SubsetVec.from_elements(5, [1, 2])
    assert (v + w).elements == [1, 4, 5]
    assert (~w).elements == [3, 4, 5]
    assert 4 in v and 1 not in v
    with pytest.raises(ParseError):
        SubsetVec.from_string("01x")


def test_parse_format_round_trip_crown():
    P = crown(4)
    assert parse_poset(format_poset(P, "crown 4")) == P


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError, match="line 2"):
        parse_poset("n 3\n1 < x\n")
    with pytest.raises((ParseError, CycleError)):
        parse_poset("n 2\n1 < 2\n2 < 1\n")


@given(posets(max_n=9))
def test_closure_invariants(P):
    for i in range(P.n):
        assert P.down[i] >> i & 1 and P.up[i] >> i & 1
        assert P.down[i] & P.up[i] == 1 << i
        for j in range(P.n):
            if P.down[i] >> j & 1:
                assert P.down[j] & ~P.down[i] == 0
                assert P.up[j] >> i & 1


@given(posets(max_n=9))
def test_round_trip_and_covers(P):
    assert parse_poset(format_poset(P)) == P
    assert Poset.from_covers(P.n, P.relations()) == P


@given(posets(max_n=7))
def test_principal_ideal_is_smallest_ideal(P):
    for s in range(0, 1 << P.n, max(1, (1 << P.n) // 40)):
        I = principal_ideal(P, s)
        assert is_ideal(P, I) and s & ~I == 0
        assert is_upset(P, principal_upset(P, s))
