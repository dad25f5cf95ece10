from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings

from conftest import posets
from posetcode.errors import InvalidIdeal, RangeError, SizeMismatch
from posetcode.ideals import (
    abc_sequence,
    adjust_ideal,
    brute_force_ideals,
    enumerate_ideals,
    ideal_graph_components,
    ideal_path,
    johnson_adjacent,
    johnson_distance,
    shadow_w,
)
from posetcode.poset import antichain, chain, crown, elements, is_ideal, mask, popcount


def _sets(family):
    return [elements(I) for I in family.ideals]


def test_family_examples():
    f = enumerate_ideals(chain(5), 3)
    assert _sets(f) == [[1, 2, 3]] and (f.lam, f.u, f.essential_mask, f.k) == (0, 3, 0, 0)
    f = enumerate_ideals(antichain(4), 2)
    assert len(f) == 6 and elements(f.union_mask) == [1, 2, 3, 4]
    assert (f.lam, f.u, f.k) == (2, 0, 4)
    f = enumerate_ideals(crown(3), 2)
    assert sorted(_sets(f)) == [[1, 2], [1, 3], [2, 3]]
    assert elements(f.union_mask) == [1, 2, 3] and (f.lam, f.u, f.k) == (1, 0, 3)


def test_family_range():
    with pytest.raises(RangeError):
        enumerate_ideals(chain(3), 4)


@settings(max_examples=60)
@given(posets(max_n=9))
def test_family_matches_brute_force(P):
    for r in range(P.n + 1):
        f = enumerate_ideals(P, r)
        assert sorted(f.ideals) == sorted(brute_force_ideals(P, r))
        assert len(set(f.ideals)) == len(f) > 0
        union = 0
        core = P.full
        for I in f.ideals:
            union |= I
            core &= I
        assert (f.union_mask, f.core_mask) == (union, core)
        assert f.lam == popcount(union) - r >= 0


def test_adjust_ideal():
    assert elements(adjust_ideal(chain(5), 0, 2)) == [1, 2]
    assert elements(adjust_ideal(crown(3), {1, 2, 4}, 1)) == [1]
    assert adjust_ideal(crown(3), {1, 2}, 2) == mask({1, 2})
    with pytest.raises(InvalidIdeal):
        adjust_ideal(crown(3), {4}, 1)


@given(posets(max_n=8))
def test_adjust_ideal_gives_ideals(P):
    for I in brute_force_ideals(P, P.n // 2):
        for t in range(P.n + 1):
            J = adjust_ideal(P, I, t)
            assert is_ideal(P, J) and popcount(J) == t


def test_johnson_distance():
    assert johnson_distance({1, 2}, {1, 2}) == 0
    assert johnson_distance({1, 2}, {3, 4}) == 2
    assert johnson_distance({1, 2}, {2, 3}) == 1
    with pytest.raises(SizeMismatch):
        johnson_distance({1}, {1, 2})


def _check_path(P, path, I, J):
    assert path[0] == I and path[-1] == J
    assert len(path) - 1 == johnson_distance(I, J)
    for a, b in zip(path, path[1:]):
        assert is_ideal(P, b) and johnson_adjacent(a, b)


def test_ideal_path_examples():
    P = antichain(4)
    _check_path(P, ideal_path(P, {1, 2}, {3, 4}), mask({1, 2}), mask({3, 4}))
    assert len(ideal_path(crown(3), {1, 2}, {2, 3}, r=2)) == 2
    assert ideal_path(P, {1, 2}, {1, 2}) == [mask({1, 2})]
    with pytest.raises(InvalidIdeal):
        ideal_path(crown(3), {4}, {1})


@settings(max_examples=40)
@given(posets(max_n=8))
def test_ideal_graph_connected_and_paths_shortest(P):
    for r in range(P.n + 1):
        f = enumerate_ideals(P, r)
        assert ideal_graph_components(f) == 1
        ideals = f.ideals[:12]
        for I, J in itertools.product(ideals, ideals):
            _check_path(P, ideal_path(P, I, J), I, J)


def test_abc_sequence_examples():
    seq, a = abc_sequence(chain(5), 2)
    assert seq == [mask({1, 2})] and a == []
    seq, a = abc_sequence(crown(3), 2)
    assert len(a) == 1 and seq[1] >> 2 & 1


@given(posets(max_n=8))
def test_abc_sequence_grows_union(P):
    for r in range(P.n + 1):
        f = enumerate_ideals(P, r)
        seq, a = abc_sequence(P, r, f)
        assert len(a) == f.lam
        union = seq[0]
        for I, x in zip(seq[1:], a):
            union |= I
            assert union == seq[0] | sum(1 << y for y in a[: a.index(x) + 1])
        assert union == f.union_mask


def test_shadow_w():
    assert elements(shadow_w(chain(5), {1, 2})) == [1]
    assert shadow_w(crown(3), {1, 2, 3}) == 0
    assert elements(shadow_w(antichain(4), {1})) == [2, 3, 4]
    with pytest.raises(InvalidIdeal):
        shadow_w(crown(3), {4})
