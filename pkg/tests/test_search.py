from __future__ import annotations

import json

import pytest

from posetcode.codes import M2_SHAPES, Code, is_perfect
from posetcode.errors import CapExceeded, RangeError
from posetcode.iso import is_isomorphic
from posetcode.poset import Poset, antichain, chain, crown
from posetcode.search import (
    SearchConfig,
    Shape,
    exhaust_small_posets,
    find_perfect_code,
    find_poset_labeling,
    height2_posets,
)


def test_repetition_code_found():
    res = find_perfect_code(antichain(5), 2)
    assert res.found and set(res.code.codewords) == {0, 0b11111}


def test_divisibility_short_circuit():
    res = find_perfect_code(crown(3), 2)
    assert res.status == "none" and res.nodes == 0 and res.ball_size == 7


def test_budget_and_caps(monkeypatch):
    res = find_perfect_code(antichain(7), 1, SearchConfig(node_limit=1))
    assert res.status == "budget_exceeded"
    with pytest.raises(CapExceeded):
        find_perfect_code(antichain(15), 1)
    with pytest.raises(RangeError):
        find_perfect_code(chain(3), 4)
    monkeypatch.setenv("POSETCODE_NODE_LIMIT", "3")
    assert SearchConfig().node_limit == 3


def test_search_without_symmetry_matches():
    for P, r in ((antichain(7), 1), (crown(3), 4), (chain(4), 2)):
        a = find_perfect_code(P, r)
        b = find_perfect_code(P, r, SearchConfig(symmetry=False))
        assert a.found == b.found
        assert is_perfect(P, b.code, r).perfect


def test_parallel_is_deterministic():
    P = M2_SHAPES[1].poset
    seq = find_perfect_code(P, 2)
    par = find_perfect_code(P, 2, SearchConfig(parallel_width=2))
    assert seq.found and par.code == seq.code


def test_height2_shapes():
    shape = Shape(4, 3, (3,))
    found = list(height2_posets(shape))
    assert len(found) == 4
    with pytest.raises(RangeError):
        Shape(4, 2, (1,))


def test_labeling_for_repetition_code():
    rep = Code.explicit(5, [0, 0b11111])
    P = find_poset_labeling(rep, 2, Shape(5, 5, ()))
    assert P == antichain(5)
    with pytest.raises(CapExceeded):
        find_poset_labeling(Code.explicit(11, [0]), 1, Shape(11, 11, ()))


def test_catalog_th0_exactness():
    rows = list(exhaust_small_posets(5, 0))
    assert rows and all(e.agree for e in rows)
    for e in rows:
        assert e.theorem == e.oracle_exists
        json.dumps(e.to_json())


def test_catalog_records_crown_open_case():
    rows = [e for e in exhaust_small_posets(6, 1, n_min=6) if e.m == 5]
    crown_rows = [e for e in rows if is_isomorphic(Poset.from_covers(6, e.covers), crown(3))]
    assert len(crown_rows) == 1
    row = crown_rows[0]
    assert row.r == 4 and row.oracle_exists and row.battery == "existence_constructed" and row.agree


def test_catalog_cap():
    with pytest.raises(CapExceeded):
        list(exhaust_small_posets(9, 0))
