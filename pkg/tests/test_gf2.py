from __future__ import annotations

import random

from hypothesis import given, strategies as st

from posetcode import gf2


def test_hamming_kernel():
    cols = list(range(1, 8))
    basis = gf2.kernel_basis(cols)
    assert len(basis) == 4
    words = gf2.span(basis)
    assert len(words) == 16
    assert min(bin(w).count("1") for w in words if w) == 3


def test_is_linear():
    assert gf2.is_linear([0, 0b111])
    assert not gf2.is_linear([0, 1, 2])
    assert not gf2.is_linear([1, 2, 3])


@given(st.integers(1, 10), st.integers(0, 2**32 - 1))
def test_parity_columns_round_trip(n, seed):
    rng = random.Random(seed)
    gens = [rng.getrandbits(n) for _ in range(rng.randint(0, n))]
    code = set(gf2.span(gens))
    m, cols = gf2.parity_columns(n, gens)
    assert m == n - gf2.rank(gens)
    kernel = set(gf2.span(gf2.kernel_basis(cols)))
    assert kernel == code
