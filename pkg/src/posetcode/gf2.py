"""GF(2) linear algebra on int bitsets."""

from __future__ import annotations

from typing import Dict, Iterable, List, Sequence, Tuple


def rank(vectors: Iterable[int]) -> int:
    return len(_echelon(vectors))


def _echelon(vectors: Iterable[int]) -> Dict[int, int]:
    pivots: Dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in pivots:
                pivots[top] = v
                break
            v ^= pivots[top]
    return pivots


def kernel_basis(columns: Sequence[int]) -> List[int]:
    """Basis of {c : XOR of columns[i] over i in c is 0}, as n-bit masks."""
    pivots: Dict[int, Tuple[int, int]] = {}
    basis = []
    for i, h in enumerate(columns):
        tag = 1 << i
        while h:
            top = h.bit_length() - 1
            if top not in pivots:
                pivots[top] = (h, tag)
                break
            ph, pt = pivots[top]
            h ^= ph
            tag ^= pt
        if not h:
            basis.append(tag)
    return basis


def span(basis: Sequence[int]) -> List[int]:
    """All GF(2) combinations of ``basis``, sorted."""
    words = [0]
    for b in basis:
        words += [w ^ b for w in words]
    return sorted(set(words))


def is_linear(words: Sequence[int]) -> bool:
    ws = set(words)
    if 0 not in ws:
        return False
    basis = list(_echelon(ws).values())
    return len(ws) == 1 << len(basis)


def parity_columns(n: int, generators: Sequence[int]) -> Tuple[int, List[int]]:
    """Parity-check columns (m bits each) of the code spanned by ``generators``."""
    gen = list(_echelon(generators).values())
    gcols = []
    for i in range(n):
        col = 0
        for j, g in enumerate(gen):
            if g >> i & 1:
                col |= 1 << j
        gcols.append(col)
    dual = kernel_basis(gcols)
    columns = []
    for i in range(n):
        col = 0
        for j, row in enumerate(dual):
            if row >> i & 1:
                col |= 1 << j
        columns.append(col)
    return len(dual), columns
