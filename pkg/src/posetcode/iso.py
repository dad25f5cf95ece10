"""Canonical forms of small posets: colour refinement plus individualisation.

The canonical form is the lexicographically smallest tuple of down-masks
over all relabelings compatible with the refined ordered partition.
Elements with identical strict up- and down-sets are interchangeable, so
only one representative of each such twin class is branched on.
"""

from __future__ import annotations

from typing import Dict, Iterator, List, Sequence, Tuple

from .poset import Poset, bits

Form = Tuple[int, Tuple[int, ...]]


def _refine(P: Poset, colors: List[int]) -> List[int]:
    n = P.n
    while True:
        sigs = []
        for i in range(n):
            below = tuple(sorted(colors[j] for j in bits(P.down[i] & ~(1 << i))))
            above = tuple(sorted(colors[j] for j in bits(P.up[i] & ~(1 << i))))
            sigs.append((colors[i], below, above))
        ranking = {s: rank for rank, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if len(ranking) == len(set(colors)):
            return new
        colors = new


def _encode(P: Poset, position: Sequence[int]) -> Tuple[int, ...]:
    down = [0] * P.n
    for i in range(P.n):
        m = 0
        for j in bits(P.down[i]):
            m |= 1 << position[j]
        down[position[i]] = m
    return tuple(down)


def _leaves(P: Poset, colors: List[int], twins: List[int]) -> Iterator[List[int]]:
    counts: Dict[int, int] = {}
    for c in colors:
        counts[c] = counts.get(c, 0) + 1
    target = min((c for c, k in counts.items() if k > 1), default=None)
    if target is None:
        yield colors
        return
    cell = [i for i in range(P.n) if colors[i] == target]
    tried = set()
    for v in cell:
        if twins[v] in tried:
            continue
        tried.add(twins[v])
        # individualise v: it keeps colour `target`, everyone else in the cell moves up
        split = [2 * c + (1 if c == target and i != v else 0) for i, c in enumerate(colors)]
        yield from _leaves(P, _refine(P, split), twins)


def canonical_labeling(P: Poset) -> Tuple[Tuple[int, ...], List[int]]:
    """Canonical down-mask tuple and the 0-based position assigned to each element."""
    twin_key = {}
    twins = []
    for i in range(P.n):
        key = (P.down[i] & ~(1 << i), P.up[i] & ~(1 << i))
        twins.append(twin_key.setdefault(key, len(twin_key)))
    start = _refine(P, [0] * P.n)
    best = None
    best_pos: List[int] = []
    for leaf in _leaves(P, start, twins):
        order = sorted(range(P.n), key=lambda i: leaf[i])
        position = [0] * P.n
        for pos, i in enumerate(order):
            position[i] = pos
        code = _encode(P, position)
        if best is None or code < best:
            best, best_pos = code, position
    return (best if best is not None else ()), best_pos


def canonical_form(P: Poset) -> Form:
    return P.n, canonical_labeling(P)[0]


def canonical_poset(P: Poset) -> Poset:
    return Poset(P.n, list(canonical_labeling(P)[0]))


def is_isomorphic(P: Poset, Q: Poset) -> bool:
    return P.n == Q.n and canonical_form(P) == canonical_form(Q)


def posets_up_to_iso(n: int) -> List[Poset]:
    """One canonical representative of every isomorphism class of posets on n elements.

    Every poset on n elements arises from one on n-1 elements by adding a
    maximal element whose strict down-set is an ideal, so classes are grown
    level by level and deduplicated by canonical form.
    """
    from .ideals import iter_ideals

    level = [Poset(0, [])]
    for size in range(1, n + 1):
        seen: Dict[Tuple[int, ...], Poset] = {}
        for Q in level:
            for r in range(Q.n + 1):
                for ideal in iter_ideals(Q, r):
                    down = list(Q.down) + [ideal | 1 << Q.n]
                    P = Poset(size, down)
                    code = canonical_labeling(P)[0]
                    if code not in seen:
                        seen[code] = Poset(size, list(code))
        level = [seen[c] for c in sorted(seen)]
    return level
