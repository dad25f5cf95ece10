"""Families of r-ideals, their derived statistics, and the ideal graph."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .errors import InvalidIdeal, RangeError, SizeMismatch
from .poset import MaskLike, Poset, as_mask, bits, extremal, is_ideal, popcount, principal_upset


@dataclass(frozen=True)
class IdealFamily:
    """All ideals of cardinality ``r`` plus the statistics built on them.

    ``union_mask`` is P^r, ``core_mask`` the intersection of all r-ideals,
    ``essential_mask`` their difference, ``lam`` = |P^r| - r and ``k`` the
    number of maximal elements of the essential part.
    """

    r: int
    ideals: Tuple[int, ...]
    union_mask: int
    core_mask: int
    u: int
    lam: int
    essential_mask: int
    k: int

    def __len__(self):
        return len(self.ideals)

    def __iter__(self):
        return iter(self.ideals)


def iter_ideals(P: Poset, r: int):
    """Yield every r-ideal once, walking a linear extension with include/exclude choices.

    An element may be included only once everything strictly below it is,
    which makes each branch an ideal and each ideal a unique branch.
    """
    order = P.order
    n = P.n
    strict = [P.down[i] & ~(1 << i) for i in range(n)]
    stack = [(0, 0, 0)]
    while stack:
        pos, cur, size = stack.pop()
        if size == r:
            yield cur
            continue
        if n - pos < r - size:
            continue
        x = order[pos]
        stack.append((pos + 1, cur, size))
        if strict[x] & ~cur == 0:
            stack.append((pos + 1, cur | 1 << x, size + 1))


def enumerate_ideals(P: Poset, r: int) -> IdealFamily:
    if not 0 <= r <= P.n:
        raise RangeError(f"r={r} outside 0..{P.n}")
    ideals = tuple(sorted(iter_ideals(P, r)))
    union = 0
    core = P.full
    for ideal in ideals:
        union |= ideal
        core &= ideal
    essential = union & ~core
    return IdealFamily(
        r=r,
        ideals=ideals,
        union_mask=union,
        core_mask=core,
        u=popcount(core),
        lam=popcount(union) - r,
        essential_mask=essential,
        k=popcount(extremal(P, essential, "max")),
    )


def brute_force_ideals(P: Poset, r: int) -> List[int]:
    """All r-subsets that are ideals, by filtering every subset. Test oracle only."""
    return [s for s in range(1 << P.n) if popcount(s) == r and is_ideal(P, s)]


def adjust_ideal(P: Poset, I: MaskLike, r_target: int) -> int:
    """Grow or shrink an ideal to cardinality ``r_target``.

    Growing adds the lowest-index minimal element of the complement;
    shrinking drops the highest-index maximal element, so both directions
    favour low indices in the result.
    """
    cur = as_mask(I)
    if not is_ideal(P, cur):
        raise InvalidIdeal("input set is not an ideal")
    if not 0 <= r_target <= P.n:
        raise RangeError(f"r_target={r_target} outside 0..{P.n}")
    while popcount(cur) < r_target:
        cand = extremal(P, P.full & ~cur, "min")
        cur |= cand & -cand
    while popcount(cur) > r_target:
        cand = extremal(P, cur, "max")
        cur &= ~(1 << (cand.bit_length() - 1))
    return cur


def johnson_distance(I: MaskLike, J: MaskLike) -> int:
    a, b = as_mask(I), as_mask(J)
    if popcount(a) != popcount(b):
        raise SizeMismatch("Johnson distance needs equal cardinalities")
    return popcount(a ^ b) // 2


def ideal_path(P: Poset, I: MaskLike, J: MaskLike, r: int | None = None) -> List[int]:
    """Shortest path from I to J through r-ideals, one exchange per step."""
    start, end = as_mask(I), as_mask(J)
    if not (is_ideal(P, start) and is_ideal(P, end)):
        raise InvalidIdeal("path endpoints must be ideals")
    if popcount(start) != popcount(end) or (r is not None and popcount(start) != r):
        raise InvalidIdeal("path endpoints must be ideals of the same cardinality r")
    path = [end]
    cur = end
    # Walk back from J: swap a maximal element of cur\I for a minimal one of I\cur.
    while cur != start:
        add = extremal(P, start & ~cur, "min")
        drop = extremal(P, cur & ~start, "max")
        cur = (cur | add & -add) & ~(drop & -drop)
        path.append(cur)
    path.reverse()
    return path


def abc_sequence(P: Poset, r: int, family: IdealFamily | None = None) -> Tuple[List[int], List[int]]:
    """Ideals I_0..I_lam and 0-based elements a_1..a_lam growing the union one element at a time.

    At step l the union of I_0..I_l equals I_0 plus {a_1..a_l}.
    """
    fam = family or enumerate_ideals(P, r)
    ideals = list(fam.ideals)
    seq = [ideals[0]]
    new_elems: List[int] = []
    covered = ideals[0]
    while covered != fam.union_mask:
        inside = [I for I in ideals if I & ~covered == 0]
        for J in ideals:
            if J & ~covered and any(popcount(I ^ J) == 2 for I in inside):
                break
        else:  # pragma: no cover - the ideal graph is connected
            raise AssertionError("ideal graph is disconnected")
        a = J & ~covered
        seq.append(J)
        new_elems.append(a.bit_length() - 1)
        covered |= J
    return seq, new_elems


def shadow_w(P: Poset, V: MaskLike) -> int:
    """Complement of the upset generated by the maximal elements of the ideal V."""
    v = as_mask(V)
    if not is_ideal(P, v):
        raise InvalidIdeal("W(V) needs V to be an ideal")
    return P.full & ~principal_upset(P, extremal(P, v, "max"))


def ideal_graph_components(family: IdealFamily) -> int:
    """Number of connected components of the Johnson-distance-1 graph on the family."""
    remaining = set(family.ideals)
    components = 0
    while remaining:
        components += 1
        frontier = [remaining.pop()]
        while frontier:
            cur = frontier.pop()
            nbrs = [J for J in remaining if popcount(cur ^ J) == 2]
            for J in nbrs:
                remaining.discard(J)
            frontier += nbrs
    return components


def johnson_adjacent(I: int, J: int) -> bool:
    return popcount(I ^ J) == 2 and popcount(I) == popcount(J)


__all__ = [
    "IdealFamily",
    "abc_sequence",
    "adjust_ideal",
    "brute_force_ideals",
    "enumerate_ideals",
    "ideal_graph_components",
    "ideal_path",
    "iter_ideals",
    "johnson_adjacent",
    "johnson_distance",
    "shadow_w",
]
