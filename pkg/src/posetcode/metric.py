"""P-weight, P-distance and poset balls."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np

from .errors import CapExceeded, RangeError
from .ideals import enumerate_ideals
from .poset import MaskLike, Poset, as_mask, bits, popcount, principal_ideal

BITSET_MAX_N = 24
ORACLE_MAX_N = 20


@dataclass(frozen=True)
class BallProfile:
    r: int
    size: int
    members: Optional[Tuple[int, ...]] = None


def p_weight(P: Poset, x: MaskLike) -> int:
    return popcount(principal_ideal(P, x))


def p_distance(P: Poset, x: MaskLike, y: MaskLike) -> int:
    return p_weight(P, as_mask(x) ^ as_mask(y))


def subset_closure(n: int, tops: Iterable[int]) -> np.ndarray:
    """Boolean indicator over F^n of every subset of some mask in ``tops``."""
    arr = np.zeros(1 << n, dtype=bool)
    tops = list(tops)
    if tops:
        arr[np.asarray(tops, dtype=np.int64)] = True
    for i in range(n):
        view = arr.reshape(-1, 2, 1 << i)
        view[:, 0, :] |= view[:, 1, :]
    return arr


def _submasks(x: int):
    s = x
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & x


def ball(P: Poset, r: int, materialize: bool = True) -> BallProfile:
    """Ball of radius r around 0 as the union of 2^I over all r-ideals I."""
    if not 0 <= r <= P.n:
        raise RangeError(f"r={r} outside 0..{P.n}")
    family = enumerate_ideals(P, r)
    if P.n <= BITSET_MAX_N:
        members = np.flatnonzero(subset_closure(P.n, family.ideals))
        size = int(members.size)
        return BallProfile(r, size, tuple(int(x) for x in members) if materialize else None)
    seen = set()
    for ideal in family.ideals:
        seen.update(_submasks(ideal))
    return BallProfile(r, len(seen), tuple(sorted(seen)) if materialize else None)


def ball_array(P: Poset, r: int) -> np.ndarray:
    """Sorted int64 array of ball members (bitset route only)."""
    if P.n > BITSET_MAX_N:
        raise CapExceeded(f"n={P.n} above bitset cap {BITSET_MAX_N}")
    if not 0 <= r <= P.n:
        raise RangeError(f"r={r} outside 0..{P.n}")
    return np.flatnonzero(subset_closure(P.n, enumerate_ideals(P, r).ideals))


def ball_size(P: Poset, r: int) -> int:
    return ball(P, r, materialize=False).size


def weight_table(P: Poset) -> np.ndarray:
    """P-weight of every vector of F^n, indexed by bitmask."""
    if P.n > ORACLE_MAX_N:
        raise CapExceeded(f"n={P.n} above oracle cap {ORACLE_MAX_N}")
    closure = np.zeros(1 << P.n, dtype=np.uint64)
    for i in range(P.n):
        closure[1 << i : 2 << i] = closure[: 1 << i] | np.uint64(P.down[i])
    return np.bitwise_count(closure)


def ball_oracle(P: Poset, r: int, cap: int = ORACLE_MAX_N) -> BallProfile:
    """Ball straight from the definition: every vector with P-weight <= r."""
    if P.n > cap:
        raise CapExceeded(f"n={P.n} above oracle cap {cap}")
    if not 0 <= r <= P.n:
        raise RangeError(f"r={r} outside 0..{P.n}")
    members = np.flatnonzero(weight_table(P) <= r)
    return BallProfile(r, int(members.size), tuple(int(x) for x in members))


def ball_lower_bound(r: int, lam: int) -> int:
    """2^(r-1) * (2 + lam), kept integral for r = 0."""
    return (1 << r) + lam * (1 << r) // 2 if r else 1


__all__ = [
    "BallProfile",
    "ball",
    "ball_array",
    "ball_lower_bound",
    "ball_oracle",
    "ball_size",
    "p_distance",
    "p_weight",
    "subset_closure",
    "weight_table",
]
