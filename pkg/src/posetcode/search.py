"""Exhaustive searches: perfect codes by exact cover, posets by labeling."""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .codes import Code, is_perfect
from .errors import CapExceeded, RangeError
from .metric import ball_array, ball_size
from .poset import Poset

DEFAULT_NODE_LIMIT = 50_000_000


def _env_node_limit() -> int:
    raw = os.environ.get("POSETCODE_NODE_LIMIT")
    return int(raw) if raw else DEFAULT_NODE_LIMIT


@dataclass(frozen=True)
class SearchConfig:
    max_n: int = 14
    node_limit: int = field(default_factory=_env_node_limit)
    symmetry: bool = True
    parallel_width: int = 1


@dataclass(frozen=True)
class SearchResult:
    status: str  # "found" | "none" | "budget_exceeded"
    code: Optional[Code] = None
    nodes: int = 0
    ball_size: int = 0
    reason: str = ""

    @property
    def found(self) -> bool:
        return self.status == "found"


class _Cover:
    """Exact cover of F^n by translates of a fixed ball, as big-int bitsets over 2^n."""

    def __init__(self, n: int, members: Sequence[int]):
        self.n = n
        self.members = [int(b) for b in members]
        self.full = (1 << (1 << n)) - 1
        self._cache = {}

    def translate(self, c: int) -> int:
        t = self._cache.get(c)
        if t is None:
            t = 0
            for b in self.members:
                t |= 1 << (c ^ b)
            self._cache[c] = t
        return t

    def candidates(self, covered: int) -> List[int]:
        hole = self.full & ~covered
        v = (hole & -hole).bit_length() - 1
        return [c for c in sorted(v ^ b for b in self.members) if not self.translate(c) & covered]

    def run(self, prefix: Sequence[int], node_limit: int) -> Tuple[str, List[int], int]:
        covered = 0
        chosen: List[int] = []
        for c in prefix:
            t = self.translate(c)
            if t & covered:
                return "none", [], 0
            covered |= t
            chosen.append(c)
        if covered == self.full:
            return "found", chosen, 0
        nodes = 0
        stack = [(self.candidates(covered), 0)]
        while stack:
            cands, idx = stack[-1]
            if idx == len(cands):
                stack.pop()
                if len(chosen) > len(prefix):
                    covered ^= self.translate(chosen.pop())
                continue
            stack[-1] = (cands, idx + 1)
            c = cands[idx]
            nodes += 1
            if nodes > node_limit:
                return "budget_exceeded", [], nodes
            covered |= self.translate(c)
            chosen.append(c)
            if covered == self.full:
                return "found", chosen, nodes
            stack.append((self.candidates(covered), 0))
        return "none", [], nodes


def _run_branch(args):
    n, members, prefix, node_limit = args
    return _Cover(n, members).run(prefix, node_limit)


def find_perfect_code(P: Poset, r: int, cfg: SearchConfig | None = None) -> SearchResult:
    """Complete backtracking search for an r-perfect P-code.

    Always fills the lowest uncovered vector next, trying centers in
    increasing bitmask order; with ``cfg.symmetry`` the zero word is fixed
    as the first codeword (perfect codes are closed under translation).
    """
    cfg = cfg or SearchConfig()
    if P.n > cfg.max_n:
        raise CapExceeded(f"n={P.n} above search cap {cfg.max_n}")
    if not 0 <= r <= P.n:
        raise RangeError(f"r={r} outside 0..{P.n}")
    members = ball_array(P, r)
    size = int(members.size)
    if (1 << P.n) % size:
        return SearchResult("none", ball_size=size, reason=f"|B|={size} does not divide 2^{P.n}")
    cover = _Cover(P.n, members)
    if not cfg.symmetry:
        status, chosen, nodes = cover.run([], cfg.node_limit)
    elif cfg.parallel_width <= 1:
        status, chosen, nodes = cover.run([0], cfg.node_limit)
    else:
        status, chosen, nodes = _parallel(cover, cfg)
    code = Code.explicit(P.n, chosen) if status == "found" else None
    return SearchResult(status, code, nodes, size)


def _parallel(cover: _Cover, cfg: SearchConfig) -> Tuple[str, List[int], int]:
    first = cover.translate(0)
    if first == cover.full:
        return "found", [0], 0
    branches = cover.candidates(first)
    jobs = [(cover.n, cover.members, [0, c], cfg.node_limit) for c in branches]
    with ProcessPoolExecutor(max_workers=cfg.parallel_width) as pool:
        results = list(pool.map(_run_branch, jobs))
    nodes = sum(res[2] for res in results) + len(branches)
    # branches are in DFS order, so the first success is the sequential answer
    for status, chosen, _ in results:
        if status in ("found", "budget_exceeded"):
            return status, chosen, nodes
    return "none", [], nodes


@dataclass(frozen=True)
class Shape:
    """Height-<=2 poset constraints: size, number of maximal elements, valencies.

    ``nonmax_valencies[i]`` is how many maximal elements lie above the i-th
    nonmaximal element; ``max_valencies`` optionally fixes how many
    nonmaximal elements lie below each maximal one (as a multiset).
    """

    n: int
    n_maximal: int
    nonmax_valencies: Tuple[int, ...]
    max_valencies: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.n_maximal + len(self.nonmax_valencies) != self.n:
            raise RangeError("shape sizes do not add up to n")


def height2_posets(shape: Shape) -> Iterator[Poset]:
    """Every labeled height-<=2 poset on [n] matching the shape."""
    n = shape.n
    want_max = tuple(sorted(shape.max_valencies)) if shape.max_valencies is not None else None
    val_orders = sorted(set(permutations(shape.nonmax_valencies)))
    for nonmax in combinations(range(n), n - shape.n_maximal):
        maxes = [i for i in range(n) if i not in nonmax]
        for vals in val_orders:
            options = [list(combinations(maxes, v)) for v in vals]
            yield from _assign(n, nonmax, maxes, options, want_max, 0, [])


def _assign(n, nonmax, maxes, options, want_max, depth, picked):
    if depth == len(nonmax):
        below = {a: 0 for a in maxes}
        for b, ups in zip(nonmax, picked):
            for a in ups:
                below[a] |= 1 << b
        if want_max is not None:
            if tuple(sorted(bin(m).count("1") for m in below.values())) != want_max:
                return
        down = [1 << i for i in range(n)]
        for a, m in below.items():
            down[a] |= m
        yield Poset(n, down)
        return
    for ups in options[depth]:
        picked.append(ups)
        yield from _assign(n, nonmax, maxes, options, want_max, depth + 1, picked)
        picked.pop()


def find_poset_labeling(code: Code, r: int, shape: Shape) -> Optional[Poset]:
    """First poset of the given shape under which ``code`` is r-perfect."""
    if code.n != shape.n:
        raise RangeError("code length differs from shape size")
    if shape.n > 10:
        raise CapExceeded("labeling search is limited to n <= 10")
    target = (1 << code.n) // code.cardinality
    if target * code.cardinality != 1 << code.n:
        return None
    for P in height2_posets(shape):
        if ball_size(P, r) != target:
            continue
        if is_perfect(P, code, r).perfect:
            return P
    return None


# -- small-poset catalog ------------------------------------------------------

CATALOG_MAX_N = 8


@dataclass(frozen=True)
class CatalogEntry:
    """One (poset, m, r) row: the battery verdict, the brute-force outcome, and whether they agree.

    ``oracle_exists`` means a perfect code of codimension exactly m was
    found. ``theorem`` is the characterization verdict for offsets 0, 1, 2
    (unique m-ideal, theorem_th1_check, classify_m2) and None otherwise.
    """

    covers: Tuple[Tuple[int, int], ...]
    n: int
    m: int
    r: int
    battery: str
    fired: Tuple[str, ...]
    oracle: str
    oracle_exists: bool
    theorem: Optional[bool]
    code: Optional[Tuple[str, ...]]
    agree: bool
    seconds: float

    def to_json(self) -> dict:
        return {
            "poset": {"n": self.n, "covers": [list(c) for c in self.covers]},
            "m": self.m,
            "r": self.r,
            "battery": self.battery,
            "fired": list(self.fired),
            "oracle": self.oracle,
            "oracle_exists": self.oracle_exists,
            "theorem": self.theorem,
            "code": list(self.code) if self.code is not None else None,
            "agree": self.agree,
            "seconds": round(self.seconds, 6),
        }


def theorem_verdict(P: Poset, m: int, offset: int) -> Optional[bool]:
    from .codes import classify_m2, theorem_th1_check
    from .ideals import enumerate_ideals

    if offset == 0:
        return len(enumerate_ideals(P, m)) == 1
    if offset == 1:
        return theorem_th1_check(P, m).holds
    if offset == 2:
        return classify_m2(P, m).admissible
    return None


def catalog_entry(P: Poset, m: int, r: int, cfg: SearchConfig | None = None) -> CatalogEntry:
    from .criteria import EXISTENCE, NONEXISTENCE, run_battery
    from .poset import word_string

    start = time.perf_counter()
    report = run_battery(P, m, r)
    res = find_perfect_code(P, r, cfg)
    exists = res.found and res.ball_size == 1 << m
    theorem = theorem_verdict(P, m, m - r)
    agree = res.status != "budget_exceeded"
    if report.verdict == NONEXISTENCE and exists or report.verdict == EXISTENCE and not exists:
        agree = False
    if theorem is not None and theorem != exists:
        agree = False
    code = tuple(word_string(w, P.n) for w in res.code.codewords) if exists else None
    return CatalogEntry(
        tuple(P.covers()),
        P.n,
        m,
        r,
        report.verdict,
        tuple(report.fired()),
        res.status,
        exists,
        theorem,
        code,
        agree,
        time.perf_counter() - start,
    )


def exhaust_small_posets(n_max: int, m_offset: int, n_min: int = 1, cfg: SearchConfig | None = None) -> Iterator[CatalogEntry]:
    """Battery versus brute force at r = m - m_offset on every poset with n_min <= n <= n_max, up to isomorphism."""
    from .iso import posets_up_to_iso

    if n_max > CATALOG_MAX_N:
        raise CapExceeded(f"catalog limited to n <= {CATALOG_MAX_N}")
    if m_offset < 0:
        raise RangeError("m_offset must be nonnegative")
    for n in range(max(n_min, 1), n_max + 1):
        for P in posets_up_to_iso(n):
            for m in range(m_offset, n + 1):
                yield catalog_entry(P, m, m - m_offset, cfg)
