"""Finite posets on [n] stored as per-element closure bitmasks.

Elements are 1-based at every public boundary (parsers, ``mask``,
``elements``, reports) and 0-based inside the masks: element ``i`` is bit
``i - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple, Union

from .errors import CycleError, ParseError, RangeError

MAX_N = 64

MaskLike = Union[int, "SubsetVec", Iterable[int]]


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(x: int) -> List[int]:
    """0-based indices of the set bits of ``x``, ascending."""
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def mask(elements: Iterable[int]) -> int:
    """Bitmask of a collection of 1-based elements."""
    m = 0
    for e in elements:
        if e < 1:
            raise RangeError(f"element {e} is not in [n]")
        m |= 1 << (e - 1)
    return m


def elements(x: int) -> List[int]:
    """Sorted 1-based elements of a bitmask."""
    return [i + 1 for i in bits(x)]


@dataclass(frozen=True)
class SubsetVec:
    """A subset of [n], equivalently a binary word of length n.

    ``+`` is symmetric difference (mod-2 addition of words).
    """

    n: int
    bits: int

    def __post_init__(self):
        if not 0 <= self.n <= MAX_N:
            raise RangeError(f"n={self.n} outside 0..{MAX_N}")
        if self.bits < 0 or self.bits >> self.n:
            raise RangeError("bits set above position n")

    @classmethod
    def from_elements(cls, n: int, elems: Iterable[int]) -> "SubsetVec":
        return cls(n, mask(elems))

    @classmethod
    def from_string(cls, word: str) -> "SubsetVec":
        """Parse a 0/1 word, position 1 leftmost: ``"01011"`` is {2,4,5}."""
        word = word.strip()
        if any(ch not in "01" for ch in word):
            raise ParseError(f"not a 0/1 word: {word!r}")
        return cls(len(word), sum(1 << i for i, ch in enumerate(word) if ch == "1"))

    def to_string(self) -> str:
        return word_string(self.bits, self.n)

    @property
    def elements(self) -> List[int]:
        return elements(self.bits)

    def _other(self, other: "SubsetVec") -> int:
        if not isinstance(other, SubsetVec):
            return NotImplemented
        if other.n != self.n:
            raise RangeError("length mismatch")
        return other.bits

    def __add__(self, other):
        return SubsetVec(self.n, self.bits ^ self._other(other))

    def __or__(self, other):
        return SubsetVec(self.n, self.bits | self._other(other))

    def __and__(self, other):
        return SubsetVec(self.n, self.bits & self._other(other))

    def __invert__(self):
        return SubsetVec(self.n, ((1 << self.n) - 1) ^ self.bits)

    def __len__(self):
        return popcount(self.bits)

    def __contains__(self, e: int) -> bool:
        return 1 <= e <= self.n and bool(self.bits >> (e - 1) & 1)

    def __index__(self):
        return self.bits


def as_mask(x: MaskLike) -> int:
    """Accept an int mask, a SubsetVec, or an iterable of 1-based elements."""
    if isinstance(x, SubsetVec):
        return x.bits
    if isinstance(x, int):
        if x < 0:
            raise RangeError("negative mask")
        return x
    return mask(x)


def word_string(x: int, n: int) -> str:
    return "".join("1" if x >> i & 1 else "0" for i in range(n))


class Poset:
    """Immutable partial order on [n].

    ``down[i]`` is the mask of elements below or equal to element ``i``
    (0-based), ``up[i]`` the mask of elements above or equal to it.
    """

    __slots__ = ("n", "down", "up", "order", "_full")

    def __init__(self, n: int, down: Sequence[int]):
        if not 0 <= n <= MAX_N:
            raise RangeError(f"n={n} outside 0..{MAX_N}")
        if len(down) != n:
            raise RangeError("need one down-mask per element")
        full = (1 << n) - 1
        up = [0] * n
        for i, d in enumerate(down):
            if d & ~full:
                raise RangeError("down-mask refers to elements beyond n")
            if not d >> i & 1:
                raise RangeError(f"element {i + 1} is not below itself")
            for j in bits(d):
                up[j] |= 1 << i
        for i, d in enumerate(down):
            if d & up[i] != 1 << i:
                raise CycleError(f"element {i + 1} lies on a cycle")
            for j in bits(d):
                if down[j] & ~d:
                    raise RangeError("down-masks are not transitively closed")
        self.n = n
        self.down: Tuple[int, ...] = tuple(down)
        self.up: Tuple[int, ...] = tuple(up)
        self._full = full
        self.order: Tuple[int, ...] = _linear_extension(self.down)

    # -- construction -------------------------------------------------

    @classmethod
    def from_covers(cls, n: int, covers: Iterable[Tuple[int, int]]) -> "Poset":
        """Reflexive-transitive closure of 1-based relations ``a < b``."""
        if not 0 <= n <= MAX_N:
            raise RangeError(f"n={n} outside 0..{MAX_N}")
        preds = [0] * n
        for a, b in covers:
            if not (1 <= a <= n and 1 <= b <= n):
                raise RangeError(f"relation {a} < {b} outside [1..{n}]")
            if a == b:
                raise CycleError(f"relation {a} < {a} is reflexive")
            preds[b - 1] |= 1 << (a - 1)
        # Kahn's algorithm doubles as cycle detection
        indeg = [popcount(p) for p in preds]
        succ: List[List[int]] = [[] for _ in range(n)]
        for b in range(n):
            for a in bits(preds[b]):
                succ[a].append(b)
        ready = [i for i in range(n) if indeg[i] == 0]
        down = [1 << i for i in range(n)]
        seen = 0
        while ready:
            ready.sort(reverse=True)
            i = ready.pop()
            seen += 1
            for j in succ[i]:
                down[j] |= down[i]
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
        if seen != n:
            raise CycleError("cover relations contain a directed cycle")
        return cls(n, down)

    @classmethod
    def from_leq(cls, n: int, leq) -> "Poset":
        """From a predicate ``leq(a, b)`` on 1-based elements (assumed a partial order)."""
        down = [0] * n
        for b in range(1, n + 1):
            for a in range(1, n + 1):
                if a == b or leq(a, b):
                    down[b - 1] |= 1 << (a - 1)
        return cls(n, down)

    # -- queries ------------------------------------------------------

    @property
    def full(self) -> int:
        return self._full

    def leq(self, a: int, b: int) -> bool:
        """1-based comparison a ⪯ b."""
        return bool(self.down[b - 1] >> (a - 1) & 1)

    def covers(self) -> List[Tuple[int, int]]:
        """Hasse diagram as sorted 1-based pairs (a, b) with b covering a."""
        out = []
        for b in range(self.n):
            strict = self.down[b] & ~(1 << b)
            for a in bits(strict):
                between = strict & self.up[a] & ~(1 << a)
                if not between:
                    out.append((a + 1, b + 1))
        return sorted(out)

    def relations(self) -> List[Tuple[int, int]]:
        """All strict comparabilities a < b, 1-based."""
        return sorted(
            (a + 1, b + 1)
            for b in range(self.n)
            for a in bits(self.down[b] & ~(1 << b))
        )

    def induced(self, sub: int) -> Tuple["Poset", List[int]]:
        """Induced subposet on ``sub``; returns it and the 0-based original index of each new element."""
        idx = bits(sub)
        pos = {old: new for new, old in enumerate(idx)}
        down = []
        for old in idx:
            d = 0
            for j in bits(self.down[old] & sub):
                d |= 1 << pos[j]
            down.append(d)
        return Poset(len(idx), down), idx

    def relabel(self, perm: Sequence[int]) -> "Poset":
        """Poset with old element ``i`` renamed ``perm[i]`` (both 0-based)."""
        down = [0] * self.n
        for i in range(self.n):
            d = 0
            for j in bits(self.down[i]):
                d |= 1 << perm[j]
            down[perm[i]] = d
        return Poset(self.n, down)

    def __eq__(self, other):
        return isinstance(other, Poset) and self.n == other.n and self.down == other.down

    def __hash__(self):
        return hash((self.n, self.down))

    def __repr__(self):
        return f"Poset(n={self.n}, covers={self.covers()})"


def _linear_extension(down: Sequence[int]) -> Tuple[int, ...]:
    n = len(down)
    placed = 0
    order = []
    while len(order) < n:
        for i in range(n):
            if not placed >> i & 1 and down[i] & ~placed == 1 << i:
                order.append(i)
                placed |= 1 << i
                break
    return tuple(order)


# -- generators -----------------------------------------------------------


def chain(n: int) -> Poset:
    if n < 1:
        raise RangeError("chain needs n >= 1")
    return Poset.from_covers(n, [(i, i + 1) for i in range(1, n)])


def antichain(n: int) -> Poset:
    if n < 1:
        raise RangeError("antichain needs n >= 1")
    return Poset.from_covers(n, [])


def disjoint_chains(lengths: Sequence[int]) -> Poset:
    if not lengths or any(length < 1 for length in lengths):
        raise RangeError("disjoint_chains needs at least one chain, each of length >= 1")
    covers = []
    start = 1
    for length in lengths:
        covers += [(start + i, start + i + 1) for i in range(length - 1)]
        start += length
    return Poset.from_covers(start - 1, covers)


def crown(t: int) -> Poset:
    """Height-2 crown on 2t elements: minimal 1..t, maximal t+1..2t, t+i above i and i+1 (cyclically)."""
    if t < 2:
        raise RangeError("crown needs t >= 2")
    covers = []
    for i in range(1, t):
        covers += [(i, t + i), (i + 1, t + i)]
    covers += [(1, 2 * t), (t, 2 * t)]
    return Poset.from_covers(2 * t, covers)


def gen_poset(kind: str, *params) -> Poset:
    """Dispatch on a generator name: chain, antichain, disjoint_chains, crown."""
    if kind == "chain":
        return chain(*params)
    if kind == "antichain":
        return antichain(*params)
    if kind == "disjoint_chains":
        lengths = params[0] if len(params) == 1 and not isinstance(params[0], int) else params
        return disjoint_chains(list(lengths))
    if kind == "crown":
        return crown(*params)
    raise RangeError(f"unknown poset kind {kind!r}")


# -- closure queries ------------------------------------------------------


def principal_ideal(P: Poset, S: MaskLike) -> int:
    s = as_mask(S)
    out = 0
    for i in bits(s):
        out |= P.down[i]
    return out


def principal_upset(P: Poset, S: MaskLike) -> int:
    s = as_mask(S)
    out = 0
    for i in bits(s):
        out |= P.up[i]
    return out


def extremal(P: Poset, S: MaskLike, which: str = "max") -> int:
    """Maximal (``"max"``) or minimal (``"min"``) elements of the induced subposet on S."""
    s = as_mask(S)
    rel = P.up if which == "max" else P.down
    if which not in ("max", "min"):
        raise RangeError("which must be 'max' or 'min'")
    out = 0
    for i in bits(s):
        if rel[i] & s == 1 << i:
            out |= 1 << i
    return out


def maximal(P: Poset, S: MaskLike | None = None) -> int:
    return extremal(P, P.full if S is None else S, "max")


def minimal(P: Poset, S: MaskLike | None = None) -> int:
    return extremal(P, P.full if S is None else S, "min")


def height(P: Poset, S: MaskLike | None = None) -> int:
    """Number of elements in a longest chain inside S (0 for the empty set)."""
    s = P.full if S is None else as_mask(S)
    longest = [0] * P.n
    best = 0
    for i in P.order:
        if not s >> i & 1:
            continue
        below = P.down[i] & s & ~(1 << i)
        longest[i] = 1 + max((longest[j] for j in bits(below)), default=0)
        best = max(best, longest[i])
    return best


def is_ideal(P: Poset, S: MaskLike) -> bool:
    s = as_mask(S)
    return principal_ideal(P, s) == s


def is_upset(P: Poset, S: MaskLike) -> bool:
    s = as_mask(S)
    return principal_upset(P, s) == s


# -- text format ----------------------------------------------------------


def parse_poset(text: str) -> Poset:
    """Parse ``n <count>`` followed by ``a < b`` lines; ``#`` starts a comment."""
    n = None
    covers = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "n":
                raise ParseError("expected header 'n <count>'", lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise ParseError(f"bad element count {parts[1]!r}", lineno) from None
            continue
        if "<" not in line:
            raise ParseError(f"expected 'a < b', got {line!r}", lineno)
        left, right = line.split("<", 1)
        try:
            covers.append((int(left), int(right)))
        except ValueError:
            raise ParseError(f"bad relation {line!r}", lineno) from None
    if n is None:
        raise ParseError("missing header 'n <count>'")
    return Poset.from_covers(n, covers)


def format_poset(P: Poset, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"n {P.n}")
    lines += [f"{a} < {b}" for a, b in P.covers()]
    return "\n".join(lines) + "\n"
