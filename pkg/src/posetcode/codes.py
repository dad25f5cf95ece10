"""Binary codes under a poset metric: representation, verification, constructions."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from . import gf2
from .errors import CapExceeded, NotUnique, ParseError, RangeError, ShapeMismatch
from .ideals import enumerate_ideals
from .metric import BITSET_MAX_N, ball, subset_closure
from .poset import Poset, bits, elements, is_ideal, popcount, principal_ideal, word_string

COVERING_CAP = 24


@dataclass(frozen=True)
class Code:
    """A binary code of length n, either an explicit word list or a GF(2) kernel.

    Linear codes are ``{c : sum of columns[i] for i in c == 0}`` where each
    column is an m-bit integer (bit j is check row j + 1).
    """

    n: int
    words: Optional[Tuple[int, ...]] = None
    columns: Optional[Tuple[int, ...]] = None
    m_rows: int = 0

    def __post_init__(self):
        if (self.words is None) == (self.columns is None):
            raise ValueError("give exactly one of words or columns")
        if self.words is not None:
            if len(set(self.words)) != len(self.words):
                raise ValueError("explicit code has duplicate words")
            if any(w < 0 or w >> self.n for w in self.words):
                raise RangeError("word longer than n")
        else:
            if len(self.columns) != self.n:
                raise ValueError("linear code needs one column per position")
            if any(h < 0 or h >> self.m_rows for h in self.columns):
                raise RangeError("column longer than m")

    @classmethod
    def explicit(cls, n: int, words) -> "Code":
        return cls(n, words=tuple(sorted(words)))

    @classmethod
    def linear(cls, n: int, m: int, columns: Sequence[int]) -> "Code":
        return cls(n, columns=tuple(columns), m_rows=m)

    @classmethod
    def span(cls, n: int, generators: Sequence[int]) -> "Code":
        """Linear code spanned by ``generators``, stored by its parity checks."""
        m, cols = gf2.parity_columns(n, generators)
        return cls.linear(n, m, cols)

    @property
    def is_linear_repr(self) -> bool:
        return self.columns is not None

    @cached_property
    def rank(self) -> int:
        if self.columns is None:
            raise AttributeError("explicit codes have no parity-check rank")
        return gf2.rank(self.columns)

    @property
    def cardinality(self) -> int:
        if self.columns is not None:
            return 1 << (self.n - self.rank)
        return len(self.words)

    @cached_property
    def codewords(self) -> Tuple[int, ...]:
        if self.words is not None:
            return self.words
        return tuple(gf2.span(gf2.kernel_basis(self.columns)))

    @property
    def codimension(self) -> Optional[int]:
        """n - log2 |C| when |C| is a power of two, else None."""
        size = self.cardinality
        if size & (size - 1):
            return None
        return self.n - (size.bit_length() - 1)

    def is_additive(self) -> bool:
        return self.columns is not None or gf2.is_linear(self.words)

    def to_explicit(self) -> "Code":
        return Code.explicit(self.n, self.codewords)


@dataclass(frozen=True)
class VerificationResult:
    packing_ok: bool
    covering_ok: Optional[bool]
    perfect: bool
    witness: Optional[dict] = None


# -- code file format ---------------------------------------------------------


def parse_code(text: str) -> Code:
    """Header ``n <len> repr explicit`` or ``n <len> repr linear <m>``, then words or columns."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise ParseError("empty code file")
    lineno, header = rows[0]
    parts = header.split()
    try:
        if parts[0] != "n" or parts[2] != "repr":
            raise ValueError
        n = int(parts[1])
        kind = parts[3]
        m = int(parts[4]) if kind == "linear" else None
        if kind not in ("explicit", "linear") or len(parts) != (5 if m is not None else 4):
            raise ValueError
    except (ValueError, IndexError):
        raise ParseError(f"bad header {header!r}", lineno) from None
    width = n if kind == "explicit" else m
    vals = []
    for lineno, line in rows[1:]:
        if len(line) != width or any(ch not in "01" for ch in line):
            raise ParseError(f"expected a 0/1 string of length {width}, got {line!r}", lineno)
        vals.append(sum(1 << i for i, ch in enumerate(line) if ch == "1"))
    try:
        if kind == "explicit":
            return Code.explicit(n, vals)
        if len(vals) != n:
            raise ParseError(f"linear code needs {n} columns, got {len(vals)}")
        return Code.linear(n, m, vals)
    except (ValueError, RangeError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from None


def format_code(C: Code) -> str:
    if C.columns is not None:
        lines = [f"n {C.n} repr linear {C.m_rows}"]
        lines += [word_string(h, C.m_rows) for h in C.columns]
    else:
        lines = [f"n {C.n} repr explicit"]
        lines += [word_string(w, C.n) for w in C.words]
    return "\n".join(lines) + "\n"


# -- verification -------------------------------------------------------------


def _packing_violation(P: Poset, words: Sequence[int], r: int, additive: bool):
    """First codeword pair whose difference fits in a union of two r-ideals."""
    family = enumerate_ideals(P, r)
    unions = sorted({a | b for a in family.ideals for b in family.ideals})
    if P.n <= BITSET_MAX_N:
        double = subset_closure(P.n, unions)
        arr = np.asarray(words, dtype=np.int64)
        if additive:
            hits = np.flatnonzero(double[arr[1:]])
            if hits.size:
                return 0, int(arr[1 + hits[0]]), family
            return None
        for i in range(len(arr) - 1):
            hits = np.flatnonzero(double[arr[i + 1 :] ^ arr[i]])
            if hits.size:
                return int(arr[i]), int(arr[i + 1 + hits[0]]), family
        return None
    for i, c1 in enumerate(words):
        for c2 in words[i + 1 :]:
            d = c1 ^ c2
            if any(d & ~u == 0 for u in unions):
                return c1, c2, family
    return None


def _ideal_pair(family, diff: int) -> Tuple[int, int]:
    for a in family.ideals:
        for b in family.ideals:
            if diff & ~(a | b) == 0:
                return a, b
    raise AssertionError("no covering ideal pair")  # pragma: no cover


def is_error_correcting(P: Poset, C: Code, r: int) -> VerificationResult:
    """Packing check: no two codewords differ inside a union of two r-ideals."""
    if not 0 <= r <= P.n:
        raise RangeError(f"r={r} outside 0..{P.n}")
    if C.n != P.n:
        raise RangeError("code length differs from poset size")
    words = C.codewords
    if not words:
        raise RangeError("code must be nonempty")
    additive = C.is_additive()
    if additive:
        words = tuple(sorted(words))
    found = _packing_violation(P, words, r, additive)
    if found is None:
        return VerificationResult(True, None, False, None)
    c1, c2, family = found
    i1, i2 = _ideal_pair(family, c1 ^ c2)
    witness = {"kind": "packing", "c1": c1, "c2": c2, "I1": i1, "I2": i2}
    return VerificationResult(False, None, False, witness)


def coverage_counts(n: int, words: Sequence[int], ball_members: np.ndarray) -> np.ndarray:
    """How many codeword balls contain each vector of F^n."""
    counts = np.zeros(1 << n, dtype=np.int64)
    arr = np.asarray(words, dtype=np.int64)
    chunk = max(1, (1 << 22) // max(1, ball_members.size))
    for start in range(0, arr.size, chunk):
        block = (arr[start : start + chunk, None] ^ ball_members[None, :]).ravel()
        counts += np.bincount(block, minlength=1 << n)
    return counts


def is_perfect(P: Poset, C: Code, r: int, oracle: bool = False, cap: int = COVERING_CAP) -> VerificationResult:
    """Packing plus covering. Covering follows from |C|*|B| = 2^n once packing holds;
    ``oracle=True`` sweeps every vector instead."""
    if oracle and P.n > cap:
        raise CapExceeded(f"n={P.n} above covering cap {cap}")
    packing = is_error_correcting(P, C, r)
    profile = ball(P, r, materialize=P.n <= cap)
    if oracle or P.n <= cap and (not packing.packing_ok or C.cardinality * profile.size != 1 << P.n):
        counts = coverage_counts(P.n, C.codewords, np.asarray(profile.members, dtype=np.int64))
        holes = np.flatnonzero(counts == 0)
        covering = holes.size == 0
        cover_witness = None if covering else {"kind": "covering", "uncovered": int(holes[0])}
        if oracle and packing.packing_ok and counts.max() > 1:  # pragma: no cover - packing check and sweep disagree
            raise AssertionError("packing check and coverage sweep disagree")
    else:
        covering = C.cardinality * profile.size == 1 << P.n
        cover_witness = None if covering else {
            "kind": "covering",
            "covered_at_most": C.cardinality * profile.size,
            "space": 1 << P.n,
        }
    witness = packing.witness if not packing.packing_ok else cover_witness
    return VerificationResult(packing.packing_ok, covering, packing.packing_ok and covering, witness)


def witness_json(witness: Optional[dict], n: int) -> Optional[dict]:
    """Witness with words as 0/1 strings and ideals as 1-based element lists."""
    if witness is None:
        return None
    out = {}
    for key, val in witness.items():
        if key in ("c1", "c2", "uncovered"):
            out[key] = word_string(val, n)
        elif key in ("I1", "I2"):
            out[key] = elements(val)
        else:
            out[key] = val
    return out


# -- constructions ------------------------------------------------------------

CheckFunction = Union[Mapping[int, int], Callable[[int], int]]


def construct_m_perfect(P: Poset, m: int, f: Optional[CheckFunction] = None) -> Code:
    """Systematic m-perfect code: information symbols P minus the unique m-ideal I,
    check symbols I filled by ``f`` (default: all zero)."""
    family = enumerate_ideals(P, m)
    if len(family) != 1:
        raise NotUnique(f"{len(family)} ideals of cardinality {m}, need exactly one")
    I = family.ideals[0]
    info = P.full & ~I
    if f is None and m > 0:
        checks = bits(I)
        cols = [0] * P.n
        for row, pos in enumerate(checks):
            cols[pos] = 1 << row
        return Code.linear(P.n, m, cols)
    if f is None:
        f = {}
    lookup = f.get if isinstance(f, Mapping) else None
    words = []
    Y = info
    while True:
        val = (lookup(Y, 0) if lookup else f(Y)) or 0
        if val & ~I:
            raise RangeError("check function must map into subsets of the m-ideal")
        words.append(Y | val)
        if Y == 0:
            break
        Y = (Y - 1) & info
    return Code.explicit(P.n, words)


@dataclass(frozen=True)
class Th1Shape:
    """The (m-1)-ideals are exactly I+{a1}, I+{a2}, I+{a3} (0-based a's)."""

    I: int
    a: Tuple[int, int, int]


def th1_shape(P: Poset, m: int) -> Optional[Th1Shape]:
    """Read the three-ideal shape straight off the (m-1)-ideal family, if present."""
    if m < 1 or m - 1 > P.n:
        return None
    family = enumerate_ideals(P, m - 1)
    if len(family) != 3:
        return None
    core = family.core_mask
    if popcount(core) != m - 2:
        return None
    a = tuple(sorted((J & ~core).bit_length() - 1 for J in family.ideals))
    return Th1Shape(core, a)


def construct_m1_perfect(P: Poset, m: int, alphas: int = 0) -> Code:
    """Linear (m-1)-perfect code from parity-check columns.

    Columns of I + {a1, a2} form the standard basis in index order and
    h(a3) = h(a1) + h(a2) + sum of h(i) over i in ``alphas`` (a subset of I).
    Columns elsewhere cycle through the nonzero vectors of F^m.
    """
    shape = th1_shape(P, m)
    if shape is None:
        raise ShapeMismatch(f"(m-1)-ideals of P do not have the I+{{a1}}, I+{{a2}}, I+{{a3}} shape for m={m}")
    if alphas & ~shape.I:
        raise RangeError("alphas must be a subset of the (m-2)-ideal")
    a1, a2, a3 = shape.a
    basis_positions = bits(shape.I | 1 << a1 | 1 << a2)
    cols = [0] * P.n
    for row, pos in enumerate(basis_positions):
        cols[pos] = 1 << row
    h3 = cols[a1] ^ cols[a2]
    for i in bits(alphas):
        h3 ^= cols[i]
    cols[a3] = h3
    nonzero = (1 << m) - 1
    nxt = 0
    used = shape.I | 1 << a1 | 1 << a2 | 1 << a3
    for pos in range(P.n):
        if not used >> pos & 1:
            cols[pos] = nxt % nonzero + 1
            nxt += 1
    return Code.linear(P.n, m, cols)


@dataclass(frozen=True)
class Th1Verdict:
    holds: bool
    I: Optional[int] = None
    a: Optional[Tuple[int, int, int]] = None
    reason: str = ""


def theorem_th1_check(P: Poset, m: int) -> Th1Verdict:
    """Search an (m-2)-ideal I and a1, a2, a3 outside it with

    a) the ideal generated by any two a's is exactly those two plus I;
    b) every other element a has some I + {a_i} inside its principal ideal.

    In b) "other" means outside I + {a1, a2, a3}, the would-be union of
    the (m-1)-ideals.
    """
    if m < 2 or m - 2 > P.n:
        return Th1Verdict(False, reason=f"m={m} leaves no (m-2)-ideal")
    for I in enumerate_ideals(P, m - 2).ideals:
        cands = [x for x in range(P.n) if not I >> x & 1 and is_ideal(P, I | 1 << x)]
        for i, x in enumerate(cands):
            for j in range(i + 1, len(cands)):
                y = cands[j]
                if principal_ideal(P, 1 << x | 1 << y) != I | 1 << x | 1 << y:
                    continue
                for z in cands[j + 1 :]:
                    if principal_ideal(P, 1 << x | 1 << z) != I | 1 << x | 1 << z:
                        continue
                    if principal_ideal(P, 1 << y | 1 << z) != I | 1 << y | 1 << z:
                        continue
                    union = I | 1 << x | 1 << y | 1 << z
                    if all(
                        any(I | 1 << t == (I | 1 << t) & P.down[e] for t in (x, y, z))
                        for e in range(P.n)
                        if not union >> e & 1
                    ):
                        return Th1Verdict(True, I, (x, y, z))
    return Th1Verdict(False, reason="no (m-2)-ideal and triple satisfy conditions a) and b)")


# -- the r = m - 2 classification -------------------------------------------


@dataclass(frozen=True)
class M2Shape:
    """An admissible essential part for r = m - 2, with a perfect code on it."""

    shape_id: str
    covers: Tuple[Tuple[int, int], ...]
    n: int
    r: int
    generators: Tuple[Tuple[int, ...], ...]

    @cached_property
    def poset(self) -> Poset:
        return Poset.from_covers(self.n, self.covers)

    @cached_property
    def code(self) -> Code:
        return Code.span(self.n, [sum(1 << (i - 1) for i in g) for g in self.generators])


# Labelings of S2 and S3 were recovered by find_poset_labeling; S4 is the
# Hamming [7,4] code, whose columns are the nonzero vectors of F^3.
M2_SHAPES: Tuple[M2Shape, ...] = (
    M2Shape("S1", (), 5, 2, ((1, 2, 3, 4, 5),)),
    M2Shape(
        "S2",
        ((1, 3), (1, 4), (2, 5), (2, 6), (2, 7), (2, 8)),
        8,
        2,
        ((1, 2, 3, 4), (1, 2, 5, 6), (1, 2, 7, 8), (1, 3, 5, 7)),
    ),
    M2Shape(
        "S3",
        ((1, 4), (1, 5), (1, 8), (1, 9), (2, 4), (2, 5), (2, 6), (2, 7), (3, 6), (3, 7), (3, 8), (3, 9)),
        9,
        3,
        ((1, 2, 6, 7), (1, 3, 4, 5), (2, 3, 8, 9), (1, 4, 6, 9)),
    ),
    M2Shape("S4", (), 7, 1, ((1, 2, 3), (1, 4, 5), (2, 4, 6), (1, 2, 4, 7))),
)


@dataclass(frozen=True)
class M2Verdict:
    admissible: bool
    shape_id: Optional[str] = None
    code: Optional[Code] = None
    reason: str = ""


def classify_m2(P: Poset, m: int) -> M2Verdict:
    """Decide whether P carries an (m-2)-perfect code of codimension m.

    The essential part at r = m - 2 must be isomorphic to one of
    ``M2_SHAPES`` at the matching radius; the shape's code is carried over
    through the isomorphism and lifted back to P.
    """
    from .criteria import lift_code, reduce
    from .iso import canonical_labeling

    if m < 2 or m - 2 > P.n:
        return M2Verdict(False, reason=f"m={m} out of range")
    red = reduce(P, m - 2)
    Q = red.Q
    if Q.n == 0:
        return M2Verdict(False, reason="essential part is empty")
    code_q, pos_q = canonical_labeling(Q)
    for shape in M2_SHAPES:
        if shape.n != Q.n or shape.r != red.r_prime:
            continue
        code_s, pos_s = canonical_labeling(shape.poset)
        if code_s != code_q:
            continue
        to_q = [0] * Q.n
        at = {p: q for q, p in enumerate(pos_q)}
        for s in range(Q.n):
            to_q[s] = at[pos_s[s]]
        words = [sum(1 << to_q[s] for s in bits(w)) for w in shape.code.codewords]
        lifted = lift_code(P, red, Code.span(Q.n, words))
        return M2Verdict(True, shape.shape_id, lifted)
    return M2Verdict(False, reason=f"essential part ({Q.n} elements, r'={red.r_prime}) matches no admissible shape")
