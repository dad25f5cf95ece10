"""Existence and nonexistence criteria for r-perfect P-codes of codimension m.

Each checker returns a :class:`CriterionResult`; a ``nonexistence_proven``
verdict always carries a witness that the same checker can re-validate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional

from . import gf2
from .codes import (
    Code,
    classify_m2,
    construct_m1_perfect,
    construct_m_perfect,
    is_perfect,
    theorem_th1_check,
)
from .errors import InvalidIdeal, RangeError
from .ideals import IdealFamily, enumerate_ideals, iter_ideals, shadow_w
from .iso import is_isomorphic
from .metric import ball_size
from .poset import (
    MaskLike,
    Poset,
    as_mask,
    bits,
    crown,
    elements,
    extremal,
    height,
    is_ideal,
    is_upset,
    mask,
    minimal,
    popcount,
    principal_ideal,
)

NONEXISTENCE = "nonexistence_proven"
EXISTENCE = "existence_constructed"
INCONCLUSIVE = "inconclusive"

FAMILY_CAP = 256
UPSET_CAP = 512


@dataclass(frozen=True)
class CriterionResult:
    criterion: str
    verdict: str
    witness: dict = field(default_factory=dict)

    @property
    def proves_nonexistence(self) -> bool:
        return self.verdict == NONEXISTENCE


@dataclass
class CriterionReport:
    context: Dict[str, int]
    entries: List[CriterionResult] = field(default_factory=list)
    code: Optional[Code] = None

    @property
    def verdict(self) -> str:
        verdicts = {e.verdict for e in self.entries}
        if NONEXISTENCE in verdicts and EXISTENCE in verdicts:  # pragma: no cover - would be a bug
            raise AssertionError("criteria contradict each other")
        if NONEXISTENCE in verdicts:
            return NONEXISTENCE
        if EXISTENCE in verdicts:
            return EXISTENCE
        return INCONCLUSIVE

    def fired(self) -> List[str]:
        return [e.criterion for e in self.entries if e.verdict == NONEXISTENCE]


def _result(name: str, proven: bool, witness: dict | None = None) -> CriterionResult:
    return CriterionResult(name, NONEXISTENCE if proven else INCONCLUSIVE, witness or {})


# -- arithmetic criteria ------------------------------------------------------


def check_rm(n: int, m: int, r: int) -> CriterionResult:
    """No r-error-correcting code of codimension m when r > m."""
    if r < 0 or not 0 <= m <= n:
        raise RangeError("need r >= 0 and 0 <= m <= n")
    return _result("rm", r > m, {"r": r, "m": m} if r > m else None)


def check_lambda_range(m: int, r: int, lam: int) -> CriterionResult:
    """Perfect codes with r < m need m - r < lam <= 2^(m-r+1) - 2."""
    if r >= m:
        raise RangeError("lambda range applies to r < m only")
    upper = (1 << (m - r + 1)) - 2
    ok = m - r < lam <= upper
    return _result("lambda_range", not ok, None if ok else {"lam": lam, "lower_exclusive": m - r, "upper": upper})


def k_inequality_lhs(r: int, lam: int, k: int) -> Fraction:
    """2^(r+lam) - 2^(r+lam-k) * sum_{s<lam} C(k, s), exactly."""
    tail = sum(comb(k, s) for s in range(lam))
    return Fraction(2) ** (r + lam) - Fraction(2) ** (r + lam - k) * tail


def check_k_inequality(m: int, r: int, lam: int, k: int) -> CriterionResult:
    if k < lam:
        return CriterionResult("k_inequality", INCONCLUSIVE, {"note": "k < lambda, bound does not apply"})
    lhs = k_inequality_lhs(r, lam, k)
    failed = lhs > 2**m
    return _result("k_inequality", failed, {"lhs": str(lhs), "rhs": 2**m, "lam": lam, "k": k} if failed else None)


def admissible_lambda_k_pairs(lam_range=range(3, 7), k_max: int = 64, r: int = 2) -> List[tuple]:
    """(lam, k) pairs with k >= 3 allowed for m = r + 2 by the k-bound or by k < lam."""
    out = []
    for lam in lam_range:
        for k in range(3, k_max + 1):
            if k < lam or not check_k_inequality(r + 2, r, lam, k).proves_nonexistence:
                out.append((lam, k))
    return out


# -- ideal-family criteria ----------------------------------------------------


def _family(P: Poset, r: int, family: IdealFamily | None) -> IdealFamily:
    return family if family is not None else enumerate_ideals(P, r)


def check_union_bound(P: Poset, m: int, r: int, family: IdealFamily | None = None) -> CriterionResult:
    """Error-correcting codes of codimension m need |I' + I''| <= m for all r-ideals."""
    fam = _family(P, r, family)
    if popcount(fam.union_mask) > m:
        ideals = fam.ideals
        for i, a in enumerate(ideals):
            for b in ideals[i:]:
                if popcount(a | b) > m:
                    return _result("union_bound", True, {"I1": a, "I2": b, "size": popcount(a | b)})
    return _result("union_bound", False)


def check_v_cover(P: Poset, r: int, v: MaskLike, family: IdealFamily | None = None) -> CriterionResult:
    """v outside the ball such that every v + I fits in a union of two r-ideals."""
    vm = as_mask(v)
    if popcount(principal_ideal(P, vm)) <= r:
        raise RangeError("v must have P-weight greater than r")
    fam = _family(P, r, family)
    unions = {a | b for a in fam.ideals for b in fam.ideals}
    covers = []
    for I in fam.ideals:
        need = vm | I
        hit = next((u for u in sorted(unions) if need & ~u == 0), None)
        if hit is None:
            return _result("v_cover", False)
        covers.append((I, hit))
    pairs = []
    for I, u in covers:
        a, b = next((a, b) for a in fam.ideals for b in fam.ideals if a | b == u)
        pairs.append({"I": I, "I1": a, "I2": b})
    return _result("v_cover", True, {"v": vm, "covers": pairs})


def check_cor_II(P: Poset, r: int, V: MaskLike, family: IdealFamily | None = None) -> CriterionResult:
    """For an (r+1)-ideal V: every r-ideal meets max(V)  <=>  |W(V)| < r."""
    vm = as_mask(V)
    if not is_ideal(P, vm) or popcount(vm) != r + 1:
        raise InvalidIdeal("V must be an ideal of cardinality r + 1")
    fam = _family(P, r, family)
    top = extremal(P, vm, "max")
    cond_a = all(I & top for I in fam.ideals)
    W = shadow_w(P, vm)
    cond_b = popcount(W) < r
    if cond_a != cond_b:  # pragma: no cover - the two conditions are equivalent
        raise AssertionError(f"conditions a) and b) disagree for V={elements(vm)}")
    return _result("cor_II", cond_b, {"V": vm, "W": W, "maxV": top} if cond_b else None)


def crown_v(t: int, r: int) -> Optional[int]:
    """The (r+1)-ideal used on crown(t) for t/2 <= r < 2t, if the range applies."""
    if 2 * r >= t and r < t:
        return mask(range(1, t + 1)) & ~mask(range(2, 2 * (t - r - 1) + 1, 2))
    if t <= r < 2 * t:
        return mask(range(1, r + 2))
    return None


def _canonical_vs(P: Poset, r: int, fam_next: Optional[IdealFamily]):
    mins = minimal(P)
    if popcount(mins) == r + 1:
        yield "min(P)", mins
    for a in bits(mins):
        pa = P.full & ~P.up[a]
        if popcount(pa) == r:
            yield f"P_{a + 1}", pa | 1 << a
    if P.n % 2 == 0 and P.n >= 4 and P == crown(P.n // 2):
        v = crown_v(P.n // 2, r)
        if v is not None:
            yield "crown", v
    if fam_next is not None:
        for V in fam_next.ideals:
            yield "ideal", V


def auto_v_search(P: Poset, r: int, family: IdealFamily | None = None) -> CriterionResult:
    """Try the standard choices of V through check_cor_II; the first success wins."""
    if not 0 <= r < P.n:
        return _result("cor_II", False, None)
    fam = _family(P, r, family)
    fam_next = None
    if P.n <= 16:
        fam_next = enumerate_ideals(P, r + 1)
        if len(fam_next) > FAMILY_CAP:
            fam_next = None
    for label, V in _canonical_vs(P, r, fam_next):
        if not is_ideal(P, V) or popcount(V) != r + 1:
            continue
        res = check_cor_II(P, r, V, fam)
        if res.proves_nonexistence:
            return CriterionResult("cor_II", NONEXISTENCE, {**res.witness, "choice": label})
    return _result("cor_II", False)


def check_two_cover(P: Poset, r: int, family: IdealFamily | None = None) -> CriterionResult:
    """Two distinct r-ideals whose union is all of P^r."""
    fam = _family(P, r, family)
    ideals = fam.ideals
    for i, a in enumerate(ideals):
        for b in ideals[i + 1 :]:
            if a | b == fam.union_mask:
                return _result("two_cover", True, {"I1": a, "I2": b})
    return _result("two_cover", False)


def check_height(P: Poset, m: int, r: int, family: IdealFamily | None = None) -> CriterionResult:
    """Longest chain of the essential part may hold at most m - r elements."""
    fam = _family(P, r, family)
    h = height(P, fam.essential_mask)
    return _result("height", h > m - r, {"height": h, "limit": m - r} if h > m - r else None)


def check_upset_ball(P: Poset, U: MaskLike, m: int, r: int) -> CriterionResult:
    """Ball of radius r - l in the upset U (l = n - |U|) must fit in 2^(m - l)."""
    um = as_mask(U)
    if not is_upset(P, um):
        raise RangeError("U must be an upset")
    l = P.n - popcount(um)
    if l > r:
        raise RangeError("need |P minus U| <= r")
    sub, _ = P.induced(um)
    size = ball_size(sub, r - l) if sub.n else 1
    # size > 2^(m-l) without fractions when m < l
    over = size << l > 1 << m
    equal = size << l == 1 << m
    witness = {"U": um, "l": l, "ball": size, "bound_log2": m - l}
    if equal:
        witness["equality"] = True
    return CriterionResult("upset_ball", NONEXISTENCE if over else INCONCLUSIVE, witness)


def search_upset_ball(P: Poset, m: int, r: int) -> CriterionResult:
    """check_upset_ball over upsets P minus J for ideals J with |J| <= r (capped)."""
    tried = 0
    last = None
    for l in range(min(r, P.n) + 1):
        for J in iter_ideals(P, l):
            res = check_upset_ball(P, P.full & ~J, m, r)
            if res.proves_nonexistence:
                return res
            if last is None:
                last = res
            tried += 1
            if tried >= UPSET_CAP:
                return last
    return last or _result("upset_ball", False)


def check_ball_packing(P: Poset, m: int, r: int) -> CriterionResult:
    """A perfect code of codimension m needs |B_P^r| = 2^m exactly."""
    size = ball_size(P, r)
    return _result("ball_packing", size != 1 << m, {"ball": size, "needed": 1 << m} if size != 1 << m else None)


def _is_essential(P: Poset, r: int, fam: IdealFamily) -> bool:
    return fam.union_mask == P.full and fam.core_mask == 0


def check_abcc(P: Poset, m: int, r: int) -> CriterionResult:
    """Three structural bounds on a poset equal to its own essential part.

    a) |P minus <a>| >= lam, b) |P minus <a, a'>| >= r + lam - m,
    c) |upset of b| <= lam. Any violation rules out r-perfect codes.
    """
    fam = enumerate_ideals(P, r)
    if not _is_essential(P, r, fam):
        raise RangeError("check_abcc needs P to equal its essential part; reduce first")
    lam = P.n - r
    for a in range(P.n):
        outside = P.n - popcount(P.down[a])
        if outside < lam:
            return _result("abcc", True, {"part": "a", "a": a, "outside": outside, "bound": lam})
    need = r + lam - m
    for a in range(P.n):
        for b in range(a, P.n):
            outside = P.n - popcount(P.down[a] | P.down[b])
            if outside < need:
                return _result("abcc", True, {"part": "b", "a": a, "a2": b, "outside": outside, "bound": need})
    for b in range(P.n):
        if popcount(P.up[b]) > lam:
            return _result("abcc", True, {"part": "c", "b": b, "upset": popcount(P.up[b]), "bound": lam})
    return _result("abcc", False)


# -- reduction to the essential part -----------------------------------------


@dataclass(frozen=True)
class Reduction:
    """The essential part Q at radius r' = r - u, with the bookkeeping to lift codes back.

    ``index[j]`` is the 0-based element of P that Q's element j stands for;
    ``free`` marks P minus P^r, whose coordinates multiply the code size.
    """

    Q: Poset
    r_prime: int
    index: tuple
    core: int
    free: int
    family: IdealFamily

    @property
    def factor_log2(self) -> int:
        return popcount(self.free)


def reduce(P: Poset, r: int) -> Reduction:
    fam = enumerate_ideals(P, r)
    Q, idx = P.induced(fam.essential_mask)
    return Reduction(Q, r - fam.u, tuple(idx), fam.core_mask, P.full & ~fam.union_mask, fam)


def lift_code(P: Poset, red: Reduction, code: Code) -> Code:
    """Lift an r'-perfect code on the essential part to an r-perfect code on P.

    Core coordinates are held at zero and free coordinates range over
    everything, so |lifted| = 2^|P minus P^r| * |code|.
    """
    if code.n != red.Q.n:
        raise RangeError("code does not live on the reduced poset")
    if code.is_additive():
        if code.columns is not None:
            m_q, cols_q = code.m_rows, list(code.columns)
        else:
            m_q, cols_q = gf2.parity_columns(code.n, gf2_basis(code.codewords))
        cols = [0] * P.n
        for j, pos in enumerate(red.index):
            cols[pos] = cols_q[j]
        for t, pos in enumerate(bits(red.core)):
            cols[pos] = 1 << (m_q + t)
        return Code.linear(P.n, m_q + popcount(red.core), cols)
    base = []
    for w in code.codewords:
        base.append(sum(1 << red.index[j] for j in bits(w)))
    words = []
    X = red.free
    while True:
        words += [b | X for b in base]
        if X == 0:
            break
        X = (X - 1) & red.free
    return Code.explicit(P.n, words)


def gf2_basis(words) -> List[int]:
    return list(gf2._echelon(words).values())


# -- orchestration -------------------------------------------------------------


def _v_candidates(P: Poset, r: int, fam: IdealFamily):
    if popcount(principal_ideal(P, fam.union_mask)) > r:
        yield fam.union_mask
    if r < P.n and P.n <= 16:
        nxt = enumerate_ideals(P, r + 1)
        if len(nxt) <= FAMILY_CAP:
            yield from nxt.ideals


def run_battery(P: Poset, m: int, r: int) -> CriterionReport:
    """Every applicable criterion in a fixed order, then the constructive theorems.

    Order: rm, lambda_range, k_inequality, ball_packing, union_bound,
    height, two_cover, cor_II, v_cover, upset_ball, abcc, then th0 / th1 /
    m2 when r is m, m - 1 or m - 2. Constructions run only while nothing
    has proven nonexistence.
    """
    if not 0 <= m <= P.n or not 0 <= r <= P.n:
        raise RangeError("need 0 <= m, r <= n")
    fam = enumerate_ideals(P, r)
    report = CriterionReport({"n": P.n, "m": m, "r": r, "lam": fam.lam, "u": fam.u, "k": fam.k})
    add = report.entries.append
    add(check_rm(P.n, m, r))
    if r < m:
        add(check_lambda_range(m, r, fam.lam))
    add(check_k_inequality(m, r, fam.lam, fam.k))
    add(check_ball_packing(P, m, r))
    add(check_union_bound(P, m, r, fam))
    add(check_height(P, m, r, fam))
    add(check_two_cover(P, r, fam))
    add(auto_v_search(P, r, fam))
    vres = _result("v_cover", False)
    for v in _v_candidates(P, r, fam):
        vres = check_v_cover(P, r, v, fam)
        if vres.proves_nonexistence:
            break
    add(vres)
    add(search_upset_ball(P, m, r))
    red = reduce(P, r)
    if red.Q.n:
        add(check_abcc(red.Q, m - fam.u, red.r_prime))

    proven = bool(report.fired())
    if r == m:
        uniq = len(fam) == 1
        if not uniq:
            add(CriterionResult("th0", NONEXISTENCE, {"m_ideals": len(fam)}))
        elif not proven:
            code = construct_m_perfect(P, m)
            _claim(report, "th0", P, code, r, {"I": fam.ideals[0]})
    elif r == m - 1:
        th1 = theorem_th1_check(P, m)
        if not th1.holds:
            add(CriterionResult("th1", NONEXISTENCE, {"reason": th1.reason}))
        elif not proven:
            code = construct_m1_perfect(P, m)
            _claim(report, "th1", P, code, r, {"I": th1.I, "a": list(th1.a)})
    elif r == m - 2:
        cls = classify_m2(P, m)
        if not cls.admissible:
            add(CriterionResult("m2", NONEXISTENCE, {"reason": cls.reason}))
        elif not proven:
            _claim(report, "m2", P, cls.code, r, {"shape": cls.shape_id})
    return report


def _claim(report: CriterionReport, name: str, P: Poset, code: Code, r: int, witness: dict):
    check = is_perfect(P, code, r)
    if not check.perfect or code.codimension != report.context["m"]:  # pragma: no cover - theorem violated
        raise AssertionError(f"{name} construction failed verification")
    report.code = code
    report.entries.append(CriterionResult(name, EXISTENCE, witness))
