"""Dehn algorithm with Greendlinger steps, area certificates and lift values.

A step looks for a cyclic subword ``w0`` of the current (cyclically reduced)
word that is also a prefix of a cyclic permutation ``rho = w0 v`` of some
``r_i^{+-1}`` with ``|w0| > (4/7)|r_i|``, and replaces it by ``v^-1``. Each
step contributes one conjugated relator to the certificate, so unwinding the
steps writes the input as a product of conjugates of relators.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

from .errors import ArithmeticOverflow, NotTrivial
from .presentations import Presentation, indexed_presentation
from .words import Word, concat, cyclic_reduce, invert

INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class Match:
    index: int
    sign: int
    shift: int  # rotation of r_index^sign that w0 starts
    position: int  # start of w0 in the cyclic word
    length: int  # |w0|
    relator_length: int
    replacement: Word  # freely reduced v^-1 u

    @property
    def complement_length(self) -> int:
        return self.relator_length - self.length


@dataclass(frozen=True)
class Factor:
    conjugator: Word
    index: int
    sign: int

    def to_json(self) -> dict:
        return {"conjugator": str(self.conjugator), "index": self.index, "sign": self.sign}


@dataclass(frozen=True)
class TraceStep:
    before: Word
    index: int
    shift: int
    span: tuple[int, int]
    sign: int
    after: Word


@dataclass
class AreaCertificate:
    word: Word
    factors: list[Factor]
    weight: int
    trace: list[TraceStep] = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {
            "word": str(self.word),
            "factors": [f.to_json() for f in self.factors],
            "weight": self.weight,
        }


@lru_cache(maxsize=None)
def relator_index(p: Presentation, i: int) -> tuple[int, dict[tuple, list[tuple[int, int, tuple]]]]:
    """Rotations of ``r_i^{+-1}`` keyed by their first ``K`` letters, ``K`` the shortest admissible match."""
    r = p.relator(i)
    K = (4 * len(r)) // 7 + 1
    table: dict[tuple, list[tuple[int, int, tuple]]] = {}
    for sign, w in ((1, r), (-1, invert(r))):
        x = w.letters
        for s in range(len(x)):
            rot = x[s:] + x[:s]
            table.setdefault(rot[:K], []).append((sign, s, rot))
    return K, table


class DehnSolver:
    """Word problem, certificates and lifts for one presentation.

    ``seed`` switches tie-breaking between simultaneous matches from the
    deterministic order (shortest complement, lowest index, leftmost
    position) to a seeded random choice.
    """

    def __init__(self, presentation: Optional[Presentation] = None, seed: Optional[int] = None):
        self.p = presentation or indexed_presentation()
        self.rng = random.Random(seed) if seed is not None else None
        self._memo: dict[Word, Optional[tuple[list[Factor], list[TraceStep]]]] = {}
        if self.p.is_family:
            self.key_len = (4 * self.p.relator_length(0)) // 7 + 1
        else:
            self.key_len = min((4 * len(r)) // 7 + 1 for r in self.p.explicit)

    def greendlinger_step(self, w: Word) -> Optional[Match]:
        n = len(w)
        if n < self.key_len:
            return None
        cands = self.p.candidate_indices(n)
        if not cands:
            return None
        x = w.letters
        doubled = x + x
        found = []
        for i in cands:
            K, table = relator_index(self.p, i)
            if K > n:
                continue
            for j in range(n):
                bucket = table.get(doubled[j : j + K])
                if not bucket:
                    continue
                for sign, s, rot in bucket:
                    m = len(rot)
                    lim = min(n, m)
                    L = K
                    while L < lim and doubled[j + L] == rot[L]:
                        L += 1
                    found.append((m - L, i, j, -sign, s, L, rot))
        if not found:
            return None
        if self.rng is None:
            best = min(found, key=lambda f: f[:5])
        else:
            best = self.rng.choice(sorted(found, key=lambda f: f[:5]))
        comp, i, j, negsign, s, L, rot = best
        wrot = x[j:] + x[:j]
        v = Word(rot[L:], w.alphabet, reduced=True)
        u = Word(wrot[L:], w.alphabet, reduced=True)
        return Match(i, -negsign, s, j, L, len(rot), concat(invert(v), u))

    def _run(self, w: Word) -> Optional[tuple[list[Factor], list[TraceStep]]]:
        if w in self._memo:
            return self._memo[w]
        cur, C = cyclic_reduce(w)
        factors: list[Factor] = []
        trace: list[TraceStep] = []
        while cur:
            m = self.greendlinger_step(cur)
            if m is None:
                self._memo[w] = None
                return None
            rel = self.p.relator(m.index)
            prefix = rel.letters if m.sign > 0 else invert(rel).letters
            p = Word(prefix[: m.shift], w.alphabet, reduced=True)
            xw = cur[: m.position]
            factors.append(Factor(concat(C, xw, invert(p)), m.index, m.sign))
            core, c = cyclic_reduce(m.replacement)
            trace.append(
                TraceStep(cur, m.index, m.shift, (m.position, m.length), m.sign, m.replacement)
            )
            C = concat(C, xw, c)
            cur = core
        result = (factors, trace)
        self._memo[w] = result
        return result

    def is_trivial(self, w: Word) -> bool:
        return self._run(w) is not None

    def are_equal(self, u: Word, v: Word) -> bool:
        return self.is_trivial(concat(u, invert(v)))

    def area_certificate(self, w: Word) -> AreaCertificate:
        res = self._run(w)
        if res is None:
            raise NotTrivial(f"{w} is not trivial in G")
        factors, trace = res
        weight = sum(self.p.weight(f.index) for f in factors)
        return AreaCertificate(w, list(factors), weight, list(trace))

    def lift_value(self, w: Word, alpha: Callable[[int], int]) -> int:
        return certificate_lift(self.area_certificate(w), alpha)


def certificate_lift(cert: AreaCertificate, alpha: Callable[[int], int]) -> int:
    total = 0
    for f in cert.factors:
        total += f.sign * int(alpha(f.index))
        if abs(total) > INT64_MAX:
            raise ArithmeticOverflow(f"lift value exceeds 64-bit range at factor {f}")
    return total


def certificate_product(c: AreaCertificate, p: Presentation) -> Word:
    parts = []
    for f in c.factors:
        r = p.relator(f.index)
        parts += [f.conjugator, r if f.sign > 0 else invert(r), invert(f.conjugator)]
    if not parts:
        return Word((), c.word.alphabet, reduced=True)
    return concat(*parts)


def verify_certificate(w: Word, c: AreaCertificate, p: Optional[Presentation] = None) -> bool:
    p = p or indexed_presentation()
    if c.weight != sum(p.weight(f.index) for f in c.factors):
        return False
    if any(f.sign not in (1, -1) or f.index < 0 or f.index > p.max_index for f in c.factors):
        return False
    return certificate_product(c, p) == w


_default: dict[tuple, DehnSolver] = {}


def solver_for(p: Optional[Presentation] = None) -> DehnSolver:
    p = p or indexed_presentation()
    key = (p,)
    if key not in _default:
        _default[key] = DehnSolver(p)
    return _default[key]


def greendlinger_step(w: Word, p: Optional[Presentation] = None) -> Optional[Match]:
    return solver_for(p).greendlinger_step(w)


def is_trivial(w: Word, p: Optional[Presentation] = None) -> bool:
    return solver_for(p).is_trivial(w)


def are_equal(u: Word, v: Word, p: Optional[Presentation] = None) -> bool:
    return solver_for(p).are_equal(u, v)


def area_certificate(w: Word, p: Optional[Presentation] = None) -> AreaCertificate:
    return solver_for(p).area_certificate(w)


def lift_value(w: Word, alpha: Callable[[int], int], p: Optional[Presentation] = None) -> int:
    return solver_for(p).lift_value(w, alpha)
