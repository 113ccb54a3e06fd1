"""Central extensions of G from 2-cocycles, slow classes and the maximizing section.

Values of the extension E over a fibre are integers once a baseline lift is
fixed: for a word ``w`` in ``N`` the lift of ``w`` is
``sum(sign * alpha(index))`` over any certificate of ``w``. A section value
``s(g)`` is stored as an offset ``M(g)`` over the lift of the canonical
(geodesic) word of ``g``.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Optional, Union

from .cayley import Ball, ElementHandle
from .dehn import DehnSolver, solver_for
from .errors import CapTooSmall, ConfigError, NotSlow, OutOfBall
from .presentations import Presentation, indexed_presentation
from .words import Word, concat, generators, invert

TAILS = ("zero", "linear", "constant")


# ---------------------------------------------------------------- slow classes


@dataclass(frozen=True)
class SlowClass:
    prefix: tuple[int, ...]
    tail: str
    c: int
    lam: Fraction
    lam_int: int

    def __call__(self, i: int) -> int:
        if i < len(self.prefix):
            return self.prefix[i]
        if self.tail == "zero":
            return 0
        if self.tail == "linear":
            return self.c * i
        return self.c

    def negate(self) -> "SlowClass":
        return make_slow_class(tuple(-a for a in self.prefix), self.tail, -self.c, self.lam_int)

    def describe(self) -> str:
        tail = {"zero": "zero", "linear": f"linear:{self.c}", "constant": f"const:{self.c}"}[self.tail]
        pre = ",".join(str(a) for a in self.prefix)
        return f"prefix:{pre};tail:{tail}"

    def to_json(self) -> dict:
        return {
            "prefix": list(self.prefix),
            "tail": self.tail,
            "c": self.c,
            "lambda": str(self.lam),
            "lambda_int": self.lam_int,
        }


def make_slow_class(prefix: Iterable[int] = (), tail: str = "zero", c: int = 0,
                    lam_int: Optional[int] = None) -> SlowClass:
    """Compute ``sup |alpha_i| / (2i+1)`` exactly over the prefix and the tail."""
    prefix = tuple(int(a) for a in prefix)
    if tail not in TAILS:
        raise NotSlow(f"unsupported tail rule {tail!r}")
    lam = max((Fraction(abs(a), 2 * i + 1) for i, a in enumerate(prefix)), default=Fraction(0))
    m = len(prefix)
    if tail == "linear":
        # |c| i / (2i+1) increases to |c|/2 without reaching it
        lam = max(lam, Fraction(abs(c), 2))
    elif tail == "constant":
        lam = max(lam, Fraction(abs(c), 2 * m + 1))
    ceil = math.ceil(lam)
    if lam_int is None:
        lam_int = ceil
    elif lam_int < ceil:
        raise ConfigError(f"lambda_int {lam_int} below Lambda(alpha) = {lam}")
    return SlowClass(prefix, tail, int(c), lam, int(lam_int))


_LINEAR = re.compile(r"^(-?\d*)\*?i$")


def parse_alpha(text: str, lam_int: Optional[int] = None) -> SlowClass:
    """``"i"``, ``"3i"``, ``"-i"``, ``"0"``, ``"5"`` or ``"prefix:5,3,2;tail:zero"``."""
    text = text.strip()
    m = _LINEAR.match(text)
    if m:
        k = m.group(1)
        c = 1 if k in ("", "+") else -1 if k == "-" else int(k)
        return make_slow_class((), "linear", c, lam_int)
    if re.fullmatch(r"-?\d+", text):
        c = int(text)
        return make_slow_class((), "zero" if c == 0 else "constant", c, lam_int)
    prefix: tuple[int, ...] = ()
    tail, c = "zero", 0
    for part in text.split(";"):
        key, _, val = part.partition(":")
        key = key.strip()
        if key == "prefix":
            prefix = tuple(int(v) for v in val.split(",") if v.strip())
        elif key == "tail":
            kind, _, arg = val.partition(":")
            kind = {"const": "constant"}.get(kind.strip(), kind.strip())
            if kind not in TAILS:
                raise ConfigError(f"unknown tail rule {kind!r}")
            tail, c = kind, int(arg) if arg else (1 if kind == "linear" else 0)
        else:
            raise ConfigError(f"cannot parse alpha spec {text!r}")
    return make_slow_class(prefix, tail, c, lam_int)


# ---------------------------------------------------------------- cocycles


class Cocycle2:
    """A 2-cochain on a ball with values in Z (``modulus == 0``) or Z/m, memoized."""

    def __init__(self, ball: Ball, fn: Callable[[ElementHandle, ElementHandle], int],
                 modulus: int = 0, normalized: bool = False):
        self.ball = ball
        self.fn = fn
        self.modulus = modulus
        self.normalized = normalized
        self.memo: dict[tuple[int, int], int] = {}

    def _norm(self, v: int) -> int:
        return v % self.modulus if self.modulus else v

    def __call__(self, g: ElementHandle, h: ElementHandle) -> int:
        key = (g.index, h.index)
        v = self.memo.get(key)
        if v is None:
            v = self._norm(self.fn(g, h))
            self.memo[key] = v
        return v

    def __add__(self, other: "Cocycle2") -> "Cocycle2":
        return Cocycle2(self.ball, lambda g, h: self(g, h) + other(g, h), self.modulus,
                        self.normalized and other.normalized)

    def magnitude(self, v: int) -> int:
        if self.modulus:
            v %= self.modulus
            return min(v, self.modulus - v)
        return abs(v)

    @classmethod
    def from_table(cls, ball: Ball, table: dict[tuple[int, int], int], modulus: int = 0,
                   normalized: bool = False) -> "Cocycle2":
        return cls(ball, lambda g, h: table[(g.index, h.index)], modulus, normalized)


def cocycle_from_section(ball: Ball, alpha: Callable[[int], int],
                         solver: Optional[DehnSolver] = None) -> Cocycle2:
    """``omega(g, h) = lift(sigma(g) sigma(h) sigma(gh)^-1)`` for the shortlex section."""
    solver = solver or ball.solver or solver_for(ball.presentation)

    def fn(g: ElementHandle, h: ElementHandle) -> int:
        gh = ball.multiply(g, h)
        return solver.lift_value(concat(g.word, h.word, invert(gh.word)), alpha)

    return Cocycle2(ball, fn, 0, normalized=True)


def coboundary(f: Union[Callable[[ElementHandle], int], dict], ball: Ball, modulus: int = 0) -> Cocycle2:
    """``(delta f)(g, h) = f(h) - f(gh) + f(g)``."""
    ff = (lambda g: f[g.index]) if isinstance(f, dict) else f

    def fn(g, h):
        return ff(h) - ff(ball.multiply(g, h)) + ff(g)

    e = ball.identity
    return Cocycle2(ball, fn, modulus, normalized=(ff(e) == 0))


def admissible_triples(ball: Ball, radius: Optional[int] = None):
    """Triples with norm sum at most the ball radius, so every partial product stays inside."""
    R = ball.radius if radius is None else radius
    by_norm = [ball.sphere(r) for r in range(ball.radius + 1)]
    for a in range(R + 1):
        for b in range(R + 1 - a):
            for c in range(R + 1 - a - b):
                for g in by_norm[a]:
                    for h in by_norm[b]:
                        for k in by_norm[c]:
                            yield g, h, k


@dataclass
class CocycleReport:
    passed: bool
    checked: int
    failures: list[tuple[str, str, str]]
    normalized: bool
    normalization_failures: int

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "checked": self.checked,
            "failures": [list(t) for t in self.failures[:20]],
            "failure_count": len(self.failures),
            "normalized": self.normalized,
            "normalization_failures": self.normalization_failures,
        }


def cocycle_defect(omega: Cocycle2, g, h, k) -> int:
    b = omega.ball
    v = omega(h, k) - omega(b.multiply(g, h), k) + omega(g, b.multiply(h, k)) - omega(g, h)
    return v % omega.modulus if omega.modulus else v


def check_cocycle(omega: Cocycle2, ball: Optional[Ball] = None, radius: Optional[int] = None) -> CocycleReport:
    ball = ball or omega.ball
    failures = []
    checked = 0
    for g, h, k in admissible_triples(ball, radius):
        checked += 1
        if cocycle_defect(omega, g, h, k):
            failures.append((str(g), str(h), str(k)))
    e = ball.identity
    bad_norm = 0
    if omega.normalized:
        for g in ball.elements():
            if omega(e, g) or omega(g, e):
                bad_norm += 1
    return CocycleReport(not failures and not bad_norm, checked, failures, omega.normalized, bad_norm)


# ---------------------------------------------------------------- extension arithmetic


@dataclass(frozen=True)
class ExtElement:
    z: int
    g: ElementHandle


def ext_multiply(x: ExtElement, y: ExtElement, omega: Cocycle2) -> ExtElement:
    gh = omega.ball.multiply(x.g, y.g)
    return ExtElement(omega._norm(x.z + y.z + omega(x.g, y.g)), gh)


def ext_inverse(x: ExtElement, omega: Cocycle2) -> ExtElement:
    ginv = omega.ball.inverse(x.g)
    return ExtElement(omega._norm(-x.z - omega(x.g, ginv) - omega(omega.ball.identity, omega.ball.identity)), ginv)


def ext_identity(omega: Cocycle2) -> ExtElement:
    e = omega.ball.identity
    return ExtElement(omega._norm(-omega(e, e)), e)


def loop_value(w: Word, omega: Cocycle2) -> int:
    """Product along ``w`` of the lifts ``(0, x)`` (inverse letters use the inverse lift).

    ``w`` must represent the identity and every prefix must stay in the ball.
    """
    ball = omega.ball
    cur = ext_identity(omega)
    lifts: dict[int, ExtElement] = {}
    for x in w.letters:
        if x not in lifts:
            pos = ExtElement(0, ball.canonical(Word((abs(x),), w.alphabet)))
            lifts[abs(x)] = pos
            lifts[-abs(x)] = ext_inverse(pos, omega)
        cur = ext_multiply(cur, lifts[x], omega)
    if cur.g.index != 0:
        raise OutOfBall(f"{w} is not a loop")
    return cur.z - ext_identity(omega).z


# ---------------------------------------------------------------- probes


@dataclass
class Profile:
    generator_maxima: dict[str, int]
    C: int
    rows: list[dict]

    @property
    def all_within_bound(self) -> bool:
        return all(r["ok"] for r in self.rows)

    def to_json(self) -> dict:
        return {
            "generator_maxima": dict(self.generator_maxima),
            "C": self.C,
            "rows": self.rows,
            "all_within_bound": self.all_within_bound,
        }


def weak_boundedness_profile(omega: Cocycle2, ball: Optional[Ball] = None) -> Profile:
    """Generator maxima ``M_x`` and per-element rows ``max_g |omega(g, h)|`` against ``2 C |h|``.

    ``M_x`` ranges over every ``g`` whose reduced product ``g x`` still has
    length at most the radius. Rows range over ``g`` with ``|g| + |h| <= radius``.
    """
    ball = ball or omega.ball
    R = ball.radius

    def column(h: ElementHandle) -> int:
        return max(omega.magnitude(omega(g, h)) for g in ball.elements(R - len(h.word)))

    gmax = {}
    for x in ball.generator_handles():
        best = 0
        for g in ball.elements():
            if len(concat(g.word, x.word)) <= R:
                best = max(best, omega.magnitude(omega(g, x)))
        gmax[str(x)] = best
    C = max(gmax.values(), default=0)
    rows = []
    for h in ball.elements():
        m = column(h)
        bound = 2 * C * len(h.word)
        rows.append({"element": str(h), "norm": len(h.word), "max_abs": m, "bound": bound, "ok": m <= bound})
    return Profile(gmax, C, rows)


def pullback_euler(i: int, alpha: Callable[[int], int], p: Optional[Presentation] = None,
                   solver: Optional[DehnSolver] = None) -> int:
    p = p or indexed_presentation()
    solver = solver or solver_for(p)
    return solver.lift_value(p.relator(i), alpha)


def split_cocycle(values: Callable[[ElementHandle, ElementHandle], tuple], ball: Ball,
                  k: int, modulus: int) -> list[Cocycle2]:
    """Split a cocycle with values in Z^k + Z/m into k integer cocycles and one mod-m cocycle."""
    comps = [Cocycle2(ball, (lambda j: lambda g, h: values(g, h)[j])(j), 0) for j in range(k)]
    if modulus:
        comps.append(Cocycle2(ball, lambda g, h: values(g, h)[k], modulus))
    return comps


# ---------------------------------------------------------------- maximizing section


@dataclass
class SectionValue:
    element: Word
    lower: int
    witness: Word
    upper: int
    states: int
    exhausted: bool

    def to_json(self) -> dict:
        return {
            "element": str(self.element),
            "lower": self.lower,
            "witness": str(self.witness),
            "upper": self.upper,
            "states": self.states,
            "exhausted": self.exhausted,
        }


@lru_cache(maxsize=None)
def _substitution_table(p: Presentation, top: int, maxlen: int) -> dict[tuple, list[tuple[int, int, tuple]]]:
    """Every prefix ``u`` (length <= maxlen) of a rotation of ``r_i^{+-1}``, i <= top, mapped to ``(i, sign, y)``."""
    table: dict[tuple, list[tuple[int, int, tuple]]] = {}
    for i in range(top + 1):
        r = p.relator(i)
        for sign, w in ((1, r), (-1, invert(r))):
            x = w.letters
            for s in range(len(x)):
                rot = x[s:] + x[:s]
                for ell in range(min(len(rot), maxlen) + 1):
                    table.setdefault(rot[:ell], []).append((i, sign, rot[ell:]))
    return table


def _max_relator_index(p: Presentation, cap: int) -> int:
    # a substitution in a word of length <= cap only uses |r_i| <= 2 cap
    top = -1
    while top + 1 <= p.max_index and p.relator_length(top + 1) <= 2 * cap:
        top += 1
    return top


def maximizing_section(g: Union[ElementHandle, Word], alpha: SlowClass, cap: int,
                       p: Optional[Presentation] = None, max_depth: int = 2,
                       max_states: int = 20000) -> SectionValue:
    """Bracket ``M(g) = max_w lift(gamma^-1 w) - Lambda |w|`` over spellings ``w`` of ``g``.

    ``gamma`` is the given (geodesic) word. Spellings are generated from
    ``gamma`` by replacing a subword ``u`` of a relator rotation ``u y`` with
    ``y^-1``, up to ``max_depth`` rounds, keeping words of length <= cap;
    each replacement moves the lift by ``-sign * alpha(i)``. ``lower`` is the
    best value found, ``upper = Lambda * |gamma|``.
    """
    gamma = g.word if isinstance(g, ElementHandle) else g
    p = p or indexed_presentation()
    if cap < len(gamma):
        raise CapTooSmall(f"cap {cap} below |g| = {len(gamma)}")
    lam = alpha.lam_int
    top = _max_relator_index(p, cap)
    table = _substitution_table(p, top, cap)
    start = gamma.letters
    seen: dict[tuple, int] = {start: 0}
    best_val, best_word = -lam * len(start), start
    frontier = deque([(start, 0)])
    exhausted = True
    while frontier:
        w, depth = frontier.popleft()
        if depth >= max_depth:
            exhausted = False
            continue
        lift = seen[w]
        n = len(w)
        for pos in range(n + 1):
            for ell in range(0, n - pos + 1):
                u = w[pos : pos + ell]
                subs = table.get(u)
                if subs is None:
                    break
                for i, sign, y in subs:
                    if n - 2 * ell + ell + len(y) > cap:
                        continue
                    out = list(w[:pos])
                    for x in reversed(y):
                        if out and out[-1] == x:
                            out.pop()
                        else:
                            out.append(-x)
                    for x in w[pos + ell :]:
                        if out and out[-1] == -x:
                            out.pop()
                        else:
                            out.append(x)
                    new = tuple(out)
                    if len(new) > cap or new in seen:
                        continue
                    if len(seen) >= max_states:
                        exhausted = False
                        continue
                    val = lift - sign * alpha(i)
                    seen[new] = val
                    score = val - lam * len(new)
                    if score > best_val or (score == best_val and len(new) < len(best_word)):
                        best_val, best_word = score, new
                    frontier.append((new, depth + 1))
    return SectionValue(gamma, best_val, Word(best_word, gamma.alphabet, reduced=True),
                        lam * len(gamma), len(seen), exhausted)


@dataclass
class DefectReport:
    defect_max: int
    theoretical_bound: int
    K: int
    lam_int: int
    pairs: int
    excess: list[dict]
    brackets_ok: bool
    section: dict[str, dict] = field(default_factory=dict, repr=False)

    def to_json(self) -> dict:
        return {
            "defect_max": self.defect_max,
            "theoretical_bound": self.theoretical_bound,
            "K": self.K,
            "lambda_int": self.lam_int,
            "pairs": self.pairs,
            "excess_flagged": self.excess[:50],
            "excess_count": len(self.excess),
            "brackets_ok": self.brackets_ok,
        }


def section_defect_stats(ball: Ball, alpha: SlowClass, cap_slack: int = 8, max_depth: int = 1,
                         max_states: int = 20000, solver: Optional[DehnSolver] = None,
                         section_values: Optional[dict[Word, SectionValue]] = None) -> DefectReport:
    """Fibre defect ``s(g) s(x) s(gx)^-1`` of the capped maximizing section.

    Neighbours ``gx`` outside the ball have norm ``radius + 1`` and their
    reduced spelling ``gamma_g x`` is geodesic, so it serves as their baseline.
    """
    p = ball.presentation
    solver = solver or ball.solver or solver_for(p)
    values: dict[Word, SectionValue] = {} if section_values is None else section_values

    def section(word: Word) -> SectionValue:
        sv = values.get(word)
        if sv is None:
            sv = maximizing_section(word, alpha, len(word) + cap_slack, p, max_depth, max_states)
            values[word] = sv
        return sv

    gens = generators(p.alphabet)
    K = max(abs(section(x).lower) for x in gens)
    bound = K + alpha.lam_int
    worst = 0
    excess = []
    pairs = 0
    for g in ball.elements():
        sg = section(g.word)
        for x in gens:
            prod = concat(g.word, x)
            k = ball._find(prod) if len(prod) <= ball.radius + 1 else None
            base = ball.representatives[k] if k is not None else prod
            loop = solver.lift_value(concat(g.word, x, invert(base)), alpha)
            d = loop + sg.lower + section(x).lower - section(base).lower
            pairs += 1
            worst = max(worst, abs(d))
            if abs(d) > bound:
                excess.append({"g": str(g), "x": str(x), "defect": d})
    brackets = all(v.lower <= v.upper for v in values.values())
    return DefectReport(worst, bound, K, alpha.lam_int, pairs, excess, brackets,
                        {str(k): v.to_json() for k, v in values.items()})
