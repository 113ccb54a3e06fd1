"""Group presentations: explicit relator lists and the indexed family r_i.

The family relator is ``r_i = h_i([b1,b2][b3,b4])`` where ``h_i`` sends
``b_j`` to ``t_j^i a_j t_j^-i``. The ``literal`` form instead conjugates the
even blocks as ``t_j^-i a_j t_j^-i``; both have length ``16 i + 8``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import AlphabetMismatch, ConfigError, TruncationExceeded
from .words import (
    B,
    GT,
    Alphabet,
    Word,
    commutator,
    concat,
    cyclic_reduce,
    invert,
    is_cyclically_reduced,
    parse_word,
    power,
)

DEFAULT_TRUNCATION = 64
RELATOR_FORMS = ("h", "literal")


def surface_relator() -> Word:
    b1, b2, b3, b4 = (Word((k,), B) for k in range(1, 5))
    return concat(commutator(b1, b2), commutator(b3, b4))


def h_image(i: int, w: Word) -> Word:
    if w.alphabet != B:
        raise AlphabetMismatch("h_image expects a word over b1..b4")
    if i < 0:
        raise ValueError("index must be >= 0")
    images = {}
    for j in range(1, 5):
        a = Word((j,), GT)
        t = Word((j + 4,), GT)
        images[j] = concat(power(t, i), a, power(t, -i))
    out = []
    for x in w.letters:
        img = images[abs(x)]
        out.extend(img.letters if x > 0 else invert(img).letters)
    return Word(out, GT)


@lru_cache(maxsize=None)
def indexed_relator(i: int, form: str = "h") -> Word:
    if i < 0:
        raise ValueError("index must be >= 0")
    if form == "h":
        return h_image(i, surface_relator())
    if form != "literal":
        raise ConfigError(f"unknown relator form {form!r}")
    blocks = []
    for j in range(1, 5):
        a = Word((j,), GT)
        t = Word((j + 4,), GT)
        left = power(t, i) if j % 2 == 1 else power(t, -i)
        blocks.append(concat(left, a, power(t, -i)))
    return concat(commutator(blocks[0], blocks[1]), commutator(blocks[2], blocks[3]))


@dataclass(frozen=True)
class Presentation:
    """Either an explicit relator list or the indexed family truncated at ``truncation``."""

    alphabet: Alphabet = GT
    explicit: Optional[tuple[Word, ...]] = None
    truncation: int = DEFAULT_TRUNCATION
    form: str = "h"

    def __post_init__(self):
        if self.explicit is not None:
            for r in self.explicit:
                if not r or not is_cyclically_reduced(r):
                    raise ConfigError(f"relator {r} must be nonempty and cyclically reduced")
                if r.alphabet != self.alphabet:
                    raise AlphabetMismatch(f"relator {r} not over presentation alphabet")
        elif self.form not in RELATOR_FORMS:
            raise ConfigError(f"unknown relator form {self.form!r}")

    @property
    def is_family(self) -> bool:
        return self.explicit is None

    @property
    def max_index(self) -> int:
        return len(self.explicit) - 1 if self.explicit is not None else self.truncation

    def relator(self, i: int) -> Word:
        if i < 0 or i > self.max_index:
            raise TruncationExceeded(f"relator index {i} beyond bound {self.max_index}")
        if self.explicit is not None:
            return self.explicit[i]
        return indexed_relator(i, self.form)

    def relator_length(self, i: int) -> int:
        if self.explicit is not None:
            return len(self.explicit[i])
        return 16 * i + 8

    def weight(self, i: int) -> int:
        return 2 * i + 1

    def candidate_indices(self, n: int) -> list[int]:
        """Indices i with (4/7)|r_i| < n, i.e. relators a length-n word can match."""
        if self.explicit is not None:
            return [i for i, r in enumerate(self.explicit) if 4 * len(r) < 7 * n]
        # 4 (16 i + 8) < 7 n
        top = (7 * n - 32 - 1) // 64 if 7 * n > 32 else -1
        if top > self.truncation:
            raise TruncationExceeded(
                f"words of length {n} may match relator {top} beyond truncation {self.truncation}"
            )
        return list(range(top + 1))

    def parse(self, text: str) -> Word:
        """Parse a word; tokens ``r<i>`` / ``r<i>-`` expand to relators."""
        letters: list[int] = []
        for tok in text.split():
            if tok[0] == "r" and tok[1:].rstrip("-").isdigit():
                r = self.relator(int(tok[1:].rstrip("-")))
                letters.extend(invert(r).letters if tok.endswith("-") else r.letters)
            else:
                letters.extend(parse_word(tok, self.alphabet).letters)
        return Word(letters, self.alphabet)

    def to_json(self) -> dict:
        if self.explicit is not None:
            return {"alphabet": list(self.alphabet.names), "relators": [str(r) for r in self.explicit]}
        return {"family": "indexed", "truncation": self.truncation, "form": self.form}


def indexed_presentation(truncation: int = DEFAULT_TRUNCATION, form: str = "h") -> Presentation:
    return Presentation(GT, None, truncation, form)


def load_presentation(data: dict | str) -> Presentation:
    if isinstance(data, str):
        with open(data) as fh:
            data = json.load(fh)
    if data.get("family") is not None:
        if data["family"] != "indexed":
            raise ConfigError(f"unknown family {data['family']!r}")
        return indexed_presentation(int(data.get("truncation", DEFAULT_TRUNCATION)), data.get("form", "h"))
    try:
        alphabet = Alphabet(tuple(data["alphabet"]))
        rels = tuple(cyclic_reduce(parse_word(s, alphabet))[0] for s in data["relators"])
    except KeyError as exc:
        raise ConfigError(f"presentation JSON missing key {exc}") from None
    return Presentation(alphabet, rels)


# ---------------------------------------------------------------- pieces


@dataclass(frozen=True)
class PieceReport:
    i: int
    k: int
    piece: Word
    length: int
    ratio_i: Fraction
    ratio_k: Fraction

    def to_json(self) -> dict:
        return {
            "pair": [self.i, self.k],
            "piece": str(self.piece),
            "length": self.length,
            "ratio_i": str(self.ratio_i),
            "ratio_k": str(self.ratio_k),
        }


@dataclass
class CancellationResult:
    holds: bool
    worst: PieceReport
    lam: Fraction
    max_index: int
    worst_cross: Optional[PieceReport] = None
    per_relator: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "lambda": str(self.lam),
            "max_index": self.max_index,
            "worst": self.worst.to_json(),
            "worst_cross": self.worst_cross.to_json() if self.worst_cross else None,
            "per_relator": self.per_relator,
        }


def _lcp(x: tuple, y: tuple) -> int:
    n = min(len(x), len(y))
    k = 0
    while k < n and x[k] == y[k]:
        k += 1
    return k


def _rotations(r: Word):
    x = r.letters
    return [x[s:] + x[:s] for s in range(len(x))]


def max_piece(u: Word, v: Word, with_inverse: bool = True) -> Word:
    """Longest common subword of cyclic permutations of ``u`` and of ``v`` (or ``v^-1``)."""
    if not u or not v:
        return Word((), u.alphabet, reduced=True)
    ru = _rotations(u)
    rv = _rotations(v) + (_rotations(invert(v)) if with_inverse else [])
    best: tuple = ()
    for x in ru:
        for y in rv:
            if x == y:
                continue
            k = _lcp(x, y)
            if k > len(best):
                best = x[:k]
    return Word(best, u.alphabet, reduced=True)


def check_small_cancellation(p: Presentation, lam=Fraction(1, 7), N: Optional[int] = None) -> CancellationResult:
    """Scan every piece among cyclic permutations of ``r_0..r_N`` and their inverses.

    All such rotations are sorted; the longest piece starting an element is
    its longest common prefix with any other element, which a neighbour scan
    over the sorted list finds exactly. ``worst_cross`` restricts to pieces
    shared by relators with different indices.
    """
    lam = Fraction(lam)
    if N is None:
        N = p.max_index
    if N > p.max_index:
        raise TruncationExceeded(f"N={N} beyond presentation bound {p.max_index}")
    elems: list[tuple[tuple, int, int, int]] = []
    seen = set()
    for i in range(N + 1):
        r = p.relator(i)
        for sign, w in ((1, r), (-1, invert(r))):
            for s, rot in enumerate(_rotations(w)):
                if rot in seen:
                    continue
                seen.add(rot)
                elems.append((rot, i, sign, s))
    elems.sort(key=lambda e: e[0])
    m = len(elems)
    adj = [_lcp(elems[t][0], elems[t + 1][0]) for t in range(m - 1)]

    best_any: list[tuple[int, int]] = []  # (length, partner position)
    best_cross: list[tuple[int, int]] = []
    for t in range(m):
        own = elems[t][1]
        ba, bc = (0, -1), (0, -1)
        for direction in (-1, 1):
            run = 1 << 30
            u = t
            while True:
                nxt = u + direction
                if nxt < 0 or nxt >= m:
                    break
                run = min(run, adj[min(u, nxt)])
                if run <= bc[0] and run <= ba[0]:
                    break
                if run > ba[0]:
                    ba = (run, nxt)
                if elems[nxt][1] != own and run > bc[0]:
                    bc = (run, nxt)
                u = nxt
        best_any.append(ba)
        best_cross.append(bc)

    def report(t: int, pair: tuple[int, int]) -> PieceReport:
        length, q = pair
        i = elems[t][1]
        k = elems[q][1] if q >= 0 else i
        piece = Word(elems[t][0][:length], p.alphabet, reduced=True)
        return PieceReport(
            i, k, piece, length,
            Fraction(length, p.relator_length(i)), Fraction(length, p.relator_length(k)),
        )

    def worst_of(table):
        t_best = max(range(m), key=lambda t: (Fraction(table[t][0], p.relator_length(elems[t][1])), -t))
        return report(t_best, table[t_best])

    worst = worst_of(best_any)
    worst_cross = worst_of(best_cross) if N >= 1 else None
    holds = all(Fraction(best_any[t][0], p.relator_length(elems[t][1])) < lam for t in range(m))
    per: dict[int, int] = {}
    for t in range(m):
        i = elems[t][1]
        per[i] = max(per.get(i, 0), best_any[t][0])
    per_relator = [
        {"index": i, "length": p.relator_length(i), "max_piece": per[i],
         "ratio": str(Fraction(per[i], p.relator_length(i)))}
        for i in sorted(per)
    ]
    return CancellationResult(holds, worst, lam, N, worst_cross, per_relator)
