"""Free group words over a finite alphabet.

A letter is a nonzero int: ``g + 1`` for generator ``g`` and ``-(g + 1)`` for
its inverse. Words are immutable and always freely reduced.

>>> w = parse_word("t1^2 a1 t1^-2")
>>> str(w), len(w)
('t1 t1 a1 t1- t1-', 5)
>>> str(concat(w, invert(w)))
'1'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import AlphabetMismatch, MalformedPower, NotCyclicallyReduced, UnknownToken


@dataclass(frozen=True)
class Alphabet:
    names: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownToken(f"token {name!r} not in alphabet {list(self.names)}") from None

    def letter_name(self, letter: int) -> str:
        name = self.names[abs(letter) - 1]
        return name if letter > 0 else name + "-"


GT = Alphabet(("a1", "a2", "a3", "a4", "t1", "t2", "t3", "t4"))
B = Alphabet(("b1", "b2", "b3", "b4"))


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


class Word:
    """A freely reduced word. Hashable, ordered by shortlex."""

    __slots__ = ("letters", "alphabet", "_hash")

    def __init__(self, letters: Iterable[int] = (), alphabet: Alphabet = GT, *, reduced: bool = False):
        letters = tuple(letters) if reduced else free_reduce(letters)
        n = len(alphabet)
        for x in letters:
            if x == 0 or abs(x) > n:
                raise UnknownToken(f"letter {x} outside alphabet of size {n}")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "_hash", hash((letters, alphabet.names)))

    def __setattr__(self, key, value):
        raise AttributeError("Word is immutable")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.letters[item], self.alphabet, reduced=True)
        return self.letters[item]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.letters == other.letters and self.alphabet == other.alphabet

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Word") -> bool:
        return shortlex_key(self) < shortlex_key(other)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def __bool__(self) -> bool:
        return bool(self.letters)


def empty(alphabet: Alphabet = GT) -> Word:
    return Word((), alphabet, reduced=True)


_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*?)(-?)(?:\^(.*))?$")


def parse_word(text: str, alphabet: Alphabet = GT) -> Word:
    letters: list[int] = []
    for tok in text.split():
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if m is None:
            raise UnknownToken(f"cannot parse token {tok!r}")
        name, minus, power = m.groups()
        gen = alphabet.index(name) + 1
        k = 1
        if power is not None:
            try:
                k = int(power)
            except ValueError:
                raise MalformedPower(f"non-integer exponent in {tok!r}") from None
        if minus:
            k = -k
        letters.extend([gen if k > 0 else -gen] * abs(k))
    return Word(letters, alphabet)


def format_word(w: Word) -> str:
    if not w.letters:
        return "1"
    return " ".join(w.alphabet.letter_name(x) for x in w.letters)


def _check(u: Word, v: Word) -> None:
    if u.alphabet != v.alphabet:
        raise AlphabetMismatch(f"{u.alphabet.names} vs {v.alphabet.names}")


def concat(*words: Word) -> Word:
    if not words:
        raise ValueError("concat needs at least one word")
    for w in words[1:]:
        _check(words[0], w)
    out: list[int] = []
    for w in words:
        for x in w.letters:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return Word(out, words[0].alphabet, reduced=True)


def invert(w: Word) -> Word:
    return Word(tuple(-x for x in reversed(w.letters)), w.alphabet, reduced=True)


def is_cyclically_reduced(w: Word) -> bool:
    return len(w) < 2 or w.letters[0] != -w.letters[-1]


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Return ``(core, conjugator)`` with ``w = conjugator * core * conjugator^-1``."""
    x = w.letters
    i, j = 0, len(x) - 1
    while i < j and x[i] == -x[j]:
        i += 1
        j -= 1
    core = Word(x[i : j + 1], w.alphabet, reduced=True)
    return core, Word(x[:i], w.alphabet, reduced=True)


def rotate(w: Word, k: int) -> Word:
    k %= max(len(w), 1)
    return Word(w.letters[k:] + w.letters[:k], w.alphabet, reduced=True)


def cyclic_permutations(w: Word) -> list[Word]:
    if not is_cyclically_reduced(w):
        raise NotCyclicallyReduced(str(w))
    if not w:
        return [w]
    return [rotate(w, k) for k in range(len(w))]


def abelianize(w: Word) -> tuple[int, ...]:
    vec = [0] * len(w.alphabet)
    for x in w.letters:
        vec[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(vec)


def letter_rank(x: int) -> int:
    """Generator order a1 < a1- < a2 < a2- < ..."""
    return 2 * (abs(x) - 1) + (0 if x > 0 else 1)


def shortlex_key(w: Word) -> tuple[int, tuple[int, ...]]:
    return len(w), tuple(letter_rank(x) for x in w.letters)


def generators(alphabet: Alphabet = GT) -> list[Word]:
    """The symmetric generating set in shortlex order."""
    out = []
    for g in range(1, len(alphabet) + 1):
        out.append(Word((g,), alphabet, reduced=True))
        out.append(Word((-g,), alphabet, reduced=True))
    return out


def power(w: Word, k: int) -> Word:
    base = w if k >= 0 else invert(w)
    return Word(base.letters * abs(k), w.alphabet)


def commutator(u: Word, v: Word) -> Word:
    return concat(u, v, invert(u), invert(v))


def from_letters(letters: Sequence[int], alphabet: Alphabet = GT) -> Word:
    return Word(letters, alphabet)
