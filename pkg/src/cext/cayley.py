"""Cayley balls of G with shortlex canonical representatives.

Candidates at distance k are the one-letter extensions of distance-(k-1)
representatives, visited in shortlex order. A candidate is only compared
(by the Dehn solver) with representatives sharing its abelianization, which
is a G-invariant because every relator abelianizes to zero.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Optional

from .dehn import DehnSolver, solver_for
from .errors import ConfigError, OutOfBall
from .presentations import Presentation
from .words import Word, abelianize, concat, generators, shortlex_key

DEFAULT_MAX_RADIUS = 4


def max_radius() -> int:
    return int(os.environ.get("CEXT_MAX_RADIUS", DEFAULT_MAX_RADIUS))


@dataclass(frozen=True)
class ElementHandle:
    index: int
    word: Word

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return str(self.word)


@dataclass
class Ball:
    radius: int
    presentation: Presentation
    representatives: list[Word] = field(default_factory=list)
    lookup: dict[Word, int] = field(default_factory=dict)
    sphere_sizes: list[int] = field(default_factory=list)
    buckets: dict[tuple, list[int]] = field(default_factory=dict, repr=False)
    solver: Optional[DehnSolver] = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.representatives)

    def handle(self, index: int) -> ElementHandle:
        return ElementHandle(index, self.representatives[index])

    @property
    def identity(self) -> ElementHandle:
        return self.handle(0)

    def elements(self, radius: Optional[int] = None) -> list[ElementHandle]:
        r = self.radius if radius is None else min(radius, self.radius)
        n = sum(self.sphere_sizes[: r + 1])
        return [self.handle(k) for k in range(n)]

    def sphere(self, r: int) -> list[ElementHandle]:
        start = sum(self.sphere_sizes[:r])
        return [self.handle(k) for k in range(start, start + self.sphere_sizes[r])]

    def generator_handles(self) -> list[ElementHandle]:
        return [self.canonical(x) for x in generators(self.presentation.alphabet)]

    def _find(self, w: Word) -> Optional[int]:
        if w in self.lookup:
            return self.lookup[w]
        for k in self.buckets.get(abelianize(w), ()):
            if self.solver.are_equal(w, self.representatives[k]):
                return k
        return None

    def canonical(self, w: Word) -> ElementHandle:
        k = self._find(w)
        if k is None:
            raise OutOfBall(f"{w} does not represent an element of the radius-{self.radius} ball")
        return self.handle(k)

    def multiply(self, g: ElementHandle, h: ElementHandle) -> ElementHandle:
        return self.canonical(concat(g.word, h.word))

    def inverse(self, g: ElementHandle) -> ElementHandle:
        return self.canonical(~g.word)

    def norm(self, g: ElementHandle) -> int:
        return len(g.word)

    def contains(self, w: Word) -> bool:
        return self._find(w) is not None

    def to_json(self) -> dict:
        spheres = []
        start = 0
        for size in self.sphere_sizes:
            spheres.append([str(w) for w in self.representatives[start : start + size]])
            start += size
        return {
            "radius": self.radius,
            "sphere_sizes": list(self.sphere_sizes),
            "total": len(self),
            "spheres": spheres,
        }


def enumerate_ball(R: int, p: Presentation, solver: Optional[DehnSolver] = None) -> Ball:
    if R < 0:
        raise ConfigError("radius must be >= 0")
    if R > max_radius():
        raise ConfigError(f"radius {R} exceeds memory guard {max_radius()} (set CEXT_MAX_RADIUS)")
    solver = solver or solver_for(p)
    e = Word((), p.alphabet, reduced=True)
    ball = Ball(R, p, [e], {e: 0}, [1], {abelianize(e): [0]}, solver)
    gens = generators(p.alphabet)
    level = [e]
    for k in range(1, R + 1):
        cands = set()
        for w in level:
            for x in gens:
                c = concat(w, x)
                if len(c) == k and c not in ball.lookup:
                    cands.add(c)
        new = []
        for c in sorted(cands, key=shortlex_key):
            found = ball._find(c)
            if found is not None:
                ball.lookup[c] = found
                continue
            idx = len(ball.representatives)
            ball.representatives.append(c)
            ball.lookup[c] = idx
            ball.buckets.setdefault(abelianize(c), []).append(idx)
            new.append(c)
        ball.sphere_sizes.append(len(new))
        level = new
    return ball


def canonical(w: Word, b: Ball) -> ElementHandle:
    return b.canonical(w)


def multiply(g: ElementHandle, h: ElementHandle, b: Ball) -> ElementHandle:
    return b.multiply(g, h)
