"""Exact integer linear algebra: row Hermite reduction and Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    cols = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col) if a) for col in cols] for row in A]


def matvec(A: list[list[int]], x: list[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x) if a) for row in A]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, s, t)`` with ``s a + t b = g = gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def row_reduce(rows: list[dict[int, int]], ncols: int) -> list[list[int]]:
    """Echelon basis (dense rows) of the row lattice of a sparse integer matrix.

    Each incoming row is cleared against the current pivots with unimodular
    2x2 combinations, so the output spans exactly the same lattice.
    """
    pivots: dict[int, list[int]] = {}
    for sparse in rows:
        row = [0] * ncols
        for c, v in sparse.items():
            row[c] = v
        c = 0
        while True:
            while c < ncols and row[c] == 0:
                c += 1
            if c == ncols:
                break
            piv = pivots.get(c)
            if piv is None:
                if row[c] < 0:
                    row = [-v for v in row]
                pivots[c] = row
                break
            a, b = piv[c], row[c]
            if b % a == 0:
                q = b // a
                row = [r - q * p for r, p in zip(row, piv)]
            else:
                g, s, t = _xgcd(a, b)
                ag, bg = a // g, b // g
                new_piv = [s * p + t * r for p, r in zip(piv, row)]
                row = [ag * r - bg * p for p, r in zip(piv, row)]
                pivots[c] = new_piv
            c += 1
    return [pivots[c] for c in sorted(pivots)]


@dataclass
class Smith:
    """``U A V = D`` with ``D`` diagonal, ``d_1 | d_2 | ...``, all ``d_k >= 0``."""

    diag: list[int]
    rows: int
    cols: int
    U: Optional[list[list[int]]]
    Uinv: Optional[list[list[int]]]
    V: Optional[list[list[int]]]
    Vinv: Optional[list[list[int]]]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d)


def smith_normal_form(A: list[list[int]], left: bool = False, right: bool = True) -> Smith:
    """Smith normal form by pivoting on the entry of least absolute value.

    ``left``/``right`` request the row/column transforms and their inverses.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    M = [list(r) for r in A]
    U = identity(m) if left else None
    Ui = identity(m) if left else None
    V = identity(n) if right else None
    Vi = identity(n) if right else None

    def swap_rows(i, j):
        if i == j:
            return
        M[i], M[j] = M[j], M[i]
        if left:
            U[i], U[j] = U[j], U[i]
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        if i == j:
            return
        for r in M:
            r[i], r[j] = r[j], r[i]
        if right:
            for r in V:
                r[i], r[j] = r[j], r[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]
        if left:
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]
            for r in Ui:
                r[src] -= q * r[dst]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        for r in M:
            if r[src]:
                r[dst] += q * r[src]
        if right:
            for r in V:
                if r[src]:
                    r[dst] += q * r[src]
            Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    def negate_row(i):
        M[i] = [-a for a in M[i]]
        if left:
            U[i] = [-a for a in U[i]]
            for r in Ui:
                r[i] = -r[i]

    diag = []
    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            row = M[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = M[t][t]
            moved = False
            for i in range(t + 1, m):
                if M[i][t]:
                    add_row(i, t, -_round_div(M[i][t], p))
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(j, t, -_round_div(M[t][j], p))
            # smallest leftover in the pivot row/column becomes the new pivot
            cand = None
            for i in range(t + 1, m):
                if M[i][t] and (cand is None or abs(M[i][t]) < cand[0]):
                    cand = (abs(M[i][t]), "r", i)
            for j in range(t + 1, n):
                if M[t][j] and (cand is None or abs(M[t][j]) < cand[0]):
                    cand = (abs(M[t][j]), "c", j)
            if cand is not None:
                if cand[1] == "r":
                    swap_rows(t, cand[2])
                else:
                    swap_cols(t, cand[2])
                continue
            for i in range(t + 1, m):
                if any(v % p for v in M[i][t + 1 :]):
                    add_row(t, i, 1)
                    moved = True
                    break
            if not moved:
                break
        if M[t][t] < 0:
            negate_row(t)
        diag.append(M[t][t])
    diag += [0] * (min(m, n) - len(diag))
    return Smith(diag, m, n, U, Ui, V, Vi)


def _round_div(a: int, b: int) -> int:
    """Nearest-integer quotient, keeping remainders small."""
    q, r = divmod(a, b)
    if 2 * abs(r) > abs(b):
        q += 1 if (r > 0) == (b > 0) else -1
    return q
