"""Bar-complex cohomology of finite groups with trivial coefficients.

A degree-``d`` cochain is a flat list of length ``n**d``; the value at
``(g1, ..., gd)`` sits at index ``g1 n^(d-1) + ... + gd`` (row-major).
Coefficients are integers (``coeff=0``), integers mod ``m`` (``coeff=m``) or
rationals (``Fraction`` values).
"""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

from .errors import ConfigError, DegreeUnsupported, NotACocycle, NotASubgroup
from .linalg import matvec, row_reduce, smith_normal_form

MAX_ORDER = 12
MAX_DEGREE = 3


# ---------------------------------------------------------------- groups


@dataclass(frozen=True)
class FiniteGroup:
    table: tuple[tuple[int, ...], ...]
    name: str = "G"

    def __post_init__(self):
        n = len(self.table)
        if n == 0 or any(len(r) != n for r in self.table):
            raise ConfigError("multiplication table must be square and nonempty")
        if any(not 0 <= v < n for r in self.table for v in r):
            raise ConfigError("table entries out of range")
        problem = group_law_violation(self.table)
        if problem:
            raise ConfigError(f"{self.name}: {problem}")

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @property
    def inverses(self) -> tuple[int, ...]:
        return _inverses(self.table)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def relabel(self, perm: Sequence[int]) -> "FiniteGroup":
        """Rename element ``g`` to ``perm[g]``; ``perm[0]`` must stay 0."""
        if perm[0] != 0 or sorted(perm) != list(range(self.order)):
            raise ConfigError("relabelling must be a permutation fixing the identity")
        n = self.order
        t = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                t[perm[a]][perm[b]] = perm[self.table[a][b]]
        return FiniteGroup(tuple(map(tuple, t)), self.name)

    def to_json(self) -> dict:
        return {"name": self.name, "order": self.order, "table": [list(r) for r in self.table]}


@lru_cache(maxsize=None)
def _inverses(table) -> tuple[int, ...]:
    return tuple(row.index(0) for row in table)


def group_law_violation(table: Sequence[Sequence[int]]) -> Optional[str]:
    """Describe the first failed group law, or ``None``. Element 0 must be the identity."""
    n = len(table)
    for a in range(n):
        if table[0][a] != a or table[a][0] != a:
            return f"element 0 is not a two-sided identity (fails at {a})"
        if 0 not in table[a]:
            return f"element {a} has no inverse"
    for a in range(n):
        ta = table[a]
        for b in range(n):
            ab = ta[b]
            tb = table[b]
            tab = table[ab]
            for c in range(n):
                if tab[c] != ta[tb[c]]:
                    return f"associativity fails at ({a}, {b}, {c})"
    return None


def _check_order(n: int, limit: Optional[int]) -> None:
    if limit is not None and n > limit:
        raise ConfigError(f"group order {n} exceeds limit {limit}")


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ConfigError("cyclic group order must be >= 1")
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), f"Z{n}")


def dihedral(n: int) -> FiniteGroup:
    """Order ``2n``: element ``k`` is the rotation ``r^k``, ``n + k`` is ``s r^k``."""
    if n < 1:
        raise ConfigError("dihedral parameter must be >= 1")

    def mul(a, b):
        fa, ka = divmod(a, n)
        fb, kb = divmod(b, n)
        # (s^fa r^ka)(s^fb r^kb) = s^(fa+fb) r^(kb + (-1)^fb ka)
        k = (kb + (-ka if fb else ka)) % n
        return ((fa + fb) % 2) * n + k

    return FiniteGroup(tuple(tuple(mul(a, b) for b in range(2 * n)) for a in range(2 * n)), f"D{n}")


def quaternion() -> FiniteGroup:
    # elements +-1, +-i, +-j, +-k as (sign, unit) with unit in 1,i,j,k
    units = {(0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
             (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
             (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
             (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0)}
    elems = [(s, u) for s in (1, -1) for u in range(4)]
    idx = {e: k for k, e in enumerate(elems)}

    def mul(a, b):
        (sa, ua), (sb, ub) = elems[a], elems[b]
        s, u = units[(ua, ub)]
        return idx[(sa * sb * s, u)]

    return FiniteGroup(tuple(tuple(mul(a, b) for b in range(8)) for a in range(8)), "Q8")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Element ``g * |H| + h`` is the pair ``(g, h)``."""
    m = H.order
    n = G.order * m
    t = tuple(
        tuple(G.table[a // m][b // m] * m + H.table[a % m][b % m] for b in range(n)) for a in range(n)
    )
    return FiniteGroup(t, f"{G.name}x{H.name}")


def from_table(table: Sequence[Sequence[int]], name: str = "G") -> FiniteGroup:
    return FiniteGroup(tuple(tuple(int(v) for v in r) for r in table), name)


def from_json(data: Union[dict, str]) -> FiniteGroup:
    if isinstance(data, str):
        with open(data) as fh:
            data = json.load(fh)
    if "table" not in data:
        raise ConfigError("group JSON needs a 'table' field")
    return from_table(data["table"], data.get("name", "G"))


def parse_group(spec: str, max_order: Optional[int] = MAX_ORDER) -> FiniteGroup:
    """``cyclic:4``, ``dihedral:3``, ``quaternion``, ``product:cyclic:2,cyclic:2`` or a JSON path."""
    spec = spec.strip()
    if spec.startswith("product:"):
        parts = [parse_group(s, None) for s in spec[len("product:"):].split(",")]
        G = parts[0]
        for H in parts[1:]:
            G = direct_product(G, H)
    elif spec.startswith("cyclic:"):
        G = cyclic(int(spec.split(":", 1)[1]))
    elif spec.startswith("dihedral:"):
        G = dihedral(int(spec.split(":", 1)[1]))
    elif spec in ("quaternion", "Q8"):
        G = quaternion()
    elif spec == "trivial":
        G = cyclic(1)
    elif spec.endswith(".json"):
        G = from_json(spec)
    else:
        raise ConfigError(f"unknown group spec {spec!r}")
    _check_order(G.order, max_order)
    return G


def small_groups(max_order: int = 8) -> list[FiniteGroup]:
    """One group of each isomorphism type up to order 8."""
    z = cyclic
    out = [z(1), z(2), z(3), z(4), direct_product(z(2), z(2)), z(5), z(6), dihedral(3), z(7),
           z(8), direct_product(z(2), z(4)), direct_product(direct_product(z(2), z(2)), z(2)),
           dihedral(4), quaternion()]
    return [G for G in out if G.order <= max_order]


def order_census(G: FiniteGroup) -> dict[int, int]:
    return dict(sorted(Counter(G.element_order(a) for a in range(G.order)).items()))


# ---------------------------------------------------------------- cochains


def _check_degree(d: int) -> None:
    if not 0 <= d <= MAX_DEGREE:
        raise DegreeUnsupported(f"degree {d} outside 0..{MAX_DEGREE}")


def tuples(G: FiniteGroup, d: int):
    return itertools.product(range(G.order), repeat=d)


def cochain_degree(G: FiniteGroup, f: Sequence, degree: Optional[int] = None) -> int:
    """Degree of a cochain from its length; the trivial group needs ``degree`` (default 2)."""
    n = G.order
    if degree is not None:
        if len(f) != n ** degree:
            raise ConfigError(f"cochain length {len(f)} does not match degree {degree}")
        return degree
    if n == 1:
        if len(f) != 1:
            raise ConfigError("cochain on the trivial group must have one entry")
        return 2
    d, size = 0, len(f)
    while size > 1 and size % n == 0:
        size //= n
        d += 1
    if size != 1:
        raise ConfigError(f"cochain length {len(f)} is not a power of {n}")
    return d


def _index(n: int, gs) -> int:
    k = 0
    for g in gs:
        k = k * n + g
    return k


def _faces(G: FiniteGroup, gs: tuple[int, ...]):
    """Signed faces of ``(g1..g_{d+1})`` in the bar differential."""
    d1 = len(gs)
    yield 1, gs[1:]
    for i in range(d1 - 1):
        yield (-1) ** (i + 1), gs[:i] + (G.table[gs[i]][gs[i + 1]],) + gs[i + 2:]
    yield (-1) ** d1, gs[:-1]


def coboundary_matrix(G: FiniteGroup, d: int, coeff: int = 0) -> list[dict[int, int]]:
    """Sparse rows of ``delta: C^d -> C^(d+1)``, one per ``(g1..g_{d+1})``."""
    if d not in (1, 2, 3):
        raise DegreeUnsupported(f"coboundary matrix only for degrees 1..3, got {d}")
    return list(_coboundary_rows(G, d, coeff))


@lru_cache(maxsize=64)
def _coboundary_rows(G: FiniteGroup, d: int, coeff: int) -> tuple[dict[int, int], ...]:
    n = G.order
    rows = []
    for gs in tuples(G, d + 1):
        row: dict[int, int] = {}
        for s, face in _faces(G, gs):
            k = _index(n, face)
            row[k] = row.get(k, 0) + s
        if coeff:
            row = {k: v % coeff for k, v in row.items()}
        rows.append({k: v for k, v in row.items() if v})
    return tuple(rows)


def dense(rows: Sequence[dict[int, int]], ncols: int) -> list[list[int]]:
    out = []
    for r in rows:
        row = [0] * ncols
        for k, v in r.items():
            row[k] = v
        out.append(row)
    return out


def coboundary(G: FiniteGroup, f: Sequence, coeff: int = 0, degree: Optional[int] = None) -> list:
    """``delta f`` for a cochain with values in any additive type (ints, Fractions)."""
    d = cochain_degree(G, f, degree)
    _check_degree(d)
    n = G.order
    out = []
    for gs in tuples(G, d + 1):
        v = 0
        for s, face in _faces(G, gs):
            v = v + s * f[_index(n, face)]
        out.append(v % coeff if coeff else v)
    return out


def is_cocycle(G: FiniteGroup, omega: Sequence, coeff: int = 0, degree: Optional[int] = None) -> bool:
    return not any(coboundary(G, omega, coeff, degree))


def _require_cocycle(G: FiniteGroup, omega: Sequence, coeff: int = 0, degree: Optional[int] = None) -> int:
    d = cochain_degree(G, omega, degree)
    if d >= MAX_DEGREE + 1 or d < 1:
        raise DegreeUnsupported(f"cocycles of degree {d} not supported")
    if not is_cocycle(G, omega, coeff, d):
        raise NotACocycle("cochain fails the cocycle identity")
    return d


def normalize_cocycle(G: FiniteGroup, omega: Sequence[int], coeff: int = 0) -> list[int]:
    """Subtract the coboundary of the constant ``omega(e, e)``, so rows and columns at e vanish."""
    c = omega[0]
    return [(v - c) % coeff if coeff else v - c for v in omega]


@lru_cache(maxsize=64)
def _smith_of_delta(G: FiniteGroup, d: int):
    """SNF of ``delta^d`` with column transforms, computed from a row-lattice basis."""
    n = G.order
    reduced = row_reduce(_coboundary_rows(G, d, 0), n ** d)
    if not reduced:
        reduced = [[0] * (n ** d)]
    return smith_normal_form(reduced, left=False, right=True)


@lru_cache(maxsize=64)
def _left_smith_of_delta(G: FiniteGroup, d: int):
    n = G.order
    return smith_normal_form(dense(_coboundary_rows(G, d, 0), n ** d), left=True, right=False)


def is_coboundary(G: FiniteGroup, omega: Sequence[int], coeff: int = 0, degree: Optional[int] = None) -> bool:
    """Exact membership ``omega in delta(C^(d-1))`` over Z or Z/m."""
    d = cochain_degree(G, omega, degree)
    if d == 0:
        return not any(omega)
    _check_degree(d - 1)
    if d - 1 == 0:
        # delta of a constant c is 0 in degree 1
        return all((v % coeff if coeff else v) == 0 for v in omega)
    S = _left_smith_of_delta(G, d - 1)
    u = matvec(S.U, [int(v) for v in omega])
    for j, v in enumerate(u):
        dj = S.diag[j] if j < len(S.diag) else 0
        if coeff:
            if v % math.gcd(dj, coeff):
                return False
        elif dj == 0:
            if v:
                return False
        elif v % dj:
            return False
    return True


# ---------------------------------------------------------------- H^2


@dataclass
class H2Description:
    group: FiniteGroup
    coeff: int
    invariant_factors: list[int]
    representatives: list[list[int]]
    # coordinate data for class_order
    scales: list[int]
    free: list[int]
    V: list[list[int]]
    Vinv: list[list[int]]
    P: list[list[int]]
    factors_all: list[int]
    nontrivial: list[int]

    @property
    def order(self) -> int:
        """Group order of H^2, 0 if infinite."""
        out = 1
        for e in self.invariant_factors:
            if e == 0:
                return 0
            out *= e
        return out

    def to_json(self, with_representatives: bool = True) -> dict:
        data = {
            "group": self.group.name,
            "group_order": self.group.order,
            "coeff": "Z" if self.coeff == 0 else f"Z/{self.coeff}",
            "invariant_factors": list(self.invariant_factors),
            "order": self.order,
        }
        if with_representatives:
            data["representatives"] = [list(r) for r in self.representatives]
        return data


def parse_coeff(text: Union[str, int]) -> int:
    if isinstance(text, int):
        return text
    t = text.strip()
    if t in ("Z", "z", "0", "integers"):
        return 0
    for prefix in ("Z/", "Z_", "z/", "mod"):
        if t.startswith(prefix):
            t = t[len(prefix):]
    try:
        m = int(t)
    except ValueError:
        raise ConfigError(f"cannot parse coefficient {text!r}") from None
    if m < 0:
        raise ConfigError("modulus must be >= 0")
    return m


def h2(G: FiniteGroup, coeff: int = 0) -> H2Description:
    """``H^2(G; A)`` for ``A = Z`` (``coeff=0``) or ``Z/m``.

    In the coordinates ``y = V^-1 x`` that diagonalize ``delta^2`` the cocycle
    lattice is a product of ``s_j Z``; a second normal form of the coboundary
    lattice written in that basis gives the invariant factors.
    """
    n = G.order
    m = coeff
    S = _smith_of_delta(G, 2)
    N2 = n * n
    d = S.diag + [0] * (N2 - len(S.diag))
    scales, free = [], []
    for j in range(N2):
        if m:
            scales.append(m // math.gcd(d[j], m))
            free.append(j)
        else:
            scales.append(1)
            if d[j] == 0:
                free.append(j)
    # coboundary generators in V^-1 coordinates
    d1 = dense(_coboundary_rows(G, 1, 0), n)
    cols = [matvec(S.Vinv, [row[c] for row in d1]) for c in range(n)]
    if m:
        for j in range(N2):
            e = [0] * N2
            e[j] = m
            cols.append(e)
    if not free:
        return H2Description(G, m, [], [], scales, free, S.V, S.Vinv, [], [], [])
    B = [[cols[c][j] // scales[j] for c in range(len(cols))] for j in free]
    T = smith_normal_form(B, left=True, right=False)
    k = len(free)
    factors_all = [T.diag[i] if i < len(T.diag) else 0 for i in range(k)]
    nontrivial = [i for i in range(k) if factors_all[i] != 1]
    reps = []
    for i in nontrivial:
        z = [T.Uinv[r][i] for r in range(k)]
        y = [0] * N2
        for r, j in enumerate(free):
            y[j] = scales[j] * z[r]
        x = matvec(S.V, y)
        if m:
            x = [v % m for v in x]
        reps.append(normalize_cocycle(G, x, m))
    return H2Description(G, m, [factors_all[i] for i in nontrivial], reps, scales, free, S.V, S.Vinv,
                         T.U, factors_all, nontrivial)


def class_coordinates(omega: Sequence[int], desc: H2Description) -> list[int]:
    """Coordinates of ``[omega]`` along the invariant factors (reduced mod each factor)."""
    G, m = desc.group, desc.coeff
    _require_cocycle(G, omega, m)
    y = matvec(desc.Vinv, [int(v) for v in omega])
    z = []
    for j in desc.free:
        if y[j] % desc.scales[j]:
            raise NotACocycle("cochain not in the cocycle lattice")
        z.append(y[j] // desc.scales[j])
    if not m:
        if any(y[j] for j in range(len(y)) if j not in set(desc.free)):
            raise NotACocycle("cochain not in the cocycle lattice")
    w = matvec(desc.P, z) if desc.P else []
    out = []
    for i, e in zip(desc.nontrivial, desc.invariant_factors):
        out.append(w[i] % e if e else w[i])
    return out


def class_order(omega: Sequence[int], desc: H2Description) -> int:
    """Order of ``[omega]`` in ``H^2``; 0 for infinite order."""
    coords = class_coordinates(omega, desc)
    order = 1
    for c, e in zip(coords, desc.invariant_factors):
        if e == 0:
            if c:
                return 0
            continue
        order = math.lcm(order, e // math.gcd(c, e))
    return order


# ---------------------------------------------------------------- extensions


def extension_table(G: FiniteGroup, m: int, omega: Sequence[int]) -> FiniteGroup:
    """Central extension of ``G`` by ``Z/m``; element ``g*m + z`` is the pair ``(z, g)``.

    The product is ``(z1, g1)(z2, g2) = (z1 + z2 + omega(g1, g2), g1 g2)``. The
    table is relabelled so its identity is 0, then checked for the group laws.
    """
    n = G.order
    if m < 1:
        raise ConfigError("extension coefficient must be a finite cyclic group")
    if len(omega) != n * n:
        raise ConfigError("omega must be a degree-2 cochain")
    N = n * m
    raw = [[0] * N for _ in range(N)]
    for a in range(N):
        g1, z1 = divmod(a, m)
        for b in range(N):
            g2, z2 = divmod(b, m)
            raw[a][b] = G.table[g1][g2] * m + (z1 + z2 + omega[g1 * n + g2]) % m
    e = (-omega[0]) % m  # identity is (-omega(e,e), e)
    perm = list(range(N))
    perm[0], perm[e] = e, 0
    table = [[0] * N for _ in range(N)]
    for a in range(N):
        for b in range(N):
            table[perm[a]][perm[b]] = perm[raw[a][b]]
    problem = group_law_violation(table)
    if problem:
        raise NotACocycle(f"extension table is not a group: {problem}")
    return FiniteGroup(tuple(map(tuple, table)), f"E({G.name},Z{m})")


# ---------------------------------------------------------------- restriction and transfer


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]  # sorted parent indices; element k of the subgroup is elements[k]

    @property
    def group(self) -> FiniteGroup:
        pos = {g: k for k, g in enumerate(self.elements)}
        t = tuple(tuple(pos[self.parent.table[a][b]] for b in self.elements) for a in self.elements)
        return FiniteGroup(t, f"H<{self.parent.name}")

    @property
    def index(self) -> int:
        return self.parent.order // len(self.elements)


def subgroup(G: FiniteGroup, elements: Sequence[int]) -> Subgroup:
    els = sorted(set(int(e) for e in elements))
    if not els or els[0] != 0:
        raise NotASubgroup("subgroup must contain the identity 0")
    if any(not 0 <= e < G.order for e in els):
        raise NotASubgroup("element out of range")
    s = set(els)
    for a in els:
        if G.inv(a) not in s:
            raise NotASubgroup(f"not closed under inverses at {a}")
        for b in els:
            if G.table[a][b] not in s:
                raise NotASubgroup(f"not closed under products at ({a}, {b})")
    return Subgroup(G, tuple(els))


def restrict_cocycle(omega: Sequence, H: Subgroup, degree: Optional[int] = None) -> list:
    G = H.parent
    d = cochain_degree(G, omega, degree)
    n = G.order
    return [omega[_index(n, gs)] for gs in itertools.product(H.elements, repeat=d)]


def coset_representatives(H: Subgroup) -> tuple[list[int], list[int]]:
    """Least element of each right coset ``H t``, and the representative of every element."""
    G = H.parent
    rep = [-1] * G.order
    reps = []
    for t in range(G.order):
        if rep[t] < 0:
            reps.append(t)
            for h in H.elements:
                rep[G.table[h][t]] = t
    return reps, rep


def transfer_cocycle(f: Sequence, H: Subgroup, coeff: int = 0, degree: Optional[int] = None,
                     representatives: Optional[Sequence[int]] = None) -> list:
    """``(tr f)(g1..gd) = sum_t f(h(t, g1), h(t1, g2), ...)`` with ``t_{k} = rep(t_{k-1} g_k)``.

    Here ``h(t, g) = t g rep(t g)^-1`` lies in ``H``. ``representatives`` may
    replace the least-element choice, one element per right coset.
    """
    G = H.parent
    Hn = len(H.elements)
    d = cochain_degree(H.group, f, degree)
    pos = {g: k for k, g in enumerate(H.elements)}
    reps, rep = coset_representatives(H)
    if representatives is not None:
        chosen = {rep[t]: t for t in representatives}
        if len(chosen) != len(reps) or len(representatives) != len(reps):
            raise NotASubgroup("need exactly one representative per right coset")
        rep = [chosen[r] for r in rep]
        reps = sorted(chosen.values())
    out = []
    for gs in tuples(G, d):
        total = 0
        for t in reps:
            hs = []
            cur = t
            for g in gs:
                tg = G.table[cur][g]
                nxt = rep[tg]
                hs.append(pos[G.table[tg][G.inv(nxt)]])
                cur = nxt
            total = total + f[_index(Hn, hs)]
        out.append(total % coeff if coeff else total)
    return out


# ---------------------------------------------------------------- primitives


def averaging_primitive(G: FiniteGroup, omega: Sequence, degree: Optional[int] = None) -> list[Fraction]:
    """``f(g1..g_{d-1}) = |G|^-1 sum_x omega(x, g1..g_{d-1})``, which satisfies ``delta f = omega``."""
    d = _require_cocycle(G, [Fraction(v) for v in omega], 0, degree)
    n = G.order
    block = n ** (d - 1)
    return [sum((Fraction(omega[x * block + k]) for x in range(n)), Fraction(0)) / n for k in range(block)]


def linfty_primitive(G: FiniteGroup, omega: Sequence, coeff: int = 0, degree: Optional[int] = None) -> list[tuple]:
    """``phi(g1..g_{d-1})(h) = omega(h^-1, g1..g_{d-1})``, a cochain valued in functions on G."""
    d = _require_cocycle(G, omega, coeff, degree)
    n = G.order
    block = n ** (d - 1)
    inv = G.inverses
    return [tuple(omega[inv[h] * block + k] for h in range(n)) for k in range(block)]


def module_coboundary(G: FiniteGroup, phi: Sequence[tuple], coeff: int = 0, degree: Optional[int] = None) -> list[tuple]:
    """Coboundary for coefficients in functions on G with ``(g.f)(h) = f(g^-1 h)``."""
    n = G.order
    d = cochain_degree(G, phi, degree)
    inv = G.inverses
    out = []
    for gs in tuples(G, d + 1):
        vals = []
        for h in range(n):
            ginv_h = G.table[inv[gs[0]]][h]
            v = phi[_index(n, gs[1:])][ginv_h]
            for s, face in list(_faces(G, gs))[1:]:
                v += s * phi[_index(n, face)][h]
            vals.append(v % coeff if coeff else v)
        out.append(tuple(vals))
    return out


def check_linfty_primitive(G: FiniteGroup, omega: Sequence, phi: Sequence[tuple], coeff: int = 0,
                           degree: Optional[int] = None) -> tuple[int, int]:
    """``(points checked, mismatches)`` for ``delta phi = iota(omega)`` at every ``(g1..gd, h)``."""
    d = cochain_degree(G, omega, degree)
    dphi = module_coboundary(G, phi, coeff, d - 1)
    checked = bad = 0
    for k, row in enumerate(dphi):
        w = omega[k] % coeff if coeff else omega[k]
        for v in row:
            checked += 1
            bad += v != w
    return checked, bad


def round_real_cochain(f: Sequence) -> list[int]:
    return [math.floor(Fraction(v)) for v in f]
