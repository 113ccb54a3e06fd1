import itertools
import random
from fractions import Fraction

import pytest

from cext import finitegrp as fg
from cext.errors import ConfigError, DegreeUnsupported, NotACocycle, NotASubgroup
from cext.linalg import matmul


def carry(n: int) -> list[int]:
    """The carry cocycle of Z_n: 1 when a + b wraps around."""
    return [int(a + b >= n) for a in range(n) for b in range(n)]


def rational_rank(A: list[list[int]]) -> int:
    M = [[Fraction(v) for v in r] for r in A]
    rank, cols = 0, len(M[0]) if M else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(M)) if M[r][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for r in range(len(M)):
            if r != rank and M[r][c]:
                q = M[r][c] / M[rank][c]
                M[r] = [a - q * b for a, b in zip(M[r], M[rank])]
        rank += 1
    return rank


def random_cocycle(G, degree: int, rng: random.Random, rational: bool = False) -> list:
    n = G.order
    if rational:
        f = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(n ** (degree - 1))]
    else:
        f = [rng.randint(-6, 6) for _ in range(n ** (degree - 1))]
    om = fg.coboundary(G, f, degree=degree - 1)
    if degree == 2:
        for r in fg.h2(G).representatives:
            k = rng.randint(-3, 3)
            om = [a + k * b for a, b in zip(om, r)]
    return om


# ---------------------------------------------------------------- groups


def test_builtin_groups_valid():
    for G in fg.small_groups(8):
        assert fg.group_law_violation(G.table) is None
    assert [G.order for G in fg.small_groups(8)] == [1, 2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 8]


def test_small_groups_pairwise_distinct_by_census():
    # same order and same element-order census would suggest a duplicate
    seen = {}
    for G in fg.small_groups(8):
        key = (G.order, tuple(sorted(fg.order_census(G).items())), _is_abelian(G))
        assert key not in seen, (G.name, seen.get(key))
        seen[key] = G.name


def _is_abelian(G) -> bool:
    return all(G.table[a][b] == G.table[b][a] for a in range(G.order) for b in range(G.order))


def test_parse_group():
    assert fg.parse_group("cyclic:4").order == 4
    assert fg.parse_group("dihedral:3").order == 6
    assert fg.parse_group("product:cyclic:2,cyclic:2").order == 4
    assert fg.parse_group("quaternion").name == "Q8"
    with pytest.raises(ConfigError):
        fg.parse_group("cyclic:13")
    with pytest.raises(ConfigError):
        fg.parse_group("nonsense")


def test_bad_table_rejected():
    with pytest.raises(ConfigError):
        fg.from_table([[0, 1], [1, 1]])


def test_from_json(tmp_path):
    import json

    path = tmp_path / "g.json"
    path.write_text(json.dumps({"name": "C3", "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]}))
    assert fg.parse_group(str(path)).table == fg.cyclic(3).table


# ---------------------------------------------------------------- coboundary matrices


def test_trivial_group_matrices():
    # d + 2 alternating face terms all hit the same coordinate
    G = fg.cyclic(1)
    for d in (1, 2, 3):
        expect = [[1]] if d % 2 else [[0]]
        assert fg.dense(fg.coboundary_matrix(G, d), 1) == expect


def test_delta_squared_zero_everywhere():
    for G in fg.small_groups(6) + [fg.dihedral(4)]:
        n = G.order
        for d in (1, 2):
            A = fg.dense(fg.coboundary_matrix(G, d), n ** d)
            Bm = fg.dense(fg.coboundary_matrix(G, d + 1), n ** (d + 1))
            assert all(v == 0 for row in matmul(Bm, A) for v in row)


def test_rank_delta1_z2():
    # (delta f)(g, h) = f(g) + f(h) - f(gh) has rows f0, f0, f0, 2 f1 - f0
    A = fg.dense(fg.coboundary_matrix(fg.cyclic(2), 1), 2)
    assert A == [[1, 0], [1, 0], [1, 0], [-1, 2]]
    assert rational_rank(A) == 2


def test_degree_unsupported():
    with pytest.raises(DegreeUnsupported):
        fg.coboundary_matrix(fg.cyclic(2), 4)
    with pytest.raises(DegreeUnsupported):
        fg.coboundary_matrix(fg.cyclic(2), 0)


def test_matrix_agrees_with_direct_coboundary():
    G = fg.dihedral(3)
    rng = random.Random(0)
    f = [rng.randint(-4, 4) for _ in range(G.order ** 2)]
    rows = fg.coboundary_matrix(G, 2)
    via_matrix = [sum(v * f[k] for k, v in row.items()) for row in rows]
    assert via_matrix == fg.coboundary(G, f)


# ---------------------------------------------------------------- H^2


def test_h2_z2_z2_brute_force():
    G = fg.cyclic(2)

    def closed(w):
        return all((w[h * 2 + k] - w[((g + h) % 2) * 2 + k] + w[g * 2 + (h + k) % 2] - w[g * 2 + h]) % 2 == 0
                   for g in range(2) for h in range(2) for k in range(2))

    cochains = [list(c) for c in itertools.product(range(2), repeat=4)]
    cocycles = [c for c in cochains if closed(c)]
    assert [c for c in cochains if fg.is_cocycle(G, c, 2)] == cocycles
    cobs = {tuple((f[g] + f[h] - f[(g + h) % 2]) % 2 for g in range(2) for h in range(2))
            for f in itertools.product(range(2), repeat=2)}
    assert (len(cocycles), len(cobs)) == (4, 2)
    desc = fg.h2(G, 2)
    assert desc.order == len(cocycles) // len(cobs) == 2


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_h2_cyclic_integers(n):
    G = fg.cyclic(n)
    desc = fg.h2(G)
    assert desc.invariant_factors == [n]
    # the carry cocycle generates; n * carry = delta(a -> a)
    assert fg.class_order(carry(n), desc) == n
    assert fg.coboundary(G, list(range(n))) == [n * c for c in carry(n)]


def test_h2_klein_integers():
    assert fg.h2(fg.direct_product(fg.cyclic(2), fg.cyclic(2))).invariant_factors == [2, 2]


def test_h2_matches_abelianization_dual():
    # H^2(G; Z) is the dual of the abelianization for finite G
    expect = {"Z1": [], "Z2": [2], "Z3": [3], "Z4": [4], "Z2xZ2": [2, 2], "Z5": [5], "Z6": [6], "D3": [2],
              "Z7": [7], "Z8": [8], "Z2xZ4": [2, 4], "Z2xZ2xZ2": [2, 2, 2], "D4": [2, 2], "Q8": [2, 2]}
    for G in fg.small_groups(8):
        assert fg.h2(G).invariant_factors == expect[G.name], G.name


def test_h2_representatives_are_distinct_classes():
    for G in fg.small_groups(8):
        for m in (0, 2):
            desc = fg.h2(G, m)
            for r in desc.representatives:
                assert fg.is_cocycle(G, r, m)
                assert r[0] == 0
            for a, b in itertools.combinations(desc.representatives, 2):
                diff = [(x - y) % m if m else x - y for x, y in zip(a, b)]
                assert not fg.is_coboundary(G, diff, m)


def test_h2_independent_of_element_order():
    rng = random.Random(5)
    for G in (fg.dihedral(4), fg.direct_product(fg.cyclic(2), fg.cyclic(4)), fg.cyclic(6)):
        perm = [0] + rng.sample(range(1, G.order), G.order - 1)
        H = G.relabel(perm)
        for m in (0, 2, 3):
            assert fg.h2(G, m).invariant_factors == fg.h2(H, m).invariant_factors


def test_class_order_examples():
    G = fg.cyclic(4)
    desc = fg.h2(G)
    gen = desc.representatives[0]
    assert fg.class_order(gen, desc) == 4
    assert fg.class_order([2 * v for v in gen], desc) == 2
    assert fg.class_order(fg.coboundary(G, [0, 3, -1, 7]), desc) == 1
    with pytest.raises(NotACocycle):
        fg.class_order([1] + [0] * 15, desc)


def test_is_coboundary_mod_m():
    G = fg.cyclic(2)
    assert fg.is_coboundary(G, [1, 1, 1, 1], 2)
    assert not fg.is_coboundary(G, [0, 0, 0, 1], 2)


# ---------------------------------------------------------------- extensions


def test_extension_tables_z2_by_z2():
    G = fg.cyclic(2)
    rep = fg.h2(G, 2).representatives[0]
    assert 4 in fg.order_census(fg.extension_table(G, 2, rep))
    assert fg.order_census(fg.extension_table(G, 2, [0, 0, 0, 0])) == {1: 1, 2: 3}
    cob = fg.coboundary(G, [0, 1], 2)
    assert 4 not in fg.order_census(fg.extension_table(G, 2, cob))


def test_zero_cocycle_gives_direct_product():
    G = fg.cyclic(3)
    E = fg.extension_table(G, 2, [0] * 9)
    assert fg.order_census(E) == fg.order_census(fg.direct_product(G, fg.cyclic(2)))


def test_extension_valid_iff_cocycle_exhaustive_z2():
    G = fg.cyclic(2)
    for c in itertools.product(range(2), repeat=4):
        om = list(c)
        try:
            fg.extension_table(G, 2, om)
            ok = True
        except NotACocycle:
            ok = False
        assert ok == fg.is_cocycle(G, om, 2)


def test_extension_valid_iff_cocycle_sampled():
    rng = random.Random(7)
    for G, m in ((fg.cyclic(3), 3), (fg.direct_product(fg.cyclic(2), fg.cyclic(2)), 2)):
        n = G.order
        for trial in range(150):
            if trial % 2:
                om = [v % m for v in fg.coboundary(G, [rng.randint(0, m - 1) for _ in range(n)], m)]
                rep = fg.h2(G, m).representatives
                if rep:
                    om = [(a + rng.randint(0, m - 1) * b) % m for a, b in zip(om, rep[0])]
            else:
                om = [rng.randint(0, m - 1) for _ in range(n * n)]
            try:
                fg.extension_table(G, m, om)
                ok = True
            except NotACocycle:
                ok = False
            assert ok == fg.is_cocycle(G, om, m)


def test_extension_order_and_census_z4_by_z2():
    G = fg.cyclic(4)
    desc = fg.h2(G, 2)
    censuses = {tuple(sorted(fg.order_census(fg.extension_table(G, 2, r)).items())) for r in desc.representatives}
    # Z/2 extension of Z4 by the nontrivial class is Z8
    assert ((1, 1), (2, 1), (4, 2), (8, 4)) in censuses


# ---------------------------------------------------------------- restriction and transfer


def test_subgroup_validation():
    G = fg.cyclic(4)
    with pytest.raises(NotASubgroup):
        fg.subgroup(G, [0, 1])
    with pytest.raises(NotASubgroup):
        fg.subgroup(G, [1, 3])
    assert fg.subgroup(G, [2, 0]).elements == (0, 2)


def test_restrict_to_trivial_subgroup_is_zero():
    G = fg.cyclic(4)
    om = fg.h2(G).representatives[0]
    res = fg.restrict_cocycle(om, fg.subgroup(G, [0]))
    assert res == [0]


def test_transfer_full_subgroup_exact():
    G = fg.dihedral(3)
    om = random_cocycle(G, 2, random.Random(1))
    H = fg.subgroup(G, range(G.order))
    assert fg.transfer_cocycle(fg.restrict_cocycle(om, H), H) == om


@pytest.mark.parametrize("group,sub", [("cyclic:4", [0, 2]), ("cyclic:6", [0, 3]), ("cyclic:6", [0, 2, 4]),
                                       ("dihedral:3", [0, 1, 2]), ("quaternion", [0, 4]),
                                       ("dihedral:4", [0, 4])])
def test_transfer_restriction_is_multiplication_by_index(group, sub):
    G = fg.parse_group(group)
    H = fg.subgroup(G, sub)
    rng = random.Random(3)
    for _ in range(3):
        om = random_cocycle(G, 2, rng)
        tr = fg.transfer_cocycle(fg.restrict_cocycle(om, H), H)
        assert fg.is_cocycle(G, tr)
        assert fg.is_coboundary(G, [a - H.index * b for a, b in zip(tr, om)])


def test_transfer_independent_of_representatives():
    G = fg.dihedral(4)
    H = fg.subgroup(G, [0, 1, 2, 3])
    reps, rep = fg.coset_representatives(H)
    other = [x for x in range(G.order) if rep[x] == reps[1]]
    rng = random.Random(6)
    differ = 0
    for t in other:
        om_h = random_cocycle(H.group, 2, rng)
        a = fg.transfer_cocycle(om_h, H)
        b = fg.transfer_cocycle(om_h, H, representatives=[3, t])
        differ += a != b
        assert fg.is_coboundary(G, [x - y for x, y in zip(a, b)])
    assert differ
    with pytest.raises(NotASubgroup):
        fg.transfer_cocycle(om_h, H, representatives=[0, 1])


def test_transfer_of_degree3_cocycle_is_cocycle():
    G = fg.cyclic(4)
    H = fg.subgroup(G, [0, 2])
    om = random_cocycle(H.group, 3, random.Random(4))
    assert fg.is_cocycle(G, fg.transfer_cocycle(om, H, degree=3))


# ---------------------------------------------------------------- primitives


def test_averaging_zero():
    G = fg.cyclic(3)
    assert fg.averaging_primitive(G, [0] * 9) == [0, 0, 0]


def test_averaging_half_integer_class():
    G = fg.cyclic(2)
    om = [Fraction(v, 2) for v in carry(2)]
    f = fg.averaging_primitive(G, om)
    assert fg.coboundary(G, f) == om


def test_averaging_rejects_non_cocycle():
    with pytest.raises(NotACocycle):
        fg.averaging_primitive(fg.cyclic(2), [0, 0, 0, 1, 0, 0, 0, 0], degree=3)


def test_averaging_and_linfty_all_small_groups():
    rng = random.Random(11)
    for G in fg.small_groups(8):
        for degree in (2, 3):
            for rational in (False, True):
                om = random_cocycle(G, degree, rng, rational)
                f = fg.averaging_primitive(G, om, degree)
                assert fg.coboundary(G, f, degree=degree - 1) == [Fraction(v) for v in om]
                phi = fg.linfty_primitive(G, om, degree=degree)
                checked, bad = fg.check_linfty_primitive(G, om, phi, degree=degree)
                assert bad == 0 and checked == G.order ** (degree + 1)


def test_linfty_examples():
    G2 = fg.cyclic(2)
    assert fg.check_linfty_primitive(G2, carry(2), fg.linfty_primitive(G2, carry(2))) == (8, 0)
    G3 = fg.cyclic(3)
    om = random_cocycle(G3, 2, random.Random(2))
    assert fg.check_linfty_primitive(G3, om, fg.linfty_primitive(G3, om)) == (27, 0)
    assert all(v == 0 for row in fg.linfty_primitive(G3, [0] * 9) for v in row)


def test_linfty_mod_m():
    G = fg.cyclic(2)
    rep = fg.h2(G, 2).representatives[0]
    phi = fg.linfty_primitive(G, rep, 2)
    assert fg.check_linfty_primitive(G, rep, phi, 2) == (8, 0)


def test_linfty_detects_wrong_primitive():
    G = fg.cyclic(3)
    om = carry(3)
    phi = [tuple(v + (1 if k == 0 and h == 1 else 0) for h, v in enumerate(row))
           for k, row in enumerate(fg.linfty_primitive(G, om))]
    assert fg.check_linfty_primitive(G, om, phi)[1] > 0


def test_round_real_cochain():
    assert fg.round_real_cochain([3, -2, 0]) == [3, -2, 0]
    assert fg.round_real_cochain([Fraction(1, 2)] * 4) == [0, 0, 0, 0]
    assert fg.round_real_cochain([Fraction(-1, 3)]) == [-1]


def test_floor_rounding_stays_in_class():
    rng = random.Random(8)
    for G in (fg.cyclic(4), fg.dihedral(3), fg.quaternion()):
        desc = fg.h2(G)
        om = random_cocycle(G, 2, rng)
        f = [Fraction(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(G.order)]
        rounded = [a + b for a, b in zip(om, fg.coboundary(G, fg.round_real_cochain(f)))]
        assert all(isinstance(v, int) for v in rounded)
        assert fg.is_cocycle(G, rounded)
        assert fg.is_coboundary(G, [a - b for a, b in zip(rounded, om)])
        assert fg.class_coordinates(rounded, desc) == fg.class_coordinates(om, desc)


def test_averaging_floor_gives_bounded_representative():
    # omega - delta(floor f) = delta(f - floor f) takes values in {0, 1} in degree 2
    rng = random.Random(9)
    for G in fg.small_groups(8):
        om = random_cocycle(G, 2, rng)
        f = fg.averaging_primitive(G, om)
        bounded = [a - b for a, b in zip(om, fg.coboundary(G, fg.round_real_cochain(f)))]
        assert set(bounded) <= {0, 1}
