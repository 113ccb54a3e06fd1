import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cext.errors import CapTooSmall, ConfigError
from cext.extensions import (
    Cocycle2,
    ExtElement,
    admissible_triples,
    check_cocycle,
    coboundary,
    cocycle_from_section,
    ext_identity,
    ext_inverse,
    ext_multiply,
    loop_value,
    make_slow_class,
    maximizing_section,
    parse_alpha,
    pullback_euler,
    section_defect_stats,
    split_cocycle,
    weak_boundedness_profile,
)
from cext.presentations import indexed_relator
from cext.words import generators, parse_word


# ---------------------------------------------------------------- slow classes


def test_slow_class_examples():
    a = parse_alpha("i")
    assert (a.lam, a.lam_int) == (Fraction(1, 2), 1)
    z = parse_alpha("0")
    assert (z.lam, z.lam_int) == (0, 0)
    p = parse_alpha("prefix:5;tail:zero")
    assert (p.lam, p.lam_int) == (5, 5)
    assert [parse_alpha("prefix:5,3,2;tail:zero")(i) for i in range(5)] == [5, 3, 2, 0, 0]
    assert parse_alpha("prefix:1;tail:const:4")(7) == 4


def test_linear_lambda_is_supremum_not_attained():
    # oracle: i / (2i+1) increases towards 1/2
    vals = [Fraction(i, 2 * i + 1) for i in range(10**4)]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    assert max(vals) < parse_alpha("i").lam == Fraction(1, 2)
    assert parse_alpha("3i").lam == Fraction(3, 2)


def test_constant_tail_lambda():
    # |c| / (2m+1) at the first tail index m dominates the rest of the tail
    s = make_slow_class((0, 0), "constant", 5)
    assert s.lam == Fraction(5, 5) == max(Fraction(abs(s(i)), 2 * i + 1) for i in range(50))


def test_lambda_int_override():
    assert parse_alpha("i", lam_int=3).lam_int == 3
    with pytest.raises(ConfigError):
        parse_alpha("prefix:5", lam_int=4)


@given(st.lists(st.integers(-50, 50), max_size=6), st.sampled_from(["zero", "linear", "constant"]),
       st.integers(-9, 9))
def test_lambda_bounds_all_ratios(prefix, tail, c):
    s = make_slow_class(prefix, tail, c)
    assert all(Fraction(abs(s(i)), 2 * i + 1) <= s.lam for i in range(200))
    assert s.lam_int >= s.lam > s.lam_int - 1 or s.lam == s.lam_int == 0


# ---------------------------------------------------------------- cocycles on balls


def test_section_cocycle_passes(ball3):
    om = cocycle_from_section(ball3, parse_alpha("i"))
    rep = check_cocycle(om)
    assert rep.passed and rep.checked > 39000 and rep.normalization_failures == 0


def test_zero_alpha_gives_zero_cocycle(ball2):
    om = cocycle_from_section(ball2, parse_alpha("0"))
    assert all(om(g, h) == 0 for g in ball2.elements(1) for h in ball2.elements(1))


def bumped(om: Cocycle2, g, h, by: int = 1) -> Cocycle2:
    return Cocycle2(om.ball, lambda x, y: om(x, y) + (by if (x.index, y.index) == (g.index, h.index) else 0))


def test_corrupted_table_fails_with_triple(ball3):
    zero = Cocycle2(ball3, lambda g, h: 0)
    g, h = ball3.elements(1)[3], ball3.elements(1)[5]
    rep = check_cocycle(bumped(zero, g, h))
    assert not rep.passed
    assert all(str(g) in t or str(h) in t for t in rep.failures)
    assert any(t[0] == str(g) and t[1] == str(h) for t in rep.failures)


def test_word_length_coboundary(ball3):
    om = coboundary(lambda g: len(g.word), ball3)
    assert check_cocycle(om).passed
    prof = weak_boundedness_profile(om)
    assert all(v <= 2 for v in prof.generator_maxima.values())
    assert prof.all_within_bound


def test_random_coboundary_perturbation(ball2):
    rng = random.Random(1)
    f = {g.index: rng.randint(-5, 5) for g in ball2.elements()}
    f[0] = 0
    om = cocycle_from_section(ball2, parse_alpha("i")) + coboundary(f, ball2)
    assert check_cocycle(om).passed


def test_coboundary_linear(ball2):
    f1 = {g.index: len(g.word) for g in ball2.elements()}
    f2 = {g.index: g.index % 7 for g in ball2.elements()}
    f12 = {k: f1[k] + f2[k] for k in f1}
    d1, d2, d12 = coboundary(f1, ball2), coboundary(f2, ball2), coboundary(f12, ball2)
    for g in ball2.elements(1):
        for h in ball2.elements(1):
            assert d12(g, h) == d1(g, h) + d2(g, h)


def test_mod_m_cocycle(ball2):
    f = {g.index: g.index for g in ball2.elements()}
    om = coboundary(f, ball2, modulus=5)
    assert check_cocycle(om).passed
    assert all(0 <= om(g, h) < 5 for g in ball2.elements(1) for h in ball2.elements(1))


# ---------------------------------------------------------------- extension arithmetic


def test_ext_identity_and_inverse(ball2):
    f = {g.index: len(g.word) ** 2 for g in ball2.elements()}
    om = coboundary(f, ball2)
    e = ext_identity(om)
    for g in ball2.elements(1):
        x = ExtElement(3, g)
        assert ext_multiply(e, x, om) == x == ext_multiply(x, e, om)
        assert ext_multiply(x, ext_inverse(x, om), om) == e


def test_associativity_iff_cocycle(ball3):
    rng = random.Random(2)
    f = {g.index: rng.randint(-3, 3) for g in ball3.elements()}
    f[0] = 0
    good = coboundary(f, ball3)
    bad = bumped(good, ball3.elements(1)[1], ball3.elements(1)[2])
    triples = list(admissible_triples(ball3, 3))

    def assoc_failures(om):
        out = 0
        for g, h, k in triples:
            if len(g.word) + len(h.word) + len(k.word) < 3:
                continue
            x, y, z = ExtElement(1, g), ExtElement(2, h), ExtElement(-1, k)
            out += ext_multiply(ext_multiply(x, y, om), z, om) != ext_multiply(x, ext_multiply(y, z, om), om)
        return out

    assert assoc_failures(good) == 0 and check_cocycle(good).passed
    assert assoc_failures(bad) > 0 and not check_cocycle(bad).passed


# ---------------------------------------------------------------- probes


def test_profile_of_zero_cocycle(ball2):
    om = Cocycle2(ball2, lambda g, h: 0)
    prof = weak_boundedness_profile(om)
    assert prof.C == 0 and all(r["max_abs"] == 0 for r in prof.rows)


@pytest.mark.parametrize("i,alpha,expect", [(0, "i", 0), (5, "i", 5), (4, "prefix:7,7,7,7,7;tail:zero", 7),
                                            (3, "-2i", -6), (2, "0", 0)])
def test_pullback_euler(i, alpha, expect):
    assert pullback_euler(i, parse_alpha(alpha)) == expect


def test_loop_value_equals_alpha_and_ignores_coboundaries(ball4):
    alpha = parse_alpha("prefix:5,1;tail:zero")
    om = cocycle_from_section(ball4, alpha)
    r0 = indexed_relator(0)
    assert loop_value(r0, om) == 5
    rng = random.Random(12)
    f = {g.index: rng.randint(-9, 9) for g in ball4.elements()}
    f[0] = 0
    shifted = om + coboundary(f, ball4)
    assert loop_value(r0, shifted) == 5
    assert loop_value(parse_word("a1 a2 a2- a1-"), shifted) == 0


def test_split_cocycle(ball2):
    vals = lambda g, h: (len(g.word) - len(ball2.multiply(g, h).word) + len(h.word), 7, len(g.word) * len(h.word))
    comps = split_cocycle(vals, ball2, k=2, modulus=3)
    assert len(comps) == 3
    g = ball2.elements(1)[1]
    h = ball2.inverse(g)
    assert [c(g, h) for c in comps] == [2, 7, 1]
    assert comps[0].modulus == 0 and comps[2].modulus == 3


# ---------------------------------------------------------------- maximizing section


def test_section_identity():
    sv = maximizing_section(parse_word(""), parse_alpha("i"), 8)
    assert sv.lower == 0 and len(sv.witness) == 0


def test_section_generator_is_single_letter():
    for x in generators()[:4]:
        sv = maximizing_section(x, parse_alpha("i"), 9)
        assert sv.witness == x and sv.lower == -1


def test_section_cap_too_small():
    with pytest.raises(CapTooSmall):
        maximizing_section(parse_word("a1 a2 a3"), parse_alpha("i"), 2)


def test_section_finds_better_spelling():
    # a4 a3 a4- a3- = a1 a2 a1- a2- in G, and (a4 a3 a4- a3-)^-1 (a1 a2 a1- a2-) is a
    # rotation of r_0, so the other spelling gains alpha_0 = 5 at equal length
    alpha = parse_alpha("prefix:5;tail:zero")
    sv = maximizing_section(parse_word("a4 a3 a4- a3-"), alpha, 12)
    assert sv.lower == -5 * 4 + 5
    assert str(sv.witness) == "a1 a2 a1- a2-"
    back = maximizing_section(parse_word("a1 a2 a1- a2-"), alpha, 12)
    assert back.lower == -20 and back.lower <= back.upper


def test_section_brackets_on_ball(ball2):
    alpha = parse_alpha("i")
    for g in ball2.elements():
        sv = maximizing_section(g, alpha, len(g.word) + 8, max_depth=1)
        assert -alpha.lam_int * len(g.word) <= sv.lower <= sv.upper


def test_defect_zero_alpha(ball2):
    rep = section_defect_stats(ball2, parse_alpha("0"), 8)
    assert rep.defect_max == 0 and rep.theoretical_bound == 0


def test_defect_symmetric_in_alpha(ball2):
    a = section_defect_stats(ball2, parse_alpha("i"), 8)
    b = section_defect_stats(ball2, parse_alpha("-i"), 8)
    assert a.defect_max == b.defect_max
    assert not a.excess and a.brackets_ok
