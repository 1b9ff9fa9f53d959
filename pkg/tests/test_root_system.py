from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rank2ex.root_system import (
    KINDS,
    RHO,
    RootSystemError,
    Weight,
    apply,
    build,
    element,
    inverse,
    is_dominant,
    is_singular,
    left_weak_leq,
    longest_element,
    norm_sq,
    reflect,
    weyl_group,
    word_matrix,
)

weights = st.builds(Weight, st.integers(-20, 20), st.integers(-20, 20))
kinds = st.sampled_from(KINDS)


@pytest.mark.parametrize("kind,rows", [
    ("a2", ((2, -1), (-1, 2))),
    ("a1xa1", ((2, 0), (0, 2))),
    ("b2", ((2, -1), (-2, 2))),
    ("g2", ((2, -1), (-3, 2))),
])
def test_cartan_rows(kind, rows):
    assert build(kind).cartan_rows == rows


def test_gram_and_coroots():
    g2 = build("g2")
    assert g2.gram == ((1, Fraction(3, 2)), (Fraction(3, 2), 3))
    assert g2.coroot_functionals == ((1, 0), (0, 1), (1, 3), (2, 3), (1, 1), (1, 2))
    assert build("b2").coroot_functionals == ((1, 0), (0, 1), (1, 2), (1, 1))
    assert build("a2").gram == ((Fraction(2, 3), Fraction(1, 3)), (Fraction(1, 3), Fraction(2, 3)))


def test_unknown_kind():
    with pytest.raises(RootSystemError):
        build("e8")


def test_rho_norm():
    g2 = build("g2")
    assert g2.rho == (1, 1)
    assert norm_sq(g2, RHO) == 7
    assert norm_sq(g2, (0, 0)) == 0
    assert norm_sq(g2, (0, -2)) == 12


def test_simple_roots_in_omega_coordinates():
    assert build("b2").simple_roots[1] == (-2, 2)
    assert build("g2").simple_roots[0] == (2, -1)


@pytest.mark.parametrize("kind,order", [("a2", 6), ("a1xa1", 4), ("b2", 8), ("g2", 12)])
def test_weyl_group_sizes(kind, order):
    group = weyl_group(build(kind))
    assert len(group) == order
    assert len({w.matrix for w in group}) == order
    assert group[0].word == () and group[0].matrix == ((1, 0), (0, 1))


def test_weyl_order_matches_bracket_lists():
    words = [list(w.word) for w in weyl_group(build("a2"))]
    assert words == [[], [1], [2], [2, 1], [1, 2], [1, 2, 1]]
    g2 = [list(w.word) for w in weyl_group(build("g2"))]
    assert g2[:4] == [[], [1], [2], [2, 1]]
    assert g2[-1] == [1, 2, 1, 2, 1, 2]


def test_reflect_examples():
    g2, a2 = build("g2"), build("a2")
    assert reflect(g2, 1, (1, 0)) == (-1, 1)
    assert reflect(a2, 2, RHO) == (2, -1)
    for kind in KINDS:
        for i in (1, 2):
            assert reflect(build(kind), i, (0, 0)) == (0, 0)


def test_apply_examples():
    g2, a2 = build("g2"), build("a2")
    assert apply(weyl_group(g2)[0], (4, -7)) == (4, -7)
    assert apply(longest_element(g2), RHO) == (-1, -1)
    assert apply(element(a2, [1]), (1, 0)) == (-1, 1)


@given(kinds, weights, st.sampled_from((1, 2)))
def test_reflection_is_involution(kind, lam, i):
    rs = build(kind)
    assert reflect(rs, i, reflect(rs, i, lam)) == lam


@given(kinds, weights, st.lists(st.sampled_from((1, 2)), max_size=8))
def test_apply_respects_words(kind, lam, word):
    rs = build(kind)
    expected = lam
    for i in reversed(word):
        expected = reflect(rs, i, expected)
    w = element(rs, word)
    assert w.matrix == word_matrix(rs, word)
    assert apply(w, lam) == expected


@pytest.mark.parametrize("kind", KINDS)
def test_reflection_agrees_with_gram_formula(kind):
    rs = build(kind)
    for i, alpha in enumerate(rs.simple_roots, 1):
        aa = rs.inner(alpha, alpha)
        for a in range(-10, 11):
            for b in range(-10, 11):
                lam = Weight(a, b)
                c = 2 * rs.inner(alpha, lam) / aa
                assert c.denominator == 1
                assert reflect(rs, i, lam) == lam - alpha * int(c)


@pytest.mark.parametrize("kind", KINDS)
def test_coroot_integrality_and_duality(kind):
    rs = build(kind)
    for k in range(len(rs.positive_roots)):
        alpha = rs.positive_roots[k]
        for lam in [(1, 0), (0, 1), (3, -5), (-2, 7)]:
            assert rs.coroot(k, lam) == 2 * rs.inner(alpha, lam) / rs.inner(alpha, alpha)
    # alpha_i^vee(w_j) = delta_ij
    assert [rs.coroot(0, (1, 0)), rs.coroot(0, (0, 1)), rs.coroot(1, (1, 0)), rs.coroot(1, (0, 1))] == [1, 0, 0, 1]


def test_longest_element_actions():
    assert longest_element(build("g2")).matrix == ((-1, 0), (0, -1))
    assert longest_element(build("b2")).matrix == ((-1, 0), (0, -1))
    w0 = longest_element(build("a2"))
    assert apply(w0, (3, 5)) == (-5, -3)


def test_singular_examples():
    g2, b2 = build("g2"), build("b2")
    assert is_singular(g2, (0, 0))
    assert not is_singular(g2, RHO)
    assert [g2.coroot(k, RHO) for k in range(6)] == [1, 1, 4, 5, 2, 3]
    assert is_singular(b2, (-2, 1))


def test_dominant_examples():
    rs = build("a2")
    assert is_dominant(rs, (0, 0))
    assert is_dominant(rs, RHO)
    assert not is_dominant(rs, (-1, 1))


def test_left_weak_order_examples():
    a2 = build("a2")
    e, s1, s2, s21 = (element(a2, w) for w in ([], [1], [2], [2, 1]))
    for w in weyl_group(a2):
        assert left_weak_leq(e, w)
    assert left_weak_leq(s1, s21)
    assert not left_weak_leq(s1, s2)
    assert not left_weak_leq(s21, s1)


def test_left_weak_order_rejects_mixed_types():
    with pytest.raises(ValueError):
        left_weak_leq(element(build("a2"), [1]), element(build("b2"), [1]))


@pytest.mark.parametrize("kind", KINDS)
def test_inverse_and_length(kind):
    rs = build(kind)
    ident = weyl_group(rs)[0]
    for w in weyl_group(rs):
        assert word_matrix(rs, w.word + inverse(w).word) == ident.matrix
        assert inverse(w).length == w.length
        # the canonical word is lexicographically least among reduced words of w
        same = [x for x in _all_words(len(w.word)) if word_matrix(rs, x) == w.matrix]
        assert min(same) == w.word


def _all_words(n):
    out = [()]
    for _ in range(n):
        out = [w + (i,) for w in out for i in (1, 2)]
    return out
