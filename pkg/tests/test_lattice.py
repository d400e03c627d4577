from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nlbundles.errors import ArithmeticFault, LatticeUndefinedError, PreconditionError
from nlbundles.lattice import (
    C,
    H,
    L,
    ZERO,
    ChernData,
    DivisorClass,
    SurfaceClass,
    as_int,
    canonical_class,
    chi_divisor,
    chi_structure,
    count_binom,
    degree,
    genus,
    pair,
    poly_binom,
    riemann_roch_p3,
    twist_chern,
)

ks = st.integers(min_value=2, max_value=12)
coef = st.integers(min_value=-20, max_value=20)
classes = st.builds(DivisorClass, coef, coef)


def S(k):
    return SurfaceClass(k)


def test_binomials():
    assert count_binom(5, 2) == 10
    assert count_binom(2, 3) == 0
    assert count_binom(-1, 3) == 0
    assert poly_binom(-1, 3) == -1
    assert poly_binom(2, 3) == 0
    assert poly_binom(7, 3) == 35


def test_as_int():
    assert as_int(Fraction(6, 3)) == 2
    with pytest.raises(ArithmeticFault):
        as_int(Fraction(1, 2))


@pytest.mark.parametrize("d1, d2, k, expected", [
    (L, L, 4, -2),
    (C, C, 7, 0),
    (H, H, 5, 5),
    (L, C, 3, 2),
])
def test_pair_examples(d1, d2, k, expected):
    assert pair(d1, d2, S(k)) == expected


@pytest.mark.parametrize("d, k, expected", [(L, 6, 1), (C, 6, 5), (2 * L + 3 * C, 4, 11)])
def test_degree_examples(d, k, expected):
    assert degree(d, S(k)) == expected


@pytest.mark.parametrize("k, expected", [(4, (0, 0)), (2, (-2, -2)), (7, (3, 3))])
def test_canonical_class_examples(k, expected):
    assert canonical_class(S(k)).as_tuple() == expected


@pytest.mark.parametrize("d, k, expected", [(L, 9, 0), (C, 4, 1), (C, 5, 3)])
def test_genus_examples(d, k, expected):
    assert genus(d, S(k)) == expected


def test_genus_is_not_validated():
    # two disjoint rulings on the quadric: "genus" -1, returned as is
    assert genus(2 * L, S(2)) == -1
    assert genus(-H, S(2)) == 4


@pytest.mark.parametrize("k, expected", [(2, 1), (4, 2), (5, 5)])
def test_chi_structure_examples(k, expected):
    assert chi_structure(S(k)) == expected


@pytest.mark.parametrize("d, k, expected", [(2 * C, 5, 1), (H, 2, 4), (ZERO, 7, 21)])
def test_chi_divisor_examples(d, k, expected):
    assert chi_divisor(d, S(k)) == expected


@pytest.mark.parametrize("c, expected", [
    (ChernData(1, 0, 0, 0), 1),
    (ChernData(1, 1, 0, 0), 4),
    (ChernData(1, -4, 0, 0), -1),
])
def test_riemann_roch_examples(c, expected):
    assert riemann_roch_p3(c) == expected


def test_riemann_roch_known_bundles():
    # tangent bundle: chi = h0 = 15; null-correlation bundle: chi = 2 - 2 c2 = 0
    assert riemann_roch_p3(ChernData(3, 4, 6, 4)) == 15
    assert riemann_roch_p3(ChernData(2, 0, 1, 0)) == 0
    # O(1) + O(2): c1 = 3, c2 = 2
    assert riemann_roch_p3(ChernData(2, 3, 2, 0)) == 4 + 10


@pytest.mark.parametrize("j", range(-15, 16))
def test_riemann_roch_line_bundles(j):
    chi = riemann_roch_p3(ChernData(1, j, 0, 0))
    if j >= 0:
        assert chi == count_binom(j + 3, 3)
    elif j <= -4:
        assert chi == -count_binom(-j - 1, 3)
    else:
        assert chi == 0


def test_twist_examples():
    assert twist_chern(ChernData(3, 4, 6, 4), -2) == ChernData(3, -2, 2, 0)
    assert twist_chern(ChernData(2, 0, 1, 0), 1) == ChernData(2, 2, 2, 0)
    c = ChernData(3, -1, 5, 7)
    assert twist_chern(c, 0) == c
    with pytest.raises(PreconditionError):
        twist_chern(ChernData(4, 0, 0, 0), 1)


def test_plane_has_no_lattice():
    s = S(1)
    assert not s.has_lattice
    for fn in (lambda: pair(L, L, s), lambda: degree(L, s), lambda: canonical_class(s), lambda: chi_structure(s)):
        with pytest.raises(LatticeUndefinedError):
            fn()
    with pytest.raises(PreconditionError):
        SurfaceClass(0)


def test_canonical_form():
    d = DivisorClass.of(2, 3, 1)
    assert d.as_tuple() == (3, 4)
    assert d.canonical().canonical() == d
    assert DivisorClass.of(j=1) == H


@given(classes, classes, classes, coef, ks)
def test_pair_bilinear_symmetric(d1, d2, d3, n, k):
    s = S(k)
    assert pair(d1, d2, s) == pair(d2, d1, s)
    assert pair(d1 + d2, d3, s) == pair(d1, d3, s) + pair(d2, d3, s)
    assert pair(n * d1, d2, s) == n * pair(d1, d2, s)


@given(ks)
def test_hyperplane_numbers(k):
    s = S(k)
    assert pair(H, H, s) == k
    assert pair(H, C, s) == k - 1
    assert genus(L, s) == 0
    assert genus(C, s) == 1 + Fraction((k - 4) * (k - 1), 2)


@given(ks, st.integers(min_value=0, max_value=30))
def test_chi_of_bC(k, b):
    expected = 1 + count_binom(k - 1, 3) - Fraction((k - 4) * (k - 1) * b, 2)
    assert chi_divisor(b * C, S(k)) == expected


@given(ks, classes)
def test_degree_is_pairing_with_H(k, d):
    s = S(k)
    assert degree(d, s) == pair(d, H, s)


chern = st.builds(
    lambda r, c1, c2, c3: ChernData(r, c1, c2, 0 if r == 2 else c3),
    st.sampled_from([2, 3]), coef, coef, coef,
)


@given(chern, coef, coef)
def test_twist_composes(c, s_, t):
    assert twist_chern(twist_chern(c, s_), t) == twist_chern(c, s_ + t)


@given(coef, coef, st.integers(min_value=-5, max_value=5))
def test_riemann_roch_additive_on_split_bundles(a1, a2, t):
    split = ChernData(2, a1 + a2, a1 * a2, 0)
    total = riemann_roch_p3(ChernData(1, a1 + t, 0)) + riemann_roch_p3(ChernData(1, a2 + t, 0))
    assert riemann_roch_p3(twist_chern(split, t)) == total


@given(coef, coef, coef)
def test_riemann_roch_additive_rank3(a1, a2, a3):
    split = ChernData(3, a1 + a2 + a3, a1 * a2 + a1 * a3 + a2 * a3, a1 * a2 * a3)
    assert riemann_roch_p3(split) == sum(riemann_roch_p3(ChernData(1, x, 0)) for x in (a1, a2, a3))
