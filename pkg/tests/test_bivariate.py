from math import comb

import pytest
import sympy
from hypothesis import given, strategies as st

from ahexp.bivariate import (
    BiSeries,
    bi_inv,
    bi_mul,
    bi_subst_sum,
    defect,
    is_additive,
    support_multiple_p,
)
from ahexp.series import FpSeries

X, Y = sympy.symbols("X Y")


def truncated(expr, p, T):
    """Terms of total degree <= T of a polynomial, reduced mod p."""
    poly = sympy.Poly(sympy.expand(expr), X, Y)
    terms = {}
    for (i, j), c in poly.terms():
        if i + j <= T and int(c) % p:
            terms[(i, j)] = int(c) % p
    return BiSeries.from_terms(p, T, terms)


def defect_oracle(coeffs, p, T):
    """Independent expansion: 1/F(X+Y) as a geometric series in 1 - F(X+Y)."""
    F = lambda v: sum(c * v**k for k, c in enumerate(coeffs))  # noqa: E731
    u = sympy.expand(1 - F(X + Y))
    inv, power = sympy.Integer(1), sympy.Integer(1)
    for _ in range(T):
        power = truncated(power * u, p, T)
        power = sum(c * X**i * Y**j for (i, j), c in power.terms())
        inv += power
    return truncated(inv * F(X) * F(Y), p, T)


def test_subst_sum_examples():
    T = 5
    for p in (2, 3, 5):
        f = FpSeries(p, [1, 1], T)
        assert bi_subst_sum(f) == BiSeries.from_terms(p, T, {(0, 0): 1, (1, 0): 1, (0, 1): 1})
    assert bi_subst_sum(FpSeries(2, [0, 0, 1], T)) == BiSeries.from_terms(2, T, {(2, 0): 1, (0, 2): 1})
    assert bi_subst_sum(FpSeries(3, [0, 0, 0, 1], T)) == BiSeries.from_terms(3, T, {(3, 0): 1, (0, 3): 1})


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_subst_sum_matches_lucas(p):
    T = 30
    for n in range(T + 1):
        b = bi_subst_sum(FpSeries.from_terms(p, T, {n: 1}))
        for i in range(n + 1):
            lucas = 1
            a, c = n, i
            while a or c:
                lucas = lucas * comb(a % p, c % p) % p
                a, c = a // p, c // p
            assert b[i, n - i] == lucas == comb(n, i) % p


def test_inv_examples():
    assert bi_inv(BiSeries.one(3, 6)) == BiSeries.one(3, 6)
    T = 7
    a = BiSeries.from_terms(2, T, {(0, 0): 1, (1, 0): 1, (0, 1): 1})
    expected = truncated(sum((X + Y) ** k for k in range(T + 1)), 2, T)
    assert bi_inv(a) == expected


def test_defect_examples():
    assert defect(FpSeries.one(5, 6)) == BiSeries.one(5, 6)
    d = defect(FpSeries(2, [1, 1], 3))
    assert d == BiSeries.from_terms(2, 3, {(0, 0): 1, (1, 1): 1, (2, 1): 1, (1, 2): 1})


@pytest.mark.parametrize("p,coeffs", [(2, [1, 1]), (3, [1, 2, 0, 1]), (5, [1, 3, 4, 0, 2, 1]), (2, [1, 0, 1, 1])])
def test_defect_matches_expansion_oracle(p, coeffs):
    T = 6
    assert defect(FpSeries(p, coeffs, T)) == defect_oracle(coeffs, p, T)


def test_support_multiple_p_examples():
    assert support_multiple_p(BiSeries.from_terms(5, 6, {(0, 0): 1, (2, 3): 1}), 5).passed
    rep = support_multiple_p(BiSeries.from_terms(3, 4, {(0, 0): 1, (1, 1): 1}), 3)
    assert not rep.passed and rep.first_violation[0] == (1, 1)
    rep = support_multiple_p(defect(FpSeries(2, [1, 1], 5)), 2)
    assert rep.first_violation[0] == (2, 1)


def test_is_additive_examples():
    assert is_additive(FpSeries.from_terms(3, 10, {1: 1, 3: 2, 9: 1})).passed
    rep = is_additive(FpSeries.from_terms(2, 6, {1: 1, 3: 1}))
    assert not rep.passed and rep.first_violation[0] == 3
    assert is_additive(FpSeries(5, [0], 8)).passed


def test_is_additive_exhaustive_p2():
    # both internal verdicts are compared on all 2^8 series with zero constant term
    import itertools
    T = 8
    n_pass = 0
    for tail in itertools.product(range(2), repeat=T):
        h = FpSeries(2, (0,) + tail, T)
        n_pass += is_additive(h).passed
    assert n_pass == 2 ** 4  # free coefficients at degrees 1, 2, 4, 8


@st.composite
def unit_series(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    T = draw(st.integers(1, 9))
    tail = draw(st.lists(st.integers(0, p - 1), min_size=T, max_size=T))
    return FpSeries(p, [1] + tail, T)


@given(unit_series())
def test_defect_is_symmetric(f):
    assert defect(f).is_symmetric()


@given(unit_series(), st.data())
def test_defect_is_multiplicative(f, data):
    tail = data.draw(st.lists(st.integers(0, f.p - 1), min_size=f.trunc, max_size=f.trunc))
    g = FpSeries(f.p, [1] + tail, f.trunc)
    assert defect(f * g) == bi_mul(defect(f), defect(g))


@given(unit_series())
def test_frobenius_series_have_p_supported_defect(f):
    p = f.p
    g = f.plug_xp(p, p * f.trunc)
    assert support_multiple_p(defect(g), p).passed


@given(unit_series())
def test_freshmans_dream(f):
    p = f.p
    T = p * f.trunc
    lhs = bi_subst_sum(f.plug_xp(p, T))
    b = bi_subst_sum(f)
    rhs = BiSeries.from_terms(p, T, {(p * i, p * j): c for (i, j), c in b.terms()})
    assert lhs == rhs
