from fractions import Fraction

import pytest
import sympy

from ahexp.artinhasse import (
    ah_build,
    ah_rational_oracle,
    ep_bar,
    gerstenhaber_rational,
    gerstenhaber_series,
    logderiv_target,
    reduce_rational,
)
from ahexp.errors import IntegralityViolation, NotPrime, PrecisionExhausted
from ahexp.padic import PrecisionPolicy
from ahexp.series import FpSeries

X = sympy.Symbol("X")


def sympy_coeffs(expr, T):
    poly = sympy.series(expr, X, 0, T + 1).removeO()
    return [Fraction(str(poly.coeff(X, k))) for k in range(T + 1)]


def test_p2_example():
    ah = ah_build(2, 4)
    assert ah.exact.agrees_with([1, 1, 1, Fraction(2, 3), Fraction(2, 3)])
    assert ah.modp.coeffs == (1, 1, 1, 0, 0)
    assert ah_rational_oracle(2, 4) == [1, 1, 1, Fraction(2, 3), Fraction(2, 3)]


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_oracle_matches_sympy(p):
    T = 20
    i, expo = 0, 0
    while p**i <= T:
        expo += X ** (p**i) / sympy.Integer(p**i)
        i += 1
    assert ah_rational_oracle(p, T) == sympy_coeffs(sympy.exp(expo), T)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_two_paths_agree(p):
    T = 40
    ah = ah_build(p, T)
    oracle = ah_rational_oracle(p, T)
    assert ah.exact.agrees_with(oracle)
    assert list(ah.modp.coeffs) == [reduce_rational(q, p) for q in oracle]
    assert ep_bar(p, T) == ah.modp


def test_build_errors():
    with pytest.raises(NotPrime):
        ah_build(6, 5)
    with pytest.raises(PrecisionExhausted):
        ah_build(2, 64, PrecisionPolicy(2, 200, 200, guard=1))


def test_reduce_rational():
    assert reduce_rational(Fraction(2, 3), 5) == 4
    with pytest.raises(IntegralityViolation):
        reduce_rational(Fraction(1, 5), 5)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_gerstenhaber_matches_sympy(p):
    T = 15
    denom = sum(X ** (m * p) / sympy.factorial(m * p) for m in range(T // p + 1))
    assert gerstenhaber_rational(p, T) == sympy_coeffs(sympy.exp(X) / denom, T)
    assert gerstenhaber_series(p, T).trunc == T


def test_gerstenhaber_small():
    assert gerstenhaber_series(2, 3).coeffs == (1, 1, 0, 1)


def test_logderiv_target_examples():
    assert logderiv_target(2, 8) == FpSeries.from_terms(2, 8, {0: 1, 1: 1, 3: 1, 7: 1})
    assert logderiv_target(5, 4) == FpSeries.from_terms(5, 4, {0: 1, 4: 1})
    assert logderiv_target(3, 1) == FpSeries.one(3, 1)
