from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ahexp.errors import (
    ContextMismatch,
    DivisionByZero,
    InsufficientPrecision,
    NotIntegral,
    NotPrime,
    PrecisionExhausted,
    ValuationUnderflow,
)
from ahexp.padic import (
    GF,
    PrecisionPolicy,
    check_prime,
    fp_inv,
    padic_div_int,
    padic_in_p_zp,
    padic_mul,
    padic_reduce_modp,
    vp,
    vp_factorial,
)


def ctx(p, N=10, M=10):
    return PrecisionPolicy(p, N, M)


def test_fp_inv_examples():
    assert fp_inv(GF(5)(2)) == GF(5)(3)
    assert fp_inv(GF(7)(1)) == GF(7)(1)
    with pytest.raises(DivisionByZero):
        fp_inv(GF(5)(0))


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_fp_inv_exhaustive(p):
    F = GF(p)
    for a in range(1, p):
        assert fp_inv(F(a)) * F(a) == F.one


def test_not_prime():
    for n in (0, 1, 4, 9, -3):
        with pytest.raises(NotPrime):
            check_prime(n)
    with pytest.raises(NotPrime):
        GF(4)


def test_valuation_helpers():
    assert vp(24, 2) == 3
    assert vp(24, 5) == 0
    assert vp_factorial(10, 2) == 8
    assert vp_factorial(25, 5) == 6


def test_padic_mul_examples():
    c2 = ctx(2)
    a = c2.element(1, 1, 5)
    b = c2.element(-1, 1, 5)
    r = padic_mul(a, b)
    assert (r.val, r.unit) == (0, 1)

    c3 = ctx(3)
    assert padic_mul(c3.zero, c3.element(0, 2, 4)).is_exact_zero

    c5 = ctx(5)
    r = padic_mul(c5.element(0, 2, 4), c5.element(0, 3, 2))
    assert (r.val, r.unit, r.digits) == (0, 6 % 25, 2)


def test_padic_div_int_examples():
    c5 = ctx(5)
    r = padic_div_int(c5.one, 5)
    assert (r.val, r.unit) == (-1, 1)
    r = padic_div_int(c5.element(1, 2, 5), 2)
    assert (r.val, r.unit) == (1, 1)
    with pytest.raises(PrecisionExhausted):
        padic_div_int(ctx(3).element(0, 1, 2), 9)


def test_padic_in_p_zp_examples():
    c5 = ctx(5)
    assert padic_in_p_zp(c5.element(1, 2, 3), 1) is True
    assert padic_in_p_zp(c5.element(0, 1, 3), 1) is False
    assert padic_in_p_zp(ctx(2).zero, 1) is True


def test_in_p_zp_bounded_zero_is_undecided():
    c = ctx(3)
    assert c.bounded_zero(4).in_p_zp(2)
    with pytest.raises(InsufficientPrecision):
        c.bounded_zero(1).in_p_zp(2)


def test_padic_reduce_modp_examples():
    assert padic_reduce_modp(ctx(5).from_int(7)) == GF(5)(2)
    assert padic_reduce_modp(ctx(3).element(2, 1, 4)) == GF(3)(0)
    with pytest.raises(NotIntegral):
        padic_reduce_modp(ctx(2).element(-1, 1, 4))


def test_valuation_floor():
    c = PrecisionPolicy(5, 6, 1)
    c.one.div_int(5)
    with pytest.raises(ValuationUnderflow):
        c.one.div_int(25)


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        ctx(2).one + ctx(3).one


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        ctx(5).zero.inv()


# big-integer oracle: arithmetic mod p^k agrees with Python integers

PRIMES = st.sampled_from([2, 3, 5, 7])
nonzero = st.integers(-10**6, 10**6).filter(bool)


@given(PRIMES, nonzero, nonzero)
def test_mul_matches_rationals(p, a, b):
    c = ctx(p, N=12)
    x, y = c.from_int(a), c.from_int(b)
    assert (x * y).agrees_with(a * b)


@given(PRIMES, nonzero, nonzero)
def test_add_matches_rationals(p, a, b):
    c = ctx(p, N=12)
    s = c.from_int(a) + c.from_int(b)
    if a + b == 0:
        assert s.digits == 0
    else:
        assert s.agrees_with(a + b)


@given(PRIMES, nonzero, st.integers(1, 10**4))
def test_div_int_matches_rationals(p, a, j):
    c = ctx(p, N=20, M=20)
    assert c.from_int(a).div_int(j).agrees_with(Fraction(a, j))


@given(PRIMES, nonzero, nonzero, nonzero)
def test_ultrametric(p, a, b, d):
    c = ctx(p, N=12)
    x, y = c.from_fraction(Fraction(a, d)), c.from_int(b)
    s = x + y
    if s.digits:
        assert s.val >= min(x.val, y.val)


@given(PRIMES, nonzero, nonzero)
def test_fraction_lift_roundtrip(p, a, b):
    c = ctx(p, N=15, M=40)
    q = Fraction(a, b)
    x = c.from_fraction(q)
    assert x.agrees_with(q)
    assert c.from_fraction(x.lift()) == x


@pytest.mark.parametrize("p", [2, 3])
def test_mul_exhaustive_small(p):
    # every pair of units with 3 digits, against the integers mod p^3
    c = ctx(p, N=3)
    mod = p**3
    units = [u for u in range(mod) if u % p]
    for u in units:
        for w in units:
            r = c.element(0, u, 3) * c.element(1, w, 3)
            assert (r.val, r.unit, r.digits) == (1, u * w % mod, 3)


@given(PRIMES, nonzero)
def test_reduce_modp_matches_integer(p, a):
    assert ctx(p).from_int(a).reduce_modp() == GF(p)(a % p)


def test_precision_policy_sizing():
    pol = PrecisionPolicy.for_trunc(2, 60)
    assert pol.guard_ok(60)
    assert pol.N >= 2 * vp_factorial(60, 2)
    assert pol.doubled().N == 2 * pol.N
