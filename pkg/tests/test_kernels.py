"""The compiled kernels must agree with the pure-Python fallback bit for bit."""

import random

import pytest

from ahexp import _kernels

pure = _kernels.get_backend("python")
try:
    fast = _kernels.get_backend("cython")
except ImportError:
    fast = None

needs_ext = pytest.mark.skipif(fast is None, reason="compiled kernels not built")
PRIMES = [2, 3, 5, 7, 101, 65537, 2**31 - 1]


def rand_vec(rng, p, n, unit=False):
    v = [rng.randrange(p) for _ in range(n)]
    if unit:
        v[0] = rng.randrange(1, p)
    return v


@needs_ext
@pytest.mark.parametrize("p", PRIMES)
def test_univariate_parity(p):
    rng = random.Random(p)
    for n in (0, 1, 5, 40):
        a, b = rand_vec(rng, p, n + 1, True), rand_vec(rng, p, n + 1)
        assert fast.mul_trunc(a, b, p, n) == pure.mul_trunc(a, b, p, n)
        assert fast.inv_trunc(a, p, n) == pure.inv_trunc(a, p, n)


@needs_ext
@pytest.mark.parametrize("p", PRIMES)
def test_bivariate_parity(p):
    rng = random.Random(p + 1)
    for T in (0, 1, 4, 12):
        size = (T + 1) * (T + 2) // 2
        a, b = rand_vec(rng, p, size, True), rand_vec(rng, p, size)
        f, g = rand_vec(rng, p, T + 1), rand_vec(rng, p, T + 1)
        assert fast.bi_mul(a, b, p, T) == pure.bi_mul(a, b, p, T)
        assert fast.bi_inv(a, p, T) == pure.bi_inv(a, p, T)
        assert fast.bi_subst_sum(f, p, T) == pure.bi_subst_sum(f, p, T)
        assert fast.bi_outer(f, g, p, T) == pure.bi_outer(f, g, p, T)


@pytest.mark.parametrize("name", ["python"] + (["cython"] if fast else []))
def test_inverse_of_nonunit_raises(name):
    k = _kernels.get_backend(name)
    with pytest.raises(ZeroDivisionError):
        k.inv_trunc([0, 1], 5, 3)
    with pytest.raises(ZeroDivisionError):
        k.bi_inv([0, 1, 1], 5, 1)


def test_large_prime_uses_pure_kernels():
    p = 2**61 - 1
    a = [1, p - 1]
    assert _kernels.mul_trunc(a, a, p, 2) == [1, p - 2, 1]


def test_unknown_backend():
    with pytest.raises(ValueError):
        _kernels.get_backend("fortran")
