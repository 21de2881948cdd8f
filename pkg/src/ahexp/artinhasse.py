"""Artin-Hasse exponential, built two independent ways.

The production path exponentiates ``sum_i X**(p**i) / p**i`` in p-adic
arithmetic.  The oracle path never touches p-adic precision: it runs the
recurrence ``n a_n = sum_{p**i <= n} a_{n - p**i}`` (from
``E' = E * sum_i X**(p**i - 1)``) over exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import IntegralityViolation, PrecisionExhausted
from .padic import PrecisionPolicy, check_prime, p_powers
from .series import FpSeries, PadicSeries, ser_exp


@dataclass(frozen=True)
class AHSeries:
    exact: PadicSeries
    modp: FpSeries
    p: int
    trunc: int


def ah_exponent(ctx: PrecisionPolicy, T: int) -> PadicSeries:
    """``sum_{p**i <= T} X**(p**i) / p**i``; higher terms cannot reach degree T."""
    return PadicSeries.from_terms(ctx, T, {q: Fraction(1, q) for q in p_powers(ctx.p, T)})


def ah_build(p: int, T: int, policy: PrecisionPolicy | None = None) -> AHSeries:
    check_prime(p)
    if T < 0:
        raise ValueError("truncation order must be >= 0")
    ctx = policy or PrecisionPolicy.for_trunc(p, T)
    if ctx.p != p:
        raise ValueError(f"policy is for p={ctx.p}, not {p}")
    if not ctx.guard_ok(T):
        raise PrecisionExhausted(f"guard {ctx.guard} too small for truncation {T}")
    return _ah_build(p, T, ctx)


@lru_cache(maxsize=64)
def _ah_build(p, T, ctx):
    exact = ser_exp(ah_exponent(ctx, T))
    k = exact.first_nonintegral()
    if k is not None:
        raise IntegralityViolation(f"E_{p} coefficient {k} certified outside Z_{p}: {exact[k]!r}")
    return AHSeries(exact, exact.reduce_modp(), p, T)


def ep_bar(p: int, T: int) -> FpSeries:
    """Reduction of E_p modulo p, truncated at T."""
    return ah_build(p, T).modp


def ah_rational_oracle(p: int, T: int) -> list[Fraction]:
    check_prime(p)
    a = [Fraction(1)]
    for n in range(1, T + 1):
        s = sum((a[n - q] for q in p_powers(p, n)), Fraction(0))
        a.append(s / n)
    for n, q in enumerate(a):
        if q.denominator % p == 0:
            raise IntegralityViolation(f"oracle coefficient {n} = {q} is not {p}-integral")
    return a


def reduce_rational(q: Fraction, p: int) -> int:
    q = Fraction(q)
    if q.denominator % p == 0:
        raise IntegralityViolation(f"{q} is not {p}-integral")
    return q.numerator * pow(q.denominator, -1, p) % p


def _q_mul(a, b, T):
    out = [Fraction(0)] * (T + 1)
    for i, x in enumerate(a[: T + 1]):
        if x:
            for j, y in enumerate(b[: T + 1 - i]):
                out[i + j] += x * y
    return out


def _q_inv(a, T):
    out = [1 / Fraction(a[0])]
    for n in range(1, T + 1):
        s = sum((a[k] * out[n - k] for k in range(1, min(n, len(a) - 1) + 1)), Fraction(0))
        out.append(-s * out[0])
    return out


def gerstenhaber_rational(p: int, T: int) -> list[Fraction]:
    """``exp(X) / sum_{m >= 0} X**(m p) / (m p)!`` over the rationals."""
    check_prime(p)
    e = [Fraction(1, factorial(n)) for n in range(T + 1)]
    d = [Fraction(1, factorial(n)) if n % p == 0 else Fraction(0) for n in range(T + 1)]
    return _q_mul(e, _q_inv(d, T), T)


def gerstenhaber_series(p: int, T: int) -> FpSeries:
    return FpSeries(p, [reduce_rational(q, p) for q in gerstenhaber_rational(p, T)], T)


def logderiv_target(p: int, T: int) -> FpSeries:
    """``sum_i X**(p**i - 1)`` truncated at T."""
    check_prime(p)
    return FpSeries.from_terms(p, T, {q - 1: 1 for q in p_powers(p, T + 1)})
