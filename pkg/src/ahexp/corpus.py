"""Seeded random test vectors.

All draws go through :class:`random.Random` (Mersenne Twister, integer
seeds), whose output for a given seed is fixed across platforms.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .charp import synthesize
from .series import FpSeries

RNG_ID = "python-random-mt19937"


def rng_for(seed: int) -> random.Random:
    return random.Random(seed)


def random_g(rng: random.Random, p: int, m: int) -> FpSeries:
    return FpSeries(p, [1] + [rng.randrange(p) for _ in range(m)], m)


def random_property(rng: random.Random, p: int, T: int):
    """``(c, g, synthesize(c, g, T))`` with c and g drawn uniformly."""
    c = rng.randrange(p)
    g = random_g(rng, p, T // p)
    return c, g, synthesize(c, g, T)


def random_arbitrary(rng: random.Random, p: int, T: int) -> FpSeries:
    return FpSeries(p, [1] + [rng.randrange(p) for _ in range(T)], T)


def _small_zp(rng: random.Random, p: int) -> Fraction:
    # a p-adic integer: small numerator over a denominator prime to p
    den = 1 + p * rng.randrange(3)
    return Fraction(rng.randrange(-p * p, p * p + 1), den)


def random_cond2(rng: random.Random, p: int, T: int) -> list[Fraction]:
    """``[c_1, ..., c_T]`` satisfying all three families of the log-coefficient condition."""
    c = [Fraction(0)] * (T + 1)
    for j in range(1, T + 1):
        if j == 1:
            c[j] = _small_zp(rng, p)
        elif j % p:
            c[j] = p * _small_zp(rng, p) if rng.random() < 0.5 else Fraction(0)
        else:
            c[j] = c[j // p] / p + _small_zp(rng, p)
    return c[1:]


VIOLATION_FAMILIES = ("c1_not_integral", "cj_not_in_pZp", "p_cpj_minus_cj")


def violation_sites(p: int, T: int, family: str) -> list[int]:
    if family == "c1_not_integral":
        return [1] if T >= 1 else []
    if family == "cj_not_in_pZp":
        return [j for j in range(2, T + 1) if j % p]
    if family == "p_cpj_minus_cj":
        return [j for j in range(1, T // p + 1)]
    raise ValueError(family)


def break_cond2(cs: list[Fraction], p: int, family: str, j: int) -> list[Fraction]:
    """Break exactly one membership of the log-coefficient condition at index ``j``.

    The perturbation ``delta`` at index ``k`` is propagated as
    ``delta / p**i`` to ``p**i * k`` so that every ``p c_{pj} - c_j`` away
    from the target is unchanged.
    """
    T = len(cs)
    c = [Fraction(0)] + list(cs)
    if family == "c1_not_integral":
        k, delta = 1, Fraction(1, p)
    elif family == "cj_not_in_pZp":
        k, delta = j, Fraction(1)
    elif family == "p_cpj_minus_cj":
        k, delta = p * j, Fraction(1, p)
    else:
        raise ValueError(family)
    while k <= T:
        c[k] += delta
        k *= p
        delta /= p
    return c[1:]


def random_violator(rng: random.Random, p: int, T: int):
    """``(family, j, coefficients)`` with one membership of the log-coefficient condition broken."""
    cs = random_cond2(rng, p, T)
    families = [f for f in VIOLATION_FAMILIES if violation_sites(p, T, f)]
    family = rng.choice(families)
    j = rng.choice(violation_sites(p, T, family))
    return family, j, break_cond2(cs, p, family, j)
