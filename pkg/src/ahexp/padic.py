"""Scalars: the prime field F_p and fixed-precision p-adic numbers.

A finite :class:`PadicNum` is stored in floating-valuation form
``p**val * unit`` where ``unit`` is known modulo ``p**digits``.  Two kinds of
zero exist:

* the *exact* zero, ``val == inf``, which absorbs products and is the additive
  identity;
* a *bounded* zero ``O(p**val)`` with ``digits == 0``, produced when a
  subtraction cancels every known digit.  Its true valuation is only known to
  be ``>= val``.

Precision accounting is pessimistic by rule: products keep the smaller digit
count, sums keep the smaller absolute precision, and dividing by an integer
``j`` costs ``v_p(j)`` digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    ContextMismatch,
    DivisionByZero,
    InsufficientPrecision,
    NotIntegral,
    NotPrime,
    PrecisionExhausted,
    ValuationUnderflow,
)

INF = math.inf


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def check_prime(p) -> int:
    if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
        raise NotPrime(f"{p!r} is not a prime")
    return p


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_factorial(n: int, p: int) -> int:
    # Legendre's formula
    v, q = 0, p
    while q <= n:
        v += n // q
        q *= p
    return v


def ceil_log(p: int, n: int) -> int:
    """Smallest e >= 0 with p**e >= n."""
    e, q = 0, 1
    while q < n:
        q *= p
        e += 1
    return e


def floor_log(p: int, n: int) -> int:
    """Largest e with p**e <= n (n >= 1)."""
    e, q = 0, p
    while q <= n:
        q *= p
        e += 1
    return e


def p_powers(p: int, limit: int) -> list[int]:
    """All p**i <= limit, ascending."""
    out, q = [], 1
    while q <= limit:
        out.append(q)
        q *= p
    return out


# ---------------------------------------------------------------------------
# F_p


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        check_prime(self.p)

    def __call__(self, value: int) -> "FpElem":
        return FpElem(value % self.p, self)

    @property
    def zero(self) -> "FpElem":
        return FpElem(0, self)

    @property
    def one(self) -> "FpElem":
        return FpElem(1 % self.p, self)

    def __repr__(self):
        return f"GF({self.p})"


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


@dataclass(frozen=True)
class FpElem:
    value: int
    field: PrimeField

    @property
    def p(self) -> int:
        return self.field.p

    def _other(self, other) -> int:
        if isinstance(other, FpElem):
            if other.field.p != self.field.p:
                raise ContextMismatch(f"F_{self.p} vs F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FpElem((self.value + o) % self.p, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FpElem((self.value - o) % self.p, self.field)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FpElem((o - self.value) % self.p, self.field)

    def __neg__(self):
        return FpElem(-self.value % self.p, self.field)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FpElem(self.value * o % self.p, self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * fp_inv(FpElem(o, self.field))

    def __pow__(self, n: int):
        if n < 0:
            return fp_inv(self) ** (-n)
        return FpElem(pow(self.value, n, self.p), self.field)

    def __eq__(self, other):
        if isinstance(other, FpElem):
            return self.value == other.value and self.p == other.p
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def fp_inv(a: FpElem) -> FpElem:
    if a.value == 0:
        raise DivisionByZero(f"0 has no inverse in F_{a.p}")
    return FpElem(pow(a.value, -1, a.p), a.field)


# ---------------------------------------------------------------------------
# p-adic numbers


@dataclass(frozen=True)
class PrecisionPolicy:
    """Context for p-adic arithmetic.

    ``N`` is the number of digits given to freshly constructed elements,
    ``M`` the fractional-digit floor (valuations below ``-M`` raise) and
    ``guard`` the digit reserve for divisions by indices up to the truncation
    order.
    """

    p: int
    N: int
    M: int
    guard: int = 2

    def __post_init__(self):
        check_prime(self.p)
        if self.N < 1:
            raise ValueError("N must be positive")
        if self.M < 0:
            raise ValueError("M must be non-negative")

    @classmethod
    def for_trunc(cls, p: int, T: int) -> "PrecisionPolicy":
        """Policy sized for series truncated at degree ``T``.

        Exponentials divide by every index up to ``T`` along a dependency
        chain.  Each division by ``j`` shifts the valuation by ``v_p(j)`` and
        the digit rule charges ``v_p(j)`` again, so the chain costs up to
        ``2 v_p(T!)`` digits of absolute precision.
        """
        check_prime(p)
        guard = ceil_log(p, max(T, 1)) + 2
        n = 2 * vp_factorial(T, p) + 2 * guard
        return cls(p, n, n, guard)

    def guard_ok(self, T: int) -> bool:
        return self.guard >= ceil_log(self.p, max(T, 1)) + 2

    def doubled(self) -> "PrecisionPolicy":
        return PrecisionPolicy(self.p, 2 * self.N, 2 * self.M, self.guard)

    # constructors ------------------------------------------------------

    @property
    def zero(self) -> "PadicNum":
        return PadicNum._make(self, INF, 0, 0)

    @property
    def one(self) -> "PadicNum":
        return self.from_int(1)

    def bounded_zero(self, absprec: int) -> "PadicNum":
        return PadicNum._checked(self, absprec, 0, 0)

    def from_int(self, n: int, digits: int | None = None) -> "PadicNum":
        if n == 0:
            return self.zero
        k = self.N if digits is None else digits
        if k < 1:
            raise PrecisionExhausted("an element needs at least one digit")
        p = self.p
        v = vp(n, p)
        return PadicNum._checked(self, v, (n // p**v) % p**k, k)

    def from_fraction(self, q, digits: int | None = None) -> "PadicNum":
        q = Fraction(q)
        if q.numerator == 0:
            return self.zero
        k = self.N if digits is None else digits
        if k < 1:
            raise PrecisionExhausted("an element needs at least one digit")
        p = self.p
        a, b = q.numerator, q.denominator
        va, vb = vp(a, p), vp(b, p)
        a //= p**va
        b //= p**vb
        mod = p**k
        return PadicNum._checked(self, va - vb, a * pow(b, -1, mod) % mod, k)

    def element(self, val, unit: int, digits: int) -> "PadicNum":
        """Validated construction from stored fields.

        ``val == inf`` is the exact zero; ``digits == 0`` a bounded zero.
        """
        if val == INF or val == "inf":
            if unit != 0 or digits != 0:
                raise ValueError("exact zero must have unit 0 and digits 0")
            return self.zero
        if digits == 0:
            if unit != 0:
                raise ValueError("bounded zero must have unit 0")
            return self.bounded_zero(val)
        if digits < 0:
            raise ValueError("digits must be >= 0")
        unit %= self.p**digits
        if unit % self.p == 0:
            raise ValueError(f"unit {unit} is divisible by p={self.p}")
        return PadicNum._checked(self, val, unit, digits)


class PadicNum:
    __slots__ = ("ctx", "val", "unit", "digits")

    def __init__(self, ctx, val, unit, digits):
        # Prefer the PrecisionPolicy constructors; this one validates.
        e = ctx.element(val, unit, digits)
        self.ctx, self.val, self.unit, self.digits = ctx, e.val, e.unit, e.digits

    @classmethod
    def _make(cls, ctx, val, unit, digits):
        obj = object.__new__(cls)
        obj.ctx = ctx
        obj.val = val
        obj.unit = unit
        obj.digits = digits
        return obj

    @classmethod
    def _checked(cls, ctx, val, unit, digits):
        if val < -ctx.M:
            raise ValuationUnderflow(f"valuation {val} below floor -{ctx.M}")
        return cls._make(ctx, val, unit, digits)

    # inspection --------------------------------------------------------

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def is_exact_zero(self) -> bool:
        return self.val == INF

    @property
    def is_bounded_zero(self) -> bool:
        return self.digits == 0 and self.val != INF

    @property
    def absprec(self):
        return self.val + self.digits

    def valuation(self) -> int:
        """Certified valuation of a nonzero element."""
        if self.val == INF:
            return INF
        if self.digits == 0:
            raise InsufficientPrecision(f"valuation only known to be >= {self.val}")
        return self.val

    def in_p_zp(self, s: int = 1) -> bool:
        """Certified membership in ``p**s Z_p``."""
        if self.val >= s:
            return True
        if self.digits == 0:
            raise InsufficientPrecision(
                f"cannot decide membership in p^{s}Z_p: element is O(p^{self.val})"
            )
        return False

    def reduce_modp(self) -> FpElem:
        F = GF(self.ctx.p)
        if self.val == INF:
            return F.zero
        if self.digits == 0:
            if self.val >= 1:
                return F.zero
            raise InsufficientPrecision(f"O(p^{self.val}) has undecided residue")
        if self.val < 0:
            raise NotIntegral(f"valuation {self.val} < 0")
        if self.val >= 1:
            return F.zero
        return F(self.unit)

    def lift(self) -> Fraction:
        """The rational p**val * unit (0 for either zero)."""
        if self.digits == 0:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.ctx.p) ** self.val

    def agrees_with(self, q) -> bool:
        """True if the rational ``q`` is consistent with every known digit."""
        q = Fraction(q)
        if q == 0:
            return self.digits == 0
        if self.val == INF:
            return False
        k = max(1, self.absprec - _val_of(q, self.ctx.p))
        return (self - self.ctx.from_fraction(q, k)).digits == 0

    # arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "PadicNum":
        if isinstance(other, PadicNum):
            if other.ctx.p != self.ctx.p:
                raise ContextMismatch(f"p={self.ctx.p} vs p={other.ctx.p}")
            return other
        if isinstance(other, int):
            return self.ctx.from_int(other)
        if isinstance(other, Fraction):
            return self.ctx.from_fraction(other)
        raise TypeError(f"cannot combine PadicNum with {type(other).__name__}")

    def __add__(self, other):
        b = self._coerce(other)
        if self.val == INF:
            return b
        if b.val == INF:
            return self
        ctx = self.ctx
        p = ctx.p
        prec = min(self.val + self.digits, b.val + b.digits)
        v0 = self.val if self.val < b.val else b.val
        if prec <= v0:
            return PadicNum._checked(ctx, prec, 0, 0)
        s = self.unit * p ** (self.val - v0) + b.unit * p ** (b.val - v0)
        s %= p ** (prec - v0)
        if s == 0:
            return PadicNum._checked(ctx, prec, 0, 0)
        w = 0
        while s % p == 0:
            s //= p
            w += 1
        return PadicNum._checked(ctx, v0 + w, s, prec - v0 - w)

    __radd__ = __add__

    def __neg__(self):
        if self.digits == 0:
            return self
        return PadicNum._make(self.ctx, self.val, -self.unit % self.ctx.p**self.digits, self.digits)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        b = self._coerce(other)
        ctx = self.ctx
        if self.val == INF or b.val == INF:
            return ctx.zero
        v = self.val + b.val
        if self.digits == 0 or b.digits == 0:
            return PadicNum._checked(ctx, v, 0, 0)
        k = self.digits if self.digits < b.digits else b.digits
        return PadicNum._checked(ctx, v, self.unit * b.unit % ctx.p**k, k)

    __rmul__ = __mul__

    def mul_int(self, n: int) -> "PadicNum":
        """Multiply by an exact integer (no digit loss)."""
        ctx = self.ctx
        if n == 0 or self.val == INF:
            return ctx.zero
        p = ctx.p
        vn = vp(n, p)
        if self.digits == 0:
            return PadicNum._checked(ctx, self.val + vn, 0, 0)
        n //= p**vn
        return PadicNum._make(ctx, self.val + vn, self.unit * n % p**self.digits, self.digits)

    def div_int(self, j: int) -> "PadicNum":
        """Divide by a positive integer, losing ``v_p(j)`` digits."""
        if j < 1:
            raise ValueError("divisor must be a positive integer")
        ctx = self.ctx
        if self.val == INF:
            return self
        p = ctx.p
        vj = vp(j, p)
        if self.digits == 0:
            return PadicNum._checked(ctx, self.val - vj, 0, 0)
        k = self.digits - vj
        if k <= 0:
            raise PrecisionExhausted(
                f"dividing by {j} costs {vj} digits of {self.digits} known"
            )
        mod = p**k
        u = self.unit * pow(j // p**vj, -1, mod) % mod
        return PadicNum._checked(ctx, self.val - vj, u, k)

    def inv(self) -> "PadicNum":
        if self.val == INF:
            raise DivisionByZero("exact zero has no inverse")
        if self.digits == 0:
            raise InsufficientPrecision(f"cannot invert O(p^{self.val})")
        mod = self.ctx.p**self.digits
        return PadicNum._checked(self.ctx, -self.val, pow(self.unit, -1, mod), self.digits)

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        result = self.ctx.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # identity ----------------------------------------------------------

    def _key(self):
        return (self.ctx.p, self.val, self.unit, self.digits)

    def __eq__(self, other):
        if isinstance(other, PadicNum):
            return self._key() == other._key()
        return NotImplemented

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.val == INF:
            return "0"
        if self.digits == 0:
            return f"O({self.ctx.p}^{self.val})"
        return f"{self.ctx.p}^{self.val}*{self.unit} + O({self.ctx.p}^{self.absprec})"


def _val_of(q: Fraction, p: int) -> int:
    return vp(q.numerator, p) - vp(q.denominator, p)


# Functional spellings of the scalar operations.


def padic_mul(a: PadicNum, b: PadicNum) -> PadicNum:
    return a * b


def padic_div_int(a: PadicNum, j: int) -> PadicNum:
    return a.div_int(j)


def padic_in_p_zp(a: PadicNum, s: int = 1) -> bool:
    return a.in_p_zp(s)


def padic_reduce_modp(a: PadicNum) -> FpElem:
    return a.reduce_modp()
