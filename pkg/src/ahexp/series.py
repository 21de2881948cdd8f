"""Truncated univariate power series over F_p or over p-adic numbers.

A series with truncation order ``T`` stores ``a_0 .. a_T`` and is known modulo
``X**(T+1)``.  ``valid`` is the last degree whose coefficient is reliable;
it is ``T`` except after differentiation, where the top coefficient is cleared
to zero and flagged by ``valid = T - 1``.  Comparisons that must not be fooled
by that padding use :meth:`UniSeries.agrees_to`.
"""

from __future__ import annotations

from . import _kernels
from .errors import (
    ConstantTermNotOne,
    ContextMismatch,
    InsufficientPrecision,
    NonUnitConstantTerm,
    NonzeroConstantTerm,
    NotPSupported,
)
from .padic import GF, FpElem, PadicNum, PrecisionPolicy, check_prime


class UniSeries:
    """Shared structure of :class:`FpSeries` and :class:`PadicSeries`."""

    __slots__ = ("coeffs", "trunc", "valid")

    # hooks supplied by subclasses
    def _zero(self):
        raise NotImplementedError

    def _is_zero(self, c) -> bool:
        raise NotImplementedError

    def _mul_int(self, c, k: int):
        raise NotImplementedError

    def _like(self, coeffs, trunc=None, valid=None):
        raise NotImplementedError

    @property
    def p(self) -> int:
        raise NotImplementedError

    # sequence protocol -------------------------------------------------

    def __len__(self):
        return self.trunc + 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def support(self) -> list[int]:
        return [k for k, c in enumerate(self.coeffs) if not self._is_zero(c)]

    def agrees_to(self, other: "UniSeries", degree: int) -> bool:
        return all(self.coeffs[k] == other.coeffs[k] for k in range(degree + 1))

    def first_mismatch(self, other: "UniSeries", degree: int):
        for k in range(degree + 1):
            if self.coeffs[k] != other.coeffs[k]:
                return k
        return None

    def truncate(self, T: int):
        if T > self.trunc:
            raise ValueError(f"cannot extend truncation {self.trunc} to {T}")
        return self._like(self.coeffs[: T + 1], T, min(self.valid, T))

    # structural operations shared by both rings ------------------------

    def derivative(self):
        T = self.trunc
        out = [self._mul_int(self.coeffs[k], k) for k in range(1, T + 1)]
        out.append(self._zero())
        return self._like(out, T, min(self.valid, T) - 1)

    def compose_scale(self, c):
        out = []
        power = None
        for k, a in enumerate(self.coeffs):
            power = self._one_scalar() if k == 0 else power * c
            out.append(a * power)
        return self._like(out)

    def plug_xp(self, p: int | None = None, T: int | None = None):
        """``g(X**p)``, truncated at ``T`` (default: everything ``g`` determines)."""
        p = self.p if p is None else p
        if T is None:
            T = p * self.trunc + p - 1
        if self.trunc < T // p:
            raise ValueError(f"truncation {self.trunc} too small for g(X^{p}) to degree {T}")
        out = [self._zero()] * (T + 1)
        for m in range(T // p + 1):
            out[p * m] = self.coeffs[m]
        return self._like(out, T, min(T, p * self.valid + p - 1))

    def extract_pth(self, p: int | None = None):
        """Inverse of :meth:`plug_xp` on series supported on multiples of ``p``."""
        p = self.p if p is None else p
        for k, c in enumerate(self.coeffs):
            if k % p and not self._is_zero(c):
                raise NotPSupported(k)
        T = self.trunc // p
        return self._like(self.coeffs[::p][: T + 1], T, self.valid // p)

    def _check(self, other):
        if type(other) is not type(self):
            raise ContextMismatch(f"{type(self).__name__} vs {type(other).__name__}")
        if other.trunc != self.trunc:
            raise ContextMismatch(f"truncation {self.trunc} vs {other.trunc}")

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        result = self._like([self._one_scalar()] + [self._zero()] * self.trunc)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result


# ---------------------------------------------------------------------------


class FpSeries(UniSeries):
    """Series over F_p; coefficients are plain ints in ``[0, p)``."""

    __slots__ = ("_p",)

    def __init__(self, p: int, coeffs, trunc: int | None = None, valid: int | None = None):
        check_prime(p)
        coeffs = [int(c) for c in coeffs]
        if trunc is None:
            trunc = max(len(coeffs) - 1, 0)
        if trunc < 0:
            raise ValueError("truncation order must be >= 0")
        coeffs = coeffs[: trunc + 1] + [0] * (trunc + 1 - len(coeffs))
        self._p = p
        self.coeffs = tuple(c % p for c in coeffs)
        self.trunc = trunc
        self.valid = trunc if valid is None else valid

    @classmethod
    def _raw(cls, p, coeffs, trunc, valid):
        obj = object.__new__(cls)
        obj._p = p
        obj.coeffs = tuple(coeffs)
        obj.trunc = trunc
        obj.valid = valid
        return obj

    @classmethod
    def one(cls, p: int, T: int) -> "FpSeries":
        return cls(p, [1], T)

    @classmethod
    def from_terms(cls, p: int, T: int, terms: dict[int, int]) -> "FpSeries":
        out = [0] * (T + 1)
        for k, c in terms.items():
            if k <= T:
                out[k] = c
        return cls(p, out, T)

    @property
    def p(self) -> int:
        return self._p

    @property
    def field(self):
        return GF(self._p)

    def coeff(self, k: int) -> FpElem:
        return self.field(self.coeffs[k])

    def _zero(self):
        return 0

    def _one_scalar(self):
        return 1

    def _is_zero(self, c) -> bool:
        return c == 0

    def _mul_int(self, c, k):
        return c * k % self._p

    def _like(self, coeffs, trunc=None, valid=None):
        T = self.trunc if trunc is None else trunc
        return FpSeries._raw(self._p, [c % self._p for c in coeffs], T,
                             self.valid if valid is None else valid)

    def _check(self, other):
        super()._check(other)
        if other._p != self._p:
            raise ContextMismatch(f"p={self._p} vs p={other._p}")

    def compose_scale(self, c):
        c = int(c) % self._p
        p = self._p
        out, power = [], 1
        for a in self.coeffs:
            out.append(a * power % p)
            power = power * c % p
        return FpSeries._raw(p, out, self.trunc, self.valid)

    def __add__(self, other):
        self._check(other)
        p = self._p
        return FpSeries._raw(p, [(a + b) % p for a, b in zip(self.coeffs, other.coeffs)],
                             self.trunc, min(self.valid, other.valid))

    def __sub__(self, other):
        self._check(other)
        p = self._p
        return FpSeries._raw(p, [(a - b) % p for a, b in zip(self.coeffs, other.coeffs)],
                             self.trunc, min(self.valid, other.valid))

    def __neg__(self):
        p = self._p
        return FpSeries._raw(p, [-a % p for a in self.coeffs], self.trunc, self.valid)

    def __mul__(self, other):
        if isinstance(other, (int, FpElem)):
            c = int(other)
            return FpSeries._raw(self._p, [a * c % self._p for a in self.coeffs],
                                 self.trunc, self.valid)
        self._check(other)
        out = _kernels.mul_trunc(self.coeffs, other.coeffs, self._p, self.trunc)
        return FpSeries._raw(self._p, out, self.trunc, min(self.valid, other.valid))

    __rmul__ = __mul__

    def inv(self) -> "FpSeries":
        if self.coeffs[0] == 0:
            raise NonUnitConstantTerm("constant term is 0 in F_p")
        out = _kernels.inv_trunc(self.coeffs, self._p, self.trunc)
        return FpSeries._raw(self._p, out, self.trunc, self.valid)

    def __eq__(self, other):
        if not isinstance(other, FpSeries):
            return NotImplemented
        return (self._p, self.trunc, self.valid, self.coeffs) == (
            other._p, other.trunc, other.valid, other.coeffs)

    def __hash__(self):
        return hash((self._p, self.trunc, self.valid, self.coeffs))

    def __lt__(self, other):
        # canonical ordering, used to sort enumeration results
        return (self._p, self.trunc, self.coeffs) < (other._p, other.trunc, other.coeffs)

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else ("X" if k == 1 else f"X^{k}")
                coef = "" if (c == 1 and k) else str(c)
                terms.append(coef + ("*" if coef and mono else "") + mono)
        body = " + ".join(terms) or "0"
        return f"{body} + O(X^{self.trunc + 1}) over F_{self._p}"


# ---------------------------------------------------------------------------


class PadicSeries(UniSeries):
    """Series whose coefficients are :class:`PadicNum` in one context."""

    __slots__ = ("ctx",)

    def __init__(self, ctx: PrecisionPolicy, coeffs, trunc: int | None = None,
                 valid: int | None = None):
        coeffs = [self._to_scalar(ctx, c) for c in coeffs]
        if trunc is None:
            trunc = max(len(coeffs) - 1, 0)
        coeffs = coeffs[: trunc + 1] + [ctx.zero] * (trunc + 1 - len(coeffs))
        self.ctx = ctx
        self.coeffs = tuple(coeffs)
        self.trunc = trunc
        self.valid = trunc if valid is None else valid

    @staticmethod
    def _to_scalar(ctx, c):
        if isinstance(c, PadicNum):
            if c.ctx != ctx:
                raise ContextMismatch(f"coefficient context {c.ctx} vs {ctx}")
            return c
        if isinstance(c, int):
            return ctx.from_int(c)
        return ctx.from_fraction(c)

    @classmethod
    def _raw(cls, ctx, coeffs, trunc, valid):
        obj = object.__new__(cls)
        obj.ctx = ctx
        obj.coeffs = tuple(coeffs)
        obj.trunc = trunc
        obj.valid = valid
        return obj

    @classmethod
    def one(cls, ctx: PrecisionPolicy, T: int) -> "PadicSeries":
        return cls(ctx, [1], T)

    @classmethod
    def from_terms(cls, ctx: PrecisionPolicy, T: int, terms: dict) -> "PadicSeries":
        out = [ctx.zero] * (T + 1)
        for k, c in terms.items():
            if k <= T:
                out[k] = cls._to_scalar(ctx, c)
        return cls._raw(ctx, out, T, T)

    @property
    def p(self) -> int:
        return self.ctx.p

    def _zero(self):
        return self.ctx.zero

    def _one_scalar(self):
        return self.ctx.one

    def _is_zero(self, c) -> bool:
        if c.is_exact_zero:
            return True
        if c.digits == 0:
            raise InsufficientPrecision(f"cannot decide whether {c!r} vanishes")
        return False

    def _mul_int(self, c, k):
        return c.mul_int(k)

    def _like(self, coeffs, trunc=None, valid=None):
        return PadicSeries._raw(self.ctx, coeffs, self.trunc if trunc is None else trunc,
                                self.valid if valid is None else valid)

    def _check(self, other):
        super()._check(other)
        if other.ctx != self.ctx:
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")

    def compose_scale(self, c):
        if not isinstance(c, PadicNum):
            c = self._to_scalar(self.ctx, c)
        return super().compose_scale(c)

    def __add__(self, other):
        self._check(other)
        return self._like([a + b for a, b in zip(self.coeffs, other.coeffs)],
                          valid=min(self.valid, other.valid))

    def __sub__(self, other):
        self._check(other)
        return self._like([a - b for a, b in zip(self.coeffs, other.coeffs)],
                          valid=min(self.valid, other.valid))

    def __neg__(self):
        return self._like([-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, PadicNum)):
            return self._like([a * other for a in self.coeffs])
        self._check(other)
        T = self.trunc
        a, b = self.coeffs, other.coeffs
        nz_b = [j for j in range(T + 1) if not b[j].is_exact_zero]
        out = [self.ctx.zero] * (T + 1)
        for i in range(T + 1):
            ai = a[i]
            if ai.is_exact_zero:
                continue
            for j in nz_b:
                if i + j > T:
                    break
                out[i + j] = out[i + j] + ai * b[j]
        return self._like(out, valid=min(self.valid, other.valid))

    __rmul__ = __mul__

    def inv(self) -> "PadicSeries":
        a = self.coeffs
        if a[0].digits == 0:
            raise NonUnitConstantTerm(f"constant term {a[0]!r} is not invertible")
        T = self.trunc
        inv0 = a[0].inv()
        nz = [k for k in range(1, T + 1) if not a[k].is_exact_zero]
        out = [inv0] + [self.ctx.zero] * T
        for n in range(1, T + 1):
            s = self.ctx.zero
            for k in nz:
                if k > n:
                    break
                s = s + a[k] * out[n - k]
            out[n] = -(s * inv0)
        return self._like(out)

    def reduce_modp(self) -> FpSeries:
        return FpSeries._raw(self.p, [c.reduce_modp().value for c in self.coeffs],
                             self.trunc, self.valid)

    def matches(self, other: "PadicSeries", degree: int | None = None) -> bool:
        """Coefficientwise equality up to the digits both sides know."""
        self._check(other)
        degree = min(self.valid, other.valid) if degree is None else degree
        return all((self.coeffs[k] - other.coeffs[k]).digits == 0 for k in range(degree + 1))

    def agrees_with(self, rationals) -> bool:
        """Consistency with an exact rational coefficient list."""
        return all(c.agrees_with(q) for c, q in zip(self.coeffs, rationals))

    def first_nonintegral(self):
        """Least degree with a coefficient certified outside Z_p, else None."""
        for k, c in enumerate(self.coeffs):
            if not c.in_p_zp(0):
                return k
        return None

    def __eq__(self, other):
        if not isinstance(other, PadicSeries):
            return NotImplemented
        return (self.ctx, self.trunc, self.valid, self.coeffs) == (
            other.ctx, other.trunc, other.valid, other.coeffs)

    def __hash__(self):
        return hash((self.ctx, self.trunc, self.valid, self.coeffs))

    def __repr__(self):
        return f"PadicSeries(p={self.p}, T={self.trunc}, {list(self.coeffs)!r})"


# ---------------------------------------------------------------------------
# exp / log (p-adic only)


def _is_exact_one(c: PadicNum) -> bool:
    return c.digits > 0 and c.val == 0 and c.unit == 1


def ser_exp(g: PadicSeries) -> PadicSeries:
    """exp(g) for g with exactly zero constant term.

    Uses ``n f_n = sum_k k g_k f_{n-k}``, which follows from ``f' = g' f``.
    """
    if not isinstance(g, PadicSeries):
        raise TypeError("exp is only defined over p-adic coefficients")
    if not g.coeffs[0].is_exact_zero:
        raise NonzeroConstantTerm(f"constant term {g.coeffs[0]!r} is not exactly 0")
    ctx, T = g.ctx, g.trunc
    kg = [(k, g.coeffs[k].mul_int(k)) for k in range(1, T + 1) if not g.coeffs[k].is_exact_zero]
    f = [ctx.one] + [ctx.zero] * T
    for n in range(1, T + 1):
        s = ctx.zero
        for k, c in kg:
            if k > n:
                break
            s = s + c * f[n - k]
        f[n] = s.div_int(n)
    return PadicSeries._raw(ctx, f, T, g.valid)


def ser_log(f: PadicSeries) -> PadicSeries:
    """log(f) for f with constant term exactly 1, as the integral of f'/f."""
    if not isinstance(f, PadicSeries):
        raise TypeError("log is only defined over p-adic coefficients")
    if not _is_exact_one(f.coeffs[0]):
        raise ConstantTermNotOne(f"constant term {f.coeffs[0]!r} is not 1")
    ctx, T = f.ctx, f.trunc
    inv = f.inv().coeffs
    df = [(k - 1, f.coeffs[k].mul_int(k)) for k in range(1, T + 1)
          if not f.coeffs[k].is_exact_zero]
    out = [ctx.zero] * (T + 1)
    for n in range(1, T + 1):
        # coefficient n-1 of f' * (1/f)
        s = ctx.zero
        for i, c in df:
            if i > n - 1:
                break
            s = s + c * inv[n - 1 - i]
        out[n] = s.div_int(n)
    return PadicSeries._raw(ctx, out, T, f.valid)


# ---------------------------------------------------------------------------
# functional spellings


def ser_add(f, g):
    return f + g


def ser_mul(f, g):
    return f * g


def ser_inv(f):
    return f.inv()


def ser_derivative(f):
    return f.derivative()


def ser_compose_scale(f, c):
    return f.compose_scale(c)


def ser_plug_xp(g, p: int, T: int | None = None):
    return g.plug_xp(p, T)


def ser_extract_pth(f, p: int):
    return f.extract_pth(p)
