"""Series in two variables over F_p, truncated by total degree.

Coefficients are stored flat in triangular order: by total degree ``d``, then
by the X-exponent ``i`` ascending.  The coefficient of ``X**i * Y**j`` lives at
``d*(d+1)//2 + i``.
"""

from __future__ import annotations

from . import _kernels
from .errors import ContextMismatch, InternalInconsistency, NonUnitConstantTerm
from .padic import check_prime, p_powers
from .reports import CheckReport
from .series import FpSeries


def tri_index(i: int, j: int) -> int:
    d = i + j
    return d * (d + 1) // 2 + i


def tri_size(T: int) -> int:
    return (T + 1) * (T + 2) // 2


class BiSeries:
    __slots__ = ("p", "trunc", "coeffs")

    def __init__(self, p: int, trunc: int, coeffs=None):
        check_prime(p)
        n = tri_size(trunc)
        if coeffs is None:
            coeffs = [0] * n
        coeffs = [int(c) % p for c in coeffs]
        if len(coeffs) != n:
            raise ValueError(f"expected {n} coefficients for total degree {trunc}, got {len(coeffs)}")
        self.p = p
        self.trunc = trunc
        self.coeffs = tuple(coeffs)

    @classmethod
    def _raw(cls, p, trunc, coeffs):
        obj = object.__new__(cls)
        obj.p, obj.trunc, obj.coeffs = p, trunc, tuple(coeffs)
        return obj

    @classmethod
    def from_terms(cls, p: int, trunc: int, terms: dict[tuple[int, int], int]) -> "BiSeries":
        out = [0] * tri_size(trunc)
        for (i, j), c in terms.items():
            if i + j <= trunc:
                out[tri_index(i, j)] = c
        return cls(p, trunc, out)

    @classmethod
    def one(cls, p: int, trunc: int) -> "BiSeries":
        return cls.from_terms(p, trunc, {(0, 0): 1})

    def __getitem__(self, ij):
        i, j = ij
        if i < 0 or j < 0:
            raise IndexError(ij)
        if i + j > self.trunc:
            return 0
        return self.coeffs[tri_index(i, j)]

    def terms(self):
        """Nonzero ``((i, j), c)`` in storage order."""
        out = []
        for d in range(self.trunc + 1):
            base = d * (d + 1) // 2
            for i in range(d + 1):
                c = self.coeffs[base + i]
                if c:
                    out.append(((i, d - i), c))
        return out

    def rows(self) -> list[list[int]]:
        """Coefficients grouped by total degree (row d lists i = 0..d)."""
        return [list(self.coeffs[d * (d + 1) // 2: (d + 1) * (d + 2) // 2])
                for d in range(self.trunc + 1)]

    def is_symmetric(self) -> bool:
        return all(self[i, j] == self[j, i] for (i, j), _ in self.terms())

    def _check(self, other):
        if not isinstance(other, BiSeries):
            raise ContextMismatch(f"BiSeries vs {type(other).__name__}")
        if (self.p, self.trunc) != (other.p, other.trunc):
            raise ContextMismatch(f"(p, T)=({self.p}, {self.trunc}) vs ({other.p}, {other.trunc})")

    def __add__(self, other):
        self._check(other)
        p = self.p
        return BiSeries._raw(p, self.trunc, [(a + b) % p for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        p = self.p
        return BiSeries._raw(p, self.trunc, [(a - b) % p for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        self._check(other)
        return BiSeries._raw(self.p, self.trunc,
                             _kernels.bi_mul(self.coeffs, other.coeffs, self.p, self.trunc))

    def inv(self) -> "BiSeries":
        if self.coeffs[0] == 0:
            raise NonUnitConstantTerm("constant term is 0")
        return BiSeries._raw(self.p, self.trunc,
                             _kernels.bi_inv(self.coeffs, self.p, self.trunc))

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return (self.p, self.trunc, self.coeffs) == (other.p, other.trunc, other.coeffs)

    def __hash__(self):
        return hash((self.p, self.trunc, self.coeffs))

    def __repr__(self):
        body = " + ".join(f"{c}*X^{i}Y^{j}" for (i, j), c in self.terms()) or "0"
        return f"BiSeries({body}; deg<={self.trunc}, F_{self.p})"


def bi_subst_sum(f: FpSeries) -> BiSeries:
    """``f(X+Y)``; binomials are generated mod p by Pascal's rule."""
    return BiSeries._raw(f.p, f.trunc, _kernels.bi_subst_sum(f.coeffs, f.p, f.trunc))


def bi_outer(f: FpSeries, g: FpSeries) -> BiSeries:
    """``f(X) * g(Y)``."""
    f._check(g)
    return BiSeries._raw(f.p, f.trunc, _kernels.bi_outer(f.coeffs, g.coeffs, f.p, f.trunc))


def bi_mul(a: BiSeries, b: BiSeries) -> BiSeries:
    return a * b


def bi_inv(a: BiSeries) -> BiSeries:
    return a.inv()


def defect(f: FpSeries) -> BiSeries:
    """``F(X+Y)**-1 * F(X) * F(Y)`` to total degree T.

    ``F(X+Y)**-1`` is computed as ``(1/F)(X+Y)``: substitution is a ring map,
    so this equals inverting the bivariate series at a fraction of the cost.
    """
    if f.coeffs[0] == 0:
        raise NonUnitConstantTerm("F must have a nonzero constant term")
    return bi_subst_sum(f.inv()) * bi_outer(f, f)


def _violation_order(ij):
    # least total degree first; within a degree the leading monomial in
    # deglex with X > Y, i.e. the smallest Y-exponent
    i, j = ij
    return (i + j, j)


def support_multiple_p(b: BiSeries, p: int | None = None) -> CheckReport:
    p = b.p if p is None else p
    bad = [(ij, c) for ij, c in b.terms() if sum(ij) % p]
    if not bad:
        return CheckReport.ok(b.trunc)
    ij, c = min(bad, key=lambda t: _violation_order(t[0]))
    return CheckReport.fail(b.trunc, ij, c, "degree_not_multiple_of_p")


def is_additive(h: FpSeries) -> CheckReport:
    """Decide ``h(X+Y) == h(X) + h(Y)`` two independent ways.

    (a) compares the bivariate expansions; (b) inspects the support for
    non-powers of p.  The two verdicts must agree.
    """
    p, T = h.p, h.trunc
    lhs = bi_subst_sum(h)
    one = FpSeries.one(p, T)
    rhs = bi_outer(h, one) + bi_outer(one, h)
    mismatch = next(((i, j) for (i, j), _ in (lhs - rhs).terms()), None)
    verdict_a = mismatch is None

    powers = set(p_powers(p, T))
    offender = next((k for k, c in enumerate(h.coeffs) if c and k not in powers), None)
    verdict_b = offender is None

    if verdict_a != verdict_b:
        raise InternalInconsistency(
            f"additivity verdicts disagree: expansion={verdict_a}, support={verdict_b}")
    if verdict_b:
        return CheckReport.ok(T)
    return CheckReport.fail(T, offender, h.coeffs[offender], "support_not_p_power",
                            bivariate_mismatch=mismatch)
