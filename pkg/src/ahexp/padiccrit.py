"""p-adic integrality criteria and the route from Z_p back to F_p.

Checks take p-adic series at whatever precision they carry and raise
:class:`InsufficientPrecision` rather than guess.  Pipelines that start from
exact data (an F_p series, rational coefficients) go through
:func:`run_with_retry`, which re-runs them at doubled precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, TypeVar

from .artinhasse import ah_build
from .bivariate import is_additive
from .charp import DecompResult, theorem_check
from .errors import (
    ConstantTermNotOne,
    InternalInconsistency,
    NotPSupported,
    PrecisionError,
    PreconditionViolated,
    PropertyAbsent,
)
from .padic import PadicNum, PrecisionPolicy, p_powers
from .reports import CheckReport
from .series import FpSeries, PadicSeries, _is_exact_one, ser_exp, ser_log

R = TypeVar("R")

MAX_RETRIES = 3


def run_with_retry(fn: Callable[[PrecisionPolicy], R], policy: PrecisionPolicy,
                   retries: int = MAX_RETRIES) -> R:
    """Call ``fn(policy)``, doubling the precision after each precision failure."""
    for attempt in range(retries + 1):
        try:
            return fn(policy)
        except PrecisionError:
            if attempt == retries:
                raise
            policy = policy.doubled()
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class LogCoefficients:
    """``c_1 .. c_T`` of ``G = log F``; ``c[0]`` is an exact-zero placeholder."""

    ctx: PrecisionPolicy
    c: tuple[PadicNum, ...]

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def trunc(self) -> int:
        return len(self.c) - 1

    def __getitem__(self, j: int) -> PadicNum:
        return self.c[j]

    @classmethod
    def from_series(cls, g: PadicSeries) -> "LogCoefficients":
        if not g.coeffs[0].is_exact_zero:
            raise ValueError("log coefficients have no constant term")
        return cls(g.ctx, g.coeffs)

    @classmethod
    def from_rationals(cls, ctx: PrecisionPolicy, values) -> "LogCoefficients":
        """From ``[c_1, ..., c_T]`` given as ints or fractions."""
        return cls(ctx, (ctx.zero,) + tuple(ctx.from_fraction(Fraction(v)) for v in values))

    def to_series(self) -> PadicSeries:
        return PadicSeries._raw(self.ctx, self.c, self.trunc, self.trunc)


@dataclass(frozen=True)
class PurePPowerExp:
    """Exponent coefficients ``b_0 .. b_m`` of ``exp(sum_i b_i X**(p**i))``."""

    ctx: PrecisionPolicy
    b: tuple[PadicNum, ...]

    @classmethod
    def from_rationals(cls, ctx: PrecisionPolicy, values) -> "PurePPowerExp":
        return cls(ctx, tuple(ctx.from_fraction(Fraction(v)) for v in values))

    def to_series(self, T: int | None = None) -> PadicSeries:
        p = self.ctx.p
        T = p ** (len(self.b) - 1) if T is None else T
        return PadicSeries.from_terms(self.ctx, T, {p**i: bi for i, bi in enumerate(self.b)})


def _require_exact_one(f: PadicSeries):
    if not isinstance(f, PadicSeries):
        raise TypeError(f"expected PadicSeries, got {type(f).__name__}")
    if not _is_exact_one(f.coeffs[0]):
        raise ConstantTermNotOne(f"constant term {f.coeffs[0]!r} is not 1")


def _first_nonintegral(f: PadicSeries, upto: int):
    for k in range(upto + 1):
        if not f.coeffs[k].in_p_zp(0):
            return k
    return None


# ---------------------------------------------------------------------------
# Dwork


def dwork_check(f: PadicSeries) -> CheckReport:
    """``F(X)**p / F(X**p) - 1`` has every coefficient in pZ_p.

    The criterion is local in the degree: with ``a_0 .. a_{n-1}`` integral,
    coefficient ``n`` of the ratio lies in pZ_p exactly when ``a_n`` is
    integral.  The first failing degree is therefore cross-checked against
    direct inspection of the coefficients.
    """
    _require_exact_one(f)
    p, T = f.p, f.trunc
    ratio = (f ** p) * f.plug_xp(p, T).inv()
    first = None
    for n in range(1, T + 1):
        if not ratio.coeffs[n].in_p_zp(1):
            first = n
            break
    direct = _first_nonintegral(f, T if first is None else first)
    if direct != first:
        raise InternalInconsistency(
            f"Dwork congruence first fails at {first}, direct integrality at {direct}")
    if first is None:
        return CheckReport.ok(T)
    return CheckReport.fail(T, first, ratio.coeffs[first], "ratio_not_1_mod_p",
                            coefficient_of_f=f.coeffs[first])


def exp_dwork_check(g: LogCoefficients) -> CheckReport:
    """``p G(X) = G(X**p) (mod p)``, i.e. ``p c_j - [p | j] c_{j/p}`` in pZ_p."""
    p, T = g.p, g.trunc
    for j in range(1, T + 1):
        term = g[j].mul_int(p)
        if j % p == 0:
            term = term - g[j // p]
        if not term.in_p_zp(1):
            return CheckReport.fail(T, j, term, "p_cj_minus_c_j_over_p")
    return CheckReport.ok(T)


# ---------------------------------------------------------------------------
# the two conditions of the equivalence


def prop_cond2_check(g: LogCoefficients) -> CheckReport:
    """``c_1`` in Z_p; ``c_j`` in pZ_p for j > 1 prime to p; ``p c_{pj} - c_j`` in pZ_p."""
    p, T = g.p, g.trunc
    for j in range(1, T + 1):
        if j == 1:
            if not g[1].in_p_zp(0):
                return CheckReport.fail(T, 1, g[1], "c1_not_integral")
        elif j % p:
            if not g[j].in_p_zp(1):
                return CheckReport.fail(T, j, g[j], "cj_not_in_pZp")
        if p * j <= T:
            term = g[p * j].mul_int(p) - g[j]
            if not term.in_p_zp(1):
                return CheckReport.fail(T, j, term, "p_cpj_minus_cj")
    return CheckReport.ok(T)


def prop_cond1_check(f: PadicSeries) -> CheckReport:
    """F integral and the defect of its reduction supported on degrees divisible by p."""
    _require_exact_one(f)
    T = f.trunc
    k = _first_nonintegral(f, T)
    if k is not None:
        return CheckReport.fail(T, k, f.coeffs[k], "not_integral")
    rep = theorem_check(f.reduce_modp())
    if rep.passed:
        return CheckReport.ok(T)
    ij, c = rep.first_violation
    return CheckReport.fail(T, ij, c, "defect_support")


def prop_equivalence(f: PadicSeries) -> CheckReport:
    """Evaluate both conditions on ``F`` and ``log F``; passes when they agree."""
    _require_exact_one(f)
    g = LogCoefficients.from_series(ser_log(f))
    r1 = prop_cond1_check(f)
    r2 = prop_cond2_check(g)
    extra = {"cond1": r1.passed, "cond2": r2.passed,
             "cond1_detail": r1.detail, "cond2_detail": r2.detail}
    if r1.passed == r2.passed:
        return CheckReport.ok(f.trunc, "agree-pass" if r1.passed else "agree-fail", **extra)
    failing = r1 if not r1.passed else r2
    index, coef = failing.first_violation
    return CheckReport.fail(f.trunc, index, coef, "equivalence_violation", **extra)


# ---------------------------------------------------------------------------


def ppower_exp_integrality(b: PurePPowerExp, T: int | None = None) -> CheckReport:
    """``p b_i - b_{i-1}`` in pZ_p for all i (``b_{-1} = 0``), cross-checked.

    The cross-check exponentiates ``sum b_i X**(p**i)`` and inspects the
    coefficients directly; the first failing family index ``i`` must match the
    first non-integral degree ``p**i``.
    """
    p = b.ctx.p
    m = len(b.b) - 1
    T = p**m if T is None else T
    first = None
    for i, bi in enumerate(b.b):
        if p**i > T:
            break
        term = bi.mul_int(p)
        if i > 0:
            term = term - b.b[i - 1]
        if not term.in_p_zp(1):
            first = i
            break
    F = ser_exp(b.to_series(T))
    upto = T if first is None else p**first
    direct = _first_nonintegral(F, upto)
    if (direct is None) != (first is None) or (first is not None and direct != p**first):
        raise InternalInconsistency(
            f"family check fails at i={first}, exponential non-integral at degree {direct}")
    if first is None:
        return CheckReport.ok(T)
    return CheckReport.fail(T, first, b.b[first], "p_bi_minus_b_prev", degree=p**first)


def additive_logderiv_congruence(g: LogCoefficients) -> CheckReport:
    """``(X+Y) G'(X+Y) = X G'(X) + Y G'(Y) (mod p)``, decided two ways.

    One way reduces ``X G'(X)`` mod p and tests additivity of the bivariate
    expansion; the other asks that ``j c_j`` lie in pZ_p unless j is a power
    of p.
    """
    p, T = g.p, g.trunc
    jc = [g[j].mul_int(j) for j in range(T + 1)]
    for j in range(1, T + 1):
        if not jc[j].in_p_zp(0):
            raise PreconditionViolated(f"j*c_j not in Z_p at j={j}: {jc[j]!r}")
    h = FpSeries(p, [c.reduce_modp().value for c in jc], T)
    rep = is_additive(h)

    powers = set(p_powers(p, T))
    offender = next((j for j in range(1, T + 1) if j not in powers and not jc[j].in_p_zp(1)),
                    None)
    if (offender is None) != rep.passed or (offender is not None and offender != rep.first_violation[0]):
        raise InternalInconsistency(
            f"additivity says {rep.passed}, membership scan says offender={offender}")
    if rep.passed:
        return CheckReport.ok(T)
    return CheckReport.fail(T, offender, jc[offender], "jcj_not_in_pZp")


# ---------------------------------------------------------------------------
# from F_p to Z_p and back


def lift_modp(f: FpSeries, ctx: PrecisionPolicy | None = None) -> PadicSeries:
    """Canonical lift: every coefficient is its residue in ``[0, p)``."""
    ctx = ctx or PrecisionPolicy.for_trunc(f.p, f.trunc)
    if ctx.p != f.p:
        raise ValueError(f"context is for p={ctx.p}, series is over F_{f.p}")
    return PadicSeries._raw(ctx, [ctx.from_int(a) for a in f.coeffs], f.trunc, f.valid)


def _split_and_reduce(f: FpSeries, lifted: PadicSeries) -> DecompResult:
    p, T = f.p, f.trunc
    ctx = lifted.ctx
    g = LogCoefficients.from_series(ser_log(lifted))
    rep = prop_cond2_check(g)
    if not rep.passed:
        raise InternalInconsistency(
            f"lift of a property-passing series fails the log-coefficient condition: {rep}")
    c1 = g[1] if T >= 1 else ctx.zero
    # exp(c_1 X) * exp(sum_j c_{pj} X^{pj}) as a single exponential
    terms = {pj: g[pj] for pj in range(p, T + 1, p)}
    if T >= 1:
        terms[1] = c1
    split = ser_exp(PadicSeries.from_terms(ctx, T, terms))
    if split.reduce_modp().coeffs != f.coeffs:
        raise InternalInconsistency("split exponential does not reduce to the input")
    quotient = split * ah_build(p, T, ctx).exact.compose_scale(c1).inv()
    try:
        gbar = quotient.reduce_modp().extract_pth(p)
    except NotPSupported as exc:
        raise InternalInconsistency(f"quotient by E_p(c_1 X) not in Z_p[[X^p]]: {exc}") from exc
    return DecompResult(c1.reduce_modp(), gbar, True, CheckReport.ok(T))


def theorem_via_proposition(f: FpSeries, policy: PrecisionPolicy | None = None,
                            lift: PadicSeries | None = None) -> DecompResult:
    """Recover ``(c, G)`` by lifting to Z_p, taking the logarithm and splitting.

    ``lift`` overrides the canonical lift; it must reduce to ``f`` and is used
    as given (no precision retry).
    """
    rep = theorem_check(f)
    if not rep.passed:
        raise PropertyAbsent(f"defect has a term of degree prime to p: {rep.first_violation}")
    if lift is not None:
        if lift.reduce_modp().coeffs != f.coeffs:
            raise ValueError("lift does not reduce to f")
        return _split_and_reduce(f, lift)
    policy = policy or PrecisionPolicy.for_trunc(f.p, f.trunc)
    return run_with_retry(lambda ctx: _split_and_reduce(f, lift_modp(f, ctx)), policy)
