"""Series over F_p whose multiplicativity defect lives in degrees divisible by p.

The property, the factorisation ``F(X) = E_p(cX) G(X**p)``, the logarithmic
derivative form ``F'/F = c * sum X**(p**i - 1)`` and the coefficient recurrence
are all implemented as separate checks so they can be compared pointwise.
Every verdict is certified only up to the truncation order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .artinhasse import ep_bar, logderiv_target
from .bivariate import defect, is_additive, support_multiple_p
from .errors import NonUnitConstantTerm, NotPSupported, PreconditionViolated, TooLarge
from .padic import GF, FpElem, p_powers
from .reports import CheckReport
from .series import FpSeries

ENUMERATION_LIMIT = 4096


@dataclass(frozen=True)
class DecompResult:
    c: FpElem
    g: FpSeries | None
    residual_ok: bool
    report: CheckReport


@dataclass(frozen=True)
class AdditiveLogDeriv:
    """Coefficients ``b_i`` of ``X F'/F = sum_i b_i X**(p**i)``."""

    p: int
    trunc: int
    b: dict[int, FpElem]

    def constant(self) -> FpElem | None:
        """The common value of all ``b_i``, or None if they differ."""
        values = set(self.b.values())
        if len(values) > 1:
            return None
        return values.pop() if values else GF(self.p).zero


def _require_unit_one(f: FpSeries):
    if not isinstance(f, FpSeries):
        raise TypeError(f"expected FpSeries, got {type(f).__name__}")
    if f.coeffs[0] != 1:
        raise NonUnitConstantTerm(f"constant term must be 1, got {f.coeffs[0]}")


def theorem_check(f: FpSeries) -> CheckReport:
    _require_unit_one(f)
    return support_multiple_p(defect(f), f.p)


def synthesize(c, g: FpSeries, T: int) -> FpSeries:
    """``E_p(cX) * g(X**p)`` truncated at T.

    Coefficients of ``g`` past its own truncation are taken to be zero.
    """
    _require_unit_one(g)
    p = g.p
    need = T // p
    if g.trunc < need:
        g = FpSeries(p, g.coeffs, need)
    e = ep_bar(p, T).compose_scale(int(c))
    return e * g.plug_xp(p, T)


def decompose(f: FpSeries) -> DecompResult:
    _require_unit_one(f)
    p, T = f.p, f.trunc
    c = f.coeff(1) if T >= 1 else GF(p).zero
    q = f * ep_bar(p, T).compose_scale(c.value).inv()
    try:
        g = q.extract_pth(p)
    except NotPSupported as exc:
        k = exc.index
        report = CheckReport.fail(T, k, q.coeffs[k], "quotient_not_p_supported")
        return DecompResult(c, None, False, report)
    return DecompResult(c, g, True, CheckReport.ok(T))


def _logderiv(f: FpSeries) -> FpSeries:
    # F'/F; reliable to degree T-1
    return f.derivative() * f.inv()


def corollary_report(f: FpSeries) -> CheckReport:
    _require_unit_one(f)
    p, T = f.p, f.trunc
    L = _logderiv(f)
    c = L.coeff(0) if T >= 1 else GF(p).zero
    target = logderiv_target(p, T) * c
    k = L.first_mismatch(target, T - 1)
    if k is not None:
        return CheckReport.fail(T, k, L.coeffs[k], "logderiv_mismatch", expected=target.coeffs[k])
    return CheckReport.ok(T, c=c)


def corollary_check(f: FpSeries) -> FpElem | None:
    """The constant c with ``F'/F = c sum X**(p**i - 1)`` up to degree T-1, if any."""
    rep = corollary_report(f)
    return rep.extra["c"] if rep.passed else None


def x_logderiv(f: FpSeries) -> FpSeries:
    """``X F'(X) / F(X)``, fully determined to degree T."""
    _require_unit_one(f)
    L = _logderiv(f)
    return FpSeries(f.p, [0] + list(L.coeffs[: f.trunc]), f.trunc)


def logderiv_report(f: FpSeries) -> tuple[AdditiveLogDeriv | None, CheckReport]:
    h = x_logderiv(f)
    rep = is_additive(h)
    if not rep.passed:
        return None, rep
    F = GF(f.p)
    b = {i: F(h.coeffs[q]) for i, q in enumerate(p_powers(f.p, f.trunc))}
    return AdditiveLogDeriv(f.p, f.trunc, b), rep


def logderiv_additive(f: FpSeries) -> AdditiveLogDeriv | None:
    return logderiv_report(f)[0]


def remark_recurrence_check(f: FpSeries, b: AdditiveLogDeriv) -> CheckReport:
    """``k a_k = sum_{p**i + j = k} b_i a_j`` for 1 <= k <= T, and ``a_1 = b_0``."""
    _require_unit_one(f)
    p, T = f.p, f.trunc
    powers = p_powers(p, T)
    if any(i not in b.b for i in range(len(powers))):
        raise PreconditionViolated("b must provide b_i for every p**i <= T")
    a = f.coeffs
    bi = [b.b[i].value for i in range(len(powers))]
    if T >= 1 and a[1] != bi[0]:
        return CheckReport.fail(T, 1, a[1], "a1_ne_b0", b0=bi[0])
    for k in range(1, T + 1):
        rhs = sum(bi[i] * a[k - q] for i, q in enumerate(powers) if q <= k) % p
        if k * a[k] % p != rhs:
            return CheckReport.fail(T, k, a[k], "recurrence_mismatch", rhs=rhs)
    return CheckReport.ok(T)


# ---------------------------------------------------------------------------
# brute force


@dataclass(frozen=True)
class Enumeration:
    p: int
    trunc: int
    property: frozenset
    form: frozenset


def _check_enumerable(p: int, T: int):
    if T < 0 or T > 10 or p**T > ENUMERATION_LIMIT:
        raise TooLarge(f"p={p}, T={T} gives {p}^{T} candidates (limit {ENUMERATION_LIMIT}, T <= 10)")


def candidates(p: int, T: int):
    """Every series ``1 + a_1 X + ... + a_T X**T`` over F_p, in canonical order."""
    _check_enumerable(p, T)
    for tail in itertools.product(range(p), repeat=T):
        yield FpSeries(p, (1,) + tail, T)


def form_members(p: int, T: int):
    """``(c, g, synthesize(c, g, T))`` for every c and every g of degree <= T // p."""
    _check_enumerable(p, T)
    m = T // p
    for c in range(p):
        for tail in itertools.product(range(p), repeat=m):
            g = FpSeries(p, (1,) + tail, m)
            yield c, g, synthesize(c, g, T)


def enumerate_small(p: int, T: int) -> Enumeration:
    prop = frozenset(f for f in candidates(p, T) if theorem_check(f).passed)
    form = frozenset(f for _, _, f in form_members(p, T))
    return Enumeration(p, T, prop, form)
