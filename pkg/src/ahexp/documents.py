"""JSON interchange format for series.

A document is one JSON object::

    {"coeffs": [...], "meta": {...}, "p": 5, "ring": "fp", "trunc": 3}

``fp`` coefficients are integers in ``[0, p)``.  ``padic`` coefficients are
``{"digits": k, "unit": "<decimal>", "val": v}`` with ``val = "inf"`` for the
exact zero and ``digits = 0`` for a zero known only modulo ``p**val``.
Emission is canonical (sorted keys, no whitespace) so parse -> emit is
byte-identical for any canonical document.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .padic import INF, PrecisionPolicy, is_prime
from .series import FpSeries, PadicSeries


class DocumentError(ValueError):
    pass


@dataclass
class SeriesDocument:
    p: int
    trunc: int
    ring: str
    coeffs: list
    meta: dict[str, Any] = field(default_factory=dict)

    def to_obj(self) -> dict:
        obj = {"coeffs": self.coeffs, "p": self.p, "ring": self.ring, "trunc": self.trunc}
        if self.meta:
            obj["meta"] = self.meta
        return obj

    def dumps(self) -> str:
        return dumps(self.to_obj())

    @classmethod
    def from_obj(cls, obj) -> "SeriesDocument":
        if not isinstance(obj, dict):
            raise DocumentError("document must be a JSON object")
        unknown = set(obj) - {"coeffs", "p", "ring", "trunc", "meta"}
        if unknown:
            raise DocumentError(f"unknown fields {sorted(unknown)}")
        try:
            p, trunc, ring, coeffs = obj["p"], obj["trunc"], obj["ring"], obj["coeffs"]
        except KeyError as exc:
            raise DocumentError(f"missing field {exc.args[0]!r}") from None
        meta = obj.get("meta", {})
        if not _is_int(p) or not is_prime(p):
            raise DocumentError(f"p={p!r} is not a prime")
        if not _is_int(trunc) or trunc < 0:
            raise DocumentError(f"trunc={trunc!r} must be a non-negative integer")
        if ring not in ("fp", "padic"):
            raise DocumentError(f"ring must be 'fp' or 'padic', got {ring!r}")
        if not isinstance(coeffs, list) or len(coeffs) != trunc + 1:
            raise DocumentError(f"expected {trunc + 1} coefficients")
        if not isinstance(meta, dict):
            raise DocumentError("meta must be an object")
        if ring == "fp":
            for c in coeffs:
                if not _is_int(c) or not 0 <= c < p:
                    raise DocumentError(f"fp coefficient {c!r} outside [0, {p})")
        else:
            for c in coeffs:
                _check_padic_coeff(c, p)
        return cls(p, trunc, ring, coeffs, meta)

    @classmethod
    def loads(cls, text: str) -> "SeriesDocument":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"invalid JSON: {exc}") from None
        return cls.from_obj(obj)

    # conversion --------------------------------------------------------

    def context(self, N: int | None = None) -> PrecisionPolicy:
        """Context for a padic document: ``meta.prec`` if present, else sized for T."""
        base = PrecisionPolicy.for_trunc(self.p, self.trunc)
        prec = self.meta.get("prec") or {}
        n = prec.get("N", base.N)
        m = prec.get("M", base.M)
        guard = prec.get("guard", base.guard)
        if N is not None:
            n, m = N, max(m, N)
        lowest = min((c["val"] for c in self.coeffs if c["val"] != "inf"), default=0)
        widest = max((c["digits"] for c in self.coeffs), default=1)
        return PrecisionPolicy(self.p, max(n, widest), max(m, -lowest), guard)

    def to_series(self, N: int | None = None):
        if self.ring == "fp":
            return FpSeries(self.p, self.coeffs, self.trunc)
        ctx = self.context(N)
        coeffs = [ctx.element(INF if c["val"] == "inf" else c["val"], int(c["unit"]), c["digits"])
                  for c in self.coeffs]
        return PadicSeries._raw(ctx, coeffs, self.trunc, self.trunc)

    def exact_rationals(self) -> list[Fraction] | None:
        """Exact coefficients recorded in ``meta.exact``, if any."""
        exact = self.meta.get("exact")
        if exact is None:
            return None
        return [Fraction(s) for s in exact]

    @classmethod
    def from_series(cls, f, meta: dict | None = None) -> "SeriesDocument":
        meta = dict(meta or {})
        if isinstance(f, FpSeries):
            return cls(f.p, f.trunc, "fp", list(f.coeffs), meta)
        if isinstance(f, PadicSeries):
            meta.setdefault("prec", {"N": f.ctx.N, "M": f.ctx.M, "guard": f.ctx.guard})
            coeffs = [{"digits": c.digits, "unit": str(c.unit),
                       "val": "inf" if c.is_exact_zero else c.val} for c in f.coeffs]
            return cls(f.p, f.trunc, "padic", coeffs, meta)
        raise TypeError(f"cannot serialize {type(f).__name__}")


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _check_padic_coeff(c, p):
    if not isinstance(c, dict) or set(c) != {"digits", "unit", "val"}:
        raise DocumentError(f"padic coefficient must have digits/unit/val: {c!r}")
    val, unit, digits = c["val"], c["unit"], c["digits"]
    if not isinstance(unit, str) or not unit.isdigit():
        raise DocumentError(f"unit must be a decimal string: {unit!r}")
    if not _is_int(digits) or digits < 0:
        raise DocumentError(f"digits must be a non-negative integer: {digits!r}")
    u = int(unit)
    if str(u) != unit:
        raise DocumentError(f"unit is not canonical: {unit!r}")
    if val == "inf":
        if u != 0 or digits != 0:
            raise DocumentError("exact zero must have unit '0' and digits 0")
        return
    if not _is_int(val):
        raise DocumentError(f"val must be an integer or 'inf': {val!r}")
    if digits == 0:
        if u != 0:
            raise DocumentError("a bounded zero has unit '0'")
        return
    if u >= p**digits or u % p == 0:
        raise DocumentError(f"unit {u} must be a p-unit below p^{digits}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def read_stream(text: str) -> list[SeriesDocument]:
    """Documents from JSON Lines (blank lines ignored)."""
    docs = []
    for n, line in enumerate(text.splitlines(), 1):
        if line.strip():
            try:
                docs.append(SeriesDocument.loads(line))
            except DocumentError as exc:
                raise DocumentError(f"line {n}: {exc}") from None
    return docs
