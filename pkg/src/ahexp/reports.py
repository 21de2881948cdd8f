"""Outcome records shared by the checking modules."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class CheckReport:
    """Verdict of a check certified up to degree ``trunc``.

    ``first_violation`` is ``(index, coefficient)`` where ``index`` is an int
    (univariate degree) or an ``(i, j)`` pair (bivariate exponent); it is
    present exactly when the check failed.  ``detail`` is a short reason code.
    """

    passed: bool
    trunc: int
    first_violation: tuple | None = None
    detail: str = "ok"
    extra: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.passed != (self.first_violation is None):
            raise ValueError("a report passes exactly when it has no violation")

    def __bool__(self):
        return self.passed

    @classmethod
    def ok(cls, trunc: int, detail: str = "ok", **extra) -> "CheckReport":
        return cls(True, trunc, None, detail, extra)

    @classmethod
    def fail(cls, trunc: int, index, coefficient, detail: str, **extra) -> "CheckReport":
        return cls(False, trunc, (index, coefficient), detail, extra)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"passed": self.passed, "trunc": self.trunc, "detail": self.detail}
        if self.first_violation is None:
            out["first_violation"] = None
        else:
            index, coef = self.first_violation
            out["first_violation"] = {
                "index": list(index) if isinstance(index, tuple) else index,
                "coefficient": _jsonable(coef),
            }
        for k, v in self.extra.items():
            out[k] = _jsonable(v)
        return out


def _jsonable(v):
    from .padic import FpElem, PadicNum

    if isinstance(v, FpElem):
        return v.value
    if isinstance(v, PadicNum):
        return repr(v)
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    if isinstance(v, list):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return v
