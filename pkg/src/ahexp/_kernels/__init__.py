"""F_p series kernels with a compiled backend and a pure-Python fallback.

The compiled extension is used when it imports and ``AHEXP_PURE`` is unset.
``BACKEND`` names the active choice; :func:`get_backend` returns either module
explicitly (tests and the benchmark compare the two).
"""

import os

from . import _pure

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_C_MAX_P = 2**31


def get_backend(name: str):
    if name == "python":
        return _pure
    if name == "cython":
        if _ckernels is None:
            raise ImportError("compiled kernels are not built")
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


if _ckernels is not None and not os.environ.get("AHEXP_PURE"):
    BACKEND = "cython"
    _active = _ckernels
else:
    BACKEND = "python"
    _active = _pure


def _pick(p):
    return _active if p < _C_MAX_P else _pure


def mul_trunc(a, b, p, n):
    return _pick(p).mul_trunc(a, b, p, n)


def inv_trunc(a, p, n):
    return _pick(p).inv_trunc(a, p, n)


def bi_mul(a, b, p, T):
    return _pick(p).bi_mul(a, b, p, T)


def bi_inv(a, p, T):
    return _pick(p).bi_inv(a, p, T)


def bi_subst_sum(a, p, T):
    return _pick(p).bi_subst_sum(a, p, T)


def bi_outer(a, b, p, T):
    return _pick(p).bi_outer(a, b, p, T)
