# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled F_p kernels; same contracts as ``_pure``.

Requires ``p < 2**31`` so that a product of two residues fits in 63 bits.
"""

from libc.stdlib cimport malloc, calloc, free

ctypedef long long i64


cdef i64* _load(seq, Py_ssize_t n, i64 p) except NULL:
    cdef i64* buf = <i64*> calloc(n if n > 0 else 1, sizeof(i64))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t k
    cdef Py_ssize_t m = min(len(seq), n)
    for k in range(m):
        buf[k] = (<i64> seq[k]) % p
    return buf


cdef list _dump(i64* buf, Py_ssize_t n):
    return [buf[k] for k in range(n)]


def mul_trunc(a, b, i64 p, Py_ssize_t n):
    cdef Py_ssize_t la = min(len(a), n + 1), lb = min(len(b), n + 1)
    cdef i64* x = _load(a, la, p)
    cdef i64* y = _load(b, lb, p)
    cdef i64* out = <i64*> calloc(n + 1, sizeof(i64))
    cdef Py_ssize_t i, j, top
    cdef i64 xi
    try:
        for i in range(la):
            xi = x[i]
            if xi == 0:
                continue
            top = min(lb, n + 1 - i)
            for j in range(top):
                out[i + j] = (out[i + j] + xi * y[j]) % p
        return _dump(out, n + 1)
    finally:
        free(x)
        free(y)
        free(out)


def inv_trunc(a, i64 p, Py_ssize_t n):
    cdef Py_ssize_t la = min(len(a), n + 1)
    cdef i64* x = _load(a, la, p)
    cdef i64* out = <i64*> calloc(n + 1, sizeof(i64))
    cdef Py_ssize_t k, i, top
    cdef i64 s, inv0
    try:
        if x[0] == 0:
            raise ZeroDivisionError("constant term is not invertible")
        inv0 = pow(int(x[0]), -1, int(p))
        out[0] = inv0
        for k in range(1, n + 1):
            s = 0
            top = min(k, la - 1)
            for i in range(1, top + 1):
                s = (s + x[i] * out[k - i]) % p
            out[k] = ((p - s) % p) * inv0 % p
        return _dump(out, n + 1)
    finally:
        free(x)
        free(out)


def bi_mul(a, b, i64 p, Py_ssize_t T):
    cdef Py_ssize_t size = (T + 1) * (T + 2) // 2
    cdef i64* x = _load(a, size, p)
    cdef i64* y = _load(b, size, p)
    cdef i64* out = <i64*> calloc(size, sizeof(i64))
    cdef Py_ssize_t d1, i1, d2, i2, base1, base2, off, d
    cdef i64 av
    try:
        for d1 in range(T + 1):
            base1 = d1 * (d1 + 1) // 2
            for i1 in range(d1 + 1):
                av = x[base1 + i1]
                if av == 0:
                    continue
                for d2 in range(T - d1 + 1):
                    base2 = d2 * (d2 + 1) // 2
                    d = d1 + d2
                    off = d * (d + 1) // 2 + i1
                    for i2 in range(d2 + 1):
                        out[off + i2] = (out[off + i2] + av * y[base2 + i2]) % p
        return _dump(out, size)
    finally:
        free(x)
        free(y)
        free(out)


def bi_inv(a, i64 p, Py_ssize_t T):
    cdef Py_ssize_t size = (T + 1) * (T + 2) // 2
    cdef i64* x = _load(a, size, p)
    cdef i64* out = <i64*> calloc(size, sizeof(i64))
    cdef Py_ssize_t d, i, j, k, l, dk, dr
    cdef i64 s, av, inv0
    try:
        if x[0] == 0:
            raise ZeroDivisionError("constant term is not invertible")
        inv0 = pow(int(x[0]), -1, int(p))
        out[0] = inv0
        for d in range(1, T + 1):
            for i in range(d + 1):
                j = d - i
                s = 0
                for k in range(i + 1):
                    for l in range(j + 1):
                        if k == 0 and l == 0:
                            continue
                        dk = k + l
                        av = x[dk * (dk + 1) // 2 + k]
                        if av:
                            dr = d - dk
                            s = (s + av * out[dr * (dr + 1) // 2 + i - k]) % p
                out[d * (d + 1) // 2 + i] = ((p - s) % p) * inv0 % p
        return _dump(out, size)
    finally:
        free(x)
        free(out)


def bi_subst_sum(a, i64 p, Py_ssize_t T):
    cdef Py_ssize_t size = (T + 1) * (T + 2) // 2
    cdef i64* x = _load(a, T + 1, p)
    cdef i64* row = <i64*> calloc(T + 1, sizeof(i64))
    cdef i64* out = <i64*> calloc(size, sizeof(i64))
    cdef Py_ssize_t n, i, base
    try:
        # row holds binom(n, .) mod p, updated in place right-to-left
        row[0] = 1 % p
        for n in range(T + 1):
            if n > 0:
                row[n] = 1 % p
                for i in range(n - 1, 0, -1):
                    row[i] = (row[i] + row[i - 1]) % p
            base = n * (n + 1) // 2
            for i in range(n + 1):
                out[base + i] = row[i] * x[n] % p
        return _dump(out, size)
    finally:
        free(x)
        free(row)
        free(out)


def bi_outer(a, b, i64 p, Py_ssize_t T):
    cdef Py_ssize_t size = (T + 1) * (T + 2) // 2
    cdef i64* x = _load(a, T + 1, p)
    cdef i64* y = _load(b, T + 1, p)
    cdef i64* out = <i64*> calloc(size, sizeof(i64))
    cdef Py_ssize_t d, i, base
    try:
        for d in range(T + 1):
            base = d * (d + 1) // 2
            for i in range(d + 1):
                out[base + i] = x[i] * y[d - i] % p
        return _dump(out, size)
    finally:
        free(x)
        free(y)
        free(out)
