"""Pure-Python F_p kernels.

Coefficient arrays are sequences of ints in ``[0, p)``.  Bivariate arrays are
flat and triangular: the coefficient of ``X**i * Y**j`` sits at
``d*(d+1)//2 + i`` with ``d = i + j``.
"""


def mul_trunc(a, b, p, n):
    """Product of two univariate series modulo ``X**(n+1)``."""
    out = [0] * (n + 1)
    la = min(len(a), n + 1)
    lb = min(len(b), n + 1)
    for i in range(la):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(min(lb, n + 1 - i)):
            out[i + j] += ai * b[j]
    return [c % p for c in out]


def inv_trunc(a, p, n):
    a0 = a[0] % p
    if a0 == 0:
        raise ZeroDivisionError("constant term is not invertible")
    inv0 = pow(a0, -1, p)
    la = len(a)
    out = [0] * (n + 1)
    out[0] = inv0
    for k in range(1, n + 1):
        s = 0
        for i in range(1, min(k, la - 1) + 1):
            s += a[i] * out[k - i]
        out[k] = -s * inv0 % p
    return out


def bi_mul(a, b, p, T):
    size = (T + 1) * (T + 2) // 2
    out = [0] * size
    for d1 in range(T + 1):
        base1 = d1 * (d1 + 1) // 2
        for i1 in range(d1 + 1):
            av = a[base1 + i1]
            if av == 0:
                continue
            for d2 in range(T - d1 + 1):
                base2 = d2 * (d2 + 1) // 2
                d = d1 + d2
                off = d * (d + 1) // 2 + i1
                for i2 in range(d2 + 1):
                    bv = b[base2 + i2]
                    if bv:
                        out[off + i2] += av * bv
    return [c % p for c in out]


def bi_inv(a, p, T):
    a0 = a[0] % p
    if a0 == 0:
        raise ZeroDivisionError("constant term is not invertible")
    inv0 = pow(a0, -1, p)
    size = (T + 1) * (T + 2) // 2
    out = [0] * size
    out[0] = inv0
    for d in range(1, T + 1):
        base = d * (d + 1) // 2
        for i in range(d + 1):
            j = d - i
            s = 0
            # sum over nonzero-degree (k, l) of a, with (i-k, j-l) in out
            for k in range(i + 1):
                for l in range(j + 1):
                    if k == 0 and l == 0:
                        continue
                    dk = k + l
                    av = a[dk * (dk + 1) // 2 + k]
                    if av:
                        dr = d - dk
                        s += av * out[dr * (dr + 1) // 2 + i - k]
            out[base + i] = -s * inv0 % p
    return out


def pascal_rows(p, T):
    """Binomial coefficients mod p, rows 0..T, by Pascal's rule."""
    rows = [[1 % p]]
    for n in range(1, T + 1):
        prev = rows[-1]
        row = [1 % p] + [(prev[i - 1] + prev[i]) % p for i in range(1, n)] + [1 % p]
        rows.append(row)
    return rows


def bi_subst_sum(a, p, T):
    """Coefficients of ``f(X+Y)`` in flat triangular order."""
    out = []
    for n, row in enumerate(pascal_rows(p, T)):
        an = a[n] if n < len(a) else 0
        out.extend(c * an % p for c in row)
    return out


def bi_outer(a, b, p, T):
    """Coefficients of ``f(X) * g(Y)`` in flat triangular order."""
    out = []
    for d in range(T + 1):
        for i in range(d + 1):
            ai = a[i] if i < len(a) else 0
            bj = b[d - i] if d - i < len(b) else 0
            out.append(ai * bj % p)
    return out
