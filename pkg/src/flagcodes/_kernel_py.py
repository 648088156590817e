"""Pure-Python elimination kernel over GF(p^m).

Fallback backend with the same interface as the compiled module
``flagcodes._kernel``.  Matrices are 2-D ``int64`` numpy arrays whose
entries encode field elements as base-``p`` digit strings (digit ``i`` is
the coefficient of ``x^i``).  Multiplication and inversion go through the
field's discrete-log tables (``exp``/``log``); addition is XOR for
characteristic 2, plain modular addition for prime fields, and digit-wise
otherwise.  ``log[0]`` is a sentinel and must never be read: all routines
mask zeros first.
"""

from __future__ import annotations

import numpy as np


def _add_rows(x, y, p, m):
    if p == 2:
        return x ^ y
    if m == 1:
        return (x + y) % p
    res = np.zeros_like(x)
    xd = x.copy()
    yd = y.copy()
    shift = 1
    for _ in range(m):
        res += ((xd + yd) % p) * shift
        xd //= p
        yd //= p
        shift *= p
    return res


def _scale_row(s, row, exp, log):
    if s == 0:
        return np.zeros_like(row)
    if s == 1:
        return row.copy()
    out = np.zeros_like(row)
    nz = row != 0
    out[nz] = exp[log[s] + log[row[nz]]]
    return out


def _neg(v, p, exp, log):
    # -v = v * (p-1); the constant polynomial p-1 encodes -1
    if v == 0:
        return 0
    return int(exp[log[v] + log[p - 1]])


def rref(a, p, m, q, exp, log):
    """Reduce ``a`` in place; return (rank, pivot column list)."""
    rows, cols = a.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        piv = int(a[r, c])
        if piv != 1:
            a[r] = _scale_row(int(exp[(q - 1) - log[piv]]), a[r], exp, log)
        for i in range(rows):
            if i != r and a[i, c] != 0:
                nf = _neg(int(a[i, c]), p, exp, log)
                a[i] = _add_rows(a[i], _scale_row(nf, a[r], exp, log), p, m)
        pivots.append(c)
        r += 1
    return r, pivots


def rank(a, p, m, q, exp, log):
    """Forward elimination only; clobbers ``a`` and returns its rank."""
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        piv = int(a[r, c])
        inv_piv = int(exp[(q - 1) - log[piv]])
        for i in range(r + 1, rows):
            if a[i, c] != 0:
                f = int(exp[log[a[i, c]] + log[inv_piv]]) if inv_piv != 1 else int(a[i, c])
                a[i] = _add_rows(a[i], _scale_row(_neg(f, p, exp, log), a[r], exp, log), p, m)
        r += 1
    return r


def matmul(a, b, out, p, m, q, exp, log):
    """Fill ``out`` (zero-initialized) with the product ``a @ b`` over the field."""
    ra, ca = a.shape
    for i in range(ra):
        acc = out[i]
        for k in range(ca):
            s = int(a[i, k])
            if s == 0:
                continue
            acc[:] = _add_rows(acc, _scale_row(s, b[k], exp, log), p, m)
