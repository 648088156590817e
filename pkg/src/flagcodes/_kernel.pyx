# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernel over GF(p^m).

Same interface as the pure-Python fallback ``flagcodes._kernel_py``:
entries are base-p digit encodings, multiplication uses the field's
discrete-log tables, addition is XOR / modular / digit-wise depending on
(p, m).  ``log[0]`` is never read; zeros are guarded explicitly.
"""

ctypedef long long i64


cdef inline i64 _add(i64 a, i64 b, i64 p, i64 m) noexcept nogil:
    cdef i64 res, mult, i
    if p == 2:
        return a ^ b
    if m == 1:
        return (a + b) % p
    res = 0
    mult = 1
    for i in range(m):
        res += ((a % p) + (b % p)) % p * mult
        a //= p
        b //= p
        mult *= p
    return res


cdef inline i64 _mul(i64 a, i64 b, const i64[:] exp, const i64[:] log) noexcept nogil:
    if a == 0 or b == 0:
        return 0
    return exp[log[a] + log[b]]


def rref(i64[:, ::1] a, i64 p, i64 m, i64 q, const i64[:] exp, const i64[:] log):
    """Reduce ``a`` in place; return (rank, pivot column list)."""
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, pr
    cdef i64 piv, inv_piv, nf, tmp
    cdef i64 negone = p - 1
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        pr = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                pr = i
                break
        if pr == -1:
            continue
        if pr != r:
            for j in range(cols):
                tmp = a[r, j]
                a[r, j] = a[pr, j]
                a[pr, j] = tmp
        piv = a[r, c]
        if piv != 1:
            inv_piv = exp[(q - 1) - log[piv]]
            for j in range(c, cols):
                a[r, j] = _mul(a[r, j], inv_piv, exp, log)
        for i in range(rows):
            if i != r and a[i, c] != 0:
                nf = _mul(a[i, c], negone, exp, log)
                for j in range(c, cols):
                    a[i, j] = _add(a[i, j], _mul(nf, a[r, j], exp, log), p, m)
        pivots.append(c)
        r += 1
    return r, pivots


def rank(i64[:, ::1] a, i64 p, i64 m, i64 q, const i64[:] exp, const i64[:] log):
    """Forward elimination only; clobbers ``a`` and returns its rank."""
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, pr
    cdef i64 piv, inv_piv, f, nf, tmp
    cdef i64 negone = p - 1
    for c in range(cols):
        if r == rows:
            break
        pr = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                pr = i
                break
        if pr == -1:
            continue
        if pr != r:
            for j in range(cols):
                tmp = a[r, j]
                a[r, j] = a[pr, j]
                a[pr, j] = tmp
        piv = a[r, c]
        inv_piv = exp[(q - 1) - log[piv]]
        for i in range(r + 1, rows):
            if a[i, c] != 0:
                f = _mul(a[i, c], inv_piv, exp, log)
                nf = _mul(f, negone, exp, log)
                for j in range(c, cols):
                    a[i, j] = _add(a[i, j], _mul(nf, a[r, j], exp, log), p, m)
        r += 1
    return r


def matmul(const i64[:, ::1] a, const i64[:, ::1] b, i64[:, ::1] out,
           i64 p, i64 m, i64 q, const i64[:] exp, const i64[:] log):
    """Fill ``out`` (zero-initialized) with the product ``a @ b`` over the field."""
    cdef Py_ssize_t ra = a.shape[0], ca = a.shape[1], cb = b.shape[1]
    cdef Py_ssize_t i, k, j
    cdef i64 s, ls, v
    for i in range(ra):
        for k in range(ca):
            s = a[i, k]
            if s == 0:
                continue
            ls = log[s]
            for j in range(cb):
                v = b[k, j]
                if v != 0:
                    out[i, j] = _add(out[i, j], exp[ls + log[v]], p, m)
