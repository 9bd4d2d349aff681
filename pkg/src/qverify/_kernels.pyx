# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled coefficient kernels.

Same functions and contracts as ``qverify._kernels_py``.  Exponents live in C
arrays and the accumulators are dense Python lists, which removes the dict
hashing from the inner loops; coefficients stay arbitrary-precision Python
numbers.
"""

from fractions import Fraction

from libc.stdlib cimport free, malloc

BACKEND = "compiled"


cdef object _reciprocal(object c):
    if c == 1:
        return 1
    if c == -1:
        return -1
    return Fraction(1) / c


cdef dict _collect(list acc, long lo):
    cdef Py_ssize_t i
    cdef dict out = {}
    for i in range(len(acc)):
        v = acc[i]
        if v:
            out[lo + i] = v
    return out


def mul_terms(dict a, dict b, object limit=None):
    cdef Py_ssize_t na, nb, i, j
    cdef long x, cap, lo, hi, k
    cdef long *eb
    cdef bint bounded = limit is not None
    cdef long lim = 0
    cdef list cb, acc
    if len(a) > len(b):
        a, b = b, a
    if not a:
        return {}
    if bounded:
        lim = limit
    items_b = sorted(b.items())
    nb = len(items_b)
    lo = min(a) + items_b[0][0]
    hi = max(a) + items_b[nb - 1][0]
    if bounded and hi > lim:
        hi = lim
    if hi < lo:
        return {}
    eb = <long *> malloc(nb * sizeof(long))
    if eb == NULL:
        raise MemoryError()
    try:
        cb = []
        for j in range(nb):
            eb[j] = items_b[j][0]
            cb.append(items_b[j][1])
        acc = [0] * (hi - lo + 1)
        for x, ca in a.items():
            cap = lim - x
            for j in range(nb):
                if bounded and eb[j] > cap:
                    break
                k = x + eb[j] - lo
                acc[k] = acc[k] + ca * cb[j]
    finally:
        free(eb)
    return _collect(acc, lo)


def mul_binomial(dict terms, object c, long step, object limit=None):
    cdef dict out = dict(terms)
    cdef long e, k
    cdef bint bounded = limit is not None
    cdef long lim = 0
    if bounded:
        lim = limit
    for e, v in terms.items():
        k = e + step
        if bounded and k > lim:
            continue
        out[k] = out.get(k, 0) - c * v
    return {e: v for e, v in out.items() if v and (not bounded or e <= lim)}


def divide_binomial(dict terms, object c, long step, long limit):
    cdef long lo, e
    cdef Py_ssize_t n, i
    cdef list r
    if not terms:
        return {}
    lo = min(terms)
    if lo > limit:
        return {}
    n = limit - lo + 1
    r = [0] * n
    for e, v in terms.items():
        if e <= limit:
            r[e - lo] = v
    unit = c == 1
    for i in range(step, n):
        prev = r[i - step]
        if prev:
            if unit:
                r[i] = r[i] + prev
            else:
                r[i] = r[i] + c * prev
    return _collect(r, lo)


def inverse_terms(dict terms, long limit):
    cdef long m, top, k, t
    cdef Py_ssize_t nt, i
    cdef long *ti
    cdef list tv, r
    if not terms:
        raise ZeroDivisionError("empty series has no inverse")
    m = min(terms)
    inv_lead = _reciprocal(terms[m])
    top = limit + m
    if top < 0:
        return {}
    tail = sorted((e - m, v) for e, v in terms.items() if 0 < e - m <= top)
    nt = len(tail)
    ti = <long *> malloc((nt + 1) * sizeof(long))
    if ti == NULL:
        raise MemoryError()
    try:
        tv = []
        for i in range(nt):
            ti[i] = tail[i][0]
            tv.append(tail[i][1])
        r = [0] * (top + 1)
        r[0] = inv_lead
        for k in range(1, top + 1):
            acc = 0
            for i in range(nt):
                t = ti[i]
                if t > k:
                    break
                prev = r[k - t]
                if prev:
                    acc = acc + tv[i] * prev
            if acc:
                r[k] = -acc * inv_lead
    finally:
        free(ti)
    return _collect(r, -m)
