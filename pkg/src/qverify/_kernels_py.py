"""Pure-Python coefficient kernels.

Every kernel works on sparse term maps ``{unit_exponent: coefficient}`` and
returns a fresh map with zero coefficients removed.  ``limit`` is the largest
exponent to keep; ``None`` means keep everything.  The compiled module
``qverify._kernels`` implements the same functions with the same contracts.
"""

from __future__ import annotations

from fractions import Fraction

BACKEND = "python"


def _reciprocal(c):
    if c == 1:
        return 1
    if c == -1:
        return -1
    return Fraction(1) / c


def mul_terms(a, b, limit=None):
    """Truncated convolution of two term maps."""
    if len(a) > len(b):
        a, b = b, a
    if not a:
        return {}
    b_items = sorted(b.items())
    out = {}
    get = out.get
    for ea, ca in a.items():
        if limit is None:
            for eb, cb in b_items:
                e = ea + eb
                out[e] = get(e, 0) + ca * cb
        else:
            cap = limit - ea
            for eb, cb in b_items:
                if eb > cap:
                    break
                e = ea + eb
                out[e] = get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def mul_binomial(terms, c, step, limit=None):
    """Multiply by ``1 - c*u**step``."""
    out = dict(terms)
    for e, v in terms.items():
        k = e + step
        if limit is not None and k > limit:
            continue
        out[k] = out.get(k, 0) - c * v
    return {e: v for e, v in out.items() if v and (limit is None or e <= limit)}


def divide_binomial(terms, c, step, limit):
    """Divide by ``1 - c*u**step`` (``step >= 1``) through ``limit``."""
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
    if c == 1:
        for i in range(step, n):
            prev = r[i - step]
            if prev:
                r[i] += prev
    else:
        for i in range(step, n):
            prev = r[i - step]
            if prev:
                r[i] += c * prev
    return {lo + i: v for i, v in enumerate(r) if v}


def inverse_terms(terms, limit):
    """Reciprocal of a series with nonzero leading term, through ``limit``.

    Raises ``ZeroDivisionError`` on an empty map.
    """
    if not terms:
        raise ZeroDivisionError("empty series has no inverse")
    m = min(terms)
    inv_lead = _reciprocal(terms[m])
    top = limit + m
    if top < 0:
        return {}
    tail = sorted((e - m, v) for e, v in terms.items() if 0 < e - m <= top)
    r = [0] * (top + 1)
    r[0] = inv_lead
    for k in range(1, top + 1):
        acc = 0
        for i, v in tail:
            if i > k:
                break
            prev = r[k - i]
            if prev:
                acc += v * prev
        if acc:
            r[k] = -acc * inv_lead
    return {k - m: v for k, v in enumerate(r) if v}
