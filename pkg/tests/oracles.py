"""Slow, independent reference computations.

Dense coefficient lists over Fraction, no sparsity, no guarantees: every
product is expanded from scratch and truncated at N. Nothing here imports
the package under test.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as cartesian


def zero(N):
    return [Fraction(0)] * (N + 1)


def const(c, N):
    out = zero(N)
    out[0] = Fraction(c)
    return out


def mono(c, e, N):
    out = zero(N)
    if 0 <= e <= N:
        out[e] = Fraction(c)
    return out


def add(a, b):
    return [x + y for x, y in zip(a, b)]


def scale(a, c):
    return [x * c for x in a]


def mul(a, b):
    N = len(a) - 1
    out = zero(N)
    for i, x in enumerate(a):
        if x:
            for j in range(N + 1 - i):
                out[i + j] += x * b[j]
    return out


def inv(a):
    """Power-series reciprocal by solving a * r = 1 term by term."""
    N = len(a) - 1
    if a[0] == 0:
        raise ZeroDivisionError
    r = zero(N)
    r[0] = 1 / a[0]
    for n in range(1, N + 1):
        r[n] = -sum(a[k] * r[n - k] for k in range(1, n + 1)) / a[0]
    return r


def shift(a, e):
    N = len(a) - 1
    out = zero(N)
    for i, x in enumerate(a):
        if 0 <= i + e <= N:
            out[i + e] = x
    return out


def poch(c, e, step, n, N):
    """``prod_{i<n} (1 - c q^(e + step i))``."""
    out = const(1, N)
    for i in range(n):
        out = mul(out, add(const(1, N), mono(-c, e + step * i, N)))
    return out


def poch_inf(c, e, step, N):
    n = 0
    while e + step * n <= N:
        n += 1
    return poch(c, e, step, n, N)


def partitions(N):
    """p(0..N) by enumerating partitions with parts in nonincreasing order."""

    def count(n, largest):
        if n == 0:
            return 1
        return sum(count(n - part, part) for part in range(min(n, largest), 0, -1))

    return [count(n, n) for n in range(N + 1)]


def pentagonal(N):
    """Coefficients of ``(q;q)_inf`` from Euler's pentagonal theorem."""
    out = [0] * (N + 1)
    k = 0
    while True:
        hit = False
        for kk in {k, -k}:
            e = kk * (3 * kk - 1) // 2
            if e <= N:
                out[e] += (-1) ** abs(kk)
                hit = True
        if not hit and k > 0:
            return out
        k += 1


def convolve_sparse(a: dict, b: dict) -> dict:
    """Full product of two finite Laurent polynomials."""
    out: dict = {}
    for (i, x), (j, y) in cartesian(a.items(), b.items()):
        out[i + j] = out.get(i + j, 0) + x * y
    return {e: v for e, v in out.items() if v}


def A(N):
    out = zero(N)
    n = 0
    while 2 * n * n + 2 * n <= N:
        out = add(out, mul(mono(1, 2 * n * n + 2 * n, N), inv(poch(-1, 1, 1, 2 * n + 1, N))))
        n += 1
    return out


def F2(N):
    out = zero(N)
    n = 0
    while n * n + n <= N:
        out = add(out, mul(mono(1, n * n + n, N), inv(poch(1, n + 1, 1, n + 1, N))))
        n += 1
    return out


def phi(N):
    out = zero(N)
    n = 0
    while n * (n + 1) // 2 <= N:
        out = add(out, mul(mono(1, n * (n + 1) // 2, N), inv(poch(1, 1, 2, n + 1, N))))
        n += 1
    return out


def at_q2(a, N):
    out = zero(N)
    for i, x in enumerate(a):
        if 2 * i <= N:
            out[2 * i] = x
    return out


def double_sum_2_14(N, which):
    out = zero(N)
    for n in range(N + 1):
        if 2 * n * n + 2 * n > N:
            break
        den_n = inv(poch(-1, 1, 1, 2 * n + 1, N))
        for j in range(n + 1):
            if which == 14:
                e, s = 2 * n * n + 2 * n + j * j + j, (-1) ** j
            else:
                e, s = 2 * n * n + 2 * n + (n - j) ** 2, (-1) ** n
            if e > N:
                continue
            t = mul(den_n, inv(poch(1, 2, 2, n - j, N)))
            t = mul(t, inv(poch(1, 2, 2, j, N)))
            t = mul(t, inv(add(const(1, N), mono(-1, 2 * j + 1, N))))
            out = add(out, scale(shift(t, e), s))
    return out


def kac_peterson_lhs(N):
    out = [0] * (N + 1)
    n = 0
    while 2 * n * n + n - n * n <= N:
        for j in range(-n, n + 1):
            for e, s in ((2 * n * n + n - j * j, 1), (2 * n * n + 3 * n + 1 - j * j, -1)):
                if 0 <= e <= N:
                    out[e] += s * (-1) ** abs(j)
        n += 1
    return out


def f_abc(a, b, c, ex, ey, p, N, window):
    """Brute-force ``f_{a,b,c}(q^ex, q^ey, q^p)`` over a square index window."""
    out = [0] * (N + 1)
    for r in range(-window, window + 1):
        for s in range(-window, window + 1):
            if (r >= 0) == (s >= 0):
                sign = 1 if r >= 0 else -1
                e = ex * r + ey * s + p * (a * r * (r - 1) // 2 + b * r * s + c * s * (s - 1) // 2)
                if 0 <= e <= N:
                    out[e] += sign * (-1) ** ((r + s) % 2)
    return out


def multi_sum(k, N):
    """Direct enumeration over ``n_1 >= ... >= n_k >= 0``."""
    out = zero(N)
    top = 0
    while (top + 1) ** 2 + (top + 1) <= N:
        top += 1

    def rec(prefix):
        nonlocal out
        if len(prefix) == k:
            e = sum(n * n + n for n in prefix)
            if e > N:
                return
            t = mono((-1) ** prefix[-1], e, N)
            for a, b in zip(prefix, prefix[1:]):
                t = mul(t, inv(poch(1, 1, 1, a - b, N)))
            t = mul(t, inv(poch(1, 2, 2, prefix[-1], N)))
            out = add(out, t)
            return
        hi = prefix[-1] if prefix else top
        for n in range(hi + 1):
            rec(prefix + [n])

    rec([])
    return out


def bailey_beta_from_alpha(alpha, a_exp, m, n, N):
    """``sum_j alpha_j / ((q^m;q^m)_{n-j} (a q^m;q^m)_{n+j})`` with dense alpha lists."""
    out = zero(N)
    for j in range(n + 1):
        t = mul(alpha[j], inv(poch(1, m, m, n - j, N)))
        t = mul(t, inv(poch(1, a_exp + m, m, n + j, N)))
        out = add(out, t)
    return out


# --- Bailey pairs, transcribed from their closed forms ---------------------------------


def from_laurent(d: dict, N):
    out = zero(N)
    for e, v in d.items():
        assert e >= 0, "oracle expects a power series here"
        if e <= N:
            out[e] += v
    return out


def _inner_terms(n, signed):
    d = {}
    for j in range(-n, n + 1):
        d[-j * j] = d.get(-j * j, 0) + ((-1) ** abs(j) if signed else 1)
    return d


def _a_numerator(n):
    """``(1 - q^2) a_n(q)`` as a Laurent dict."""
    d = {}
    for e, v in _inner_terms(n, True).items():
        for shift, s in ((3 * n * n + 2 * n, 1), (3 * n * n + 4 * n + 1, -1)):
            d[e + shift] = d.get(e + shift, 0) + s * v
    return d


def thm21_alpha(n, N):
    # q^(-n^2-n) (a_n(q^(1/2)) + a_n(-q^(1/2))); the 1/(1-u^2) becomes 1/(1-q)
    d = {}
    for e, v in _a_numerator(n).items():
        if e % 2 == 0:
            k = e // 2 - n * n - n
            d[k] = d.get(k, 0) + 2 * v
    return mul(from_laurent(d, N), inv(add(const(1, N), mono(-1, 1, N))))


def thm21_beta(n, N):
    den = mul(poch(1, 2, 2, n, N), add(const(1, N), mono(-1, 2 * n + 1, N)))
    return scale(inv(den), 2 * (-1) ** n)


def bar_alpha(n, N):
    d = {e: 2 * v for e, v in _a_numerator(n).items() if e % 2 == 0}
    return mul(from_laurent(d, N), inv(add(const(1, N), mono(-1, 2, N))))


def bar_beta(n, N):
    out = zero(N)
    for j in range(n + 1):
        t = inv(mul(poch(1, 4, 4, n - j, N), poch(1, 2, 4, j + 1, N)))
        out = add(out, shift(t, 2 * (n - j)))
    return scale(out, 2)


def lo_alpha(n, N):
    d = {}
    base = n * (n + 1) + 2 * n * n + n
    for e, v in _inner_terms(n, False).items():
        for sh in (0, 2 * n + 1):
            d[e + base + sh] = d.get(e + base + sh, 0) + (-1) ** n * v
    for e, v in _inner_terms(n, True).items():
        for sh, s in ((0, 1), (2 * n + 1, -1)):
            d[e + base + sh] = d.get(e + base + sh, 0) + s * v
    return mul(from_laurent(d, N), inv(add(const(1, N), mono(-1, 2, N))))


def lo_beta(n, N):
    return scale(inv(mul(poch(-1, 4, 2, 2 * n, N), poch(1, 2, 4, n + 1, N))), 2)


def hm_alpha(n, N):
    d = {}
    for e, v in _inner_terms(n, True).items():
        for sh, s in ((n * n, 1), (n * n + 2 * n + 1, -1)):
            d[e + sh] = d.get(e + sh, 0) + s * v
    return mul(from_laurent(d, N), inv(add(const(1, N), mono(-1, 1, N))))


def hm_beta(n, N):
    return scale(inv(poch(1, 2, 2, n, N)), (-1) ** n)


def unit_alpha(n, N):
    return const(1 if n == 0 else 0, N)


def unit_beta(n, N):
    return inv(mul(poch(1, 1, 1, n, N), poch(1, 2, 1, n, N)))


PAIR_ORACLES = {
    # name: (alpha, beta, a exponent, base)
    "pair_thm21": (thm21_alpha, thm21_beta, 1, 1),
    "pair_LO": (lo_alpha, lo_beta, 4, 4),
    "pair_bar": (bar_alpha, bar_beta, 2, 2),
    "pair_HM": (hm_alpha, hm_beta, 1, 1),
    "unit_pair": (unit_alpha, unit_beta, 1, 1),
}
