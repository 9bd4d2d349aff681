"""Hecke-type indefinite double sums.

Everything here produces den-1 power series even though the inner sums
``sum_{|j|<=n} (+-1)^j q^(-j^2)`` are Laurent polynomials dipping below zero.
Summation bounds come from the minimum exponent reachable at each outer
index; every builder takes ``slack`` to scan further than the bound, which
the completeness tests use to show nothing was cut off.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .series import EXACT, Monomial, SeriesError, TruncatedSeries, eq_to_order, poch_inf, sum_series


class ParameterError(ValueError):
    pass


class ConvergenceError(SeriesError):
    """Parameters for which the double sum has no formal expansion."""


@lru_cache(maxsize=None)
def alt_inner_sum(n: int) -> TruncatedSeries:
    """``sum_{|j|<=n} (-1)^j q^(-j^2)``."""
    if n < 0:
        raise ParameterError("n must be nonnegative")
    terms = {0: 1}
    for j in range(1, n + 1):
        terms[-j * j] = 2 if j % 2 == 0 else -2
    return TruncatedSeries(terms, 1, EXACT)


@lru_cache(maxsize=None)
def pos_inner_sum(n: int) -> TruncatedSeries:
    """``sum_{|j|<=n} q^(-j^2)``."""
    if n < 0:
        raise ParameterError("n must be nonnegative")
    terms = {0: 1}
    for j in range(1, n + 1):
        terms[-j * j] = 2
    return TruncatedSeries(terms, 1, EXACT)


@dataclass(frozen=True)
class FParams:
    """Arguments of ``f_{a,b,c}(x, y, q**p)``."""

    a: int
    b: int
    c: int
    x: Monomial
    y: Monomial
    p: int = 1

    def __post_init__(self):
        if min(self.a, self.b, self.c) <= 0 or self.p <= 0:
            raise ParameterError("a, b, c and p must be positive")
        if self.b * self.b - self.a * self.c <= 0:
            raise ParameterError("f_{a,b,c} needs an indefinite form (b^2 > ac)")

    def swapped(self) -> "FParams":
        return FParams(self.c, self.b, self.a, self.y, self.x, self.p)

    def exponent(self, r: int, s: int) -> int:
        a, b, c, p = self.a, self.b, self.c, self.p
        return self.x.exp * r + self.y.exp * s + p * (a * r * (r - 1) // 2 + b * r * s + c * s * (s - 1) // 2)

    def weight(self, r: int, s: int):
        w = Fraction(self.x.coeff) ** r * Fraction(self.y.coeff) ** s
        return -w if (r + s) % 2 else w


def f_abc(P: FParams, g: int, slack: int = 0) -> TruncatedSeries:
    """``(sum_{r,s>=0} - sum_{r,s<0}) (-1)^(r+s) x^r y^s q^(p(a r(r-1)/2 + b r s + c s(s-1)/2))``.

    With ``x``, ``y`` of positive exponent and ``a, b, c > 0`` each quadrant has
    finitely many terms below any order: in the upper quadrant the exponent
    increases in both indices; in the lower one, written with ``r = -r'``,
    ``s = -s'``, it is convex in ``s'`` and increasing in ``r'`` as soon as
    ``p*(a*(r'+1) + b) > x.exp``.
    """
    if P.x.exp <= 0 or P.y.exp <= 0:
        raise ConvergenceError("f_abc needs x and y with positive exponents")
    acc: dict = {}

    def put(e, w):
        acc[e] = acc.get(e, 0) + w

    # r, s >= 0
    past_rows = 0
    r = 0
    while past_rows <= slack:
        if P.exponent(r, 0) > g:
            past_rows += 1
        past_cols = 0
        s = 0
        while past_cols <= slack:
            e = P.exponent(r, s)
            if e > g:
                past_cols += 1
            else:
                put(e, P.weight(r, s))
            s += 1
        r += 1

    # r, s < 0
    past_rows = 0
    rn = 1
    while past_rows <= slack:
        row_min = None
        past_cols = 0
        sn = 1
        while past_cols <= slack:
            e = P.exponent(-rn, -sn)
            rising = P.exponent(-rn, -sn - 1) > e
            row_min = e if row_min is None else min(row_min, e)
            if e <= g:
                put(e, -P.weight(-rn, -sn))
            elif rising:
                past_cols += 1
            sn += 1
        if row_min > g and P.p * (P.a * (rn + 1) + P.b) > P.x.exp:
            past_rows += 1
        rn += 1

    return TruncatedSeries({e: v for e, v in acc.items() if v}, 1, g)


def _hecke_sum(k: int, g: int, slack: int = 0) -> TruncatedSeries:
    # sum_{n>=0} q^((k+1)n^2+kn) (1 - q^(2n+1)) alt_inner_sum(n); lowest
    # exponent of the n-th term is k n^2 + k n
    parts = []
    n = 0
    past = 0
    while past <= slack:
        if k * n * n + k * n > g:
            past += 1
        base = (k + 1) * n * n + k * n
        inner = alt_inner_sum(n)
        parts.append(inner.shift(base))
        parts.append(inner.shift(base + 2 * n + 1).scale(-1))
        n += 1
    return sum_series(parts, 1, EXACT).truncate(g)


def hecke_form(k: int, g: int, slack: int = 0) -> TruncatedSeries:
    """``sum_{n>=0} q^((k+1)n^2+kn) (1 - q^(2n+1)) sum_{|j|<=n} (-1)^j q^(-j^2)``."""
    if k < 2:
        raise ParameterError("hecke_form needs k >= 2")
    return _hecke_sum(k, g, slack)


def bilateral_pieces(k: int, g: int, slack: int = 0) -> tuple[TruncatedSeries, TruncatedSeries]:
    """The ``n >= 0`` and ``n < 0`` pieces of the bilateral rewrite.

    Both pieces sum ``(-1)^j q^((k+1)n^2 + kn - j^2)``; the first over
    ``|j| <= n``, the second over ``|j| <= -n-1``.
    """
    if k < 2:
        raise ParameterError("bilateral_form needs k >= 2")

    def piece(sign: int) -> TruncatedSeries:
        acc: dict = {}
        m = 0 if sign > 0 else 1
        past = 0
        while past <= slack:
            n = sign * m
            width = m if sign > 0 else m - 1
            if (k + 1) * n * n + k * n - width * width > g:
                past += 1
            for j in range(-width, width + 1):
                e = (k + 1) * n * n + k * n - j * j
                if e <= g:
                    acc[e] = acc.get(e, 0) + (-1 if j % 2 else 1)
            m += 1
        return TruncatedSeries(acc, 1, g)

    return piece(1), piece(-1)


def bilateral_form(k: int, g: int, slack: int = 0) -> TruncatedSeries:
    pos, neg = bilateral_pieces(k, g, slack)
    return pos - neg


def f_combination(k: int, g: int, slack: int = 0) -> TruncatedSeries:
    """``f_{k,k+2,k}(q^2k, q^2k, q^2) + q^(2k+1) f_{k,k+2,k}(q^(4k+2), q^(4k+2), q^2)``."""
    x1 = Monomial(1, 2 * k)
    x2 = Monomial(1, 4 * k + 2)
    first = f_abc(FParams(k, k + 2, k, x1, x1, 2), g, slack)
    second = f_abc(FParams(k, k + 2, k, x2, x2, 2), g - (2 * k + 1), slack).shift(2 * k + 1)
    return first + second


def kac_peterson(g: int, slack: int = 0) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Both sides of ``sum q^(2n^2+n)(1-q^(2n+1)) sum (-1)^j q^(-j^2) = (q)_inf (q^2;q^2)_inf``."""
    lhs = _hecke_sum(1, g, slack)
    rhs = poch_inf(Monomial(1, 1), 1, g) * poch_inf(Monomial(1, 2), 2, g)
    return lhs, rhs


def check_kac_peterson(g: int) -> bool:
    lhs, rhs = kac_peterson(g)
    return bool(eq_to_order(lhs, rhs, g))
