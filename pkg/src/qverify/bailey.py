"""Bailey pairs, the two explicit pair transforms, and Bailey's lemma.

A pair ``(alpha_n, beta_n)`` relative to ``a`` over base ``q**m`` satisfies

    beta_n = sum_{j=0..n} alpha_j / ((q^m; q^m)_{n-j} (a q^m; q^m)_{n+j}).

Sequence generators take ``(n, guarantee)`` and return a den-1 series exact
through at least ``guarantee``.  They are memoized; every generator is a pure
function of its arguments.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .hecke import ParameterError, alt_inner_sum, pos_inner_sum
from .report import FAIL, PASS, Mismatch, VerificationReport
from .series import (
    BaseMismatchError,
    Monomial,
    SeriesError,
    TruncatedSeries,
    div_binomial,
    eq_to_order,
    even_double,
    mul,
    poch_finite,
    poch_finite_inv,
    poch_inf,
    poch_inf_inv,
    project_integer,
    reinterpret_half,
    sum_series,
)

Generator = Callable[[int, int], TruncatedSeries]

Q = Monomial(1, 1)


class GeneratorError(SeriesError):
    """A sequence generator failed; carries the pair name and index."""


def _memo(fn: Generator) -> Generator:
    if hasattr(fn, "cache_info"):
        return fn
    return lru_cache(maxsize=None)(fn)


@dataclass(frozen=True)
class BaileyPair:
    """A Bailey pair relative to ``a`` over base ``q**base``.

    ``floor`` is a lower bound for the exponents of every ``alpha(n)`` and
    ``beta(n)``; the summation bounds in the lemma and the transforms rely on
    it.
    """

    name: str
    a: Monomial
    base: int
    alpha: Generator
    beta: Generator
    floor: int = 0

    def __post_init__(self):
        if self.base <= 0:
            raise ParameterError("base must be positive")
        object.__setattr__(self, "alpha", _memo(self.alpha))
        object.__setattr__(self, "beta", _memo(self.beta))

    def _get(self, which: str, n: int, g: int) -> TruncatedSeries:
        fn = self.alpha if which == "alpha" else self.beta
        try:
            s = fn(n, g)
        except Exception as exc:
            raise GeneratorError(f"{self.name}.{which}({n}) failed: {exc}") from exc
        if s and s.min_exponent < self.floor:
            raise GeneratorError(f"{self.name}.{which}({n}) has exponent {s.min_exponent} below floor {self.floor}")
        return s.truncate(g)

    def alpha_at(self, n: int, g: int) -> TruncatedSeries:
        return self._get("alpha", n, g)

    def beta_at(self, n: int, g: int) -> TruncatedSeries:
        return self._get("beta", n, g)


@lru_cache(maxsize=None)
def _inv_poch(coeff, exp: int, step: int, n: int, g: int) -> TruncatedSeries:
    return poch_finite_inv(Monomial(coeff, exp), step, n, 1, g)


def inv_poch(x: Monomial, step: int, n: int, g: int) -> TruncatedSeries:
    """Cached ``1/(x; q^step)_n`` through ``g``."""
    return _inv_poch(x.coeff, x.exp, step, n, g)


def definition_sum(p: BaileyPair, n: int, g: int) -> TruncatedSeries:
    """Right side of the pair relation at index ``n``, built from ``alpha``."""
    m = p.base
    aq = p.a.shift(m)
    parts = []
    for j in range(n + 1):
        al = p.alpha_at(j, g)
        gi = g - min(0, al.min_exponent or 0)
        parts.append(mul(al, mul(inv_poch(Monomial(1, m), m, n - j, gi), inv_poch(aq, m, n + j, gi))))
    return sum_series(parts, 1, g)


def _elapsed(t0: float) -> int:
    return int((time.perf_counter() - t0) * 1000)


def check_pair(p: BaileyPair, n_max: int, g: int) -> VerificationReport:
    """Check the defining relation for every ``n <= n_max`` through ``g``."""
    if n_max < 0 or g < 0:
        raise ParameterError("n_max and g must be nonnegative")
    t0 = time.perf_counter()
    params = {"n_max": n_max}
    for n in range(n_max + 1):
        lhs = p.beta_at(n, g)
        rhs = definition_sum(p, n, g)
        v = eq_to_order(lhs, rhs, g)
        if not v:
            mm = Mismatch.at(v.exponent, v.den, v.lhs, v.rhs, where=f"n={n}")
            return VerificationReport(p.name, params, g, FAIL, mm, _elapsed(t0))
    return VerificationReport(p.name, params, g, PASS, None, _elapsed(t0))


def apply_S1(p: BaileyPair) -> BaileyPair:
    """``alpha'_n = a^n q^(m n^2) alpha_n``, ``beta'_n = sum_j a^j q^(m j^2) beta_j / (q^m;q^m)_{n-j}``."""
    m, a = p.base, p.a

    def weight(n: int) -> int:
        return a.exp * n + m * n * n

    def alpha(n: int, g: int) -> TruncatedSeries:
        w = weight(n)
        return p.alpha_at(n, g - w).shift(w).scale(a.coeff**n)

    def beta(n: int, g: int) -> TruncatedSeries:
        parts = []
        for j in range(n + 1):
            w = weight(j)
            if w + p.floor > g:
                continue
            b = p.beta_at(j, g - w)
            parts.append(mul(b, inv_poch(Monomial(1, m), m, n - j, g - w)).shift(w).scale(a.coeff**j))
        return sum_series(parts, 1, g)

    return BaileyPair(f"S1({p.name})", a, m, alpha, beta, min(p.floor, 0))


def apply_E1(p: BaileyPair) -> BaileyPair:
    """Base-change transform from a pair relative to ``a^2`` over ``q^2``.

    The result is relative to ``a^4`` over ``q^4``, keeps ``alpha``, and has
    ``beta'_n = sum_j (-1)^(n-j) q^(2(n-j)^2) beta_j / ((-a^2 q^2; q^2)_{2n} (q^4; q^4)_{n-j})``.
    """
    if p.base != 2:
        raise BaseMismatchError(f"E1 needs a pair over q^2, got base {p.base}")
    if p.a.exp % 2:
        raise BaseMismatchError("E1 needs a relative parameter that is a square (even exponent)")
    a2 = p.a
    x = Monomial(-a2.coeff, a2.exp + 2)

    def beta(n: int, g: int) -> TruncatedSeries:
        front = inv_poch(x, 2, 2 * n, g)
        parts = []
        for j in range(n + 1):
            w = 2 * (n - j) ** 2
            if w + p.floor > g:
                continue
            b = p.beta_at(j, g - w)
            term = mul(b, inv_poch(Monomial(1, 4), 4, n - j, g - w)).shift(w)
            parts.append(term.scale(-1) if (n - j) % 2 else term)
        return mul(sum_series(parts, 1, g), front)

    return BaileyPair(f"E1({p.name})", a2 * a2, 4, p.alpha, beta, p.floor)


def _weighted_sum(p: BaileyPair, which: str, g: int, weight, factor, slack: int) -> TruncatedSeries:
    """``sum_n factor(n) * weight(n) * seq(n)`` through ``g``.

    ``weight(n)`` returns ``(exponent, coefficient)``; once ``exponent + floor``
    exceeds ``g`` and is no longer decreasing, later terms cannot contribute.
    ``slack`` more terms are still evaluated in full.
    """
    parts = []
    n = 0
    past = 0
    prev = None
    while past <= slack:
        w_exp, w_coeff = weight(n)
        low = w_exp + p.floor
        if low > g and (prev is None or low >= prev):
            past += 1
        gg = max(g - w_exp, p.floor)
        seq = p.alpha_at(n, gg) if which == "alpha" else p.beta_at(n, gg)
        if seq:
            f = factor(n, gg - min(0, seq.min_exponent))
            term = seq if f is None else mul(seq, f)
            parts.append(term.shift(w_exp).scale(w_coeff))
        prev = low
        n += 1
    return sum_series(parts, 1, g)


def lemma_XYinf(p: BaileyPair, g: int, slack: int = 0) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Bailey's lemma with ``X, Y -> infinity``.

    ``sum a^n q^(m n^2) beta_n = 1/(a q^m; q^m)_inf * sum a^n q^(m n^2) alpha_n``.
    """
    m, a = p.base, p.a
    if a.exp < 0:
        raise ParameterError("lemma needs a relative parameter with nonnegative exponent")

    def weight(n):
        return a.exp * n + m * n * n, a.coeff**n

    def none(n, gg):
        return None

    lhs = _weighted_sum(p, "beta", g, weight, none, slack)
    inner = _weighted_sum(p, "alpha", g, weight, none, slack)
    rhs = mul(inner, poch_inf_inv(a.shift(m), m, g))
    return lhs, rhs.truncate(g)


def lemma_Xnegq_Yinf(p: BaileyPair, g: int, slack: int = 0) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Bailey's lemma with ``X = -q^m``, ``Y -> infinity`` (``m`` the pair's base).

    ``sum (-q^m;q^m)_n a^n q^(m n(n-1)/2) beta_n
    = (-a;q^m)_inf/(a q^m;q^m)_inf * sum (-q^m;q^m)_n a^n q^(m n(n-1)/2) alpha_n / (-a;q^m)_n``.
    """
    m, a = p.base, p.a
    if a.exp <= 0:
        raise ParameterError("X = -q lemma needs a relative parameter with positive exponent")
    negq = Monomial(-1, m)
    nega = -a

    def weight(n):
        return a.exp * n + m * n * (n - 1) // 2, a.coeff**n

    def lhs_factor(n, gg):
        return poch_finite(negq, m, n, 1, gg)

    def rhs_factor(n, gg):
        return mul(poch_finite(negq, m, n, 1, gg), inv_poch(nega, m, n, gg))

    lhs = _weighted_sum(p, "beta", g, weight, lhs_factor, slack)
    inner = _weighted_sum(p, "alpha", g, weight, rhs_factor, slack)
    front = mul(poch_inf(nega, m, g), poch_inf_inv(a.shift(m), m, g))
    return lhs, mul(inner, front).truncate(g)


def multi_sum(k: int, g: int, slack: int = 0) -> TruncatedSeries:
    """``sum over n_1 >= ... >= n_k >= 0`` of
    ``q^(sum n_i^2 + n_i) (-1)^(n_k) / ((q)_{n_1-n_2} ... (q)_{n_{k-1}-n_k} (q^2;q^2)_{n_k})``.

    Evaluated innermost index first: ``T_k(n) = (-1)^n q^(n^2+n)/(q^2;q^2)_n`` and
    ``T_i(n) = q^(n^2+n) sum_{n' <= n} T_{i+1}(n') / (q)_{n-n'}``; tuples that are
    not weakly decreasing never appear.
    """
    if k < 2:
        raise ParameterError("multi_sum needs k >= 2")
    top = 0
    past = 0
    while past <= slack:
        if (top + 1) ** 2 + (top + 1) > g:
            past += 1
        top += 1
    top -= 1
    q2 = Monomial(1, 2)
    level = []
    for n in range(top + 1):
        w = n * n + n
        t = inv_poch(q2, 2, n, max(g - w, 0)).shift(w)
        level.append(t.scale(-1) if n % 2 else t)
    for _ in range(k - 1):
        nxt = []
        for n in range(top + 1):
            w = n * n + n
            gg = max(g - w, 0)
            inner = sum_series((mul(level[i].truncate(gg), inv_poch(Q, 1, n - i, gg)) for i in range(n + 1)), 1, gg)
            nxt.append(inner.shift(w))
        level = nxt
    return sum_series(level, 1, g)


def multi_sum_2_19(k: int, g: int, slack: int = 0) -> TruncatedSeries:
    return multi_sum(k, g, slack)


# --- registered pairs -------------------------------------------------------


def _hecke_numerator(n: int) -> TruncatedSeries:
    # x^(3n^2+2n) (1 - x^(2n+1)) sum_{|j|<=n} (-1)^j x^(-j^2), exact
    inner = alt_inner_sum(n)
    base = 3 * n * n + 2 * n
    return inner.shift(base) - inner.shift(base + 2 * n + 1)


def bar_alpha_numerator(n: int) -> TruncatedSeries:
    """``(1 - q^2) * (a_n(q) + a_n(-q))`` as an exact Laurent polynomial."""
    return even_double(_hecke_numerator(n))


def lo_alpha_numerator(n: int) -> TruncatedSeries:
    """``(1 - q^2) * alpha_n`` of the pair relative to ``(q^4, q^4)``, written out term by term."""
    e = 2 * n * n + n
    first = (pos_inner_sum(n).shift(e) + pos_inner_sum(n).shift(e + 2 * n + 1)).scale(-1 if n % 2 else 1)
    second = alt_inner_sum(n).shift(e) - alt_inner_sum(n).shift(e + 2 * n + 1)
    return (first + second).shift(n * (n + 1))


def _over(num: TruncatedSeries, x: Monomial, g: int) -> TruncatedSeries:
    return div_binomial(num.truncate(g), x, g)


def _thm21_alpha(n: int, g: int) -> TruncatedSeries:
    num = project_integer(even_double(reinterpret_half(_hecke_numerator(n))))
    return _over(num.shift(-n * n - n), Q, g)


def _thm21_beta(n: int, g: int) -> TruncatedSeries:
    b = inv_poch(Monomial(1, 2), 2, n, g).scale(2 if n % 2 == 0 else -2)
    return div_binomial(b, Monomial(1, 2 * n + 1))


def _lo_alpha(n: int, g: int) -> TruncatedSeries:
    return _over(lo_alpha_numerator(n), Monomial(1, 2), g)


def _lo_beta(n: int, g: int) -> TruncatedSeries:
    return mul(inv_poch(Monomial(-1, 4), 2, 2 * n, g), inv_poch(Monomial(1, 2), 4, n + 1, g)).scale(2)


def _bar_alpha(n: int, g: int) -> TruncatedSeries:
    return _over(bar_alpha_numerator(n), Monomial(1, 2), g)


def _bar_beta(n: int, g: int) -> TruncatedSeries:
    parts = []
    for j in range(n + 1):
        w = 2 * (n - j)
        if w > g:
            continue
        gg = g - w
        parts.append(mul(inv_poch(Monomial(1, 4), 4, n - j, gg), inv_poch(Monomial(1, 2), 4, j + 1, gg)).shift(w))
    return sum_series(parts, 1, g).scale(2)


def _hm_alpha(n: int, g: int) -> TruncatedSeries:
    inner = alt_inner_sum(n)
    num = inner.shift(n * n) - inner.shift(n * n + 2 * n + 1)
    return _over(num, Q, g)


def _hm_beta(n: int, g: int) -> TruncatedSeries:
    return inv_poch(Monomial(1, 2), 2, n, g).scale(-1 if n % 2 else 1)


def _unit_alpha(n: int, g: int) -> TruncatedSeries:
    return TruncatedSeries({0: 1} if n == 0 else {}, 1, g)


def _unit_beta(n: int, g: int) -> TruncatedSeries:
    return mul(inv_poch(Q, 1, n, g), inv_poch(Monomial(1, 2), 1, n, g))


pair_thm21 = BaileyPair("pair_thm21", Monomial(1, 1), 1, _thm21_alpha, _thm21_beta)
pair_LO = BaileyPair("pair_LO", Monomial(1, 4), 4, _lo_alpha, _lo_beta)
pair_bar = BaileyPair("pair_bar", Monomial(1, 2), 2, _bar_alpha, _bar_beta)
pair_HM = BaileyPair("pair_HM", Monomial(1, 1), 1, _hm_alpha, _hm_beta)
unit_pair = BaileyPair("unit_pair", Monomial(1, 1), 1, _unit_alpha, _unit_beta)

PAIRS: dict[str, BaileyPair] = {p.name: p for p in (pair_thm21, pair_LO, pair_bar, pair_HM, unit_pair)}


def halve_base(s: TruncatedSeries) -> TruncatedSeries:
    """``q^2 -> q`` for a series in even powers of q."""
    return project_integer(reinterpret_half(s))


def zcoeff_sides(n: int, g: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Both convolution forms of ``beta-bar_n(q) / 2``.

    ``sum_j q^(n-j) / ((q^2;q^2)_{n-j} (q;q^2)_{j+1})`` and
    ``sum_j (-1)^j q^(j(j+1)) / ((q)_{n-j} (q^2;q^2)_j (1 - q^(2j+1)))``.
    """
    left = []
    right = []
    for j in range(n + 1):
        w = n - j
        if w <= g:
            gg = g - w
            left.append(mul(inv_poch(Monomial(1, 2), 2, n - j, gg), inv_poch(Q, 2, j + 1, gg)).shift(w))
        w = j * (j + 1)
        if w <= g:
            gg = g - w
            t = mul(inv_poch(Q, 1, n - j, gg), inv_poch(Monomial(1, 2), 2, j, gg))
            t = div_binomial(t, Monomial(1, 2 * j + 1)).shift(w)
            right.append(t.scale(-1) if j % 2 else t)
    return sum_series(left, 1, g), sum_series(right, 1, g)


__all__ = [
    "BaileyPair",
    "GeneratorError",
    "PAIRS",
    "apply_E1",
    "apply_S1",
    "check_pair",
    "definition_sum",
    "halve_base",
    "lemma_XYinf",
    "lemma_Xnegq_Yinf",
    "multi_sum",
    "multi_sum_2_19",
    "pair_HM",
    "pair_LO",
    "pair_bar",
    "pair_thm21",
    "unit_pair",
    "zcoeff_sides",
]
