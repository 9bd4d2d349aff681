"""Registry of checkable identities and the verification driver.

Each entry yields one or more comparisons ``(labels, lhs, rhs)`` at a
requested order. Entries whose right side lives in powers of ``q**(1/2)``
build it at den 2 and project back to integer powers. Every summation
builder takes ``slack``: the number of extra outer indices scanned past the
computed cutoff. The completeness tests use it to show the cutoffs lose
nothing.
"""

from __future__ import annotations

import fnmatch
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Optional

from . import bailey, hecke
from .bailey import PAIRS, inv_poch
from .hecke import ParameterError
from .report import ERROR, FAIL, PASS, Mismatch, VerificationReport
from .series import (
    EXACT,
    Monomial,
    TruncatedSeries,
    add,
    div_binomial,
    eq_to_order,
    inverse,
    mul,
    neg_base,
    poch_finite,
    poch_inf,
    poch_inf_inv,
    project_integer,
    reinterpret_half,
    stretch,
    sum_series,
)

Q = Monomial(1, 1)


class RegistryError(KeyError):
    pass


# --- named series -------------------------------------------------------------


def _outer(g: int, low: Callable[[int], int], slack: int) -> Iterator[int]:
    """Outer indices ``n = 0, 1, ...`` until ``low(n) > g`` has held ``slack + 1`` times.

    ``low`` must be nondecreasing: a lower bound for every exponent in the n-th term.
    """
    n = 0
    past = 0
    while True:
        if low(n) > g:
            past += 1
            if past > slack:
                return
        yield n
        n += 1


def _term(coeff, exp: int, g: int, *factors: Callable[[int], TruncatedSeries]) -> TruncatedSeries:
    """``coeff * q**exp * prod(factors)``; each factor is built at the remaining order."""
    gg = max(g - exp, 0)
    t = TruncatedSeries({0: coeff}, 1, gg)
    for f in factors:
        t = mul(t, f(gg))
    return t.shift(exp)


def _geo(e: int) -> Callable[[int], TruncatedSeries]:
    # 1/(1 - q^e) as a factor
    return lambda gg: div_binomial(TruncatedSeries({0: 1}, 1, gg), Monomial(1, e))


def _ip(x: Monomial, step: int, n: int) -> Callable[[int], TruncatedSeries]:
    return lambda gg: inv_poch(x, step, n, gg)


def _p(x: Monomial, step: int, n: int) -> Callable[[int], TruncatedSeries]:
    return lambda gg: poch_finite(x, step, n, 1, gg)


def _sum(terms: Iterable[TruncatedSeries], g: int) -> TruncatedSeries:
    return sum_series(terms, 1, g).truncate(g)


def A(g: int, slack: int = 0) -> TruncatedSeries:
    """``A(q) = sum_n q^(2n^2+2n) / (-q; q)_{2n+1}``."""
    return _sum(
        (_term(1, 2 * n * n + 2 * n, g, _ip(Monomial(-1, 1), 1, 2 * n + 1)) for n in _outer(g, lambda n: 2 * n * n + 2 * n, slack)),
        g,
    )


def F2(g: int, slack: int = 0) -> TruncatedSeries:
    """``F_2(q) = sum_n q^(n^2+n) / (q^(n+1); q)_{n+1}``."""
    return _sum(
        (_term(1, n * n + n, g, _ip(Monomial(1, n + 1), 1, n + 1)) for n in _outer(g, lambda n: n * n + n, slack)),
        g,
    )


def phi(g: int, slack: int = 0) -> TruncatedSeries:
    """``phi(q) = sum_n q^(n(n+1)/2) / (q; q^2)_{n+1}``."""
    return _sum(
        (_term(1, n * (n + 1) // 2, g, _ip(Q, 2, n + 1)) for n in _outer(g, lambda n: n * (n + 1) // 2, slack)),
        g,
    )


def _at_q2(fn: Callable[..., TruncatedSeries], g: int, slack: int) -> TruncatedSeries:
    return stretch(fn(g // 2, slack), 2).truncate(g)


def _half_even(s_full: TruncatedSeries) -> TruncatedSeries:
    """``s(q^(1/2)) + s(-q^(1/2))`` at den 2, before projection."""
    h = reinterpret_half(s_full)
    return add(h, neg_base(h))


# --- double sums ----------------------------------------------------------------
# Cutoffs: each outer index n bounds the lowest exponent of all its inner terms.


def lhs_2_13(g: int, slack: int = 0) -> TruncatedSeries:
    """``2 sum_{n>=j>=0} (-1)^j q^(n^2+n+j(j+1)/2) / ((-q)_n (q)_{n-j} (q)_j (1-q^(2j+1)))``."""
    negq = Monomial(-1, 1)
    parts = []
    for n in _outer(g, lambda n: n * n + n, slack):
        for j in range(n + 1):
            e = n * n + n + j * (j + 1) // 2
            parts.append(_term(2 * (-1) ** j, e, g, _ip(negq, 1, n), _ip(Q, 1, n - j), _ip(Q, 1, j), _geo(2 * j + 1)))
    return _sum(parts, g)


def _lhs_214_215(g: int, slack: int, exponent: Callable[[int, int], int], sign: Callable[[int, int], int]) -> TruncatedSeries:
    negq, q2 = Monomial(-1, 1), Monomial(1, 2)
    parts = []
    for n in _outer(g, lambda n: 2 * n * n + 2 * n, slack):
        for j in range(n + 1):
            parts.append(
                _term(
                    sign(n, j),
                    exponent(n, j),
                    g,
                    _ip(negq, 1, 2 * n + 1),
                    _ip(q2, 2, n - j),
                    _ip(q2, 2, j),
                    _geo(2 * j + 1),
                )
            )
    return _sum(parts, g)


def lhs_2_14(g: int, slack: int = 0) -> TruncatedSeries:
    """``sum (-1)^j q^(2n^2+2n+j^2+j) / ((-q)_{2n+1} (q^2;q^2)_{n-j} (q^2;q^2)_j (1-q^(2j+1)))``."""
    return _lhs_214_215(g, slack, lambda n, j: 2 * n * n + 2 * n + j * j + j, lambda n, j: (-1) ** j)


def lhs_2_15(g: int, slack: int = 0) -> TruncatedSeries:
    """Same denominators as :func:`lhs_2_14` with numerator ``(-1)^n q^(2n^2+2n+(n-j)^2)``."""
    return _lhs_214_215(g, slack, lambda n, j: 2 * n * n + 2 * n + (n - j) ** 2, lambda n, j: (-1) ** n)


def lhs_2_16(g: int, slack: int = 0) -> TruncatedSeries:
    """``2 sum (-1)^j q^(n(n+1)/2 + j(j+1)/2) / ((q)_{n-j} (q)_j (1-q^(2j+1)))``."""
    parts = []
    for n in _outer(g, lambda n: n * (n + 1) // 2, slack):
        for j in range(n + 1):
            e = n * (n + 1) // 2 + j * (j + 1) // 2
            parts.append(_term(2 * (-1) ** j, e, g, _ip(Q, 1, n - j), _ip(Q, 1, j), _geo(2 * j + 1)))
    return _sum(parts, g)


def single_2_16(g: int, slack: int = 0) -> TruncatedSeries:
    """``2 sum (-1)^n q^(n(n+1)/2) / ((q)_n (1-q^(2n+1)))``."""
    return _sum(
        (
            _term(2 * (-1) ** n, n * (n + 1) // 2, g, _ip(Q, 1, n), _geo(2 * n + 1))
            for n in _outer(g, lambda n: n * (n + 1) // 2, slack)
        ),
        g,
    )


def _lhs_d1(g: int, slack: int, inner_den: Monomial) -> TruncatedSeries:
    q2 = Monomial(1, 2)
    parts = []
    for n in _outer(g, lambda n: n * (n + 1) // 2, slack):
        for j in range(n + 1):
            e = n * (n + 1) // 2 + n - j
            parts.append(
                _term(
                    2 * (-1) ** (n + j),
                    e,
                    g,
                    _p(Q, 1, n),
                    _p(Monomial(-1, 1), 2, j + 1),
                    _ip(q2, 2, n - j),
                    _ip(inner_den, 2, j),
                    _geo(4 * j + 2),
                )
            )
    return _sum(parts, g)


def lhs_d1(g: int, slack: int = 0) -> TruncatedSeries:
    """``2 sum (q)_n (-q;q^2)_{j+1} (-1)^(n+j) q^(n(n+1)/2+n-j) / ((q^2;q^2)_{n-j} (-q^2;q^2)_j (1-q^(4j+2)))``."""
    return _lhs_d1(g, slack, Monomial(-1, 2))


def lhs_d1_corrected(g: int, slack: int = 0) -> TruncatedSeries:
    """:func:`lhs_d1` with ``(q^2;q^2)_j`` in place of ``(-q^2;q^2)_j``."""
    return _lhs_d1(g, slack, Monomial(1, 2))


def rhs_d1(g: int, slack: int = 0) -> TruncatedSeries:
    """``sum q^(n(n+1)/2)/(-q)_n + sum q^(n(3n+1)/2) (1+q^(2n+1)) sum_{|j|<=n} q^(-j^2)``."""
    first = [
        _term(1, n * (n + 1) // 2, g, _ip(Monomial(-1, 1), 1, n)) for n in _outer(g, lambda n: n * (n + 1) // 2, slack)
    ]
    # lowest exponent of the n-th Hecke term is n(3n+1)/2 - n^2 = n(n+1)/2
    second = []
    for n in _outer(g, lambda n: n * (n + 1) // 2, slack):
        inner = hecke.pos_inner_sum(n)
        e = n * (3 * n + 1) // 2
        second.append(inner.shift(e))
        second.append(inner.shift(e + 2 * n + 1))
    return _sum(first + [sum_series(second, 1, EXACT).truncate(g)], g)


# --- right sides at half base -------------------------------------------------------


def rhs_2_13_half(g: int, slack: int = 0) -> TruncatedSeries:
    """``A(q^(1/2)) + A(-q^(1/2))`` at den 2, exact through ``2g + 1`` half-units."""
    return _half_even(A(2 * g + 1, slack))


def rhs_2_16_half(g: int, slack: int = 0) -> TruncatedSeries:
    """``(-q)_inf/(q)_inf * ((q)_inf (u;u)_inf + (q)_inf^2 (-u;q)_inf)`` with ``u = q^(1/2)``, den 2."""
    G = 2 * g + 1
    qq = poch_inf(Monomial(1, 2), 2, G, den=2)
    front = mul(poch_inf(Monomial(-1, 2), 2, G, den=2), inverse(qq))
    uu = poch_inf(Monomial(1, 1), 1, G, den=2)
    negu = poch_inf(Monomial(-1, 1), 2, G, den=2)
    return mul(front, add(mul(qq, uu), mul(mul(qq, qq), negu)))


def rhs_2_16_hecke_half(g: int, slack: int = 0) -> TruncatedSeries:
    """``(-q)_inf/(q)_inf * (H(q^(1/2)) + H(-q^(1/2)))`` with ``H = hecke_form(2)``, den 2."""
    G = 2 * g + 1
    h = _half_even(hecke.hecke_form(2, G, slack))
    front = mul(poch_inf(Monomial(-1, 2), 2, G, den=2), poch_inf_inv(Monomial(1, 2), 2, G, den=2))
    return mul(front, h)


def _f_comb_over_q(k: int, g: int, slack: int) -> TruncatedSeries:
    return mul(hecke.f_combination(k, g, slack), poch_inf_inv(Q, 1, g))


# --- registry -------------------------------------------------------------------------


@dataclass(frozen=True)
class Comparison:
    labels: dict
    lhs: TruncatedSeries
    rhs: TruncatedSeries
    exact: bool = False

    @property
    def where(self) -> Optional[str]:
        return ",".join(f"{k}={v}" for k, v in self.labels.items()) or None


CompareFn = Callable[[dict, int, int], Iterator[Comparison]]


@dataclass(frozen=True)
class IdentityEntry:
    """A named identity: comparisons to run, defaults, and a parameter grid.

    ``grid`` maps one parameter name to the values ``verify_all`` expands
    over. ``pre_projection`` (half-base entries only) returns the den-2 right
    side before it is mapped back to integer powers.
    """

    id: str
    anchor: str
    base_den: int
    default_order: int
    compare: CompareFn = field(repr=False)
    defaults: dict = field(default_factory=dict)
    grid: Optional[tuple[str, tuple]] = None
    aliases: tuple[str, ...] = ()
    pre_projection: Optional[Callable[[int], TruncatedSeries]] = field(default=None, repr=False)

    def matches(self, pattern: str) -> bool:
        return any(fnmatch.fnmatchcase(name, pattern) for name in (self.id, *self.aliases))

    def expansions(self, overrides: Optional[dict] = None) -> list[dict]:
        overrides = overrides or {}
        base = dict(self.defaults)
        if "n_max" in base and overrides.get("n_max") is not None:
            base["n_max"] = overrides["n_max"]
        if self.grid is None:
            return [base]
        key, values = self.grid
        if key == "k" and overrides.get("k"):
            values = tuple(overrides["k"])
        return [{**base, key: v} for v in values]


def _single(lhs_fn, rhs_fn) -> CompareFn:
    def compare(params, g, slack):
        yield Comparison({}, lhs_fn(g, slack), rhs_fn(g, slack))

    return compare


def _indices(params: dict) -> Iterable[int]:
    if "n" in params:
        return (int(params["n"]),)
    n_max = int(params["n_max"])
    if n_max < 0:
        raise ParameterError("n_max must be nonnegative")
    return range(n_max + 1)


def _pair_compare(pair) -> CompareFn:
    def compare(params, g, slack):
        for n in _indices(params):
            yield Comparison({"n": n}, pair.beta_at(n, g), bailey.definition_sum(pair, n, g))

    return compare


def _compare_s1(params, g, slack):
    s1 = bailey.apply_S1(bailey.pair_thm21)
    bar = bailey.pair_bar
    G = 2 * g + 1
    for n in _indices(params):
        yield Comparison({"n": n, "part": "alpha"}, s1.alpha_at(n, g), bailey.halve_base(bar.alpha_at(n, G)))
        yield Comparison({"n": n, "part": "beta"}, s1.beta_at(n, g), bailey.halve_base(bar.beta_at(n, G)))


def _compare_e1(params, g, slack):
    e1 = bailey.apply_E1(bailey.pair_bar)
    lo = bailey.pair_LO
    for n in _indices(params):
        yield Comparison(
            {"n": n, "part": "alpha-numerator"}, bailey.bar_alpha_numerator(n), bailey.lo_alpha_numerator(n), exact=True
        )
        yield Comparison({"n": n, "part": "alpha"}, e1.alpha_at(n, g), lo.alpha_at(n, g))
        yield Comparison({"n": n, "part": "beta"}, e1.beta_at(n, g), lo.beta_at(n, g))


def _compare_zcoeff(params, g, slack):
    for n in _indices(params):
        left, right = bailey.zcoeff_sides(n, g)
        yield Comparison({"n": n}, left, right)


def _compare_2_13(params, g, slack):
    yield Comparison({}, lhs_2_13(g, slack), project_integer(rhs_2_13_half(g, slack)))


def _compare_2_14(params, g, slack):
    yield Comparison({}, lhs_2_14(g, slack), _at_q2(F2, g, slack))


def _compare_2_15(params, g, slack):
    rhs = mul(_at_q2(phi, g, slack), poch_inf_inv(Monomial(-1, 2), 2, g))
    yield Comparison({}, lhs_2_15(g, slack), rhs)


def _compare_2_16(params, g, slack):
    yield Comparison({}, lhs_2_16(g, slack), project_integer(rhs_2_16_half(g, slack)))


def _compare_2_16_single(params, g, slack):
    yield Comparison({}, single_2_16(g, slack), project_integer(rhs_2_16_half(g, slack)))


def _compare_2_16_hecke(params, g, slack):
    yield Comparison({}, lhs_2_16(g, slack), project_integer(rhs_2_16_hecke_half(g, slack)))


def _compare_kp(params, g, slack):
    lhs, rhs = hecke.kac_peterson(g, slack)
    yield Comparison({}, lhs, rhs)


def _check_k(params: dict) -> int:
    k = int(params["k"])
    if k < 2:
        raise ParameterError("k must be at least 2")
    return k


def _compare_2_19(params, g, slack):
    k = _check_k(params)
    yield Comparison({}, bailey.multi_sum_2_19(k, g, slack), _f_comb_over_q(k, g, slack))


def _compare_hecke_rewrite(params, g, slack):
    k = _check_k(params)
    comb = hecke.f_combination(k, g, slack)
    forms = {"hecke": hecke.hecke_form, "bilateral": hecke.bilateral_form}
    for name in [params["form"]] if "form" in params else list(forms):
        if name not in forms:
            raise ParameterError(f"unknown form {name!r}")
        yield Comparison({"form": name}, forms[name](k, g, slack), comb)


def _compare_d1(params, g, slack):
    yield Comparison({}, lhs_d1(g, slack), rhs_d1(g, slack))


def _compare_d1_corrected(params, g, slack):
    yield Comparison({}, lhs_d1_corrected(g, slack), rhs_d1(g, slack))


def _lemma(fn) -> CompareFn:
    def compare(params, g, slack):
        pair = PAIRS.get(params["pair"])
        if pair is None:
            raise ParameterError(f"unknown pair {params['pair']!r}")
        lhs, rhs = fn(pair, g, slack)
        yield Comparison({}, lhs, rhs)

    return compare


def _build_registry() -> dict[str, IdentityEntry]:
    pair_anchor = "beta_n = sum_j alpha_j / ((q^m;q^m)_{n-j} (a q^m;q^m)_{n+j})"
    entries = [
        IdentityEntry("pair_thm21", f"pair rel. (q, q): {pair_anchor}", 1, 40, _pair_compare(bailey.pair_thm21), {"n_max": 10}),
        IdentityEntry("pair_LO", f"pair rel. (q^4, q^4): {pair_anchor}", 1, 40, _pair_compare(bailey.pair_LO), {"n_max": 10}),
        IdentityEntry("pair_bar", f"pair rel. (q^2, q^2): {pair_anchor}", 1, 40, _pair_compare(bailey.pair_bar), {"n_max": 10}),
        IdentityEntry("pair_HM", f"pair rel. (q, q): {pair_anchor}", 1, 40, _pair_compare(bailey.pair_HM), {"n_max": 10}),
        IdentityEntry(
            "unit_pair", f"pair rel. (q, q) with alpha = [n=0]: {pair_anchor}", 1, 40,
            _pair_compare(bailey.unit_pair), {"n_max": 10}, aliases=("pair_unit",),
        ),
        IdentityEntry("link_S1", "S1(pair_thm21) = pair_bar with q^2 -> q", 1, 40, _compare_s1, {"n_max": 10}),
        IdentityEntry("link_E1", "E1(pair_bar) = pair_LO", 1, 60, _compare_e1, {"n_max": 8}),
        IdentityEntry(
            "link_zcoeff",
            "sum q^(n-j)/((q^2;q^2)_{n-j}(q;q^2)_{j+1}) = sum (-1)^j q^(j^2+j)/((q)_{n-j}(q^2;q^2)_j(1-q^(2j+1)))",
            1, 40, _compare_zcoeff, {"n_max": 10},
        ),
        IdentityEntry(
            "eq_2_13", "double sum = A(q^(1/2)) + A(-q^(1/2))", 2, 60, _compare_2_13,
            pre_projection=rhs_2_13_half,
        ),
        IdentityEntry("eq_2_14", "double sum = F_2(q^2)", 1, 60, _compare_2_14),
        IdentityEntry("eq_2_15", "double sum = phi(q^2)/(-q^2;q^2)_inf", 1, 60, _compare_2_15),
        IdentityEntry(
            "eq_2_16", "double sum = (-q)_inf/(q)_inf ((q)_inf (q^(1/2);q^(1/2))_inf + (q)_inf^2 (-q^(1/2);q)_inf)",
            2, 60, _compare_2_16, pre_projection=rhs_2_16_half,
        ),
        IdentityEntry(
            "eq_2_16_single", "2 sum (-1)^n q^(n(n+1)/2)/((q)_n(1-q^(2n+1))) = right side of eq_2_16",
            2, 60, _compare_2_16_single, pre_projection=rhs_2_16_half,
        ),
        IdentityEntry(
            "eq_2_16_hecke", "left side of eq_2_16 = (-q)_inf/(q)_inf (H_2(q^(1/2)) + H_2(-q^(1/2)))",
            2, 60, _compare_2_16_hecke, pre_projection=rhs_2_16_hecke_half,
        ),
        IdentityEntry("id_kp", "sum q^(2n^2+n)(1-q^(2n+1)) sum (-1)^j q^(-j^2) = (q)_inf (q^2;q^2)_inf", 1, 200, _compare_kp),
        IdentityEntry(
            "eq_2_19", "multi-sum = (f_{k,k+2,k}(q^2k,q^2k,q^2) + q^(2k+1) f_{k,k+2,k}(q^(4k+2),q^(4k+2),q^2))/(q)_inf",
            1, 40, _compare_2_19, grid=("k", (2, 3, 4, 6)),
        ),
        IdentityEntry(
            "hecke_rewrite", "H_k and its bilateral form = f_{k,k+2,k} combination",
            1, 60, _compare_hecke_rewrite, grid=("k", (2, 3, 4, 5, 6)),
        ),
        IdentityEntry("eq_D1", "double sum with (-q^2;q^2)_j = sum q^(n(n+1)/2)/(-q)_n + Hecke sum", 1, 50, _compare_d1),
        IdentityEntry(
            "eq_D1_corrected", "double sum with (q^2;q^2)_j = sum q^(n(n+1)/2)/(-q)_n + Hecke sum", 1, 50, _compare_d1_corrected
        ),
        IdentityEntry(
            "lemma_xyinf", "X, Y -> inf: sum a^n q^(mn^2) beta_n = sum a^n q^(mn^2) alpha_n / (aq^m;q^m)_inf",
            1, 60, _lemma(bailey.lemma_XYinf), grid=("pair", tuple(PAIRS)),
        ),
        IdentityEntry(
            "lemma_xnegq", "X = -q^m, Y -> inf specialization of Bailey's lemma",
            1, 60, _lemma(bailey.lemma_Xnegq_Yinf), grid=("pair", tuple(PAIRS)),
        ),
    ]
    return {e.id: e for e in sorted(entries, key=lambda e: e.id)}


REGISTRY: dict[str, IdentityEntry] = _build_registry()


def get_entry(identity: str) -> IdentityEntry:
    try:
        return REGISTRY[identity]
    except KeyError:
        raise RegistryError(f"unknown identity {identity!r}") from None


def entries(pattern: str = "*") -> list[IdentityEntry]:
    return [e for e in REGISTRY.values() if e.matches(pattern)]


def _params(entry: IdentityEntry, params: Optional[dict]) -> dict:
    merged = dict(entry.defaults)
    if entry.grid is not None:
        merged[entry.grid[0]] = entry.grid[1][0]
    merged.update(params or {})
    return merged


def comparisons(identity: str, params: Optional[dict] = None, g: Optional[int] = None, slack: int = 0) -> list[Comparison]:
    entry = get_entry(identity)
    g = entry.default_order if g is None else g
    if g < 0:
        raise ParameterError("order must be nonnegative")
    return list(entry.compare(_params(entry, params), g, slack))


def build_sides(
    identity: str, params: Optional[dict] = None, g: Optional[int] = None, slack: int = 0
) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Both sides of one comparison of ``identity`` through order ``g``.

    Multi-comparison entries are narrowed by any of ``n``, ``part`` or
    ``form`` in ``params``; the first remaining comparison is returned.
    """
    params = dict(params or {})
    if "n" in params and "n_max" not in params:
        params["n_max"] = params["n"]
    selectors = {k: v for k, v in params.items() if k in ("n", "part", "form")}
    for c in comparisons(identity, params, g, slack):
        if all(c.labels.get(k, v) == v for k, v in selectors.items()):
            return c.lhs, c.rhs
    raise ParameterError(f"no comparison of {identity} matches {selectors}")


def _order_of(comps: list[Comparison], g: int) -> int:
    finite = [min(c.lhs.guarantee, c.rhs.guarantee) for c in comps if not c.exact]
    return int(min(finite)) if finite else g


def verify(identity: str, params: Optional[dict] = None, g: Optional[int] = None) -> VerificationReport:
    """Run every comparison of ``identity`` and report the first mismatch, if any.

    Each comparison is checked through the common guarantee of its two sides;
    the reported order is the least of those. Builder errors are captured as
    status ``error``.
    """
    t0 = time.perf_counter()
    entry = REGISTRY.get(identity)
    shown = dict(params or {})
    if entry is None:
        return VerificationReport(identity, shown, g or 0, ERROR, None, 0, f"unknown identity {identity!r}")
    order = entry.default_order if g is None else g
    shown = {**entry.defaults, **shown}
    try:
        comps = comparisons(identity, params, order)
        for c in comps:
            gg = EXACT if c.exact else min(c.lhs.guarantee, c.rhs.guarantee)
            v = eq_to_order(c.lhs, c.rhs, gg)
            if not v:
                mm = Mismatch.at(v.exponent, v.den, v.lhs, v.rhs, c.where)
                return VerificationReport(identity, shown, order, FAIL, mm, _ms(t0))
        return VerificationReport(identity, shown, _order_of(comps, order), PASS, None, _ms(t0))
    except Exception as exc:  # reported, never raised
        return VerificationReport(identity, shown, order, ERROR, None, _ms(t0), f"{type(exc).__name__}: {exc}")


def _ms(t0: float) -> int:
    return int((time.perf_counter() - t0) * 1000)


def plan(pattern: str = "*", overrides: Optional[dict] = None) -> list[tuple[str, dict, Optional[int]]]:
    """The ``(id, params, order)`` jobs :func:`verify_all` would run, in output order."""
    overrides = overrides or {}
    jobs = []
    for e in entries(pattern):
        for p in e.expansions(overrides):
            jobs.append((e.id, p, overrides.get("order")))
    return jobs


def _run(job: tuple[str, dict, Optional[int]]) -> VerificationReport:
    return verify(*job)


def iter_verify(pattern: str = "*", overrides: Optional[dict] = None, jobs: int = 1) -> Iterator[VerificationReport]:
    """Yield reports in plan order; with ``jobs > 1`` work runs in worker processes."""
    work = plan(pattern, overrides)
    if jobs <= 1 or len(work) <= 1:
        for job in work:
            yield _run(job)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(_run, work)


def verify_all(pattern: str = "*", overrides: Optional[dict] = None, jobs: int = 1) -> list[VerificationReport]:
    return list(iter_verify(pattern, overrides, jobs))


def describe(entry: IdentityEntry) -> dict[str, Any]:
    rec: dict[str, Any] = {"id": entry.id, "anchor": entry.anchor, "defaults": {"order": entry.default_order, **entry.defaults}}
    if entry.grid is not None:
        rec["defaults"][entry.grid[0]] = list(entry.grid[1])
    if entry.aliases:
        rec["aliases"] = list(entry.aliases)
    return rec


__all__ = [
    "A",
    "Comparison",
    "F2",
    "IdentityEntry",
    "REGISTRY",
    "RegistryError",
    "build_sides",
    "comparisons",
    "describe",
    "entries",
    "get_entry",
    "iter_verify",
    "phi",
    "plan",
    "verify",
    "verify_all",
]
