"""Exact truncated Laurent series in ``u = q**(1/den)``.

A :class:`TruncatedSeries` stores a sparse map from integer unit exponents to
exact rational coefficients together with a *guarantee* ``G``: every
coefficient at a unit exponent ``<= G`` is exact, nothing above ``G`` is
stored.  Every operation computes the guarantee of its result from the
guarantees of its inputs, so "equal through order N" is a statement about the
computation rather than a hope.  Polynomials that are known exactly carry the
guarantee :data:`EXACT`.

Only ``den`` 1 (powers of ``q``) and 2 (powers of ``q**(1/2)``) are supported.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Optional, Union

from . import kernels

EXACT = math.inf

Guarantee = Union[int, float]
Rational = Union[int, Fraction]

__all__ = [
    "EXACT",
    "SeriesError",
    "GuaranteeError",
    "NotInvertibleError",
    "BaseMismatchError",
    "ParityError",
    "DegenerateProductError",
    "Monomial",
    "TruncatedSeries",
    "Verdict",
    "monomial",
    "one",
    "add",
    "mul",
    "inverse",
    "div_binomial",
    "stretch",
    "reinterpret_half",
    "neg_base",
    "even_double",
    "project_integer",
    "coeff",
    "eq_to_order",
    "poch_finite",
    "poch_finite_inv",
    "poch_inf",
    "poch_inf_inv",
    "sum_series",
]


class SeriesError(ValueError):
    """Base class for series-core failures."""


class GuaranteeError(SeriesError):
    """An exponent beyond the exact-through order was requested."""


class NotInvertibleError(SeriesError, ZeroDivisionError):
    """The series is zero through its guarantee."""


class BaseMismatchError(SeriesError):
    """Operation needs a different base denominator (or Bailey base)."""


class ParityError(SeriesError):
    """A half-integer power of q survived where only integer powers may."""

    def __init__(self, exponent: int, value: Rational):
        super().__init__(f"nonzero coefficient {value} at odd unit exponent {exponent}")
        self.exponent = exponent
        self.value = value


class DegenerateProductError(SeriesError):
    """Infinite product with the factor ``1 - 1``."""


def _norm(v) -> Rational:
    if type(v) is int:
        return v
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else v
    if isinstance(v, bool):
        return int(v)
    if isinstance(v, numbers.Rational):
        return _norm(Fraction(v.numerator, v.denominator))
    raise TypeError(f"coefficients must be exact rationals, got {type(v).__name__}")


def _check_guarantee(g) -> Guarantee:
    if g == EXACT:
        return EXACT
    if isinstance(g, bool) or not isinstance(g, numbers.Integral):
        raise TypeError(f"guarantee must be an integer or EXACT, got {g!r}")
    return int(g)


def _limit(g: Guarantee) -> Optional[int]:
    return None if g == EXACT else int(g)


@dataclass(frozen=True)
class Monomial:
    """``coeff * u**exp`` with ``coeff != 0``; ``exp`` in units of the ambient den."""

    coeff: Rational
    exp: int

    def __post_init__(self):
        c = _norm(self.coeff)
        if c == 0:
            raise ValueError("monomial coefficient must be nonzero")
        object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "exp", int(self.exp))

    def __neg__(self) -> "Monomial":
        return Monomial(-self.coeff, self.exp)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.coeff * other.coeff, self.exp + other.exp)

    def __pow__(self, n: int) -> "Monomial":
        if n < 0:
            return Monomial(Fraction(1) / Fraction(self.coeff) ** -n, self.exp * n)
        return Monomial(self.coeff**n, self.exp * n)

    def shift(self, e: int) -> "Monomial":
        return Monomial(self.coeff, self.exp + e)

    def series(self, den: int = 1, guarantee: Guarantee = EXACT) -> "TruncatedSeries":
        return monomial(self.coeff, self.exp, den, guarantee)


class TruncatedSeries:
    """Immutable sparse truncated Laurent series; see the module docstring."""

    __slots__ = ("_terms", "_den", "_guarantee")

    def __init__(
        self,
        terms: Optional[Mapping[int, Rational]] = None,
        den: int = 1,
        guarantee: Guarantee = EXACT,
    ):
        if den not in (1, 2):
            raise BaseMismatchError(f"den must be 1 or 2, got {den}")
        g = _check_guarantee(guarantee)
        clean = {}
        for e, v in (terms or {}).items():
            if isinstance(e, bool) or not isinstance(e, numbers.Integral):
                raise TypeError(f"exponents must be integers, got {e!r}")
            v = _norm(v)
            if v and e <= g:
                clean[int(e)] = v
        self._terms = clean
        self._den = den
        self._guarantee = g

    @classmethod
    def _raw(cls, terms: dict, den: int, guarantee: Guarantee) -> "TruncatedSeries":
        # Trusted path for kernel output: zero-free, already within guarantee.
        s = object.__new__(cls)
        if any(type(v) is not int for v in terms.values()):
            terms = {e: _norm(v) for e, v in terms.items()}
        s._terms = terms
        s._den = den
        s._guarantee = guarantee
        return s

    @property
    def den(self) -> int:
        return self._den

    @property
    def guarantee(self) -> Guarantee:
        return self._guarantee

    @property
    def terms(self) -> Mapping[int, Rational]:
        return MappingProxyType(self._terms)

    @property
    def is_exact(self) -> bool:
        return self._guarantee == EXACT

    @property
    def min_exponent(self) -> Optional[int]:
        return min(self._terms) if self._terms else None

    @property
    def max_exponent(self) -> Optional[int]:
        return max(self._terms) if self._terms else None

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[tuple[int, Rational]]:
        return iter(sorted(self._terms.items()))

    def coeff(self, e: int) -> Fraction:
        return coeff(self, e)

    def is_integral(self) -> bool:
        return all(type(v) is int for v in self._terms.values())

    def truncate(self, g: Guarantee) -> "TruncatedSeries":
        g = min(self._guarantee, _check_guarantee(g))
        return TruncatedSeries._raw({e: v for e, v in self._terms.items() if e <= g}, self._den, g)

    def shift(self, e: int) -> "TruncatedSeries":
        """Multiply by ``u**e``."""
        return TruncatedSeries._raw({k + e: v for k, v in self._terms.items()}, self._den, self._guarantee + e)

    def scale(self, c) -> "TruncatedSeries":
        c = _norm(c)
        if c == 0:
            return TruncatedSeries._raw({}, self._den, self._guarantee)
        return TruncatedSeries._raw({e: v * c for e, v in self._terms.items()}, self._den, self._guarantee)

    def rebase(self, den: int) -> "TruncatedSeries":
        if den == self._den:
            return self
        if self._den == 1 and den == 2:
            # a den-1 series has no half-integer powers, so the odd slot
            # just above 2G is exactly zero
            return TruncatedSeries._raw({2 * e: v for e, v in self._terms.items()}, 2, 2 * self._guarantee + 1)
        raise BaseMismatchError(f"cannot rebase den {self._den} series to den {den}")

    # structural equality: same den, guarantee and stored terms
    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._den == other._den and self._guarantee == other._guarantee and self._terms == other._terms

    def __hash__(self):
        return hash((self._den, self._guarantee, frozenset(self._terms.items())))

    def __neg__(self) -> "TruncatedSeries":
        return self.scale(-1)

    def __add__(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return add(self, other)
        return add(self, monomial(other, 0, self._den, EXACT)) if other else self

    __radd__ = __add__

    def __sub__(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return add(self, other, 1, -1)
        return self + (-_norm(other))

    def __rsub__(self, other) -> "TruncatedSeries":
        return (-self) + other

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        if isinstance(other, Monomial):
            return self.shift(other.exp).scale(other.coeff)
        return self.scale(other)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"TruncatedSeries({format_series(self)}, den={self._den})"


def format_series(s: TruncatedSeries, max_terms: int = 12) -> str:
    """Human-readable rendering, e.g. ``1 - q - 2*q^2 + O(q^41)``."""

    def power(e: int) -> str:
        x = Fraction(e, s.den)
        if x == 0:
            return ""
        if x == 1:
            return "q"
        return f"q^{x}" if x.denominator == 1 and x > 0 else f"q^({x})"

    parts = []
    for i, (e, v) in enumerate(s):
        if i == max_terms:
            parts.append("...")
            break
        p = power(e)
        mag = abs(v)
        if not p:
            body = str(mag)
        elif mag == 1:
            body = p
        else:
            body = f"{mag}*{p}"
        parts.append(("- " if v < 0 else "+ ") + body)
    if not s.is_exact:
        parts.append(f"+ O({power(int(s.guarantee) + 1) or '1'})")
    text = " ".join(parts) or "0"
    if text.startswith("+ "):
        text = text[2:]
    elif text.startswith("- "):
        text = "-" + text[2:]
    return text


def _common(s: TruncatedSeries, t: TruncatedSeries) -> tuple[TruncatedSeries, TruncatedSeries]:
    if s.den == t.den:
        return s, t
    d = s.den * t.den // math.gcd(s.den, t.den)
    return s.rebase(d), t.rebase(d)


def monomial(c, e: int, den: int = 1, guarantee: Guarantee = EXACT) -> TruncatedSeries:
    """The series ``c * u**e``."""
    g = _check_guarantee(guarantee)
    if e > g:
        raise GuaranteeError(f"exponent {e} exceeds guarantee {g}")
    return TruncatedSeries({e: c}, den, g)


def one(den: int = 1, guarantee: Guarantee = EXACT) -> TruncatedSeries:
    return monomial(1, 0, den, guarantee)


def add(s: TruncatedSeries, t: TruncatedSeries, cs=1, ct=1) -> TruncatedSeries:
    """The linear combination ``cs*s + ct*t``."""
    s, t = _common(s, t)
    g = min(s.guarantee, t.guarantee)
    cs, ct = _norm(cs), _norm(ct)
    out = {}
    if cs:
        for e, v in s._terms.items():
            if e <= g:
                out[e] = v * cs
    if ct:
        for e, v in t._terms.items():
            if e <= g:
                out[e] = out.get(e, 0) + v * ct
    return TruncatedSeries._raw({e: v for e, v in out.items() if v}, s.den, g)


def _floor_exp(s: TruncatedSeries) -> int:
    return s.min_exponent if s._terms else 0


def mul(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    """Product; exact through ``min(G_s + m_t, G_t + m_s)``."""
    s, t = _common(s, t)
    g = min(s.guarantee + _floor_exp(t), t.guarantee + _floor_exp(s))
    terms = kernels.mul_terms(s._terms, t._terms, _limit(g))
    return TruncatedSeries._raw(terms, s.den, g)


def inverse(s: TruncatedSeries, guarantee: Optional[Guarantee] = None) -> TruncatedSeries:
    """Reciprocal by leading-term division and coefficient recursion.

    The result is exact through ``G_s - 2m`` (``m`` the leading exponent),
    capped at ``guarantee`` when given.  Inverting an exact polynomial with
    more than one term needs an explicit ``guarantee``.
    """
    if not s._terms:
        raise NotInvertibleError(f"series is zero through its guarantee {s.guarantee}")
    m = s.min_exponent
    lead = s._terms[m]
    if len(s._terms) == 1 and s.is_exact:
        c = Fraction(1) / Fraction(lead)
        r = TruncatedSeries({-m: c}, s.den, EXACT)
        return r if guarantee is None else r.truncate(guarantee)
    g = s.guarantee - 2 * m
    if guarantee is not None:
        g = min(g, _check_guarantee(guarantee))
    if g == EXACT:
        raise SeriesError("inverse of an exact polynomial needs an explicit guarantee")
    return TruncatedSeries._raw(kernels.inverse_terms(s._terms, int(g)), s.den, g)


def div_binomial(s: TruncatedSeries, x: Monomial, guarantee: Optional[Guarantee] = None) -> TruncatedSeries:
    """``s / (1 - x)`` by geometric recursion; ``x.exp >= 0``."""
    if x.exp < 0:
        raise SeriesError("div_binomial needs a nonnegative exponent")
    g = s.guarantee if guarantee is None else min(s.guarantee, _check_guarantee(guarantee))
    if x.exp == 0:
        if x.coeff == 1:
            raise NotInvertibleError("division by 1 - 1")
        return s.truncate(g).scale(Fraction(1) / (1 - Fraction(x.coeff)))
    if g == EXACT:
        raise SeriesError("dividing an exact series by a binomial needs an explicit guarantee")
    return TruncatedSeries._raw(kernels.divide_binomial(s._terms, x.coeff, x.exp, int(g)), s.den, g)


def stretch(s: TruncatedSeries, k: int) -> TruncatedSeries:
    """Substitute ``u -> u**k``."""
    if k < 1:
        raise ValueError("stretch factor must be positive")
    g = s.guarantee * k + (k - 1)
    return TruncatedSeries._raw({e * k: v for e, v in s._terms.items()}, s.den, g)


def reinterpret_half(s: TruncatedSeries) -> TruncatedSeries:
    """Evaluate a den-1 series at ``q**(1/2)``: same unit exponents, den 2."""
    if s.den != 1:
        raise BaseMismatchError("reinterpret_half needs a den-1 series")
    return TruncatedSeries._raw(dict(s._terms), 2, s.guarantee)


def neg_base(s: TruncatedSeries) -> TruncatedSeries:
    """``u -> -u``."""
    return TruncatedSeries._raw({e: (-v if e & 1 else v) for e, v in s._terms.items()}, s.den, s.guarantee)


def even_double(s: TruncatedSeries) -> TruncatedSeries:
    """``s(u) + s(-u)``."""
    return add(s, neg_base(s))


def project_integer(s: TruncatedSeries) -> TruncatedSeries:
    """Reinterpret a den-2 series with only integer powers of q as den 1."""
    if s.den != 2:
        raise BaseMismatchError("project_integer needs a den-2 series")
    odd = [e for e in s._terms if e & 1]
    if odd:
        e = min(odd)
        raise ParityError(e, s._terms[e])
    g = s.guarantee if s.is_exact else s.guarantee // 2
    return TruncatedSeries._raw({e // 2: v for e, v in s._terms.items()}, 1, g)


def coeff(s: TruncatedSeries, e: int) -> Fraction:
    if e > s.guarantee:
        raise GuaranteeError(f"exponent {e} exceeds guarantee {s.guarantee}")
    return Fraction(s._terms.get(e, 0))


@dataclass(frozen=True)
class Verdict:
    """Outcome of :func:`eq_to_order`; truthy on pass.

    On failure ``exponent`` is the smallest differing unit exponent (in units
    of ``den``) and ``lhs``/``rhs`` are the two coefficients there.
    """

    passed: bool
    order: Guarantee
    den: int
    exponent: Optional[int] = None
    lhs: Optional[Fraction] = None
    rhs: Optional[Fraction] = None

    def __bool__(self) -> bool:
        return self.passed


def eq_to_order(s: TruncatedSeries, t: TruncatedSeries, g: Guarantee) -> Verdict:
    """Compare coefficients at every unit exponent ``<= g``."""
    s, t = _common(s, t)
    if g > s.guarantee or g > t.guarantee:
        raise GuaranteeError(f"order {g} exceeds guarantees ({s.guarantee}, {t.guarantee})")
    a, b = s._terms, t._terms
    bad = [e for e in set(a) | set(b) if e <= g and a.get(e, 0) != b.get(e, 0)]
    if not bad:
        return Verdict(True, g, s.den)
    e = min(bad)
    return Verdict(False, g, s.den, e, Fraction(a.get(e, 0)), Fraction(b.get(e, 0)))


def poch_finite(
    x: Monomial, step: int, n: int, den: int = 1, guarantee: Guarantee = EXACT
) -> TruncatedSeries:
    """``(x; u**step)_n = prod_{i<n} (1 - x*u**(step*i))``."""
    if step <= 0:
        raise ValueError("Pochhammer step must be positive")
    if n < 0:
        raise ValueError("Pochhammer length must be nonnegative")
    g = _check_guarantee(guarantee)
    terms = {0: 1}
    for i in range(n):
        e = x.exp + step * i
        # truncating is only safe once no factor can lower exponents
        limit = None if e < 0 else _limit(g)
        terms = kernels.mul_binomial(terms, x.coeff, e, limit)
        if not terms:
            break
    if g != EXACT:
        terms = {e: v for e, v in terms.items() if e <= g}
    return TruncatedSeries._raw(terms, den, g)


def poch_finite_inv(x: Monomial, step: int, n: int, den: int = 1, guarantee: Guarantee = 0) -> TruncatedSeries:
    """``1 / (x; u**step)_n`` through ``guarantee`` by repeated geometric division."""
    if step <= 0:
        raise ValueError("Pochhammer step must be positive")
    if x.exp < 0:
        raise SeriesError("poch_finite_inv needs a nonnegative exponent")
    r = TruncatedSeries({0: 1}, den, guarantee)
    for i in range(n):
        if not r:
            break
        r = div_binomial(r, x.shift(step * i))
    return r


def poch_inf(x: Monomial, step: int, guarantee: Guarantee, den: int = 1) -> TruncatedSeries:
    """``(x; u**step)_inf`` through ``guarantee``; factors beyond it are inert."""
    if step <= 0:
        raise ValueError("Pochhammer step must be positive")
    if x.exp < 0:
        raise SeriesError("poch_inf needs a nonnegative exponent")
    if x.exp == 0 and x.coeff == 1:
        raise DegenerateProductError("(1; q)_inf vanishes identically")
    g = _check_guarantee(guarantee)
    if g == EXACT:
        raise SeriesError("infinite product needs a finite guarantee")
    terms = {0: 1}
    e = x.exp
    while e <= g and terms:
        terms = kernels.mul_binomial(terms, x.coeff, e, g)
        e += step
    return TruncatedSeries._raw({k: v for k, v in terms.items() if k <= g}, den, g)


def poch_inf_inv(x: Monomial, step: int, guarantee: Guarantee, den: int = 1) -> TruncatedSeries:
    """``1 / (x; u**step)_inf`` through ``guarantee``; ``x.exp > 0``."""
    if step <= 0:
        raise ValueError("Pochhammer step must be positive")
    if x.exp <= 0:
        raise SeriesError("poch_inf_inv needs a positive exponent")
    g = _check_guarantee(guarantee)
    if g == EXACT:
        raise SeriesError("infinite product needs a finite guarantee")
    r = TruncatedSeries({0: 1}, den, g)
    e = x.exp
    while e <= g:
        r = div_binomial(r, Monomial(x.coeff, e))
        e += step
    return r


def sum_series(parts: Iterable[TruncatedSeries], den: int = 1, guarantee: Guarantee = EXACT) -> TruncatedSeries:
    """Sum many series; the result guarantee is the minimum over all inputs."""
    g = _check_guarantee(guarantee)
    acc: dict = {}
    get = acc.get
    for p in parts:
        if p.den != den:
            p = p.rebase(den)
        g = min(g, p.guarantee)
        for e, v in p._terms.items():
            acc[e] = get(e, 0) + v
    return TruncatedSeries._raw({e: v for e, v in acc.items() if v and e <= g}, den, g)
