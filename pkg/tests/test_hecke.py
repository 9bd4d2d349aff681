import random

import pytest

from qverify import bailey, hecke
from qverify.hecke import ConvergenceError, FParams, ParameterError
from qverify.series import Monomial, TruncatedSeries, eq_to_order, mul, poch_inf

from . import oracles as O


def dense(s, N):
    return [s.coeff(e) for e in range(N + 1)]


def test_inner_sums():
    assert hecke.alt_inner_sum(0) == TruncatedSeries({0: 1})
    assert hecke.alt_inner_sum(1) == TruncatedSeries({0: 1, -1: -2})
    assert hecke.alt_inner_sum(2) == TruncatedSeries({0: 1, -1: -2, -4: 2})
    assert hecke.pos_inner_sum(1) == TruncatedSeries({0: 1, -1: 2})
    assert hecke.pos_inner_sum(2) == TruncatedSeries({0: 1, -1: 2, -4: 2})
    assert hecke.alt_inner_sum(5).min_exponent == -25
    with pytest.raises(ParameterError):
        hecke.alt_inner_sum(-1)


def test_fparams_validation():
    with pytest.raises(ParameterError):
        FParams(1, 1, 1, Monomial(1, 1), Monomial(1, 1))
    with pytest.raises(ParameterError):
        FParams(0, 2, 1, Monomial(1, 1), Monomial(1, 1))
    with pytest.raises(ConvergenceError):
        hecke.f_abc(FParams(1, 2, 1, Monomial(1, 0), Monomial(1, 1)), 10)


def _random_params(rng):
    while True:
        a, c = rng.randint(1, 4), rng.randint(1, 4)
        b = rng.randint(1, 6)
        if b * b > a * c:
            break
    x = Monomial(rng.choice((1, -1, 2)), rng.randint(1, 5))
    y = Monomial(rng.choice((1, -1)), rng.randint(1, 5))
    return FParams(a, b, c, x, y, rng.randint(1, 2))


def test_f_abc_swap_symmetry_on_random_parameters():
    rng = random.Random(2024)
    for _ in range(20):
        P = _random_params(rng)
        assert hecke.f_abc(P, 30) == hecke.f_abc(P.swapped(), 30)


@pytest.mark.parametrize("abc,ex,ey,p", [((1, 2, 1), 1, 1, 1), ((2, 4, 2), 4, 4, 2), ((3, 5, 3), 6, 6, 2), ((1, 3, 2), 2, 1, 1)])
def test_f_abc_against_window_oracle(abc, ex, ey, p):
    N = 30
    got = hecke.f_abc(FParams(*abc, Monomial(1, ex), Monomial(1, ey), p), N)
    assert dense(got, N) == O.f_abc(*abc, ex, ey, p, N, window=40)


def test_f_abc_constant_term():
    f = hecke.f_abc(FParams(2, 4, 2, Monomial(1, 4), Monomial(1, 4), 2), 20)
    assert f.coeff(0) == 1


def test_f_abc_scaled_form_equals_base_change():
    # f_{2k,2k+4,2k}(x, y, q) = f_{k,k+2,k}(x, y, q^2)
    for k in (2, 3):
        x = Monomial(1, 2 * k)
        left = hecke.f_abc(FParams(2 * k, 2 * k + 4, 2 * k, x, x, 1), 40)
        right = hecke.f_abc(FParams(k, k + 2, k, x, x, 2), 40)
        assert left == right


def test_f_abc_window_extension_changes_nothing():
    for k in range(2, 7):
        for ex in (2 * k, 4 * k + 2):
            P = FParams(k, k + 2, k, Monomial(1, ex), Monomial(1, ex), 2)
            assert hecke.f_abc(P, 60) == hecke.f_abc(P, 60, slack=2)


def test_hecke_form_examples():
    assert hecke.hecke_form(2, 3) == TruncatedSeries({0: 1, 1: -1}, 1, 3)
    assert hecke.hecke_form(3, 10).coeff(0) == 1
    with pytest.raises(ParameterError):
        hecke.hecke_form(1, 10)


@pytest.mark.parametrize("k", range(2, 7))
def test_hecke_form_equals_f_combination(k):
    comb = hecke.f_combination(k, 60)
    assert eq_to_order(hecke.hecke_form(k, 60), comb, 60)
    assert hecke.hecke_form(k, 60) == hecke.hecke_form(k, 60, slack=2)


@pytest.mark.parametrize("k", [2, 3])
def test_bilateral_form_equals_f_combination(k):
    assert eq_to_order(hecke.bilateral_form(k, 40), hecke.f_combination(k, 40), 40)
    assert hecke.bilateral_form(k, 40) == hecke.bilateral_form(k, 40, slack=2)


def test_negative_piece_by_direct_enumeration():
    k, N = 2, 40
    _, neg = hecke.bilateral_pieces(k, N)
    brute = {}
    for n in range(-30, 0):
        for j in range(-(-n - 1), -n):
            e = (k + 1) * n * n + k * n - j * j
            if e <= N:
                brute[e] = brute.get(e, 0) + (-1) ** abs(j)
    assert dict(neg.terms) == {e: v for e, v in brute.items() if v}
    # the n = -1, j = 0 term sits at q^1
    assert neg.min_exponent == 1


def test_outputs_have_no_negative_exponents():
    for s in (hecke.hecke_form(4, 50), hecke.bilateral_form(4, 50), hecke.f_combination(4, 50), *hecke.kac_peterson(50)):
        assert s.den == 1 and s.min_exponent >= 0


def test_kac_peterson_prefix_and_order_200():
    lhs, rhs = hecke.kac_peterson(5)
    assert dense(lhs, 5) == dense(rhs, 5) == [1, -1, -2, 1, 0, 2]
    assert dense(lhs, 5) == O.kac_peterson_lhs(5)
    assert dense(rhs, 5) == O.mul(O.poch_inf(1, 1, 1, 5), O.poch_inf(1, 2, 2, 5))
    assert hecke.check_kac_peterson(200)


def test_f_combination_links_to_multi_sum():
    # f_{2,4,2}(q^4,q^4,q^2) = (q)_inf * multisum(2) - q^5 f_{2,4,2}(q^10,q^10,q^2)
    g = 40
    q = Monomial(1, 1)
    first = hecke.f_abc(FParams(2, 4, 2, Monomial(1, 4), Monomial(1, 4), 2), g)
    second = hecke.f_abc(FParams(2, 4, 2, Monomial(1, 10), Monomial(1, 10), 2), g - 5).shift(5)
    assert eq_to_order(first, mul(poch_inf(q, 1, g), bailey.multi_sum(2, g)) - second, g)
