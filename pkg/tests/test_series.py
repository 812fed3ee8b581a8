from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from singmod.series import (
    QSeries,
    coeff_at,
    euler_product,
    q_derivative,
    rescale,
    series_inv,
    series_mul,
)

q = QSeries.monomial(1)


def brute_eta24(order):
    # q * prod (1 - q^n)^24 by repeated multiplication of dense lists
    c = [0] * order
    c[0] = 1
    for n in range(1, order):
        for _ in range(24):
            for i in range(order - 1, n - 1, -1):
                c[i] -= c[i - n]
    return [0] + c[: order - 1]


def test_difference_of_squares():
    assert (1 - q) * (1 + q) == 1 - q**2


def test_exponent_additivity():
    assert QSeries.monomial(-1) * q == QSeries.constant(1)


def test_delta_against_brute_force():
    delta = euler_product(12).power(24).shift(1).truncate(12)
    assert delta.coefficients(0, 12) == brute_eta24(12)
    assert delta.coefficients(1, 5) == [1, -24, 252, -1472]


def test_inverse_examples():
    geom = (1 - q).inverse(order=6)
    assert geom.coefficients(0, 6) == [1] * 6
    assert geom.prec == 6
    assert q.inverse(order=3) == QSeries.monomial(-1).truncate(3)
    delta = euler_product(8).power(24).shift(1)
    inv = series_inv(delta)
    assert inv.coefficients(-1, 2) == [1, 24, 324]


def test_non_invertible():
    with pytest.raises(ValueError, match="non-invertible"):
        series_inv(QSeries({}, order=5))


def test_derivative_examples():
    assert q_derivative(QSeries.monomial(-1)) == -QSeries.monomial(-1)
    assert q_derivative(QSeries.constant(7)).coeffs == {}
    from singmod.forms import build_form

    dj = build_form("j", 4).derivative()
    assert dj.coefficients(-1, 3) == [-1, 0, 196884, 2 * 21493760]


def test_rescale_examples():
    s = QSeries({-1: 1, 1: 1}, order=None)
    assert rescale(s, 4) == QSeries({-4: 1, 4: 1}, order=None)
    assert rescale(q, Fraction(1, 24)) == QSeries.monomial(Fraction(1, 24))
    from singmod.forms import eisenstein

    assert rescale(eisenstein(4, 3), 4).coeff_at(4) == 240
    with pytest.raises(ValueError):
        rescale(q, 0)
    with pytest.raises(ValueError):
        rescale(q, -1)


def test_coeff_at_examples():
    from singmod.forms import build_form

    j = build_form("j", 3)
    assert coeff_at(j, 1) == 196884
    assert coeff_at(j, 2) == 21493760
    assert coeff_at(QSeries.constant(1), -1) == 0
    with pytest.raises(ValueError, match="beyond truncation"):
        j.coeff_at(3)


def test_truncation_rule():
    a = QSeries({-1: 1, 0: 2}, order=5)
    b = QSeries({2: 1}, order=4)
    c = a * b
    # min(a.order + b.floor, b.order + a.floor) = min(7, 3)
    assert c.prec == 3
    assert c.floor == 1


def test_fractional_exponents():
    eta = euler_product(10).shift(Fraction(1, 24))
    assert eta.scale == 24
    assert eta.coeff_at(Fraction(1, 24)) == 1
    assert eta.coeff_at(Fraction(25, 24)) == -1
    eta24 = eta.power(24)
    assert eta24.scale == 1
    assert eta24.coefficients(1, 4) == [1, -24, 252]


def test_fractional_power_needs_monic():
    with pytest.raises(ValueError):
        QSeries({0: 2, 1: 1}, order=5).power(Fraction(1, 2))


def test_json_round_trip():
    s = QSeries({-3: Fraction(1, 7), 2: -5}, order=9, scale=4)
    assert QSeries.from_json(s.to_json()) == s
    data = s.to_json()
    assert data["coeffs"][0] == [-3, "1/7"]


def test_dense_and_sparse_multiply_agree():
    a = QSeries({i: (i * 7) % 13 - 6 for i in range(60)}, order=60)
    b = QSeries({i: (i * 5) % 11 - 5 for i in range(-3, 57)}, order=57)
    dense = series_mul(a, b)
    sparse = QSeries({}, order=dense.order, scale=1)
    out = {}
    for i, x in a.coeffs.items():
        for k, y in b.coeffs.items():
            out[i + k] = out.get(i + k, 0) + x * y
    sparse = QSeries(out, order=dense.order)
    assert dense == sparse


def test_exact_series_power_needs_order():
    with pytest.raises(ValueError):
        (1 - q).inverse()


# -- properties ------------------------------------------------------------------

coeff = st.fractions(min_value=-20, max_value=20, max_denominator=5)


@st.composite
def series(draw, min_floor=-3):
    floor = draw(st.integers(min_floor, 2))
    length = draw(st.integers(1, 8))
    values = draw(st.lists(coeff, min_size=length, max_size=length))
    order = floor + length + draw(st.integers(0, 3))
    return QSeries({floor + i: v for i, v in enumerate(values)}, order=order)


@st.composite
def unit_series(draw):
    s = draw(series())
    lead = draw(st.fractions(min_value=1, max_value=5, max_denominator=3))
    return s + QSeries({s.floor - 1: lead}, order=None)


@settings(max_examples=60, deadline=None)
@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert ((a + b) * c).agrees_with(a * c + b * c)
    assert ((a * b) * c).agrees_with(a * (b * c))
    assert (a * b).agrees_with(b * a)


@settings(max_examples=60, deadline=None)
@given(unit_series(), st.integers(1, 10))
def test_inverse_is_two_sided(a, n):
    inv = series_inv(a, order=n)
    prod = a * inv
    assert prod.agrees_with(QSeries.constant(1))
    assert (inv * a).agrees_with(QSeries.constant(1))
    assert inv.floor == -a.floor


@settings(max_examples=60, deadline=None)
@given(series(), series())
def test_leibniz(a, b):
    assert (a * b).derivative().agrees_with(a.derivative() * b + a * b.derivative())


@settings(max_examples=60, deadline=None)
@given(series(), st.fractions(min_value=Fraction(1, 6), max_value=6, max_denominator=6),
       st.fractions(min_value=Fraction(1, 6), max_value=6, max_denominator=6))
def test_rescale_composition(a, s, t):
    assert rescale(rescale(a, s), t) == rescale(a, s * t)


@settings(max_examples=40, deadline=None)
@given(unit_series(), st.integers(-4, 4))
def test_power_matches_repeated_multiplication(a, k):
    if k >= 0:
        assert a.power(k, order=a.floor * k + 6).agrees_with(a**k)
    else:
        inv = series_inv(a, order=a.floor * k + 6)
        assert a.power(k, order=a.floor * k + 6).agrees_with(inv ** (-k))


@settings(max_examples=40, deadline=None)
@given(series(min_floor=0))
def test_half_power_squares_back(a):
    monic = QSeries({0: 1}, order=None) + QSeries({e: c for e, c in a.coeffs.items() if e > 0}, order=a.order)
    if monic.order is None:
        return
    root = monic.power(Fraction(1, 2), order=monic.prec)
    assert (root * root).agrees_with(monic)


def test_multiply_without_gmpy2(monkeypatch):
    from singmod import series as series_module

    a = QSeries({i: (i * 7) % 13 - 6 for i in range(80)}, order=80)
    b = QSeries({i: Fraction((i * 5) % 11 - 5, 3) for i in range(-2, 78)}, order=78)
    fast = series_mul(a, b)
    monkeypatch.setattr(series_module, "_bigint", int)
    assert series_mul(a, b) == fast
