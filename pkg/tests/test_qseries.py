from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import Laurent, delta_product, sigma
from tmfdual.qseries import (
    InsufficientPrecision,
    QSeries,
    ZeroLeadingCoefficient,
    constant_term,
    constant_term_of_product,
    divisor_sigma,
    eta_power_normalized,
    multiplication_algorithm,
)

fractions = st.fractions(max_denominator=12).map(lambda x: Fraction(x).limit_denominator(12))


@st.composite
def series(draw, min_len=1, max_len=12, unit=False):
    lead = draw(st.integers(-4, 4))
    n = draw(st.integers(min_len, max_len))
    coeffs = draw(st.lists(st.integers(-50, 50).map(Fraction) | fractions, min_size=n, max_size=n))
    if unit and coeffs[0] == 0:
        coeffs[0] = Fraction(1)
    return QSeries(lead, lead + n, coeffs)


def to_laurent(s: QSeries) -> Laurent:
    return Laurent({n: s.coeff(n) for n in range(s.lead, s.prec)}, s.prec)


def agrees(s: QSeries, o: Laurent) -> bool:
    # stored leading zeros make the package's precision claim pessimistic, never optimistic
    return s.prec <= o.prec and all(s.coeff(n) == o[n] for n in range(min(s.lead, o.lead()), s.prec))


def test_text_and_json_render():
    s = QSeries(-1, 2, [1, 744, 196884])
    assert s.to_text() == "q^-1 + 744 + 196884*q + O(q^2)"
    assert s.to_json() == {"lead": -1, "prec": 2, "coeffs": ["1", "744", "196884"]}
    assert QSeries.from_json(s.to_json()) == s
    assert QSeries(0, 2, [Fraction(1, 2), -3]).to_text() == "1/2 - 3*q + O(q^2)"
    assert QSeries.zero(3).to_text() == "O(q^3)"


def test_coefficients_below_lead_are_exact_zero_and_above_prec_unknown():
    s = QSeries(2, 4, [5, 6])
    assert s.coeff(-10) == 0 and s.coeff(3) == 6
    with pytest.raises(InsufficientPrecision):
        s.coeff(4)


def test_wrong_coefficient_count_rejected():
    with pytest.raises(ValueError):
        QSeries(0, 3, [1, 2])


def test_precision_rules():
    a = QSeries(-1, 3, [1, 0, 0, 0])
    b = QSeries(0, 5, [1, 1, 1, 1, 1])
    assert (a + b).prec == 3
    assert (a * b).prec == min(-1 + 5, 0 + 3)
    assert (a * b).lead == -1


def test_division_by_zero_lead_rejected():
    with pytest.raises(ZeroLeadingCoefficient):
        QSeries.one(3) / QSeries(0, 2, [0, 1])


def test_constant_term_needs_precision():
    with pytest.raises(InsufficientPrecision):
        constant_term(QSeries(-3, 0, [1, 2, 3]))
    with pytest.raises(InsufficientPrecision):
        constant_term_of_product(QSeries(-2, 0, [1, 1]), QSeries(0, 1, [1]))


@settings(max_examples=60, deadline=None)
@given(series(), series())
def test_mul_matches_oracle(a, b):
    assert agrees(a * b, to_laurent(a) * to_laurent(b))


@settings(max_examples=60, deadline=None)
@given(series(), series(unit=True))
def test_div_matches_oracle(a, b):
    assert agrees(a / b, to_laurent(a) / to_laurent(b))


@settings(max_examples=60, deadline=None)
@given(series(), series())
def test_constant_term_of_product_matches_full_product(a, b):
    p = a * b
    if p.prec > 0:
        assert constant_term_of_product(a, b) == constant_term(p)


@settings(max_examples=40, deadline=None)
@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert ((a * b) * c).agrees_with(a * (b * c))
    assert (a * (b + c)).agrees_with(a * b + a * c)
    assert (a * b) == (b * a)


@settings(max_examples=30, deadline=None)
@given(series(unit=True), st.integers(-3, 3))
def test_pow_is_repeated_product(a, n):
    expect = QSeries.one(len(a))
    for _ in range(abs(n)):
        expect = expect * a
    if n < 0:
        expect = QSeries.one(len(a)) / expect
    assert a**n == expect


def test_karatsuba_agrees_with_naive():
    a = QSeries(0, 200, [(-1) ** n * (n * n + 3) for n in range(200)])
    b = QSeries(-2, 198, [Fraction(n + 1, 7) for n in range(200)])
    with multiplication_algorithm("naive"):
        slow = a * b
    with multiplication_algorithm("karatsuba"):
        fast = a * b
    assert slow == fast


def test_divisor_sigma():
    assert [divisor_sigma(1, n) for n in range(1, 13)] == [sigma(1, n) for n in range(1, 13)]
    assert divisor_sigma(3, 6) == 1 + 8 + 27 + 216


def test_eta_power_24_is_delta_over_q():
    d = delta_product(30)
    e = eta_power_normalized(24, 29)
    assert all(e.coeff(n) == d[n + 1] for n in range(29))


def test_hash_and_eq_consistent():
    a = QSeries(0, 3, [1, 2, 3])
    assert hash(a) == hash(QSeries(0, 3, [1, 2, 3]))
    assert a != QSeries(0, 4, [1, 2, 3, 0])
    assert a.agrees_with(QSeries(0, 4, [1, 2, 3, 0]))
