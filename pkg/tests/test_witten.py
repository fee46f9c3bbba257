from fractions import Fraction

import pytest

import oracles as o
from tmfdual.modforms import e2_series
from tmfdual.qseries import QSeries
from tmfdual.witten import (
    CharSeries,
    NotDivisible,
    UnsupportedDegree,
    a_hat,
    factor_p1,
    genus_integrand,
    lambda_constant,
    wit_ch,
)

P = 14


@pytest.fixture(scope="module")
def root_oracle():
    return o.witten_monomial_coefficients(P)


@pytest.mark.parametrize("rank", [4, 8, 16])
def test_matches_root_expansion(rank, root_oracle):
    g = genus_integrand(rank, 8, P)
    for name, m in (("s2", (1, 0)), ("s2^2", (2, 0)), ("s4", (0, 1))):
        assert [g.coefficient(m).coeff(n) for n in range(P)] == root_oracle[name]


def test_rank2_collapses_s4(root_oracle):
    # with one root s4 = s2^2, so the two degree-8 coefficients add up
    g = genus_integrand(2, 8, P)
    assert g.coefficient((0, 1)).is_zero()
    got = [g.coefficient((2, 0)).coeff(n) for n in range(P)]
    assert got == [a + b for a, b in zip(root_oracle["s2^2"], root_oracle["s4"])]


def test_rank0_is_constant():
    assert genus_integrand(0, 8, P).terms.keys() == {(0, 0)}


def test_degree0_and_degree4():
    e2 = e2_series(40)
    for rank in (4, 8):
        g = genus_integrand(rank, 8, 40)
        assert g.coefficient((0, 0)) == QSeries.one(40)
        assert g.part(4).keys() == {(1, 0)}
        assert g.coefficient((1, 0)) == e2.scale(Fraction(-1, 24))
    assert lambda_constant(4) == lambda_constant(8) == Fraction(-1, 24)


def test_a_hat_values():
    a = a_hat(8)
    assert a.coefficient((1, 0)).coeff(0) == Fraction(-1, 24)
    # 7/5760 p1^2 - 1/1440 p2 in power sums
    pont = a.pontryagin()
    assert pont["p1^2"].coeff(0) == Fraction(7, 5760)
    assert pont["p2"].coeff(0) == Fraction(-1, 1440)


def test_multiplicativity():
    a = wit_ch(4, 8, 20)
    doubled = {m: s.scale(2 ** (m[0] + m[1])) for m, s in wit_ch(8, 8, 20).terms.items()}
    assert (a * a).terms == doubled


def test_factor_p1():
    g = genus_integrand(8, 8, 12)
    fac = factor_p1(g)
    assert fac.quotient.degree == 4
    assert fac.remainder.part(8).keys() == {(0, 1)}
    with pytest.raises(NotDivisible) as err:
        factor_p1(g, strict=True)
    assert err.value.monomial == "s4"
    q4 = factor_p1(genus_integrand(8, 4, 12), strict=True).quotient
    assert q4.coefficient((0, 0)) == e2_series(12).scale(Fraction(-1, 12))


def test_unsupported_degree_and_precision():
    with pytest.raises(UnsupportedDegree):
        genus_integrand(4, 12, 8)
    with pytest.raises(ValueError):
        wit_ch(4, 8, 1)
    with pytest.raises(ValueError):
        wit_ch(3, 8, 4)


def test_json_shape():
    j = genus_integrand(4, 4, 3).to_json()
    assert [t["monomial"] for t in j["terms"]] == ["1", "s2"]
    assert j["terms"][1]["series"]["coeffs"][0] == "-1/24"


def test_exp_needs_nilpotent():
    with pytest.raises(ValueError):
        CharSeries.constant(8, 4).exp()
