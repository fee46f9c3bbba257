import math

import pytest

from tmfdual.abgroup import FinAbGroup
from tmfdual.modforms import C4, C6, DELTA
from tmfdual.tmfdata import (
    A,
    ETA2_COKERNEL,
    ETA_COKERNEL,
    NegativeI,
    NotInMF,
    TableError,
    WrongDegree,
    _parse,
    _validate,
    a_coefficient,
    image_generators,
    in_image_eta,
    in_image_weight,
    load_table,
    pi_tmf,
    U,
)


def test_spot_values():
    assert str(A(3)) == "Z/24"
    assert str(A(65)) == "Z/2 (+) Z/2"
    assert str(A(-31)) == "Z/2"
    assert A(0).is_trivial() and A(-21).is_trivial()
    assert load_table(3)[10] == FinAbGroup(0, (3,))
    assert A(27).order() == 12


@pytest.mark.parametrize("m", range(-12, 12))
def test_shaded_orders(m):
    assert A(24 * m + 3).order() == 24 // math.gcd(24, m + 1)


@pytest.mark.parametrize("d", range(-300, 300))
def test_duality_of_orders(d):
    if d % 24 in (3, 23):
        return
    assert A(d).order() == A(-d - 22).order()


def test_periodicity():
    for d in range(-200, 200):
        assert load_table(2)[d] == load_table(2)[d + 192]
        assert load_table(3)[d] == load_table(3)[d + 72]


def test_parse_rejects_bad_tables():
    with pytest.raises(TableError):
        _parse("wrong,header\n", 3)
    with pytest.raises(TableError):
        _parse("d_mod_period,factors\n3,6\n", 3)
    with pytest.raises(TableError):
        _parse("d_mod_period,factors\n80,3\n", 3)
    asym = _parse("d_mod_period,factors\n10,3\n", 3)
    with pytest.raises(TableError):
        _validate(asym)


def test_image_membership():
    D1 = DELTA**-1
    assert in_image_weight(24 * D1)
    assert not any(in_image_weight(n * D1) for n in range(1, 24))
    assert in_image_weight(C4 * D1)
    assert in_image_weight(2 * C6 * D1)
    assert not in_image_weight(C6 * D1)
    assert in_image_weight(12 * DELTA**-2) and not in_image_weight(6 * DELTA**-2)
    with pytest.raises(NotInMF):
        in_image_weight(C4**-1 * C6)
    with pytest.raises(NegativeI):
        a_coefficient(-1, 1, 0)


def test_eta_image():
    assert ETA_COKERNEL == {2, 3, 5, 6, 7} and ETA2_COKERNEL == {3, 6, 7}
    assert in_image_eta(1, 0)
    assert not in_image_eta(49, 2)
    assert in_image_eta(9, 0)  # eta c4, a positive power of c4
    with pytest.raises(WrongDegree):
        in_image_eta(3, 0)


def test_image_generators_and_groups():
    assert image_generators(-24)[0] == "24*D^-1"
    assert image_generators(-31)[:2] == ["eta*c4^2*D^-2", "eta*c4^5*D^-3"]
    assert image_generators(3) == []
    assert U(0) == FinAbGroup(10)
    assert U(1) == FinAbGroup.from_orders([2] * 10)
    assert pi_tmf(3) == FinAbGroup(0, (24,))
    assert pi_tmf(-21).is_trivial()
