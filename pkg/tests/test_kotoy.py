from fractions import Fraction

import pytest

from tmfdual.abgroup import Exactness, FinAbGroup
from tmfdual.kotoy import (
    ABS,
    DegreeMismatch,
    R_map,
    c_map,
    eta_c_R_exactness,
    eta_map,
    free_pairing_ko,
    gamma_free_pair,
    gamma_ku,
    gamma_torsion_pair,
    ko_group,
    ku_group,
    table3_exactness,
    table3_sequence,
)


def test_groups():
    assert ko_group(0)[0].group() == FinAbGroup(1)
    assert ko_group(1)[1] == "eta" and ko_group(10)[1] == "eta^2*B"
    assert ko_group(-4)[1] == "A_-4"
    assert ko_group(3)[0].group().is_trivial()
    assert ku_group(-2)[1] == "beta^-1" and ku_group(3)[1] is None


def test_eta_c_R_exact():
    rows = eta_c_R_exactness(-8, 8)
    assert len(rows) == 51
    assert all(r.status is Exactness.EXACT for r in rows)


def test_wrong_c_of_A_breaks_exactness():
    bad = [r.position for r in eta_c_R_exactness(-8, 8, c_of_A=1) if not r.ok]
    assert bad == ["pi_-4 KU", "pi_4 KU"]


def test_composites_vanish():
    for n in range(-16, 16):
        assert c_map(n).compose(eta_map(n - 1)).is_zero()
        assert R_map(n).compose(c_map(n)).is_zero()
        assert eta_map(n - 2).compose(R_map(n)).is_zero()


def test_table3():
    rep = table3_exactness()
    assert len(table3_sequence()) == 14 and len(rep.rows) == 13
    assert all(s is Exactness.EXACT for _, s in rep.rows)
    assert rep.cokernel_iota4 == FinAbGroup(1, (2,))
    assert rep.ok


def test_pairings():
    assert ABS["CP1"] == (1, 1) and ABS["CP2"] == (2, 1)
    assert gamma_ku(-2, 1) == 1
    with pytest.raises(DegreeMismatch):
        gamma_ku(-2, 2)
    assert gamma_free_pair("A_-4", "[D2, S1]") == 1
    assert gamma_free_pair("A_-4", "[D2, S1]", x_mult=3) == 3
    with pytest.raises(DegreeMismatch):
        gamma_free_pair("B", "[D2, S1]")
    assert all(abs(free_pairing_ko(d)) == 1 for d in range(-16, 17, 4))
    with pytest.raises(DegreeMismatch):
        free_pairing_ko(2)


def test_torsion_pairings():
    d7 = gamma_torsion_pair("d7")
    assert d7.value.value == Fraction(1, 2) and d7.provenance.startswith("computed")
    assert gamma_torsion_pair("d7", 2).value.value == 0
    d6 = gamma_torsion_pair("d6")
    assert d6.value.value == Fraction(1, 2) and d6.provenance == "recorded"
    with pytest.raises(ValueError):
        gamma_torsion_pair("d5")
