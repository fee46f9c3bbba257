"""Acceptance criteria 1-12, each exact.

Every test records one ``PASS``/``FAIL`` line; the lines are printed in the
terminal summary (see ``conftest.py``) and when this file is run directly.
"""

import math
from fractions import Fraction

import oracles as o
from tmfdual import duality, kotoy, modforms, tmfdata, witten
from tmfdual.modforms import C4, C6, DELTA, MFMonomial, expand
from tmfdual.qseries import constant_term

PREC = 256
RESULTS: dict[int, tuple[bool, str]] = {}


def record(n: int, title: str, ok: bool, detail: str = "") -> None:
    RESULTS[n] = (ok, f"criterion {n:>2} {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else ""))
    assert ok, RESULTS[n][1]


# criteria 1-5 as functions of the precision, reused by criterion 12


def c1(prec):
    vals = [constant_term(expand(MFMonomial(3 * t + 2, 1, -1 - t), prec)) for t in range(21)]
    return all(v == 0 for v in vals), vals


def c2(prec):
    J = C4**3 * DELTA**-1
    M = [[duality.pair_alpha(J**k * DELTA**-1, 2 * C6 * C4**-1 * J**-l, prec=prec) for l in range(11)] for k in range(11)]
    ok = all(
        (M[k][l] == 0) if k < l else (M[k][l] == 1) if k == l else (M[k][l].denominator == 1)
        for k in range(11)
        for l in range(11)
    )
    return ok, M


def c3(prec):
    vals = duality.e2_pairings(50, prec)
    ok = vals[0] == Fraction(1, 24) and all(v.denominator == 1 for v in vals[1:]) and vals[1] == 30
    return ok, vals


def c4_(prec):
    consts = duality.j_constant_terms(50, prec)
    return all(c % 24 == 0 for c in consts), consts


def c5(prec):
    mats = {l: duality.dual_basis_matrix(l, 10, prec) for l in range(-10, 11)}
    ok = all(
        M[a][a] == 1 and all(M[a][b] == 0 for b in range(a + 1, 10))
        for M in mats.values()
        for a in range(10)
    )
    return ok, mats


def test_criterion_01_weight2_vanishing():
    ok, vals = c1(PREC)
    record(1, "weight-2 constant terms vanish, t = 0..20", ok, f"nonzero: {[v for v in vals if v]}")


def test_criterion_02_kl_table():
    ok, M = c2(PREC)
    record(2, "pair_alpha(J^k/D, 2(c6/c4)J^-l): 0 below, 1 on, integral above the diagonal", ok)


def test_criterion_03_e2_pairing():
    ok, vals = c3(PREC)
    # e2_pairing(1) = 30 by hand from the oracle: (744 - 24) / 24
    oracle = (o.j_by_division(3) * o.e2(3))[0] / 24
    record(3, "e2_pairing(0) = 1/24, integral for k = 1..50, e2_pairing(1) = 30", ok and oracle == vals[1] == 30,
           f"e2(0) = {vals[0]}, e2(1) = {vals[1]}")


def test_criterion_04_j_divisibility():
    ok, consts = c4_(PREC)
    record(4, "J^k|q^0 = 0 mod 24 for k = 1..50", ok, f"J|q^0 = {consts[0]}")


def test_criterion_05_dual_bases():
    ok, _ = c5(PREC)
    record(5, "dual_basis_matrix(l, 10) lower unitriangular for l in [-10, 10]", ok)


def test_criterion_06_image_membership():
    D1 = DELTA**-1
    ok = (
        tmfdata.in_image_weight(24 * D1)
        and not any(tmfdata.in_image_weight(n * D1) for n in range(1, 24))
        and tmfdata.in_image_weight(C4 * D1)
        and tmfdata.in_image_weight(2 * C6 * D1)
        and not tmfdata.in_image_weight(C6 * D1)
    )
    record(6, "24/D, c4/D, 2c6/D in the image; n/D (n < 24), c6/D not", ok)


WINDOW = range(-288, 288)  # 576 degrees, a multiple of both periods 192 and 72


def test_criterion_07_table_duality():
    bad = [d for d in WINDOW if d % 24 not in (3, 23) and tmfdata.A(d).order() != tmfdata.A(-d - 22).order()]
    record(7, "|A_d| = |A_(-d-22)| over a 576-degree window", not bad, f"violations: {bad[:5]}")


def test_criterion_08_bn_denominators():
    shaded = [d for d in WINDOW if d % 24 == 3]
    bad = [d for d in shaded if tmfdata.A(d).order() != 24 // math.gcd(24, (d - 3) // 24 + 1)]
    spots = [tmfdata.A(24 * m + 3).order() for m in range(5)]
    record(8, "shaded |A_(24m+3)| = 24/gcd(24, m+1), spots 24 12 8 6 24", not bad and spots == [24, 12, 8, 6, 24],
           f"{len(shaded)} shaded degrees, spots {spots}")


def test_criterion_09_uc_defect():
    r = duality.pairing_matrix_U_C(-24, 6)
    defect = r.diagonal == [24, 1, 1, 1, 1, 1] and r.rows[0] == "24*D^-1"
    unit = all(
        all(x == 1 for x in duality.pairing_matrix_U_C(d, 6).diagonal)
        for d in range(-120, 121, 4)
        if d % 24 not in (0, 4)
    )
    record(9, "U x C at d = -24 has exactly the factor-24 defect at D^-1; unit diagonal off 0, 4 mod 24",
           defect and unit, f"diagonal at -24: {[str(x) for x in r.diagonal]}")


def test_criterion_10_ko_toy():
    ecr = all(r.ok for r in kotoy.eta_c_R_exactness(-8, 8))
    t3 = kotoy.table3_exactness()
    free = kotoy.gamma_free_pair("A_-4", "[D2, S1]") == 1
    d7 = kotoy.gamma_torsion_pair("d7")
    d6 = kotoy.gamma_torsion_pair("d6")
    ok = (
        ecr
        and t3.ok
        and str(t3.cokernel_iota4) == "Z (+) Z/2"
        and free
        and d7.value.value == Fraction(1, 2)
        and d7.provenance.startswith("computed")
        and d6.value.value == Fraction(1, 2)
        and d6.provenance == "recorded"
    )
    record(10, "eta c R and bordism-sequence exactness, coker = Z (+) Z/2, <A,[D2,S1]> = 1, d7 = d6 = 1/2", ok,
           f"coker {t3.cokernel_iota4}, d7 {d7.value} ({d7.provenance}), d6 {d6.value} ({d6.provenance})")


def test_criterion_11_witten():
    terms = 40
    e2 = modforms.e2_series(terms)
    ok = True
    lams = {}
    for rank in (4, 8):
        g = witten.genus_integrand(rank, 8, terms)
        lam = g.coefficient((1, 0)).coeff(0)
        lams[rank] = lam
        ok &= g.coefficient((0, 0)).agrees_with(modforms.expand(modforms.ONE, terms))
        ok &= g.part(4).keys() == {(1, 0)} and g.coefficient((1, 0)) == e2.scale(lam)
    # lambda from the explicit-root expansion, independent of the engine
    root = o.witten_monomial_coefficients(33)["s2"]
    ok &= root == [e2.coeff(n) * root[0] for n in range(33)]
    ok &= lams[4] == lams[8] == root[0]
    record(11, "A-hat ch(Wit): degree 0 is 1, degree 4 is lambda E2 p1 over 40 terms, lambda rank-stable", ok,
           f"lambda = {lams[4]} (ranks 4, 8), root oracle {root[0]}")


def test_criterion_12_precision_stability():
    same = []
    for fn in (c1, c2, c3, c4_, c5):
        lo_ok, lo = fn(64)
        hi_ok, hi = fn(256)
        same.append(lo_ok and hi_ok and lo == hi)
    record(12, "criteria 1-5 pass identically at prec 64 and 256", all(same), f"per criterion: {same}")


if __name__ == "__main__":
    import sys

    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    for n in sorted(RESULTS):
        print(RESULTS[n][1])
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) and len(RESULTS) == 12 else 1)
