"""Named suites of checks run by ``tmfdual verify``."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import duality, kotoy, modforms, tmfdata, witten
from .modforms import C4, C6, DELTA, MFElement, monomial_of_weight
from .qseries import QSeries, constant_term, divisor_sigma

__all__ = ["Check", "Context", "SUITES", "UnknownSuite", "run_suite"]


class UnknownSuite(KeyError):
    pass


@dataclass(frozen=True)
class Check:
    id: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"id": self.id, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class Context:
    prec: int = 256
    seed: int = 20240101


@dataclass
class Report:
    suite: str
    context: Context
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "prec": self.context.prec,
            "seed": self.context.seed,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }

    def to_text(self) -> str:
        lines = [f"{'PASS' if c.passed else 'FAIL'} {c.id}" + (f"  {c.detail}" if c.detail else "") for c in self.checks]
        lines.append(f"{sum(c.passed for c in self.checks)}/{len(self.checks)} checks passed")
        return "\n".join(lines)


# -- individual suites ----------------------------------------------------


def _weight2_values(ctx: Context) -> list[Fraction]:
    return modforms.weight2_constant_terms(20, ctx.prec)


def suite_weight2(ctx: Context) -> list[Check]:
    vals = _weight2_values(ctx)
    return [Check("weight2/constant_terms_t0_20", all(v == 0 for v in vals), f"{len(vals)} forms, nonzero: {[v for v in vals if v]}")]


def _kl_values(ctx: Context):
    return duality.kl_matrix(10, ctx.prec)


def suite_kl(ctx: Context) -> list[Check]:
    M = _kl_values(ctx)
    n = len(M)
    below = all(M[k][l] == 0 for k in range(n) for l in range(n) if k < l)
    diag = all(M[k][k] == 1 for k in range(n))
    above = all(M[k][l].denominator == 1 for k in range(n) for l in range(n) if k > l)
    J = C4**3 * DELTA**-1
    v = duality.pair_alpha(J**2 * DELTA**-1, 2 * C6 * C4**-1 * J**-1, prec=ctx.prec)
    return [
        Check("kl/zero_for_k_lt_l", below),
        Check("kl/one_on_diagonal", diag),
        Check("kl/integral_for_k_gt_l", above),
        Check("kl/k2_l1_value", v == 0, f"pair_alpha(J^2/D, 2(c6/c4)/J) = {v}"),
    ]


def _e2_values(ctx: Context) -> list[Fraction]:
    return duality.e2_pairings(50, ctx.prec)


def suite_e2(ctx: Context) -> list[Check]:
    vals = _e2_values(ctx)
    sig = QSeries(0, 51, [0] + [divisor_sigma(1, n) for n in range(1, 51)])
    jk = duality.j_powers(50, 1)
    ident = all(
        vals[k] == Fraction(constant_term(jk[k - 1]), 24) - constant_term(jk[k - 1] * sig)
        for k in range(1, 51)
    )
    return [
        Check("e2/k0_is_1_over_24", vals[0] == Fraction(1, 24), str(vals[0])),
        Check("e2/k1_is_30", vals[1] == 30, str(vals[1])),
        Check("e2/integral_k1_50", all(v.denominator == 1 for v in vals[1:])),
        Check("e2/sigma_identity_k1_50", ident),
    ]


def _jdiv_values(ctx: Context) -> list[int]:
    return duality.j_divisibility(50, ctx.prec)


def suite_jdiv(ctx: Context) -> list[Check]:
    res = _jdiv_values(ctx)
    first = duality.j_constant_terms(2)
    return [
        Check("jdiv/k1_744", first[0] == 744, str(first[0])),
        Check("jdiv/all_zero_mod_24_k1_50", all(r == 0 for r in res), f"residues {sorted(set(res))}"),
    ]


def _dualbasis_values(ctx: Context):
    return {l: duality.dual_basis_matrix(l, 10, ctx.prec) for l in range(-10, 11)}


def _lower_unitriangular(M) -> bool:
    n = len(M)
    return all(M[a][a] == 1 for a in range(n)) and all(
        M[a][b] == 0 for a in range(n) for b in range(a + 1, n)
    ) and all(M[a][b].denominator == 1 for a in range(n) for b in range(a))


def suite_dualbasis(ctx: Context) -> list[Check]:
    mats = _dualbasis_values(ctx)
    bad = [l for l, M in mats.items() if not _lower_unitriangular(M)]
    return [
        Check("dualbasis/lower_unitriangular_l-10_10", not bad, f"failing l: {bad}"),
        Check("dualbasis/size1", duality.dual_basis_matrix(0, 1) == [[1]]),
    ]


def suite_image(ctx: Context) -> list[Check]:
    D1 = DELTA**-1
    wrong = [n for n in range(1, 24) if tmfdata.in_image_weight(n * D1)]
    return [
        Check("image/24_over_D", tmfdata.in_image_weight(24 * D1)),
        Check("image/n_over_D_excluded_1_23", not wrong, f"wrongly in image: {wrong}"),
        Check("image/c4_over_D", tmfdata.in_image_weight(C4 * D1)),
        Check("image/2c6_over_D", tmfdata.in_image_weight(2 * C6 * D1)),
        Check("image/c6_over_D_excluded", not tmfdata.in_image_weight(C6 * D1)),
        Check("image/eta_rules", tmfdata.in_image_eta(1, 0) and not tmfdata.in_image_eta(49, 2) and not tmfdata.in_image_eta(170, 7)),
    ]


WINDOW = (-288, 287)  # 576 = lcm(192, 72) * 1 degrees


def suite_tables(ctx: Context) -> list[Check]:
    rep = duality.torsion_duality_check(*WINDOW)
    shaded_bad = []
    for d in range(WINDOW[0], WINDOW[1] + 1):
        if d % 24 == 3:
            m = (d - 3) // 24
            if tmfdata.A(d).order() != 24 // math.gcd(24, m + 1):
                shaded_bad.append(d)
    spots = [tmfdata.A(24 * m + 3).order() for m in range(5)]
    empty = all(tmfdata.A(d).is_trivial() for d in range(WINDOW[0], WINDOW[1] + 1) if d % 24 == 23)
    return [
        Check("tables/duality_576_window", rep.ok, f"{len(rep.pairs)} pairs, violations {rep.violations[:5]}"),
        Check("tables/shaded_law", not shaded_bad, f"failing d: {shaded_bad[:5]}"),
        Check("tables/shaded_spot_values", spots == [24, 12, 8, 6, 24], str(spots)),
        Check("tables/empty_at_minus_1_mod_24", empty),
        Check("tables/spot_A3_Am31_A0", str(tmfdata.A(3)) == "Z/24" and str(tmfdata.A(-31)) == "Z/2" and tmfdata.A(0).is_trivial()),
        Check("tables/period_576", all(tmfdata.A(d) == tmfdata.A(d + 576) for d in range(*WINDOW))),
    ]


def suite_bn(ctx: Context) -> list[Check]:
    checks = []
    bad = []
    for m in range(24):
        d = 24 * m + 3
        k = -1 - m
        gen = duality.bn_generator(d, size=4)
        a = 24 // math.gcd(24, k)
        rows = duality.dual_basis_rows((d + 1) // 4, 4)
        vals = [duality.bn_pair(f, gen).value for f in rows]
        if gen.order() != a or vals != [duality.ModZValue(Fraction(1, a)).value, 0, 0, 0] or tmfdata.A(d).order() != a:
            bad.append(d)
    checks.append(Check("bn/generator_orders_match_tables_m0_23", not bad, f"failing d: {bad}"))
    gen3 = duality.bn_generator(3)
    checks.append(Check("bn/d3_pairs_to_1_over_24", duality.bn_pair(DELTA**-1, gen3).value == Fraction(1, 24)))
    # integral and MF inputs give the zero class
    s = QSeries(-2, 10, [1, -3, 5, 7, 0, 2, 1, 1, 1, 9, 4, 4])
    mf = modforms.expand(C4**2 * C6 * DELTA**-1 - 3 * C4**5 * C6 * DELTA**-2, 10)
    checks.append(Check("bn/integral_is_zero", duality.bn_reduce(s, 1).is_zero()))
    checks.append(Check("bn/mf_is_zero", duality.bn_reduce(mf.scale(Fraction(1, 7)), 1).is_zero()))
    return checks


def suite_uc(ctx: Context) -> list[Check]:
    r = duality.pairing_matrix_U_C(-24, 6)
    defect = r.diagonal == [24, 1, 1, 1, 1, 1] and not r.perfect
    unit_bad = []
    for d in range(-120, 121, 4):
        if d % 24 in (0, 4):
            continue
        u = duality.pairing_matrix_U_C(d, 6)
        if not u.perfect or any(x != 1 for x in u.diagonal):
            unit_bad.append(d)
    return [
        Check("uc/d-24_factor_24_defect", defect, f"diagonal {[str(x) for x in r.diagonal]}"),
        Check("uc/unit_diagonal_off_0_4_mod_24", not unit_bad, f"failing d: {unit_bad}"),
    ]


def suite_representatives(ctx: Context) -> list[Check]:
    rng = random.Random(ctx.seed)
    bad = 0
    for _ in range(10):
        l = rng.randint(-6, 6)
        w = 2 * l
        wf = -w - 10
        topf, topg = modforms.max_nonneg_k(wf), modforms.max_nonneg_k(w)
        f = MFElement({monomial_of_weight(wf, topf - t): rng.randint(-5, 5) for t in range(3)}, wf)
        g = MFElement({monomial_of_weight(w, topg + 1 + t): rng.randint(-5, 5) for t in range(3)}, w)
        m = MFElement({monomial_of_weight(w, topg - t): rng.randint(-5, 5) for t in range(3)}, w)
        if duality.pair_alpha(f, g) != duality.pair_alpha(f, g + m):
            bad += 1
    return [Check("duality/representative_independence_10_cases", bad == 0, f"seed {ctx.seed}, failures {bad}")]


def suite_kotoy(ctx: Context) -> list[Check]:
    rows = kotoy.eta_c_R_exactness(-8, 8)
    mutated = [r for r in kotoy.eta_c_R_exactness(-8, 8, c_of_A=1) if not r.ok]
    t3 = kotoy.table3_exactness()
    d7 = kotoy.gamma_torsion_pair("d7")
    d6 = kotoy.gamma_torsion_pair("d6")
    return [
        Check("kotoy/eta_c_R_exact_-8_8", all(r.ok for r in rows), f"{len(rows)} positions"),
        Check("kotoy/mutation_breaks_exactness", any(r.position == "pi_-4 KU" for r in mutated), f"{[r.position for r in mutated]}"),
        Check("kotoy/table3_exact", all(s.name == "EXACT" for _, s in t3.rows)),
        Check("kotoy/table3_cokernel", str(t3.cokernel_iota4) == "Z (+) Z/2", str(t3.cokernel_iota4)),
        Check("kotoy/free_pairing_A_D2S1", kotoy.gamma_free_pair("A_-4", "[D2, S1]") == 1),
        Check("kotoy/free_pairing_perfect_0_mod_4", all(abs(kotoy.free_pairing_ko(d)) == 1 for d in range(-16, 17, 4))),
        Check("kotoy/d7_half", d7.value.value == Fraction(1, 2) and d7.provenance.startswith("computed")),
        Check("kotoy/d7_times_2_zero", kotoy.gamma_torsion_pair("d7", 2).value.value == 0),
        Check("kotoy/d6_half_recorded", d6.value.value == Fraction(1, 2) and d6.provenance == "recorded"),
    ]


def suite_witten(ctx: Context) -> list[Check]:
    prec = max(33, min(ctx.prec, 64))
    e2 = modforms.e2_series(prec)
    checks = []
    lams = {}
    for rank in (4, 8):
        g = witten.genus_integrand(rank, 8, prec)
        lam = g.coefficient((1, 0)).coeff(0)
        lams[rank] = lam
        checks.append(Check(f"witten/rank{rank}_degree0_is_1", g.coefficient((0, 0)) == QSeries.one(prec)))
        checks.append(Check(
            f"witten/rank{rank}_degree4_lambda_E2_p1",
            g.part(4).keys() == {(1, 0)} and g.coefficient((1, 0)) == e2.scale(lam),
            f"lambda = {lam}, {prec} q-terms",
        ))
    checks.append(Check("witten/lambda_rank_stable", lams[4] == lams[8], f"{lams[4]} vs {lams[8]}"))
    # Wit(V + V) in the power sums of V: s2 -> 2 s2, s4 -> 2 s4
    a = witten.wit_ch(4, 8, prec)
    doubled = {m: s.scale(2 ** (m[0] + m[1])) for m, s in witten.wit_ch(8, 8, prec).terms.items()}
    checks.append(Check("witten/multiplicative", (a * a).terms == doubled))
    dens = set().union(*(witten.genus_integrand(r, 8, prec).denominators() for r in (2, 4, 8)))
    ok = all(_only_235(d) for d in dens)
    checks.append(Check("witten/denominators_2_3_5", ok, str(sorted(dens))))
    q = witten.factor_p1(witten.genus_integrand(8, 4, prec)).quotient
    checks.append(Check("witten/factor_p1_quotient", q.coefficient((0, 0)) == e2.scale(2 * lams[8])))
    return checks


def _only_235(n: int) -> bool:
    for p in (2, 3, 5):
        while n % p == 0:
            n //= p
    return n == 1


def suite_precision(ctx: Context) -> list[Check]:
    out = []
    lo, hi = Context(64, ctx.seed), Context(256, ctx.seed)
    for name, fn in (
        ("weight2", _weight2_values),
        ("kl", _kl_values),
        ("e2", _e2_values),
        ("jdiv", _jdiv_values),
        ("dualbasis", _dualbasis_values),
    ):
        out.append(Check(f"precision/{name}_64_vs_256", fn(lo) == fn(hi)))
    for name in ("weight2", "kl", "e2", "jdiv", "dualbasis"):
        for c in (lo, hi):
            checks = SUITES[name](c)
            out.append(Check(f"precision/{name}_passes_at_{c.prec}", all(x.passed for x in checks)))
    return out


def suite_duality(ctx: Context) -> list[Check]:
    out = []
    for name in ("kl", "dualbasis", "e2", "jdiv", "bn", "uc", "representatives"):
        out += SUITES[name](ctx)
    return out


SUITES: dict[str, Callable[[Context], list[Check]]] = {
    "weight2": suite_weight2,
    "kl": suite_kl,
    "e2": suite_e2,
    "jdiv": suite_jdiv,
    "dualbasis": suite_dualbasis,
    "image": suite_image,
    "tables": suite_tables,
    "bn": suite_bn,
    "uc": suite_uc,
    "representatives": suite_representatives,
    "kotoy": suite_kotoy,
    "witten": suite_witten,
    "precision": suite_precision,
    "duality": suite_duality,
}

_ALL = ("weight2", "kl", "e2", "jdiv", "dualbasis", "image", "tables", "bn", "uc",
        "representatives", "kotoy", "witten", "precision")


def run_suite(name: str, ctx: Context | None = None) -> Report:
    ctx = ctx or Context()
    if name == "all":
        checks = [c for s in _ALL for c in SUITES[s](ctx)]
    elif name in SUITES:
        checks = SUITES[name](ctx)
    else:
        raise UnknownSuite(name)
    return Report(name, ctx, sorted(checks, key=lambda c: c.id))
