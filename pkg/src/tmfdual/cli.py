"""Command line front end: ``tmfdual <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import duality, kotoy, modforms, tmfdata, verify, witten
from .abgroup import Exactness
from .expr import ExprSyntaxError, NonIntegerExponent, Series, evaluate
from .modforms import MFElement
from .qseries import DEFAULT_PREC, InsufficientPrecision

DEFAULT_SEED = verify.Context().seed


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _value_for_pairing(src: str, prec: int):
    v = evaluate(src, prec)
    if isinstance(v, Fraction):
        return MFElement.scalar(v), 0
    if isinstance(v, MFElement):
        return v, v.weight
    return v.series, v.weight


# -- subcommands --------------------------------------------------------------


def cmd_expand(args) -> int:
    v = evaluate(args.expr, args.prec)
    if isinstance(v, Series):
        s, weight, form = v.series, v.weight, None
    else:
        e = MFElement.scalar(v) if isinstance(v, Fraction) else v
        s, weight, form = modforms.expand(e, args.prec), e.weight, str(e)
    payload = {"expr": args.expr, "weight": weight, "form": form, "series": s.to_json()}
    text = (f"{form}\n" if form else "") + s.to_text()
    _emit(args, payload, text)
    return 0


def cmd_pair(args) -> int:
    f, wf = _value_for_pairing(args.f, args.prec)
    g, wg = _value_for_pairing(args.g, args.prec)
    fn = duality.pair_alpha if args.convention == "alpha" else duality.pair_mf
    v = fn(f, g, f_weight=wf, g_weight=wg)
    _emit(args, {"convention": args.convention, "f": args.f, "g": args.g, "value": str(v)}, str(v))
    return 0


def cmd_basis(args) -> int:
    ms = modforms.basis(args.weight, args.kmin, args.kmax)
    top = modforms.max_nonneg_k(args.weight)
    rows = [{"monomial": str(m), "i": m.i, "j": m.j, "k": m.k, "nonneg": m.k <= top} for m in ms]
    text = "\n".join(f"{'+' if r['nonneg'] else '-'} {r['monomial']}" for r in rows)
    _emit(args, {"weight": args.weight, "basis": rows}, text)
    return 0


def cmd_bn(args) -> int:
    g = duality.bn_generator(args.d, size=args.size, prec=args.prec)
    payload = {
        "d": args.d,
        "weight": g.weight,
        "order": g.order(),
        "table_order": tmfdata.A(args.d).order(),
        "class": g.series.to_json(),
    }
    text = f"b(x_{args.d}) = {g.series.to_text()}  mod MF_Q + Z((q))\norder {g.order()} (A_{args.d} = {tmfdata.A(args.d)})"
    _emit(args, payload, text)
    return 0


def cmd_matrix(args) -> int:
    r = duality.pairing_matrix_U_C(args.d, args.size)
    width = max(len(str(x)) for row in r.matrix for x in row)
    lines = [f"U_{args.d} x C_{-args.d - 20}"]
    for name, row in zip(r.rows, r.matrix):
        lines.append(" ".join(str(x).rjust(width) for x in row) + f"   {name}")
    lines.append(r.verdict)
    _emit(args, r.to_json(), "\n".join(lines))
    return 0


def cmd_tables(args) -> int:
    rows = []
    for d in range(args.lo, args.hi + 1):
        rows.append({
            "d": d,
            "A": tmfdata.A(d).to_json(),
            "U": tmfdata.U(d).to_json(),
            "U_generators": tmfdata.image_generators(d),
            "pi": tmfdata.pi_tmf(d).to_json(),
        })
    text = "\n".join(
        f"{d:>5}  A = {tmfdata.A(d)}  U = {tmfdata.U(d)}" for d in range(args.lo, args.hi + 1)
    )
    _emit(args, {"lo": args.lo, "hi": args.hi, "window": "top 10 D-exponents", "rows": rows}, text)
    return 0


def cmd_witten(args) -> int:
    g = witten.genus_integrand(args.rank, args.deg, args.prec)
    _emit(args, {"rank": args.rank, **g.to_json()}, g.to_text())
    return 0


def _exactness_payload() -> dict:
    rows = kotoy.eta_c_R_exactness()
    t3 = kotoy.table3_exactness()
    d7 = kotoy.gamma_torsion_pair("d7")
    d6 = kotoy.gamma_torsion_pair("d6")
    return {
        "eta_c_R": [{"position": r.position, "status": r.status.name} for r in rows],
        "table3": [{"position": p, "status": s.name} for p, s in t3.rows],
        "cokernel_iota4": t3.cokernel_iota4.to_json(),
        "free_pairing_A_D2S1": str(kotoy.gamma_free_pair("A_-4", "[D2, S1]")),
        "torsion": {
            "d7": {"value": str(d7.value), "provenance": d7.provenance},
            "d6": {"value": str(d6.value), "provenance": d6.provenance},
        },
    }


def cmd_kotoy(args) -> int:
    if args.action == "table":
        stages = []
        for n in range(4, -1, -1):
            st = kotoy.TABLE3[n]
            stages.append({
                "n": n,
                "spin": {"group": st.spin.group().to_json(), "generators": list(st.spin_names)},
                "spinc": {"group": st.spinc.group().to_json(), "generators": list(st.spinc_names)},
                "rel": {"group": st.rel.group().to_json(), "generators": list(st.rel_names)},
                "iota": [list(r) for r in st.iota],
                "c_iota": [list(r) for r in st.c_iota],
            })
        text = "\n".join(
            f"{s['n']}: {', '.join(s['spin']['generators']) or '0'} -> "
            f"{', '.join(s['spinc']['generators']) or '0'} -> {', '.join(s['rel']['generators']) or '0'}"
            for s in stages
        )
        _emit(args, {"stages": stages}, text)
        return 0
    p = _exactness_payload()
    ok = all(r["status"] == Exactness.EXACT.name for r in p["eta_c_R"] + p["table3"])
    text = "\n".join([
        f"eta c R exactness over [-8, 8]: {'exact' if all(r['status'] == 'EXACT' for r in p['eta_c_R']) else 'NOT exact'}",
        f"bordism sequence exactness: {'exact' if all(r['status'] == 'EXACT' for r in p['table3']) else 'NOT exact'}",
        f"coker(iota'_4) = {kotoy.table3_exactness().cokernel_iota4}",
        f"<A, [D2, S1]> = {p['free_pairing_A_D2S1']}",
        f"d7 = {p['torsion']['d7']['value']} ({p['torsion']['d7']['provenance']})",
        f"d6 = {p['torsion']['d6']['value']} ({p['torsion']['d6']['provenance']})",
    ])
    _emit(args, p, text)
    return 0 if ok else 1


def cmd_verify(args) -> int:
    report = verify.run_suite(args.suite, verify.Context(args.prec, args.seed))
    _emit(args, report.to_json(), report.to_text())
    return 0 if report.passed else 1


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tmfdual", description="Exact q-series, tmf tables and the duality pairings.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="emit JSON")
        sp.set_defaults(func=fn)
        return sp

    sp = add("expand", cmd_expand, "q-expansion of an expression in c4 c6 D J E2 q")
    sp.add_argument("expr")
    sp.add_argument("--prec", type=int, default=DEFAULT_PREC)

    sp = add("pair", cmd_pair, "residue pairing of two expressions")
    sp.add_argument("--convention", choices=("alpha", "mf"), default="alpha")
    sp.add_argument("--f", required=True)
    sp.add_argument("--g", required=True)
    sp.add_argument("--prec", type=int, default=DEFAULT_PREC)

    sp = add("basis", cmd_basis, "monomial basis of a weight over a range of D-exponents")
    sp.add_argument("--weight", type=int, required=True)
    sp.add_argument("--kmin", type=int, default=-5)
    sp.add_argument("--kmax", type=int, default=5)

    sp = add("bn", cmd_bn, "the invariant of the generator of A_d, d = 3 mod 24")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--size", type=int, default=8)
    sp.add_argument("--prec", type=int, default=None)

    sp = add("matrix", cmd_matrix, "pairing matrix between U_d and C_{-d-20}")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--size", type=int, default=6)

    sp = add("tables", cmd_tables, "A_d, U_d and pi_d tmf over a degree window")
    sp.add_argument("--lo", type=int, default=-24)
    sp.add_argument("--hi", type=int, default=24)

    sp = add("witten", cmd_witten, "A-hat times ch(Wit) up to a cohomological degree")
    sp.add_argument("--rank", type=int, default=8)
    sp.add_argument("--deg", type=int, choices=witten.SUPPORTED_DEGREES, default=8)
    sp.add_argument("--prec", type=int, default=16)

    sp = add("kotoy", cmd_kotoy, "KO / KU toy model")
    sp.add_argument("action", choices=("verify", "table"))

    sp = add("verify", cmd_verify, "run a named suite of checks")
    sp.add_argument("--suite", required=True, choices=sorted([*verify.SUITES, "all"]))
    sp.add_argument("--prec", type=int, default=DEFAULT_PREC)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return p


_USER_ERRORS = (
    ExprSyntaxError,
    NonIntegerExponent,
    InsufficientPrecision,
    duality.WeightMismatch,
    tmfdata.WrongDegree,
    witten.UnsupportedDegree,
    kotoy.DegreeMismatch,
    ZeroDivisionError,
    ValueError,
)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ExprSyntaxError as e:
        print(f"error: {e.msg} at offset {e.offset}", file=sys.stderr)
        return 2
    except _USER_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
