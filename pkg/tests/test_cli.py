import json
import os
from pathlib import Path

import pytest

from tmfdual.cli import main

GOLDEN = Path(__file__).parent / "golden"
REGEN = os.environ.get("TMFDUAL_REGEN_GOLDEN") == "1"

CASES = {
    "expand_j": ["expand", "c4^3/D", "--prec", "6", "--json"],
    "expand_relation": ["expand", "c4^3 - c6^2 - 1728*D", "--prec", "4", "--json"],
    "pair_kl": ["pair", "--convention", "alpha", "--f", "c4^6*D^-3", "--g", "2*c6/c4*(c4^3/D)^-1", "--json"],
    "pair_mf": ["pair", "--convention", "mf", "--f", "D^-1", "--g", "c4^-1*c6", "--json"],
    "basis": ["basis", "--weight", "-10", "--kmin", "-2", "--kmax", "2", "--json"],
    "bn_27": ["bn", "--d", "27", "--size", "4", "--json"],
    "matrix_m24": ["matrix", "--d", "-24", "--size", "4", "--json"],
    "tables": ["tables", "--lo", "-4", "--hi", "4", "--json"],
    "witten": ["witten", "--rank", "8", "--deg", "8", "--prec", "4", "--json"],
    "kotoy_verify": ["kotoy", "verify", "--json"],
    "kotoy_table": ["kotoy", "table", "--json"],
    "verify_weight2": ["verify", "--suite", "weight2", "--prec", "64", "--json"],
}


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, capsys):
    assert main(CASES[name]) == 0
    got = json.loads(capsys.readouterr().out)
    path = GOLDEN / f"{name}.json"
    if REGEN:
        path.write_text(json.dumps(got, indent=2, sort_keys=True) + "\n")
    assert got == json.loads(path.read_text())


def test_text_mode(capsys):
    assert main(["expand", "c4^3/D", "--prec", "2"]) == 0
    assert capsys.readouterr().out.splitlines()[-1] == "q^-1 + 744 + 196884*q + O(q^2)"
    assert main(["matrix", "--d", "-24", "--size", "2"]) == 0
    assert "diagonal defect 24 at D^-1" in capsys.readouterr().out


def test_syntax_error_exit(capsys):
    assert main(["expand", "c4^^2"]) == 2
    assert "offset 4" in capsys.readouterr().err


def test_user_errors_exit_2(capsys):
    assert main(["bn", "--d", "4"]) == 2
    assert main(["pair", "--f", "c4", "--g", "c6"]) == 2
    assert main(["expand", "c4^(1/2)"]) == 2


def test_unknown_flag_and_suite_rejected():
    with pytest.raises(SystemExit):
        main(["tables", "--bogus"])
    with pytest.raises(SystemExit):
        main(["verify", "--suite", "nope"])


def test_verify_report_is_sorted(capsys):
    assert main(["verify", "--suite", "kotoy", "--json"]) == 0
    ids = [c["id"] for c in json.loads(capsys.readouterr().out)["checks"]]
    assert ids == sorted(ids)


def test_unknown_suite_in_runner():
    from tmfdual.verify import UnknownSuite, run_suite

    with pytest.raises(UnknownSuite):
        run_suite("nope")
