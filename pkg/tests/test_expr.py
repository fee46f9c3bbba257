from fractions import Fraction

import pytest

from tmfdual.expr import BinOp, ExprSyntaxError, Name, Neg, NonIntegerExponent, Num, Series, evaluate, parse
from tmfdual.modforms import C4, C6, DELTA, MFElement, e2_series, j_series


def test_precedence():
    assert parse("1 + 2 * 3") == BinOp("+", Num(1), BinOp("*", Num(2), Num(3)))
    assert parse("2^3^2") == BinOp("^", Num(2), BinOp("^", Num(3), Num(2)))
    assert parse("-c4^2") == Neg(BinOp("^", Name("c4"), Num(2)))
    assert parse("c4^-1") == BinOp("^", Name("c4"), Neg(Num(1)))
    assert evaluate("2^3^2", 4) == 512
    assert evaluate("-2^2", 4) == -4
    assert evaluate("(1 + 2) * 3 - 4 / 8", 4) == Fraction(17, 2)


def test_forms():
    assert evaluate("c4^3/D", 4) == C4**3 * DELTA**-1
    assert evaluate("c4^3 - c6^2 - 1728*D", 4).is_zero()
    assert evaluate("2*c6/c4", 4) == 2 * C6 * C4**-1
    assert isinstance(evaluate("c4 + c4", 4), MFElement)


def test_series_atoms():
    j = evaluate("J", 6)
    assert isinstance(j, Series) and j.series == j_series(6) and j.weight == 0
    e = evaluate("E2 * J", 6)
    assert e.weight == 2 and e.series.agrees_with((e2_series(8) * j_series(8)).truncate(e.series.prec))
    q = evaluate("q^2 + 1", 5)
    assert q.series.coeff(2) == 1 and q.series.coeff(0) == 1


@pytest.mark.parametrize(
    "src, offset",
    [("c4^^2", 4), ("x + 1", 1), ("(c4", 4), ("c4 c6", 4), ("1 $ 2", 3), ("", 1)],
)
def test_syntax_errors(src, offset):
    with pytest.raises(ExprSyntaxError) as err:
        parse(src)
    assert err.value.offset == offset
    assert isinstance(err.value, SyntaxError)


def test_non_integer_exponent():
    with pytest.raises(NonIntegerExponent):
        evaluate("c4^(1/2)", 4)
    with pytest.raises(NonIntegerExponent):
        evaluate("c4^c4", 4)
