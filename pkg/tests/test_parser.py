from fractions import Fraction

import pytest

from sympow import ParseError, PolyRing, parse_polynomial, parse_script
from sympow.parser import IdealExpr, parse_ideal_expr, parse_ring_decl, parse_rational


def test_minimal_script():
    s = parse_script("ring Q[x] lex; ideal I = x;")
    assert s.ring.variables == ("x",)
    assert str(s.ring.order) == "lex"
    assert isinstance(s.env["I"], IdealExpr)


def test_no_ring():
    with pytest.raises(ParseError, match="no ring declared"):
        parse_script("ideal I = x;")


def test_rational_coefficient_round_trip():
    s = parse_script("ring Q[x,y] grevlex; ideal I = x^2 + 1/2*y;")
    (f,) = s.env["I"].args
    assert f.lc == 1 and f.terms[(0, 1)] == Fraction(1, 2)
    assert parse_polynomial(str(f), s.ring) == f


def test_one_ring_only():
    with pytest.raises(ParseError, match="only one ring"):
        parse_script("ring Q[x]; ring Q[y];")


def test_unknown_variable_position():
    with pytest.raises(ParseError) as exc:
        parse_script("ring Q[x,y];\nideal I = x + w;")
    assert (exc.value.line, exc.value.column) == (2, 15)


def test_unbound_name():
    with pytest.raises(ParseError, match="unbound"):
        parse_script("ring Q[x,y]; ideal J = <x> + K;")


def test_unknown_command():
    with pytest.raises(ParseError, match="unknown command"):
        parse_script("ring Q[x]; frobnicate x;")


def test_command_argument_checked():
    with pytest.raises(ParseError):
        parse_script("ring Q[x]; ideal I = x; gb J;")


def test_shadowing():
    with pytest.raises(ParseError, match="shadows"):
        parse_script("ring Q[x]; ideal x = x;")


def test_ideal_expressions():
    s = parse_script("ring Q[x,y,z]; ideal I = x*y, y*z; ideal J = I^2 + <x> & I_(3);")
    e = s.env["J"]
    assert e.op == "meet"
    assert e.args[0].op == "sum"
    assert e.args[1] == IdealExpr("sym", (IdealExpr("name", ("I",)), 3))


def test_comments_and_lines():
    s = parse_script("# header\nring Q[x,y] lex; # trailing\nideal I = x - y^2,\n  y - x^2;\ngb I;")
    cmd = s.statements[-1]
    assert cmd.kind == "command" and cmd.name == "gb" and cmd.line == 5


def test_ring_decl():
    r = parse_ring_decl("GF(5)[a,b] block(1)")
    assert r.modulus == 5 and str(r.order) == "block(1)"
    with pytest.raises(ParseError):
        parse_ring_decl("R[x]")


def test_ideal_expr_precedence():
    R = PolyRing.from_spec("Q[x,y]")
    env = {"I": IdealExpr("gens", (R.parse("x"),))}
    e = parse_ideal_expr("I + I * I^2", R, env)
    assert e.op == "sum" and e.args[1].op == "prod" and e.args[1].args[1].op == "pow"


def test_parse_rational():
    assert parse_rational("5/6") == Fraction(5, 6)
    with pytest.raises(ParseError):
        parse_rational("five")


@pytest.mark.parametrize("text", ["x +", "x ** 2", "(x", "x^y", "2x$"])
def test_syntax_errors(text):
    with pytest.raises(ParseError):
        parse_polynomial(text, PolyRing.from_spec("Q[x,y]"))
