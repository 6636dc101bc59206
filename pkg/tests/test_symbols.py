"""Tests for the parameter-polynomial and potential types."""

import pytest

from dualfan.symbols import ParamPoly, Potential


def p(name, power=1, coeff=1):
    return ParamPoly.parameter(name, power=power, coeff=coeff)


def test_constants_and_zero():
    assert ParamPoly.zero().is_zero()
    assert ParamPoly.constant(0) == ParamPoly.zero()
    assert ParamPoly.constant(3) + ParamPoly.constant(-3) == ParamPoly.zero()
    assert str(ParamPoly.zero()) == "0"
    assert str(ParamPoly.constant(-7)) == "-7"


def test_arithmetic_identities():
    q = p("q")
    one = ParamPoly.constant(1)
    assert (one + q) * (one - q) == one - q * q
    assert q - q == ParamPoly.zero()
    assert -(-q) == q
    assert 2 * q == q + q
    assert sum([q, one, -q]) == one


def test_laurent_exponents_cancel():
    q = p("q")
    qinv = p("q", power=-1)
    assert q * qinv == ParamPoly.constant(1)
    assert str(qinv) == "q^-1"
    assert str(p("q", power=-1, coeff=-1)) == "-q^-1"


def test_string_form_is_canonical():
    psi = p("psi", coeff=-5)
    assert str(psi) == "-5*psi"
    mixed = p("b") + p("a") + ParamPoly.constant(2)
    assert str(mixed) == "2 + a + b"
    assert str(p("a") * p("a")) == "a^2"


def test_name_validation():
    with pytest.raises(ValueError, match="bad parameter name"):
        ParamPoly([((("not a name!", 1),), 1)])
    with pytest.raises(ValueError, match="bad parameter name"):
        ParamPoly.parameter("2q")


def test_hash_and_equality_are_structural():
    a = p("q") + ParamPoly.constant(1)
    b = ParamPoly.constant(1) + p("q")
    assert a == b and hash(a) == hash(b)
    assert a != p("q")


def test_potential_merges_and_drops_zeros():
    w = Potential([((1, 0), 1), ((1, 0), 2), ((0, 1), ParamPoly.zero())])
    assert w.support == ((1, 0),)
    assert w.coefficient((1, 0)) == ParamPoly.constant(3)
    assert w.coefficient((0, 1)).is_zero()
    assert not w.is_zero()
    assert Potential([]).is_zero()


def test_potential_accepts_mappings_and_sorts():
    w = Potential({(2, 2): 1, (0, 0): p("q")})
    assert w.support == ((0, 0), (2, 2))
    assert w == Potential([((2, 2), 1), ((0, 0), p("q"))])
    assert hash(w) == hash(Potential(dict(w.terms)))
