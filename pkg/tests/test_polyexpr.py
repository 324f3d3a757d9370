import random

import pytest

from hyperslice.errors import (
    ArityMismatchError,
    FieldMismatchError,
    GeneratorInPrimeFieldError,
    NegativeExponentError,
    PolySyntaxError,
    UnknownVariableError,
    ZeroPolynomialError,
)
from hyperslice.fields import extend, field_of_order, make_field
from hyperslice.polyexpr import Poly, base_change, parse_poly

GF5 = make_field(5, 1)
GF3 = make_field(3, 1)
GF4 = make_field(2, 2)
VARS3 = ("x1", "x2", "y")


def test_parse_y2_minus_x1():
    f = parse_poly("y^2 - x1", VARS3, GF5)
    assert dict(f.terms) == {(0, 0, 2): 1, (1, 0, 0): 4}


def test_parse_quadric():
    vars4 = ("x0", "x1", "x2", "x3")
    f = parse_poly("x0*x3 - x1*x2", vars4, GF3)
    assert dict(f.terms) == {(1, 0, 0, 1): 1, (0, 1, 1, 0): 2}


def test_parse_negative_exponent():
    with pytest.raises(NegativeExponentError):
        parse_poly("x0^-1", ("x0",), GF3)


def test_parse_unknown_variable():
    with pytest.raises(UnknownVariableError):
        parse_poly("x1 + z", VARS3, GF5)


def test_parse_generator_in_prime_field():
    with pytest.raises(GeneratorInPrimeFieldError):
        parse_poly("g*x1", VARS3, GF5)


def test_parse_generator_in_extension():
    f = parse_poly("g*x + 1", ("x",), GF4)
    # the generator's code is 2 in GF(4)
    assert dict(f.terms) == {(1,): 2, (0,): 1}


def test_parse_syntax_error_position():
    with pytest.raises(PolySyntaxError) as info:
        parse_poly("x1 + ", VARS3, GF5)
    assert info.value.pos == 5
    with pytest.raises(PolySyntaxError):
        parse_poly("(x1 + y", VARS3, GF5)
    with pytest.raises(PolySyntaxError):
        parse_poly("x1 ? y", VARS3, GF5)


def test_parse_literal_reduction_and_parens():
    f = parse_poly("7*x1 + 12", VARS3, GF5)
    assert dict(f.terms) == {(1, 0, 0): 2, (0, 0, 0): 2}
    g = parse_poly("(x1 + y)^2", VARS3, GF5)
    assert dict(g.terms) == {(2, 0, 0): 1, (1, 0, 1): 2, (0, 0, 2): 1}


def test_eval_examples():
    f = parse_poly("y^2 - x1", VARS3, GF5)
    assert f.eval((4, 0, 2)) == 0
    assert f.eval((3, 0, 1)) == 3
    g = parse_poly("y^2 + 3*x1 + 2", VARS3, GF5)
    assert g.eval((0, 0, 0)) == 2  # constant term


def test_eval_arity_mismatch():
    f = parse_poly("y^2 - x1", VARS3, GF5)
    with pytest.raises(ArityMismatchError):
        f.eval((1, 2))


def test_base_change_zero():
    E = extend(GF5, 2)
    z = Poly.zero(GF5, VARS3)
    assert base_change(z, E).is_zero()


def test_base_change_prime_coeffs():
    E = extend(GF5, 2)
    f = parse_poly("y^2 - x1", VARS3, GF5)
    g = base_change(f, E)
    assert g.field == E
    assert g.terms == f.terms  # codes carry over verbatim


def test_base_change_field_mismatch():
    E = extend(GF3, 2)
    f = parse_poly("y^2 - x1", VARS3, GF5)
    with pytest.raises(FieldMismatchError):
        base_change(f, E)


def test_base_change_eval_commutes_gf4():
    # coefficient g in GF(4); check commutation on all 16 points of the
    # degree-2 extension squared
    E = extend(GF4, 2)
    f = parse_poly("g*x^2 + y + g^2", ("x", "y"), GF4)
    g = base_change(f, E)
    for x in E.elements():
        for y in E.elements():
            assert g.eval((x, y)) == f.eval((x, y), E)


def test_homogeneous_degree():
    vars4 = ("x0", "x1", "x2", "x3")
    assert parse_poly("x0*x3 - x1*x2", vars4, GF3).homogeneous_degree() == 2
    assert parse_poly("y^2 - x1", VARS3, GF5).homogeneous_degree() is None
    assert parse_poly("x0^3", vars4, GF3).homogeneous_degree() == 3
    with pytest.raises(ZeroPolynomialError):
        Poly.zero(GF5, VARS3).homogeneous_degree()


def _random_poly(rng, F, variables, max_terms=6, max_exp=4):
    terms = {}
    for _ in range(rng.randrange(max_terms + 1)):
        exps = tuple(rng.randrange(max_exp) for _ in variables)
        terms[exps] = rng.randrange(F.order)
    return Poly.from_terms(F, variables, terms)


@pytest.mark.parametrize("F", [GF5, GF4, make_field(3, 2)],
                         ids=lambda F: f"q{F.order}")
def test_print_parse_roundtrip(F):
    rng = random.Random(99 + F.order)
    variables = ("x", "y", "z")
    for _ in range(1000):
        f = _random_poly(rng, F, variables)
        assert parse_poly(str(f), variables, F) == f


@pytest.mark.parametrize("F", [GF5, GF4], ids=lambda F: f"q{F.order}")
def test_ring_laws_at_eval(F):
    rng = random.Random(7 + F.order)
    variables = ("x", "y")
    for _ in range(200):
        f = _random_poly(rng, F, variables)
        g = _random_poly(rng, F, variables)
        pt = tuple(rng.randrange(F.order) for _ in variables)
        assert (f * g).eval(pt) == F.mul(f.eval(pt), g.eval(pt))
        assert (f + g).eval(pt) == F.add(f.eval(pt), g.eval(pt))
        assert (f - g).eval(pt) == F.sub(f.eval(pt), g.eval(pt))


def test_canonical_form_identities():
    rng = random.Random(42)
    z = Poly.zero(GF5, VARS3)
    for _ in range(50):
        f = _random_poly(rng, GF5, VARS3)
        assert f + z == f
        assert (f - f).is_zero()


def test_term_order_canonical():
    f = parse_poly("x2 + x1^2 + y*x1 + 3", VARS3, GF5)
    degrees = [sum(e) for e, _ in f.terms]
    assert degrees == sorted(degrees, reverse=True)
    # re-parsing the printed form preserves the exact term tuple
    assert parse_poly(str(f), VARS3, GF5).terms == f.terms
