from fractions import Fraction

import pytest

from weilreg import GREVLEX, LEX, Polynomial, parse_polynomial, parse_fraction
from weilreg.errors import ArityMismatch
from weilreg.orders import block_order
from weilreg.poly import coefficient_list, format_polynomial
from weilreg.polygcd import divide_exact, poly_gcd, simplify_fraction, squarefree_part_degree


def P(text, names=("x", "y", "z")):
    return parse_polynomial(text, names)


def test_construction_merges_and_drops_zero_terms():
    p = Polynomial(2, [((1, 0), 2), ((1, 0), -2), ((0, 1), 3)])
    assert p.terms == {(0, 1): Fraction(3)}


def test_scalars_are_lowest_terms_with_positive_denominator():
    c = Fraction(4, -6)
    assert c.numerator == -2 and c.denominator == 3
    assert Fraction(0, 5) == Fraction(0, 1)


def test_arithmetic_ring_laws():
    a, b, c = P("x^2-y"), P("y*z+1"), P("x-z")
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a).is_zero()
    assert a * Polynomial.one(3) == a


def test_arity_mismatch_raises():
    with pytest.raises(ArityMismatch):
        P("x") + parse_polynomial("u", ["u", "v"])


def test_lex_and_grevlex_leading_terms():
    p = P("x*y^2 + x^2 + y^3")
    assert p.leading_term(LEX)[0] == (2, 0, 0)  # x^2 beats x*y^2 in lex
    assert p.leading_term(GREVLEX)[0] == (1, 2, 0)  # degree 3, x*y^2 > y^3


def test_block_order_eliminates_designated_variables():
    order = block_order({0})
    p = P("x + y^5")
    assert p.leading_term(order)[0] == (1, 0, 0)


def test_evaluate():
    p = P("x^2*y - 3*z + 1/2")
    assert p.evaluate((2, 3, Fraction(1, 2))) == 12 - Fraction(3, 2) + Fraction(1, 2)


def test_substitute_polynomials():
    p = P("x^2 + y", names=("x", "y"))
    img = [parse_polynomial("u+1", ["u"]), parse_polynomial("u^2", ["u"])]
    assert p.substitute(img) == parse_polynomial("(u+1)^2 + u^2", ["u"])


def test_coefficients_wrt_collects_by_power():
    # u^2 + u*s collected by s: [u^2, u]   (s^0, s^1 descending by monomial)
    p = parse_polynomial("u^2 + u*s", ["u", "s"])
    coeffs = coefficient_list(p, [1])
    assert coeffs == [parse_polynomial("u", ["u", "s"]), parse_polynomial("u^2", ["u", "s"])] or coeffs == [
        parse_polynomial("u^2", ["u", "s"]),
        parse_polynomial("u", ["u", "s"]),
    ]
    # descending: s^1 before s^0
    heads = [h for h, _ in p.coefficients_wrt([1])]
    assert heads == [(0, 1), (0, 0)]


def test_coefficients_wrt_trivial_and_three_powers():
    p = parse_polynomial("x", ["x"])
    assert coefficient_list(p, [0]) == [Polynomial.one(1)]
    q = parse_polynomial("s^2*t + s*u + v", ["s", "t", "u", "v"])
    assert coefficient_list(q, [0]) == [
        parse_polynomial("t", ["s", "t", "u", "v"]),
        parse_polynomial("u", ["s", "t", "u", "v"]),
        parse_polynomial("v", ["s", "t", "u", "v"]),
    ]


def test_format_polynomial_canonical():
    assert format_polynomial(P("x*y - 1"), ["x", "y", "z"]) == "x*y-1"
    assert format_polynomial(P("-x + 3/2*y^2"), ["x", "y", "z"]) == "3/2*y^2-x"
    assert format_polynomial(Polynomial.zero(1), ["x"]) == "0"


def test_parse_fraction_preserves_the_written_representative():
    num, den = parse_fraction("(x^2-1)/(x-1)", ["x"])
    assert num == parse_polynomial("x^2-1", ["x"])
    assert den == parse_polynomial("x-1", ["x"])
    cancelled = simplify_fraction(num, den)
    assert cancelled == (parse_polynomial("x+1", ["x"]), Polynomial.one(1))


def test_divide_exact():
    f = P("x^2 - y^2")
    g = P("x - y")
    assert divide_exact(f, g) == P("x + y")
    assert divide_exact(P("x^2 + 1"), P("x + 1")) is None


def test_poly_gcd_basic():
    f = P("x^2 - y^2") * P("x + z")
    g = P("x + y") * P("x + z")
    assert poly_gcd(f, g) == P("x+y") * P("x+z")
    assert poly_gcd(P("x"), P("y")) == Polynomial.one(3)
    assert poly_gcd(Polynomial.zero(3), P("2*x")) == P("x")


def test_simplify_fraction_cancels_and_normalises():
    num, den = simplify_fraction(P("x^2*y"), P("x*y^2"))
    assert num == P("x") and den == P("y")
    num, den = simplify_fraction(P("x"), P("2*y"))
    assert den == P("y") and num == P("1/2*x")


def test_squarefree_part_degree():
    f = parse_polynomial("(x-1)^2*(x-2)", ["x"])
    assert squarefree_part_degree(f, 0) == 2
    assert squarefree_part_degree(parse_polynomial("x^3", ["x"]), 0) == 1
    assert squarefree_part_degree(parse_polynomial("5", ["x"]), 0) == 0
