"""Polynomial kernel: arithmetic, normal forms, gcd, exact division."""

import random
from fractions import Fraction

import pytest
import sympy

from hodgeatoms.poly import LaurentPoly, Poly, exact_div, poly_gcd, poly_gcd_many

V = ("s", "t", "q")


def P(terms):
    return Poly(V, terms)


def to_sympy(p):
    syms = sympy.symbols(p.vars)
    expr = sympy.Integer(0)
    for ex, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for sym, e in zip(syms, ex):
            term *= sym ** e
        expr += term
    return sympy.expand(expr)


def random_poly(rng, max_terms=4, max_exp=2):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        ex = tuple(rng.randint(0, max_exp) for _ in V)
        terms[ex] = terms.get(ex, 0) + rng.randint(-5, 5)
    return P(terms)


def test_zero_coefficients_never_stored():
    p = P({(1, 0, 0): 1, (0, 1, 0): 0})
    assert p.terms == {(1, 0, 0): Fraction(1)}
    assert (p - p).is_zero()
    assert not (p - p)


def test_exponent_arity_checked():
    with pytest.raises(ValueError):
        Poly(V, {(1, 0): 1})


def test_mixed_variable_sets_rejected():
    with pytest.raises(ValueError):
        P({(1, 0, 0): 1}) + Poly(("q",), {(1,): 1})


def test_scalar_coercion():
    q = Poly.var(V, "q")
    assert (q + 1) - 1 == q
    assert 2 * q == q.scale(2)
    assert (1 - q) + (q - 1) == 0


def test_ring_identities_on_random_polys():
    rng = random.Random(7)
    for _ in range(20):
        a, b, c = (random_poly(rng) for _ in range(3))
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)


def test_pow():
    q = Poly.var(V, "q")
    assert (q + 1) ** 2 == q * q + 2 * q + 1
    assert (q + 1) ** 0 == 1
    with pytest.raises(ValueError):
        q ** -1


def test_structure_queries():
    p = P({(1, 0, 1): 2, (0, 0, 0): -3})   # 2 s q - 3
    assert p.total_degree() == 2
    assert p.degree_in("q") == 1
    assert p.degree_in("t") == 0
    assert p.coeff_of("q", 1) == P({(1, 0, 0): 2})
    assert p.coeff_of("q", 0) == P({(0, 0, 0): -3})
    assert p.variables_present() == ("s", "q")
    assert p.constant_value() is None
    assert P({(0, 0, 0): 5}).constant_value() == 5
    assert Poly.zero(V).constant_value() == 0
    assert p.leading_coefficient() == 2
    assert Poly.zero(V).leading_coefficient() == 0


def test_euler_derivative():
    # q d/dq multiplies each monomial by its q-exponent
    p = P({(0, 0, 2): 3, (0, 0, 1): 5, (0, 0, 0): 7})
    assert p.euler_derivative("q") == P({(0, 0, 2): 6, (0, 0, 1): 5})


def test_euler_derivative_is_a_derivation():
    rng = random.Random(11)
    for _ in range(10):
        f, g = random_poly(rng), random_poly(rng)
        lhs = (f * g).euler_derivative("q")
        rhs = f.euler_derivative("q") * g + f * g.euler_derivative("q")
        assert lhs == rhs


def test_substitute_and_evaluate():
    p = P({(2, 0, 0): 1, (1, 1, 0): 1, (0, 0, 1): 1})   # s^2 + s t + q
    at = p.substitute({"s": 2})
    assert at == P({(0, 1, 0): 2, (0, 0, 1): 1, (0, 0, 0): 4})
    rule = Poly.var(V, "t") + 1
    assert p.substitute({"s": rule}).evaluate({"t": 1, "q": 0}) == 6
    assert p.evaluate({"s": 1, "t": 2, "q": Fraction(1, 2)}) == Fraction(7, 2)


def test_rename_vars():
    p = P({(1, 0, 1): 3})
    wide = p.rename_vars(("a", "s", "t", "q"))
    assert wide.vars == ("a", "s", "t", "q")
    assert wide.terms == {(0, 1, 0, 1): Fraction(3)}
    swapped = p.rename_vars(("u", "q"), {"s": "u"})
    assert swapped.terms == {(1, 1): Fraction(3)}


def test_content_and_primitive():
    assert P({(0, 0, 1): 4, (0, 0, 0): 6}).content() == 2
    assert P({(0, 0, 1): Fraction(3, 2), (0, 0, 0): Fraction(9, 4)}).content() == Fraction(3, 4)
    assert Poly.zero(V).content() == 0
    p = P({(0, 0, 1): 4, (0, 0, 0): 6}).primitive()
    assert p == P({(0, 0, 1): 2, (0, 0, 0): 3})


def test_render():
    assert Poly.zero(V).render() == "0"
    assert Poly.const(V, -1).render() == "-1"
    assert P({(0, 0, 2): -1, (0, 0, 0): 1}).render() == "-q^2 + 1"
    assert P({(1, 0, 1): 2}).render() == "2*s*q"
    assert P({(0, 0, 1): Fraction(3, 2)}).render() == "3/2*q"
    assert P({(0, 1, 0): 1, (1, 0, 0): -1}).render() == "-s + t"


def test_exact_div():
    q = Poly.var(V, "q")
    assert exact_div(q * q - 1, q - 1) == q + 1
    assert exact_div(Poly.zero(V), q).is_zero()
    with pytest.raises(ValueError):
        exact_div(q + 1, q)
    with pytest.raises(ZeroDivisionError):
        exact_div(q, Poly.zero(V))


def test_exact_div_inverts_multiplication():
    rng = random.Random(13)
    for _ in range(15):
        a, b = random_poly(rng), random_poly(rng)
        if b.is_zero():
            continue
        assert exact_div(a * b, b) == a


def test_poly_gcd_frozen_cases():
    s, t, q = (Poly.var(V, n) for n in V)
    assert poly_gcd((s - t) * q, (s - t) * q * q) == (s - t) * q
    assert poly_gcd(s + 1, t + 1) == 1
    assert poly_gcd(Poly.zero(V), 2 * q) == q
    # sign convention: primitive with positive graded-lex lead
    assert poly_gcd(t - s, (t - s) * (t - s)) == s - t
    assert poly_gcd(Poly.const(V, 4), Poly.const(V, 6)) == 1


def test_poly_gcd_matches_sympy():
    rng = random.Random(17)
    for _ in range(8):
        f, g, h = (random_poly(rng, max_terms=3, max_exp=1) for _ in range(3))
        if h.is_zero() or f.is_zero() or g.is_zero():
            continue
        a, b = f * h, g * h
        ours = poly_gcd(a, b)
        # equal up to a nonzero rational unit
        ratio = sympy.cancel(sympy.gcd(to_sympy(a), to_sympy(b)) / to_sympy(ours))
        assert ratio.is_Rational and ratio != 0
        assert exact_div(a, ours) * ours == a
        assert exact_div(b, ours) * ours == b


def test_poly_gcd_many():
    s, t, q = (Poly.var(V, n) for n in V)
    g = poly_gcd_many([(s - t) * q, (s - t) * q ** 2, (s - t) * q * t])
    assert g == (s - t) * q


def test_laurent_poly():
    p = LaurentPoly({2: 1, 0: 19, -2: 1})
    assert p.render() == "t^2 + 19 + t^-2"
    assert p.coeff(0) == 19 and p.coeff(5) == 0
    assert p.is_symmetric()
    assert not LaurentPoly({1: 2, -1: 1}).is_symmetric()
    assert (p + LaurentPoly({0: 2})).coeff(0) == 21
    assert p.scale(3).coeff(2) == 3
    assert LaurentPoly({1: 1, 0: 0}) == LaurentPoly({1: 1})
    assert not LaurentPoly({})
    assert LaurentPoly({}).render() == "0"
    assert LaurentPoly({1: 2, 0: 2, -1: 2}).render() == "2*t + 2 + 2*t^-1"
