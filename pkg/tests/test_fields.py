"""Exact field arithmetic: oracle comparisons against sympy and property
tests of the ring axioms."""

from fractions import Fraction
from math import cos, pi

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from tilinglinks.errors import DomainError
from tilinglinks.fields import (AlgebraicNumber, adjoin_sqrt, as_json_dict,
                                embed_cos, from_json_dict,
                                is_algebraic_integer, is_rational,
                                make_context, minimal_polynomial)


def sympy_minpoly_coeffs(expr):
    x = sp.Symbol("x")
    poly = sp.Poly(sp.minimal_polynomial(expr, x), x)
    coeffs = [Fraction(str(c)) for c in reversed(poly.all_coeffs())]
    lead = coeffs[-1]
    return tuple(c / lead for c in coeffs)


# -- context construction ----------------------------------------------------

def test_degree_one_contexts():
    assert make_context(1).degree == 1
    assert make_context(2).degree == 1
    assert AlgebraicNumber.generator(make_context(1)).approx() == -2.0
    assert AlgebraicNumber.generator(make_context(2)).is_zero


def test_golden_ratio_modulus():
    ctx = make_context(5)
    assert ctx.modulus == (-1, -1, 1)  # x^2 - x - 1


def test_degree_twelve_totient():
    assert make_context(12).degree == 4  # phi(24)/2


@pytest.mark.parametrize("L", [3, 4, 5, 6, 7, 9, 12, 15, 20, 30])
def test_modulus_matches_sympy_minimal_polynomial(L):
    ctx = make_context(L)
    expected = sympy_minpoly_coeffs(2 * sp.cos(sp.pi / L))
    assert tuple(Fraction(c) for c in ctx.modulus) == expected


def test_generator_embedding_is_root():
    for L in (5, 7, 12):
        ctx = make_context(L)
        g = ctx.real_embedding
        assert abs(g - 2 * cos(pi / L)) < 1e-12
        val = sum(c * g**i for i, c in enumerate(ctx.modulus))
        assert abs(val) < 1e-9


def test_bad_context_rejected():
    with pytest.raises(DomainError):
        make_context(0)


# -- embed_cos ---------------------------------------------------------------

def test_embed_cos_values():
    ctx = make_context(12)
    assert abs(embed_cos(ctx, 6).approx() - 3**0.5) < 1e-12
    assert abs(embed_cos(ctx, 4).approx() - 2**0.5) < 1e-12
    assert embed_cos(ctx, 2).is_zero
    assert embed_cos(ctx, 1) == AlgebraicNumber.rational(ctx, -2)


def test_embed_cos_requires_divisor():
    with pytest.raises(DomainError):
        embed_cos(make_context(12), 5)


def test_golden_identity():
    ctx = make_context(5)
    g = embed_cos(ctx, 5)
    assert g * g == g + 1


# -- ring operations ---------------------------------------------------------

@st.composite
def field_elements(draw, L=None, nonzero=False):
    if L is None:
        L = draw(st.sampled_from([1, 2, 3, 4, 5, 6, 12]))
    ctx = make_context(L)
    coeffs = draw(st.lists(st.integers(-9, 9), min_size=ctx.degree,
                           max_size=ctx.degree))
    den = draw(st.integers(1, 6))
    x = AlgebraicNumber._make(ctx, tuple(coeffs), den)
    if nonzero and x.is_zero:
        x = x + 1
    return x


@given(st.data())
@settings(max_examples=80, deadline=None)
def test_ring_axioms(data):
    L = data.draw(st.sampled_from([2, 3, 5, 6, 12]))
    x = data.draw(field_elements(L=L))
    y = data.draw(field_elements(L=L))
    z = data.draw(field_elements(L=L))
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@given(st.data())
@settings(max_examples=50, deadline=None)
def test_multiply_then_divide(data):
    L = data.draw(st.sampled_from([3, 5, 12]))
    x = data.draw(field_elements(L=L, nonzero=True))
    y = data.draw(field_elements(L=L))
    assert (x * y) / x == y


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_embedding_is_ring_homomorphism(data):
    L = data.draw(st.sampled_from([3, 5, 12]))
    x = data.draw(field_elements(L=L))
    y = data.draw(field_elements(L=L))
    ax, ay, axy, axpy = x.approx(), y.approx(), (x * y).approx(), (x + y).approx()
    scale = max(1.0, abs(axy), abs(axpy))
    assert abs(ax * ay - axy) < 1e-9 * scale
    assert abs(ax + ay - axpy) < 1e-9 * scale


def test_add_zero_identity():
    ctx = make_context(7)
    g = AlgebraicNumber.generator(ctx)
    assert g + 0 == g


def test_inverse_of_sqrt():
    ctx = make_context(6)
    s = adjoin_sqrt(ctx, AlgebraicNumber.rational(ctx, Fraction(1, 2)))
    assert s.inverse() * s == AlgebraicNumber.rational(ctx, 1)


def test_zero_inverse_raises():
    ctx = make_context(5)
    with pytest.raises(ArithmeticError):
        AlgebraicNumber.rational(ctx, 0).inverse()


def test_context_mixing_rejected():
    a = AlgebraicNumber.generator(make_context(5))
    b = AlgebraicNumber.generator(make_context(7))
    with pytest.raises(DomainError):
        a + b


def test_distinct_radicands_rejected():
    ctx = make_context(12)
    s2 = adjoin_sqrt(ctx, AlgebraicNumber.rational(ctx, Fraction(1, 2)))
    s3 = adjoin_sqrt(ctx, AlgebraicNumber.rational(ctx, Fraction(1, 3)))
    with pytest.raises(DomainError):
        s2 + s3


# -- adjoin_sqrt -------------------------------------------------------------

def test_sqrt_rational_perfect_square():
    ctx = make_context(12)
    q = AlgebraicNumber.rational(ctx, Fraction(1, 4))
    r = adjoin_sqrt(ctx, q)
    assert r.ext_num is None
    assert r == AlgebraicNumber.rational(ctx, Fraction(1, 2))


def test_sqrt_one():
    ctx = make_context(5)
    one = AlgebraicNumber.rational(ctx, 1)
    assert adjoin_sqrt(ctx, one) == one


def test_sqrt_genuine_extension():
    ctx = make_context(6)
    r = adjoin_sqrt(ctx, AlgebraicNumber.rational(ctx, Fraction(1, 2)))
    assert r.ext_num is not None
    assert abs(r.approx() - 0.7071067811865476) < 1e-12


def test_sqrt_detects_field_square():
    ctx = make_context(12)
    g = AlgebraicNumber.generator(ctx)
    el = (g + 1) * (g + 1)
    r = adjoin_sqrt(ctx, el)
    assert r.ext_num is None and r == g + 1


@given(st.data())
@settings(max_examples=30, deadline=None)
def test_sqrt_squares_to_radicand(data):
    L = data.draw(st.sampled_from([3, 5, 6]))
    ctx = make_context(L)
    x = data.draw(field_elements(L=L, nonzero=True))
    D = x * x + 1  # positive in every embedding
    if D.sign() <= 0:
        return
    r = adjoin_sqrt(ctx, D)
    assert r * r == D
    assert r.sign() > 0


def test_sqrt_rejects_nonpositive():
    ctx = make_context(5)
    with pytest.raises(DomainError):
        adjoin_sqrt(ctx, AlgebraicNumber.rational(ctx, -1))
    with pytest.raises(DomainError):
        adjoin_sqrt(ctx, AlgebraicNumber.rational(ctx, 0))


# -- minimal polynomials and integrality --------------------------------------

def test_minpoly_examples():
    ctx5 = make_context(5)
    assert minimal_polynomial(embed_cos(ctx5, 5)) == (
        Fraction(-1), Fraction(-1), Fraction(1))
    assert minimal_polynomial(AlgebraicNumber.rational(ctx5, 2)) == (
        Fraction(-2), Fraction(1))
    ctx12 = make_context(12)
    assert minimal_polynomial(embed_cos(ctx12, 4)) == (
        Fraction(-2), Fraction(0), Fraction(1))


@pytest.mark.parametrize("expr,L,builder", [
    (2 * sp.cos(sp.pi / 7), 7, lambda ctx: embed_cos(ctx, 7)),
    (sp.sqrt(3), 12, lambda ctx: embed_cos(ctx, 6)),
    (-sp.sqrt(6), 6, lambda ctx: -(embed_cos(ctx, 6) * 2) * adjoin_sqrt(
        ctx, AlgebraicNumber.rational(ctx, Fraction(1, 2)))),
    (2 * sp.cos(sp.pi / 12) + 1, 12,
     lambda ctx: AlgebraicNumber.generator(ctx) + 1),
])
def test_minpoly_matches_sympy(expr, L, builder):
    ctx = make_context(L)
    assert minimal_polynomial(builder(ctx)) == sympy_minpoly_coeffs(expr)


def test_minpoly_annihilates_element():
    ctx = make_context(12)
    x = embed_cos(ctx, 6) + AlgebraicNumber.generator(ctx) / 3
    mp = minimal_polynomial(x)
    acc = AlgebraicNumber.rational(ctx, 0)
    for k, c in enumerate(mp):
        acc = acc + x**k * c
    assert acc.is_zero


def test_algebraic_integer_examples():
    ctx5 = make_context(5)
    assert is_algebraic_integer(embed_cos(ctx5, 5))
    assert not is_algebraic_integer(
        AlgebraicNumber.rational(ctx5, Fraction(1, 2)))
    ctx12 = make_context(12)
    assert is_algebraic_integer(-2 * embed_cos(ctx12, 6))
    assert minimal_polynomial(-2 * embed_cos(ctx12, 6)) == (
        Fraction(-12), Fraction(0), Fraction(1))


@given(st.data())
@settings(max_examples=30, deadline=None)
def test_integral_elements_closed_under_ring_ops(data):
    L = data.draw(st.sampled_from([3, 5, 6]))
    ctx = make_context(L)
    # integer polynomials in the generator are algebraic integers
    def integral_elt():
        coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=ctx.degree,
                                    max_size=ctx.degree))
        return AlgebraicNumber._make(ctx, tuple(coeffs), 1)
    x, y = integral_elt(), integral_elt()
    assert is_algebraic_integer(x + y)
    assert is_algebraic_integer(x * y)


# -- rationality ---------------------------------------------------------------

def test_sign_and_approx_survive_catastrophic_cancellation():
    """Huge coefficients with a tiny value: q*g - p for a denominator-1e40
    convergent p/q of the generator.  The evaluation error bound must force
    precision escalation instead of trusting rounding noise."""
    import mpmath
    ctx = make_context(12)
    g = AlgebraicNumber.generator(ctx)
    with mpmath.workprec(400):
        gval = 2 * mpmath.cos(mpmath.pi / 12)
        conv = Fraction(int(mpmath.floor(gval * 10**50 + mpmath.mpf("0.5"))),
                        10**50).limit_denominator(10**40)
        true_gap = gval * conv.denominator - conv.numerator
        # coefficients ~1e40 against a value ~1e-12: far beyond what the
        # default working precision could resolve without a bound check
        assert abs(true_gap) < 1e-9
        expected_sign = 1 if true_gap > 0 else -1
        expected_float = float(true_gap)
    y = g * conv.denominator - conv.numerator
    assert y.sign() == expected_sign
    assert abs(y.approx() - expected_float) <= 1e-15 * abs(expected_float)


def test_large_field_embedding_certified():
    # inverse coefficients in large cyclotomic fields are enormous; the
    # embedding must still come out right
    from math import cos, pi, sqrt
    from tilinglinks.coxeter import build_hyperbolic_presentation
    p = build_hyperbolic_presentation(23, 24)
    D = cos(pi / 23)**2 + cos(pi / 24)**2 - 1
    assert abs(p.gram[3][5].approx() + 2 * cos(pi / 23) / sqrt(D)) < 1e-12
    assert p.gram[3][5].sign() == -1


def test_is_rational_examples():
    ctx5 = make_context(5)
    c5 = embed_cos(ctx5, 5)
    assert is_rational(c5 * c5) is None          # 4cos^2(pi/5) = (3+sqrt5)/2
    assert abs((c5 * c5).approx() - (3 + 5**0.5) / 2) < 1e-12
    ctx6 = make_context(6)
    c6 = embed_cos(ctx6, 6)
    assert is_rational(c6 * c6) == 3             # 4cos^2(pi/6)
    assert is_rational(AlgebraicNumber.rational(ctx5, 0)) == 0


# -- serialization -------------------------------------------------------------

def test_json_roundtrip_with_extension():
    ctx = make_context(6)
    s = adjoin_sqrt(ctx, AlgebraicNumber.rational(ctx, Fraction(1, 2)))
    x = (embed_cos(ctx, 6) / 3 - 2) * s + 7
    d = as_json_dict(x)
    assert d["L"] == 6 and isinstance(d["approx"], float)
    assert from_json_dict(d) == x


def test_json_shape():
    ctx = make_context(5)
    d = as_json_dict(embed_cos(ctx, 5) / 2)
    assert d["base"] == [[0, 1], [1, 2]]
    assert d["ext"] is None and d["radicand"] is None
