from __future__ import annotations

import random
from fractions import Fraction

import pytest

from zerosumlab import (
    CyclotomicNumber,
    GradedSpan,
    MultiPoly,
    StructuralError,
)

zeta = CyclotomicNumber.zeta
X = MultiPoly.variable(0, 2)
Y = MultiPoly.variable(1, 2)


def _random_poly(rng: random.Random, nvars: int = 2) -> MultiPoly:
    terms = {}
    for _ in range(rng.randint(0, 4)):
        exp = tuple(rng.randint(0, 3) for _ in range(nvars))
        terms[exp] = terms.get(exp, 0) + rng.randint(-3, 3)
    return MultiPoly(nvars, terms)


# --- construction -------------------------------------------------------------

def test_duplicate_exponents_combine():
    f = MultiPoly(1, [((2,), 1), ((2,), 2)])
    assert f == MultiPoly(1, {(2,): 3})


def test_zero_coefficients_dropped():
    f = MultiPoly(2, {(1, 0): 1, (0, 1): 0})
    assert len(f.terms) == 1
    assert (X - X).is_zero()


def test_arity_checks():
    with pytest.raises(StructuralError):
        MultiPoly(2, {(1,): 1})
    with pytest.raises(StructuralError):
        MultiPoly(1, {(-1,): 1})
    with pytest.raises(StructuralError):
        X + MultiPoly.variable(0, 3)


def test_mixed_conductor_coefficients_lift():
    f = MultiPoly(1, {(1,): zeta(3)})
    g = MultiPoly(1, {(0,): zeta(4)})
    h = f + g
    assert h.conductor == 12
    assert h.terms[(1,)] == zeta(12, 4)


# --- arithmetic -----------------------------------------------------------------

def test_ring_axioms_on_random_polys():
    rng = random.Random(424242)
    for _ in range(30):
        f, g, h = (_random_poly(rng) for _ in range(3))
        assert (f + g) * h == f * h + g * h
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)
        assert f - f == MultiPoly.zero(2)


def test_powers_match_repeated_products():
    f = X + 2 * Y
    assert f**3 == f * f * f
    assert f**0 == MultiPoly.constant(2, 1)
    with pytest.raises(StructuralError):
        f**-1


def test_scalar_operations():
    f = 3 * X
    assert f.terms[(1, 0)] == 3
    assert (f + 1) - 1 == f
    assert f * Fraction(1, 3) == X
    assert zeta(4) * X * (zeta(4) * X) == -1 * X * X


def test_binomial_square():
    assert (X + Y) ** 2 == X**2 + 2 * X * Y + Y**2


# --- structure -------------------------------------------------------------------

def test_degree_and_homogeneity():
    assert MultiPoly.zero(2).degree() == -1
    assert (X**2 * Y).degree() == 3
    assert (X**2 + X * Y).is_homogeneous()
    assert not (X**2 + Y).is_homogeneous()


def test_leading_term_is_grlex_largest():
    exp, coeff = (X**3 + Y**3).leading()
    assert exp == (3, 0) and coeff == 1
    # higher total degree wins regardless of the first variable
    exp, _ = (Y**3 + X**2).leading()
    assert exp == (0, 3)
    assert MultiPoly.zero(2).leading() is None


def test_restrict_to_support():
    f = X**3 + Y**3 + X * Y + 5
    assert f.restrict_to_support([0]) == X**3 + 5
    assert f.restrict_to_support([1]) == Y**3 + 5
    assert f.restrict_to_support([0, 1]) == f
    assert f.restrict_to_support([]) == MultiPoly.constant(2, 5)


def test_support_variables():
    assert (X * Y + X).support_variables() == {0, 1}
    assert MultiPoly.constant(2, 7).support_variables() == set()


def test_evaluate_with_roots_of_unity():
    f = X * Y
    assert f.evaluate((zeta(3), zeta(3, 2))) == 1
    g = X**3 + Y**3
    assert g.evaluate((1, zeta(3))) == 2
    with pytest.raises(StructuralError):
        f.evaluate((1,))


def test_evaluate_rational_point():
    f = X**2 - Y
    assert f.evaluate((Fraction(1, 2), Fraction(1, 4))).to_fraction() == 0


# --- rendering --------------------------------------------------------------------

def test_str_default_names():
    assert str(X**3 + Y**3) == "x1^3 + x2^3"
    assert str(2 * X * Y) == "2*x1*x2"
    assert str(X - Y) == "x1 - x2"
    assert str(MultiPoly.zero(2)) == "0"
    assert str(MultiPoly(1, {(1,): zeta(3)})) == "(z3)*x1"


def test_format_custom_names():
    f = X**2 + 3 * Y
    assert f.format(["a", "b"]) == "a^2 + 3*b"


# --- graded spans -----------------------------------------------------------------

def test_span_insert_and_dim():
    span = GradedSpan(2)
    assert span.insert(X + Y)
    assert span.insert(Y)
    assert not span.insert(X)  # already in the span
    assert span.dim == 2


def test_span_contains_and_reduce():
    span = GradedSpan(2)
    span.extend([X**2 + Y**2, X * Y])
    assert span.contains(2 * X**2 + 2 * Y**2 + X * Y)
    assert not span.contains(X**2)
    nf = span.reduce(X**2)
    assert nf == X**2 - (X**2 + Y**2)  # = -y^2, pivot eliminated


def test_span_rejects_zero_and_arity_mismatch():
    span = GradedSpan(2)
    assert not span.insert(MultiPoly.zero(2))
    with pytest.raises(StructuralError):
        span.reduce(MultiPoly.variable(0, 3))


def test_span_reduced_basis_is_order_independent():
    f1, f2, f3 = X**2, X**2 + X * Y, Y**2 + X**2
    a = GradedSpan(2)
    a.extend([f1, f2, f3])
    b = GradedSpan(2)
    b.extend([f3, f1 + f2, f2, f1])
    assert a.dim == b.dim == 3
    assert a.rows == b.rows
    assert a.pivots() == b.pivots()


def test_span_pivots_sorted_descending():
    span = GradedSpan(2)
    span.extend([Y, X**2, X * Y])
    keys = [(sum(p), p) for p in span.pivots()]
    assert keys == sorted(keys, reverse=True)
