from __future__ import annotations

import random
from fractions import Fraction

import pytest

from zerosumlab import (
    CyclotomicNumber,
    DomainError,
    StructuralError,
    cyc_arith,
    cyclotomic_polynomial,
    euler_phi,
    lift_pair,
)

zeta = CyclotomicNumber.zeta


# --- the polynomials themselves ----------------------------------------------

def test_cyclotomic_polynomial_small():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(5) == (1, 1, 1, 1, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(8) == (1, 0, 0, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_cyclotomic_polynomial_degree_is_totient():
    # phi(m) via the polynomial degree
    assert [euler_phi(m) for m in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]


def test_first_coefficient_outside_unit_range():
    # 105 = 3*5*7 is the least m where a coefficient leaves {-1, 0, 1}
    assert min(cyclotomic_polynomial(105)) == -2
    for m in range(1, 105):
        assert set(cyclotomic_polynomial(m)) <= {-1, 0, 1}


def test_product_over_divisors_recovers_x_to_m_minus_one():
    # prod_{d | m} Phi_d = x^m - 1, checked by direct multiplication
    for m in (6, 10, 12):
        acc = [1]
        for d in range(1, m + 1):
            if m % d == 0:
                phi = cyclotomic_polynomial(d)
                out = [0] * (len(acc) + len(phi) - 1)
                for i, a in enumerate(acc):
                    for j, b in enumerate(phi):
                        out[i + j] += a * b
                acc = out
        assert acc == [-1] + [0] * (m - 1) + [1]


def test_rejects_bad_conductor():
    with pytest.raises(DomainError):
        cyclotomic_polynomial(0)
    with pytest.raises(DomainError):
        CyclotomicNumber(-3, [1])


# --- field arithmetic ---------------------------------------------------------

def test_i_squared_is_minus_one():
    assert zeta(4) * zeta(4) == -1


def test_power_sum_vanishes_at_primes():
    for p in (3, 5, 7):
        total = CyclotomicNumber.zero(p)
        for j in range(p):
            total = total + zeta(p, j)
        assert total.is_zero()


def test_zeta_power_wraps_modulo_conductor():
    assert zeta(4, 5) == zeta(4)
    assert zeta(6, 3) == -1
    assert zeta(5, 0) == 1


def test_ring_axioms_on_random_triples():
    rng = random.Random(20260817)

    def rand(m):
        return CyclotomicNumber(
            m, [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(euler_phi(m))]
        )

    for m in (3, 4, 12):
        for _ in range(25):
            a, b, c = rand(m), rand(m), rand(m)
            assert (a + b) + c == a + (b + c)
            assert a + b == b + a
            assert (a * b) * c == a * (b * c)
            assert a * b == b * a
            assert a * (b + c) == a * b + a * c
            assert a - a == 0


def test_inverse_round_trip():
    rng = random.Random(0xC1C)
    for m in (4, 5, 8):
        for _ in range(20):
            x = CyclotomicNumber(
                m, [Fraction(rng.randint(-3, 3)) for _ in range(euler_phi(m))]
            )
            if x.is_zero():
                continue
            assert x * x.inverse() == 1
            assert x / x == 1


def test_inverse_of_zero_fails():
    with pytest.raises(ZeroDivisionError):
        CyclotomicNumber.zero(4).inverse()
    with pytest.raises(ZeroDivisionError):
        zeta(3) / CyclotomicNumber.zero(3)


def test_negative_powers():
    assert zeta(5) ** -1 == zeta(5, 4)
    assert (zeta(8) ** -3) * (zeta(8) ** 3) == 1


# --- conductor discipline -----------------------------------------------------

def test_mixed_conductor_arithmetic_is_rejected():
    with pytest.raises(StructuralError):
        zeta(4) + zeta(3)
    with pytest.raises(StructuralError):
        zeta(4) * zeta(6)
    with pytest.raises(StructuralError):
        # even when the value happens to be rational, conductors must match
        zeta(2) + zeta(3)


def test_lift_preserves_value():
    # zeta_3 = zeta_12^4
    assert zeta(3).lift(12) == zeta(12, 4)
    a, b = zeta(3), zeta(3, 2)
    prod_low = (a * b).lift(12)
    prod_high = a.lift(12) * b.lift(12)
    assert prod_low == prod_high


def test_lift_pair_uses_lcm():
    a, b = lift_pair(zeta(4), zeta(6))
    assert a.m == b.m == 12
    assert a == zeta(12, 3) and b == zeta(12, 2)


def test_lift_rejects_non_multiple():
    with pytest.raises(StructuralError):
        zeta(4).lift(6)


def test_rationals_compare_across_conductors():
    half = Fraction(1, 2)
    assert CyclotomicNumber.from_rational(half, 4) == CyclotomicNumber.from_rational(half, 6)
    assert CyclotomicNumber.from_rational(3, 5) == 3
    assert hash(CyclotomicNumber.from_rational(half, 4)) == hash(
        CyclotomicNumber.from_rational(half, 6)
    )


def test_to_fraction():
    assert CyclotomicNumber.from_rational(Fraction(2, 3)).to_fraction() == Fraction(2, 3)
    assert (zeta(6) - zeta(6)).to_fraction() == 0
    with pytest.raises(StructuralError):
        zeta(3).to_fraction()


# --- cyc_arith facade -----------------------------------------------------------

def test_cyc_arith_ops():
    assert cyc_arith(zeta(4), zeta(4), "mul") == -1
    assert cyc_arith(zeta(3), zeta(3, 2), "add") == -1
    assert cyc_arith(zeta(5), None, "inv") == zeta(5, 4)
    assert cyc_arith(zeta(3), zeta(3), "eq") is True
    assert cyc_arith(zeta(3), zeta(3, 2), "eq") is False


def test_cyc_arith_requires_equal_conductors():
    with pytest.raises(StructuralError):
        cyc_arith(zeta(4), zeta(3), "add")
    with pytest.raises(StructuralError):
        cyc_arith(zeta(4), zeta(4), "frobnicate")


def test_rational_conductor_one_arithmetic():
    two_thirds = CyclotomicNumber.from_rational(Fraction(2, 3))
    third = CyclotomicNumber.from_rational(Fraction(1, 3))
    assert cyc_arith(two_thirds, third, "add") == 1


# --- rendering -------------------------------------------------------------------

def test_str_forms():
    assert str(zeta(4)) == "z4"
    assert str(-zeta(4)) == "-z4"
    assert str(zeta(3) + 1) == "z3 + 1"
    assert str(CyclotomicNumber(8, [0, -1, 0, 3])) == "3*z8^3 - z8"
    assert str(CyclotomicNumber.from_rational(Fraction(1, 2))) == "1/2"
    assert str(CyclotomicNumber.zero()) == "0"
