"""Exact arithmetic in the cyclotomic fields Q(ζ_m).

A value is a rational coefficient vector representing a residue modulo
the m-th cyclotomic polynomial Φ_m, which is computed by the defining
iterated division of x^m − 1 by the Φ_d for proper divisors d | m.  No
floating point anywhere: coefficients are Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, StructuralError


def _poly_divmod(num, den):
    """Polynomial division over Q; coefficient lists, ascending powers."""
    num = [Fraction(c) for c in num]
    den = [Fraction(c) for c in den]
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    rem = num[:]
    lead = den[-1]
    for shift in range(len(num) - len(den), -1, -1):
        c = rem[shift + len(den) - 1] / lead
        if c:
            quot[shift] = c
            for i, d in enumerate(den):
                rem[shift + i] -= c * d
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Φ_m, ascending.

    >>> cyclotomic_polynomial(1)
    (-1, 1)
    >>> cyclotomic_polynomial(4)
    (1, 0, 1)
    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if m < 1:
        raise DomainError(f"conductor must be >= 1, got {m}")
    num = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            quot, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            assert not rem
            num = quot
    return tuple(int(c) for c in num)


def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


class CyclotomicNumber:
    """Element of Q(ζ_m): Fraction vector of length φ(m), powers ascending.

    Equality is representation equality: same conductor and same
    coefficients, except that rational values (only the constant
    coefficient non-zero) compare equal across conductors and to plain
    ints/Fractions.  Cross-conductor arithmetic requires an explicit
    lift to a common conductor.
    """

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs):
        self.m = m
        deg = euler_phi(m)
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > deg:
            coeffs = _reduce_mod(coeffs, cyclotomic_polynomial(m))
        coeffs += [Fraction(0)] * (deg - len(coeffs))
        self.coeffs = tuple(coeffs)

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_rational(cls, q, m: int = 1) -> "CyclotomicNumber":
        return cls(m, [Fraction(q)])

    @classmethod
    def zeta(cls, m: int, power: int = 1) -> "CyclotomicNumber":
        """ζ_m^power.

        >>> CyclotomicNumber.zeta(4) * CyclotomicNumber.zeta(4) == -1
        True
        """
        power %= m
        return cls(m, [0] * power + [1])

    @classmethod
    def zero(cls, m: int = 1) -> "CyclotomicNumber":
        return cls(m, [])

    @classmethod
    def one(cls, m: int = 1) -> "CyclotomicNumber":
        return cls(m, [1])

    # -- structure -------------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise StructuralError(f"{self} is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def lift(self, M: int) -> "CyclotomicNumber":
        """Image under ζ_m = ζ_M^(M/m); M must be a multiple of m."""
        if M % self.m != 0:
            raise StructuralError(f"cannot lift conductor {self.m} into {M}")
        if M == self.m:
            return self
        step = M // self.m
        out = [Fraction(0)] * (len(self.coeffs) * step - step + 1 or 1)
        for i, c in enumerate(self.coeffs):
            if c:
                out[i * step] += c
        return CyclotomicNumber(M, out)

    def _same(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.from_rational(other, self.m)
        if not isinstance(other, CyclotomicNumber):
            return None
        if other.m != self.m:
            raise StructuralError(
                f"conductor mismatch: {self.m} vs {other.m}; lift explicitly"
            )
        return other

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        return CyclotomicNumber(self.m, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.m, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        prod = [Fraction(0)] * (len(a) + len(b) - 1 or 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        prod[i + j] += ca * cb
        return CyclotomicNumber(self.m, prod)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        """Multiplicative inverse via the extended Euclidean algorithm.

        Φ_m is irreducible over Q, so any non-zero residue is a unit.
        """
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.m)]
        # invariants: r0 = u0·f (mod Φ), r1 = u1·f (mod Φ)
        r0, u0 = list(self.coeffs), [Fraction(1)]
        r1, u1 = phi, [Fraction(0)]
        while True:
            r1 = _trim(r1)
            if len(r1) == 0:
                break
            q, r = _poly_divmod(r0, r1)
            u = _poly_sub(u0, _poly_mul(q, u1))
            r0, u0, r1, u1 = r1, u1, r, u
        r0 = _trim(r0)
        if len(r0) != 1:
            raise ZeroDivisionError("gcd with the cyclotomic polynomial is not constant")
        inv = [c / r0[0] for c in u0]
        return CyclotomicNumber(self.m, inv)

    def __truediv__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = CyclotomicNumber.one(self.m)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- identity ----------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.to_fraction() == Fraction(other)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        if self.is_rational() and other.is_rational():
            return self.to_fraction() == other.to_fraction()
        return self.m == other.m and self.coeffs == other.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.to_fraction())
        return hash((self.m, self.coeffs))

    def __str__(self):
        if self.is_rational():
            return str(self.to_fraction())
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                term = f"{mag}z{self.m}" + (f"^{i}" if i > 1 else "")
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts) if parts else "0"

    def __repr__(self):
        return f"CyclotomicNumber({self.m}, {[str(c) for c in self.coeffs]})"


def _trim(poly):
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1 or 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return out


def _poly_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return out


def _reduce_mod(coeffs, phi):
    _, rem = _poly_divmod(coeffs, list(phi))
    return rem


def lift_pair(a: CyclotomicNumber, b: CyclotomicNumber):
    """Both numbers lifted to the least common conductor."""
    import math

    M = math.lcm(a.m, b.m)
    return a.lift(M), b.lift(M)


def cyc_arith(a: CyclotomicNumber, b, op: str):
    """add | mul | inv | eq with equal conductors (callers lift first)."""
    if op == "inv":
        return a.inverse()
    if not isinstance(b, CyclotomicNumber) or a.m != b.m:
        raise StructuralError("cyc_arith requires two numbers of equal conductor")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "eq":
        return a.coeffs == b.coeffs
    raise StructuralError(f"unknown op {op!r}")
