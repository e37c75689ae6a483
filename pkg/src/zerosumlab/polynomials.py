"""Multivariate polynomials over Q(ζ_m) and row-reduced graded spans.

Terms live in a dict from exponent vector to non-zero coefficient; the
global term order is graded lexicographic (total degree first, then the
exponent tuple), fixed once so that all linear algebra pivots are
deterministic.  A GradedSpan keeps a fully reduced echelon basis — the
unique reduced form of the span — so membership is a reduction to zero
and reported bases do not depend on insertion order.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import StructuralError
from .cyclotomic import CyclotomicNumber


def _as_coeff(value, m: int = 1) -> CyclotomicNumber:
    if isinstance(value, CyclotomicNumber):
        return value
    return CyclotomicNumber.from_rational(Fraction(value), m)


def grlex_key(exponents: tuple[int, ...]):
    return (sum(exponents), exponents)


class MultiPoly:
    """Polynomial in nvars variables with cyclotomic coefficients.

    All coefficients are stored at one common conductor; mixed-conductor
    inputs are lifted on construction.
    """

    __slots__ = ("nvars", "conductor", "terms")

    def __init__(self, nvars: int, terms=(), conductor: int = 1):
        self.nvars = nvars
        items = list(terms.items() if isinstance(terms, dict) else terms)
        m = conductor
        coeffs = []
        for exp, c in items:
            c = _as_coeff(c)
            m = math.lcm(m, c.m)
            coeffs.append((tuple(exp), c))
        self.conductor = m
        acc: dict[tuple[int, ...], CyclotomicNumber] = {}
        for exp, c in coeffs:
            if len(exp) != nvars:
                raise StructuralError(
                    f"exponent vector {exp} has arity {len(exp)}, expected {nvars}"
                )
            if any(e < 0 for e in exp):
                raise StructuralError(f"negative exponent in {exp}")
            c = c.lift(m)
            if exp in acc:
                c = acc[exp] + c
            acc[exp] = c
        self.terms = {exp: c for exp, c in acc.items() if not c.is_zero()}

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, conductor: int = 1) -> "MultiPoly":
        return cls(nvars, (), conductor)

    @classmethod
    def constant(cls, nvars: int, value, conductor: int = 1) -> "MultiPoly":
        return cls(nvars, [((0,) * nvars, _as_coeff(value, conductor))], conductor)

    @classmethod
    def monomial(cls, nvars: int, exponents, coeff=1, conductor: int = 1) -> "MultiPoly":
        return cls(nvars, [(tuple(exponents), _as_coeff(coeff, conductor))], conductor)

    @classmethod
    def variable(cls, i: int, nvars: int, conductor: int = 1) -> "MultiPoly":
        exp = tuple(1 if j == i else 0 for j in range(nvars))
        return cls.monomial(nvars, exp, 1, conductor)

    # -- structure ----------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def leading(self):
        """(exponent, coefficient) of the grlex-largest term."""
        if not self.terms:
            return None
        exp = max(self.terms, key=grlex_key)
        return exp, self.terms[exp]

    def _check_arity(self, other: "MultiPoly"):
        if self.nvars != other.nvars:
            raise StructuralError(
                f"arity mismatch: {self.nvars} vs {other.nvars} variables"
            )

    # -- arithmetic -----------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            other = MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_arity(other)
        m = math.lcm(self.conductor, other.conductor)
        out = {exp: c.lift(m) for exp, c in self.terms.items()}
        for exp, c in other.terms.items():
            c = c.lift(m)
            if exp in out:
                c = out[exp] + c
            out[exp] = c
        return MultiPoly(self.nvars, out, m)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(
            self.nvars, {e: -c for e, c in self.terms.items()}, self.conductor
        )

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            other = MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            c = _as_coeff(other)
            m = math.lcm(self.conductor, c.m)
            c = c.lift(m)
            return MultiPoly(
                self.nvars,
                {e: co.lift(m) * c for e, co in self.terms.items()},
                m,
            )
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_arity(other)
        m = math.lcm(self.conductor, other.conductor)
        out: dict[tuple[int, ...], CyclotomicNumber] = {}
        for e1, c1 in self.terms.items():
            c1 = c1.lift(m)
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2.lift(m)
                if exp in out:
                    c = out[exp] + c
                out[exp] = c
        return MultiPoly(self.nvars, out, m)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise StructuralError("negative polynomial power")
        out = MultiPoly.constant(self.nvars, 1, self.conductor)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- the operations the invariant arguments need -----------------------------

    def restrict_to_support(self, support) -> "MultiPoly":
        """Set every variable outside ``support`` (0-based indices) to zero.

        >>> f = MultiPoly(2, {(3, 0): 1, (0, 3): 1})
        >>> str(f.restrict_to_support([0]))
        'x1^3'
        """
        keep = set(support)
        out = {
            exp: c
            for exp, c in self.terms.items()
            if all(e == 0 or i in keep for i, e in enumerate(exp))
        }
        return MultiPoly(self.nvars, out, self.conductor)

    def support_variables(self) -> set[int]:
        used = set()
        for exp in self.terms:
            used.update(i for i, e in enumerate(exp) if e)
        return used

    def evaluate(self, point) -> CyclotomicNumber:
        """Exact evaluation at a tuple of cyclotomic numbers."""
        if len(point) != self.nvars:
            raise StructuralError(
                f"point arity {len(point)} does not match {self.nvars} variables"
            )
        point = [_as_coeff(v) for v in point]
        m = self.conductor
        for v in point:
            m = math.lcm(m, v.m)
        point = [v.lift(m) for v in point]
        total = CyclotomicNumber.zero(m)
        for exp, c in self.terms.items():
            val = c.lift(m)
            for v, e in zip(point, exp):
                if e:
                    val = val * v**e
            total = total + val
        return total

    # -- identity ---------------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            other = MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        diff = self - other
        return diff.is_zero()

    def __hash__(self):
        return hash((self.nvars, frozenset((e, c) for e, c in self.terms.items())))

    def sort_terms(self):
        return sorted(self.terms.items(), key=lambda ec: grlex_key(ec[0]), reverse=True)

    def format(self, names=None):
        """Stable text form, grlex-descending terms: ``x1^3 + 2*x2``.

        ``names`` overrides the default x1, x2, … variable names.
        """
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for exp, coeff in self.sort_terms():
            pieces = [
                names[i] + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(exp)
                if e
            ]
            mono = "*".join(pieces)
            if coeff.is_rational():
                q = coeff.to_fraction()
                sign = "-" if q < 0 else "+"
                mag = abs(q)
                if not mono:
                    body = str(mag)
                elif mag == 1:
                    body = mono
                else:
                    body = f"{mag}*{mono}"
            else:
                sign = "+"
                body = f"({coeff})" + (f"*{mono}" if mono else "")
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self})"


class GradedSpan:
    """Fully reduced echelon basis of a span of polynomials.

    Rows are monic on their grlex-leading monomial, every pivot monomial
    occurs in exactly one row, and rows are kept sorted by descending
    pivot — the unique reduced basis of the span.
    """

    __slots__ = ("nvars", "rows")

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.rows: list[MultiPoly] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def pivots(self):
        return [row.leading()[0] for row in self.rows]

    def reduce(self, f: MultiPoly) -> MultiPoly:
        """Normal form of f against the basis (every pivot eliminated)."""
        if f.nvars != self.nvars:
            raise StructuralError("arity mismatch in span reduction")
        for row in self.rows:
            pivot, _ = row.leading()
            c = f.terms.get(pivot)
            if c is not None and not c.is_zero():
                f = f - row * c
        return f

    def contains(self, f: MultiPoly) -> bool:
        return self.reduce(f).is_zero()

    def insert(self, f: MultiPoly) -> bool:
        """Add f to the span; True iff the dimension grew."""
        f = self.reduce(f)
        if f.is_zero():
            return False
        pivot, lead = f.leading()
        f = f * lead.inverse()
        # eliminate the new pivot from existing rows to keep the basis reduced
        for i, row in enumerate(self.rows):
            c = row.terms.get(pivot)
            if c is not None and not c.is_zero():
                self.rows[i] = row - f * c
        self.rows.append(f)
        self.rows.sort(key=lambda r: grlex_key(r.leading()[0]), reverse=True)
        return True

    def extend(self, polys) -> int:
        added = 0
        for f in polys:
            if self.insert(f):
                added += 1
        return added

    def __repr__(self):
        return f"GradedSpan(dim={self.dim}, pivots={self.pivots()})"
