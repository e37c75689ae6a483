"""Finite abelian groups in invariant-factor form, plus the semidirect
family Z_p ⋊ Z_d needed by the sigma verifications.

An abelian group is presented by its invariant factors n_1 | n_2 | … | n_r;
elements are plain integer tuples with coordinate i reduced mod n_i.  The
trivial group is the empty factor list and its only element is the empty
tuple.  All values are immutable; every operation is a pure function.
"""

from __future__ import annotations

import itertools
import math
import re

from .errors import (
    CapacityError,
    DomainError,
    ParseError,
    StructuralError,
    ValidationError,
)

AUTOMORPHISM_ENUMERATION_LIMIT = 64


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization as (prime, exponent) pairs, ascending.

    >>> factorize(12)
    [(2, 2), (3, 1)]
    >>> factorize(1)
    []
    """
    if n < 1:
        raise DomainError(f"cannot factorize {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == [(n, 1)]


def smallest_prime_divisor(n: int) -> int:
    """Least prime q dividing n.

    >>> smallest_prime_divisor(35)
    5
    >>> smallest_prime_divisor(7)
    7
    """
    if n < 2:
        raise DomainError(f"smallest_prime_divisor needs n >= 2, got {n}")
    p = 2
    while p * p <= n:
        if n % p == 0:
            return p
        p += 1
    return n


def multiplicative_order(a: int, p: int) -> int:
    a %= p
    if math.gcd(a, p) != 1:
        raise DomainError(f"{a} is not a unit mod {p}")
    k, x = 1, a
    while x != 1:
        x = x * a % p
        k += 1
    return k


def invariant_factors(factors) -> tuple[int, ...]:
    """Normalize an arbitrary list of cyclic orders to invariant factors.

    Each input order splits into prime powers; for each prime the powers
    are sorted descending and the i-th largest of every prime multiply
    into the i-th largest invariant factor.

    >>> invariant_factors([2, 6, 4])
    (2, 2, 12)
    >>> invariant_factors([2, 3])
    (6,)
    >>> invariant_factors([1, 1])
    ()
    """
    powers_by_prime: dict[int, list[int]] = {}
    for n in factors:
        if n < 1:
            raise DomainError(f"cyclic order must be >= 1, got {n}")
        for p, e in factorize(n):
            powers_by_prime.setdefault(p, []).append(p**e)
    if not powers_by_prime:
        return ()
    rank = max(len(v) for v in powers_by_prime.values())
    out = [1] * rank
    for powers in powers_by_prime.values():
        powers.sort(reverse=True)
        # largest prime power joins the last (largest) invariant factor
        for t, q in enumerate(powers):
            out[rank - 1 - t] *= q
    return tuple(out)


class AbelianGroup:
    """A finite abelian group Z_{n_1} ⊕ … ⊕ Z_{n_r} with n_i | n_{i+1}."""

    __slots__ = ("factors", "order", "exponent", "rank", "_elements")

    def __init__(self, factors):
        factors = tuple(int(n) for n in factors)
        for n in factors:
            if n < 2:
                raise ValidationError(
                    f"invariant factors must be >= 2, got {n}; "
                    "use AbelianGroup.from_factors to normalize"
                )
        for a, b in zip(factors, factors[1:]):
            if b % a != 0:
                raise ValidationError(
                    f"invariant factor chain violated: {a} does not divide {b}"
                )
        self.factors = factors
        self.order = math.prod(factors)
        self.exponent = factors[-1] if factors else 1
        self.rank = len(factors)
        self._elements = None

    @classmethod
    def from_factors(cls, factors) -> "AbelianGroup":
        """Build from arbitrary cyclic orders, normalizing to invariant factors."""
        return cls(invariant_factors(factors))

    # -- element plumbing -------------------------------------------------

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def check(self, x) -> tuple[int, ...]:
        if not isinstance(x, tuple):
            raise StructuralError(f"group element must be a tuple, got {x!r}")
        if len(x) != self.rank:
            raise StructuralError(
                f"rank mismatch: element {x!r} has length {len(x)}, group rank is {self.rank}"
            )
        for c, n in zip(x, self.factors):
            if not isinstance(c, int) or not 0 <= c < n:
                raise DomainError(f"coordinate {c!r} out of range [0, {n}) in {x!r}")
        return x

    def reduce(self, x) -> tuple[int, ...]:
        if len(x) != self.rank:
            raise StructuralError(
                f"rank mismatch: element {x!r} for group of rank {self.rank}"
            )
        return tuple(c % n for c, n in zip(x, self.factors))

    def add(self, x, y) -> tuple[int, ...]:
        if len(x) != self.rank or len(y) != self.rank:
            raise StructuralError(f"rank mismatch adding {x!r} and {y!r}")
        return tuple((a + b) % n for a, b, n in zip(x, y, self.factors))

    def neg(self, x) -> tuple[int, ...]:
        return tuple((-a) % n for a, n in zip(x, self.factors))

    def scale(self, c: int, x) -> tuple[int, ...]:
        return tuple((c * a) % n for a, n in zip(x, self.factors))

    def element_order(self, x) -> int:
        """Least k >= 1 with k·x = 0; divides the exponent.

        >>> AbelianGroup((6,)).element_order((2,))
        3
        >>> AbelianGroup((2, 4)).element_order((1, 2))
        2
        """
        self.check(x)
        return math.lcm(1, *(n // math.gcd(n, c) for c, n in zip(x, self.factors)))

    def elements(self) -> list[tuple[int, ...]]:
        if self._elements is None:
            self._elements = [
                tuple(v) for v in itertools.product(*(range(n) for n in self.factors))
            ]
        return self._elements

    def generators(self) -> list[tuple[int, ...]]:
        return [
            tuple(1 if j == i else 0 for j in range(self.rank))
            for i in range(self.rank)
        ]

    # -- identity ----------------------------------------------------------

    def spec(self) -> str:
        if not self.factors:
            return "Z1"
        return "x".join(f"Z{n}" for n in self.factors)

    def __repr__(self):
        return f"AbelianGroup({self.factors})"

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and self.factors == other.factors

    def __hash__(self):
        return hash(("AbelianGroup", self.factors))


class Automorphism:
    """Automorphism of an abelian group, stored as generator images.

    ``images[i]`` is the image of the i-th canonical generator; viewed as
    a matrix, column i holds images[i].
    """

    __slots__ = ("group", "images")

    def __init__(self, group: AbelianGroup, images):
        self.group = group
        self.images = tuple(group.check(g) for g in images)

    @classmethod
    def identity(cls, group: AbelianGroup) -> "Automorphism":
        return cls(group, group.generators())

    def __call__(self, x) -> tuple[int, ...]:
        g = self.group
        return tuple(
            sum(x[i] * self.images[i][j] for i in range(g.rank)) % g.factors[j]
            for j in range(g.rank)
        )

    def matrix(self) -> list[list[int]]:
        r = self.group.rank
        return [[self.images[i][j] for i in range(r)] for j in range(r)]

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self ∘ other, i.e. apply other first."""
        if self.group != other.group:
            raise StructuralError("cannot compose automorphisms of different groups")
        return Automorphism(self.group, [self(g) for g in other.images])

    def element_map(self) -> dict:
        return {x: self(x) for x in self.group.elements()}

    def __eq__(self, other):
        return (
            isinstance(other, Automorphism)
            and self.group == other.group
            and self.images == other.images
        )

    def __hash__(self):
        return hash((self.group.factors, self.images))

    def __repr__(self):
        return f"Automorphism({self.group.spec()}, {self.images})"


def _span_with(span: frozenset, g, group: AbelianGroup) -> frozenset:
    # subgroup generated by span ∪ {g}: union of translates of span by multiples of g
    out = set(span)
    step = g
    while step not in span:
        out.update(group.add(s, step) for s in span)
        step = group.add(step, g)
    return frozenset(out)


def automorphism_group(A: AbelianGroup, limit: int = AUTOMORPHISM_ENUMERATION_LIMIT):
    """All automorphisms of A by generator-image enumeration.

    An automorphism preserves element orders, so the image of the i-th
    generator must have order exactly n_i; a partial choice is viable only
    if the chosen images generate a subgroup of size n_1·…·n_j (the map
    restricted there must be injective).  Any surviving full choice whose
    images generate A is a surjective endomorphism of a finite group,
    hence an automorphism.

    >>> len(automorphism_group(AbelianGroup((3,))))
    2
    >>> len(automorphism_group(AbelianGroup((2, 2))))
    6
    """
    if A.order > limit:
        raise CapacityError(
            f"automorphism enumeration limited to groups of order <= {limit}, "
            f"|A| = {A.order}",
            limit=limit,
        )
    if A.rank == 0:
        return [Automorphism.identity(A)]
    by_order: dict[int, list] = {}
    for x in A.elements():
        by_order.setdefault(A.element_order(x), []).append(x)
    found = []
    zero_span = frozenset([A.zero])

    def extend(i, images, span, size):
        if i == A.rank:
            found.append(Automorphism(A, images))
            return
        need = size * A.factors[i]
        for g in by_order.get(A.factors[i], ()):
            bigger = _span_with(span, g, A)
            if len(bigger) == need:
                extend(i + 1, images + [g], bigger, need)

    extend(0, [], zero_span, 1)
    return found


class Embedding:
    """Injective homomorphism recorded by the images of the source generators."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source: AbelianGroup, target: AbelianGroup, images):
        self.source = source
        self.target = target
        self.images = tuple(target.check(g) for g in images)

    def __call__(self, x) -> tuple[int, ...]:
        self.source.check(x)
        out = self.target.zero
        for c, img in zip(x, self.images):
            out = self.target.add(out, self.target.scale(c, img))
        return out

    def __repr__(self):
        return f"Embedding({self.source.spec()} -> {self.target.spec()})"


def direct_product(A: AbelianGroup, B: AbelianGroup):
    """A ⊕ B in invariant-factor form, with embeddings of both factors.

    Every cyclic factor of A and B splits into prime powers; for each
    prime, powers sorted descending slot into the invariant factors from
    the largest down.  The generator of an input factor maps to the sum,
    over its prime powers q slotted into invariant factor m_j, of the
    order-q element (m_j // q) in coordinate j.

    >>> C, eA, eB = direct_product(AbelianGroup((2,)), AbelianGroup((3,)))
    >>> C.factors
    (6,)
    >>> eA((1,)), eB((1,))
    ((3,), (2,))
    """
    inputs = list(A.factors) + list(B.factors)
    slots_by_prime: dict[int, list[tuple[int, int]]] = {}
    for idx, n in enumerate(inputs):
        for p, e in factorize(n):
            slots_by_prime.setdefault(p, []).append((p**e, idx))
    rank = max((len(v) for v in slots_by_prime.values()), default=0)
    new_factors = [1] * rank
    # assignment[idx] collects (slot position, prime power) for input factor idx
    assignment: dict[int, list[tuple[int, int]]] = {i: [] for i in range(len(inputs))}
    for powers in slots_by_prime.values():
        powers.sort(key=lambda qi: qi[0], reverse=True)
        for t, (q, idx) in enumerate(powers):
            j = rank - 1 - t
            new_factors[j] *= q
            assignment[idx].append((j, q))
    C = AbelianGroup(tuple(new_factors))
    gen_images = []
    for idx in range(len(inputs)):
        coords = [0] * rank
        for j, q in assignment[idx]:
            coords[j] = (coords[j] + C.factors[j] // q) % C.factors[j]
        gen_images.append(tuple(coords))
    embed_A = Embedding(A, C, gen_images[: A.rank])
    embed_B = Embedding(B, C, gen_images[A.rank :])
    return C, embed_A, embed_B


def subgroup_embeddable(B: AbelianGroup, A: AbelianGroup) -> bool:
    """True iff B is realizable as a subgroup of A.

    For abelian groups this is the right-aligned divisibility of the
    invariant factor chains.

    >>> subgroup_embeddable(AbelianGroup((2,)), AbelianGroup((4,)))
    True
    >>> subgroup_embeddable(AbelianGroup((2, 2)), AbelianGroup((8,)))
    False
    """
    if B.rank > A.rank:
        return False
    for i in range(1, B.rank + 1):
        if A.factors[-i] % B.factors[-i] != 0:
            return False
    return True


class SemidirectGroup:
    """Z_p ⋊ Z_d where the Z_d generator acts on Z_p by multiplication by e.

    Elements are pairs (a, t) with a in [0, p) and t in [0, d); the
    product is (a, t)·(b, u) = (a + e^t·b mod p, t + u mod d).
    """

    __slots__ = ("p", "d", "e", "order")

    AXIOM_CHECK_LIMIT = 60

    def __init__(self, p: int, d: int, e: int):
        if not is_prime(p):
            raise ValidationError(f"SD requires prime p, got {p}")
        if not 2 <= e < p:
            raise ValidationError(f"SD multiplier e must lie in [2, {p}), got {e}")
        if multiplicative_order(e, p) != d:
            raise ValidationError(
                f"multiplicative order of {e} mod {p} is "
                f"{multiplicative_order(e, p)}, expected d = {d}"
            )
        self.p = p
        self.d = d
        self.e = e
        self.order = p * d
        if self.order <= self.AXIOM_CHECK_LIMIT:
            self._verify_axioms()

    def _verify_axioms(self):
        els = self.elements()
        ident = self.identity
        for x in els:
            if self.multiply(x, ident) != x or self.multiply(ident, x) != x:
                raise ValidationError(f"identity axiom fails at {x}")
            if self.multiply(x, self.inverse(x)) != ident:
                raise ValidationError(f"inverse axiom fails at {x}")
        for x in els:
            for y in els:
                xy = self.multiply(x, y)
                for z in els:
                    if self.multiply(xy, z) != self.multiply(x, self.multiply(y, z)):
                        raise ValidationError(f"associativity fails at {x},{y},{z}")

    @property
    def identity(self):
        return (0, 0)

    def elements(self):
        return [(a, t) for a in range(self.p) for t in range(self.d)]

    def multiply(self, x, y):
        a, t = x
        b, u = y
        return ((a + pow(self.e, t, self.p) * b) % self.p, (t + u) % self.d)

    def inverse(self, x):
        a, t = x
        u = (-t) % self.d
        b = (-a) * pow(self.e, u, self.p) % self.p
        return (b, u)

    def element_order(self, x) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.multiply(y, x)
            k += 1
        return k

    def spec(self) -> str:
        return f"SD({self.p},{self.d},{self.e})"

    def __repr__(self):
        return f"SemidirectGroup(p={self.p}, d={self.d}, e={self.e})"

    def __eq__(self, other):
        return isinstance(other, SemidirectGroup) and (self.p, self.d, self.e) == (
            other.p,
            other.d,
            other.e,
        )

    def __hash__(self):
        return hash(("SemidirectGroup", self.p, self.d, self.e))


def semidirect_elements(G: SemidirectGroup):
    """All p·d elements of G; product/inverse live on the group object."""
    return G.elements()


_SD_RE = re.compile(r"SD\((\d+),(\d+),(\d+)\)\Z")


def _sd_deviation_position(text: str) -> int:
    """Index of the first character breaking the SD(p,d,e) shape."""
    pos = 0
    n = len(text)

    def expect(ch):
        nonlocal pos
        if pos < n and text[pos] == ch:
            pos += 1
            return True
        return False

    def digits():
        nonlocal pos
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        return pos > start

    for ch in "SD(":
        if not expect(ch):
            return pos
    for i in range(3):
        if not digits():
            return pos
        if i < 2 and not expect(","):
            return pos
    expect(")")
    return pos  # a complete literal followed by junk deviates here


def parse_groupspec(text: str):
    """Parse ``Z<n>``, ``Z<a>xZ<b>x…`` (normalized) or ``SD(p,d,e)``.

    >>> parse_groupspec("Z2xZ6").factors
    (2, 6)
    >>> parse_groupspec("SD(3,2,2)").order
    6
    """
    if not text:
        raise ParseError("empty group spec", 0)
    if text[0] == "S":
        m = _SD_RE.match(text)
        if not m:
            raise ParseError(
                f"malformed SD spec {text!r}", _sd_deviation_position(text)
            )
        return SemidirectGroup(int(m.group(1)), int(m.group(2)), int(m.group(3)))
    factors = []
    pos = 0
    while True:
        if pos >= len(text) or text[pos] != "Z":
            raise ParseError("expected 'Z'", pos)
        pos += 1
        start = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if start == pos:
            raise ParseError("expected digits after 'Z'", pos)
        n = int(text[start:pos])
        if n < 1:
            raise DomainError(f"cyclic factor must be >= 1, got Z{n}")
        factors.append(n)
        if pos == len(text):
            break
        if text[pos] != "x":
            raise ParseError(f"expected 'x' between factors, got {text[pos]!r}", pos)
        pos += 1
    return AbelianGroup.from_factors(factors)
