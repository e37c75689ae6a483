"""Invariant rings of monomial representations over Q(ζ_m).

A group element acts by x_i ↦ ζ_m^{s_i}·x_{σ(i)}; the closure of the
generators under composition is materialized and checked against the
declared group order.  Invariants of degree d are spanned by transfers
(sums over all group translates) of degree-d monomials; β_k is the
largest degree where the invariants are not contained in the (k+1)-st
power of the positive-degree ideal, with the scan ranges certified by
the Noether bound (β ≤ |G| in characteristic 0) and the trivial bound
β_k ≤ k·β.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .errors import (
    CapacityError,
    DomainError,
    ParseError,
    StructuralError,
    ValidationError,
    VerificationError,
)
from .groups import AbelianGroup, SemidirectGroup, parse_groupspec
from .cyclotomic import CyclotomicNumber
from .polynomials import GradedSpan, MultiPoly
from .sequences import Sequence
from .davenport import davenport_k

DEFAULT_DEGREE_CAP = 64
_CLOSURE_CAP = 4096


class MonomialRep:
    """A group of monomial substitutions x_i ↦ ζ_m^{s_i}·x_{σ(i)}.

    ``generators`` are (permutation, scalar-exponent vector) pairs; the
    element closure is computed on construction and must match
    ``expected_order`` when given.
    """

    __slots__ = ("name", "nvars", "conductor", "generators", "elements",
                 "group_order", "_basis_cache", "_power_cache")

    def __init__(self, nvars, conductor, generators, expected_order=None, name=None):
        self.nvars = nvars
        self.conductor = conductor
        gens = []
        for perm, scalars in generators:
            perm = tuple(perm)
            scalars = tuple(s % conductor for s in scalars)
            if sorted(perm) != list(range(nvars)) or len(scalars) != nvars:
                raise StructuralError(f"bad generator ({perm}, {scalars})")
            gens.append((perm, scalars))
        self.generators = tuple(gens)
        self.elements = self._closure()
        self.group_order = len(self.elements)
        if expected_order is not None and self.group_order != expected_order:
            raise ValidationError(
                f"closure has {self.group_order} elements, expected {expected_order}"
            )
        self.name = name or f"monomial-rep({nvars} vars, order {self.group_order})"
        self._basis_cache = {}
        self._power_cache = {}

    def _compose(self, g, h):
        """Apply g, then h."""
        sigma, s = g
        tau, t = h
        perm = tuple(tau[sigma[i]] for i in range(self.nvars))
        scalars = tuple((s[i] + t[sigma[i]]) % self.conductor for i in range(self.nvars))
        return (perm, scalars)

    def _closure(self):
        identity = (tuple(range(self.nvars)), (0,) * self.nvars)
        seen = {identity}
        queue = [identity]
        while queue:
            g = queue.pop()
            for gen in self.generators:
                h = self._compose(g, gen)
                if h not in seen:
                    if len(seen) >= _CLOSURE_CAP:
                        raise CapacityError(
                            f"element closure exceeded {_CLOSURE_CAP}",
                            limit=_CLOSURE_CAP,
                        )
                    seen.add(h)
                    queue.append(h)
        return tuple(sorted(seen))

    # -- the action on polynomials ------------------------------------------------

    def act(self, element, f: MultiPoly) -> MultiPoly:
        """Image of f under x_i ↦ ζ^{s_i}·x_{σ(i)}."""
        sigma, s = element
        if f.nvars != self.nvars:
            raise StructuralError("polynomial arity does not match the representation")
        m = math.lcm(f.conductor, self.conductor)
        out = {}
        for exp, coeff in f.terms.items():
            new_exp = [0] * self.nvars
            scalar = 0
            for i, e in enumerate(exp):
                if e:
                    new_exp[sigma[i]] += e
                    scalar += s[i] * e
            key = tuple(new_exp)
            c = coeff.lift(m) * CyclotomicNumber.zeta(self.conductor, scalar).lift(m)
            if key in out:
                c = out[key] + c
            out[key] = c
        return MultiPoly(self.nvars, out, m)

    def is_invariant(self, f: MultiPoly) -> bool:
        return all(self.act(g, f) == f for g in self.generators)

    def __repr__(self):
        return f"MonomialRep({self.name})"


def transfer(rep: MonomialRep, f: MultiPoly) -> MultiPoly:
    """Σ over all group elements of the image of f; always invariant.

    >>> rep = regular_representation(AbelianGroup((2,)))
    >>> str(transfer(rep, MultiPoly.variable(1, 2)))
    '0'
    """
    total = MultiPoly.zero(rep.nvars, rep.conductor)
    for g in rep.elements:
        total = total + rep.act(g, f)
    return total


def _degree_monomials(nvars, d):
    for split in itertools.combinations_with_replacement(range(nvars), d):
        exp = [0] * nvars
        for i in split:
            exp[i] += 1
        yield tuple(exp)


def invariant_basis(rep: MonomialRep, d: int) -> GradedSpan:
    """Reduced basis of the degree-d invariants (transfers of monomials)."""
    if d < 0:
        raise DomainError(f"degree must be >= 0, got {d}")
    cached = rep._basis_cache.get(d)
    if cached is not None:
        return cached
    span = GradedSpan(rep.nvars)
    if d == 0:
        span.insert(MultiPoly.constant(rep.nvars, 1, rep.conductor))
    else:
        for exp in _degree_monomials(rep.nvars, d):
            t = transfer(rep, MultiPoly.monomial(rep.nvars, exp, 1, rep.conductor))
            if not t.is_zero():
                span.insert(t)
    for row in span.rows:
        if not rep.is_invariant(row):
            raise VerificationError(f"non-invariant basis row {row}")
    rep._basis_cache[d] = span
    return span


def _power_span(rep: MonomialRep, j: int, d: int) -> GradedSpan:
    """(R_+^j)_d via P_{1,d} = R_d and P_{j+1,d} = Σ_e R_e · P_{j,d−e}."""
    key = (j, d)
    cached = rep._power_cache.get(key)
    if cached is not None:
        return cached
    if j == 1:
        span = invariant_basis(rep, d) if d >= 1 else GradedSpan(rep.nvars)
    else:
        span = GradedSpan(rep.nvars)
        for e in range(1, d - j + 2):
            left = invariant_basis(rep, e)
            right = _power_span(rep, j - 1, d - e)
            for a in left.rows:
                for b in right.rows:
                    span.insert(a * b)
    rep._power_cache[key] = span
    return span


def _failing_rows(rep, d, j):
    """Rows of R_d outside (R_+^j)_d."""
    power = _power_span(rep, j, d)
    return [row for row in invariant_basis(rep, d).rows if not power.contains(row)]


def beta_k(rep: MonomialRep, k: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> dict:
    """β_k of the invariant ring: max degree d with R_d ⊄ (R_+^{k+1})_d.

    β_1 is scanned over 1..|G| (complete by the Noether bound) and β_k
    over 1..k·β_1 (complete by the trivial bound β_k ≤ k·β_1), so the
    results are exact values, not window estimates.

    >>> beta_k(regular_representation(AbelianGroup((2,))), 1)["beta"]
    2
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if rep.group_order > degree_cap:
        raise CapacityError(
            f"beta_1 scan needs degrees up to |G| = {rep.group_order}, "
            f"over the cap {degree_cap}",
            limit=degree_cap,
        )
    failing_1 = [d for d in range(1, rep.group_order + 1) if _failing_rows(rep, d, 2)]
    if not failing_1:
        raise VerificationError(
            "no generator degrees found within the Noether bound; "
            "impossible in characteristic zero"
        )
    beta_1 = max(failing_1)
    report = {
        "rep": rep.name,
        "k": k,
        "beta_1": beta_1,
        "group_order": rep.group_order,
    }
    if k == 1:
        witness_rows = _failing_rows(rep, beta_1, 2)
        report.update(
            {
                "beta": beta_1,
                "scan_limit": rep.group_order,
                "failing_degrees": failing_1,
                "witness": str(witness_rows[0]),
            }
        )
        return report
    limit = k * beta_1
    if limit > degree_cap:
        raise CapacityError(
            f"beta_{k} scan needs degrees up to k·beta_1 = {limit}, over the cap "
            f"{degree_cap}",
            limit=degree_cap,
            partial=report,
        )
    failing = [d for d in range(1, limit + 1) if _failing_rows(rep, d, k + 1)]
    value = max(failing) if failing else 0
    witness_rows = _failing_rows(rep, value, k + 1) if failing else []
    report.update(
        {
            "beta": value,
            "scan_limit": limit,
            "failing_degrees": failing,
            "witness": str(witness_rows[0]) if witness_rows else None,
        }
    )
    return report


# -- concrete representations ----------------------------------------------------


def regular_representation(A: AbelianGroup) -> MonomialRep:
    """Diagonal action of A by all of its characters (via A ≅ Â).

    One variable per character; the variable of the character indexed by
    group element y scales under the i-th canonical generator by
    ζ_m^{(m/n_i)·y_i}, m = exp(A).

    >>> regular_representation(AbelianGroup((3,))).group_order
    3
    """
    m = A.exponent
    variables = A.elements()  # sorted tuples; the zero index is the trivial character
    generators = []
    for i, n in enumerate(A.factors):
        scalars = tuple((m // n) * y[i] % m for y in variables)
        generators.append((tuple(range(A.order)), scalars))
    return MonomialRep(
        A.order, m, generators, expected_order=A.order, name=f"reg({A.spec()})"
    )


def induced_module(G: SemidirectGroup) -> MonomialRep:
    """The d-dimensional module induced from a faithful character of Z_p.

    Variable x_i (0-based) scales by ζ_p^{e^i} under the Z_p generator;
    the Z_d generator cyclically shifts x_0 → x_1 → … → x_{d-1} → x_0.

    >>> induced_module(SemidirectGroup(3, 2, 2)).group_order
    6
    """
    p, d, e = G.p, G.d, G.e
    a_gen = (tuple(range(d)), tuple(pow(e, i, p) for i in range(d)))
    b_gen = (tuple((i + 1) % d for i in range(d)), (0,) * d)
    return MonomialRep(d, p, [a_gen, b_gen], expected_order=p * d, name=f"ind({G.spec()})")


def verify_beta_equals_davenport(A: AbelianGroup, k: int, budget_seconds=None) -> dict:
    """β_k of the regular representation against D_k from the search engine.

    >>> verify_beta_equals_davenport(AbelianGroup((2,)), 1)["passed"]
    True
    """
    if not isinstance(A, AbelianGroup):
        raise DomainError("the cross-check is defined for abelian groups only")
    beta_report = beta_k(regular_representation(A), k)
    dav = davenport_k(A, k, budget_seconds=budget_seconds)
    return {
        "group": A.spec(),
        "k": k,
        "beta": beta_report["beta"],
        "davenport": dav.value_Dk,
        "passed": beta_report["beta"] == dav.value_Dk,
    }


# -- the two sigma constructions ---------------------------------------------------


def _weights(G: SemidirectGroup):
    return [pow(G.e, i, G.p) for i in range(G.d)]


def _subset_orbit(S, d):
    return {tuple(sorted((i + j) % d for i in S)) for j in range(d)}


def _prescribed_monomial(G: SemidirectGroup, S) -> MultiPoly:
    """The invariant monomial on variable subset S from the support lemma."""
    from .lemmas import zero_sum_with_support

    w = _weights(G)
    support_weights = [w[i] for i in S]
    T = zero_sum_with_support(G.p, support_weights)
    exp = [0] * G.d
    for i in S:
        exp[i] = T.multiplicity((w[i],))
    return MultiPoly(G.d, {tuple(exp): 1})


def construct_fk(G: SemidirectGroup) -> list[MultiPoly]:
    """For k = 1..d, the invariant f_k = Σ_orbits Σ_shifts of m_S.

    k-element variable subsets are grouped into orbits under the cyclic
    shift; the lexicographically least subset represents each orbit; its
    monomial comes from the support lemma (degree ≤ p) and is summed over
    all d shifts.

    >>> [str(f) for f in construct_fk(SemidirectGroup(3, 2, 2))]
    ['x1^3 + x2^3', '2*x1*x2']
    """
    d = G.d
    shift = (tuple((i + 1) % d for i in range(d)), (0,) * d)
    rep = induced_module(G)
    out = []
    for k in range(1, d + 1):
        reps = sorted({min(_subset_orbit(S, d)) for S in itertools.combinations(range(d), k)})
        f = MultiPoly.zero(d)
        for S in reps:
            term = _prescribed_monomial(G, S)
            for _ in range(d):
                f = f + term
                term = rep.act(shift, term)
        if not rep.is_invariant(f):
            raise VerificationError(f"f_{k} for {G.spec()} is not invariant")
        if f.degree() > G.p:
            raise VerificationError(
                f"f_{k} for {G.spec()} has degree {f.degree()} > p = {G.p}"
            )
        out.append(f)
    return out


def verify_sigma_zpzd(G: SemidirectGroup) -> dict:
    """Mechanical check that σ(G) = p along the induced module.

    For every non-empty variable subset S, restricting f_{|S|} to S must
    leave a single monomial c·m_S with c ≠ 0 — then no non-zero point
    annihilates all f_k, so invariants of degree ≤ p cut out only the
    origin and σ(G, U) ≤ p; σ(G) ≥ σ(Z_p) = p from the subgroup Z_p.
    """
    fks = construct_fk(G)
    d = G.d
    restrictions = []
    for size in range(1, d + 1):
        for S in itertools.combinations(range(d), size):
            r = fks[size - 1].restrict_to_support(S)
            if r.is_zero():
                raise VerificationError(
                    f"restriction of f_{size} to {S} vanishes identically",
                    evidence=S,
                )
            if len(r.terms) != 1:
                raise VerificationError(
                    f"restriction of f_{size} to {S} is not a single monomial",
                    evidence=S,
                )
            expected = _prescribed_monomial(G, S)
            orbit = _subset_orbit(S, d)
            c_expected = d // len(orbit)
            if r != expected * c_expected:
                raise VerificationError(
                    f"restriction of f_{size} to {S} differs from "
                    f"{c_expected}·m_S",
                    evidence=S,
                )
            coeff = next(iter(r.terms.values())).to_fraction()
            c = int(coeff)
            restrictions.append(
                {
                    "S": [i + 1 for i in S],
                    "c": c,
                    "c_divides_d": G.d % c == 0,
                }
            )
    return {
        "group": G.spec(),
        "p": G.p,
        "d": G.d,
        "fk_degrees": [f.degree() for f in fks],
        "max_degree": max(f.degree() for f in fks),
        "restrictions": restrictions,
        "sigma_upper_module": G.p,
        "sigma_lower_subgroup": G.p,
        "sigma": G.p,
        "passed": True,
    }


def az2_module(n: int, e: int) -> MonomialRep:
    """Two variables: x ↦ ζ_n^{n/e}·x, y ↦ ζ_n^{−n/e}·y, swapped by an involution."""
    if e < 2:
        raise DomainError(f"the acting character must have order >= 2, got e = {e}")
    if n % e != 0:
        raise DomainError(f"character order e = {e} must divide n = {n}")
    a = n // e
    gen_a = ((0, 1), (a, (n - a) % n))
    gen_b = ((1, 0), (0, 0))
    return MonomialRep(2, n, [gen_a, gen_b], expected_order=2 * e, name=f"az2({n},{e})")


def verify_sigma_az2(n: int, e: int) -> dict:
    """x^e + y^e and xy are invariant and cut out only the origin.

    Restricting to each non-empty variable subset leaves a non-zero
    monomial supported exactly there (x^e, y^e, xy), so the common zero
    locus is 0 and σ(G, U) ≤ max(e, 2).
    """
    rep = az2_module(n, e)
    f1 = MultiPoly(2, {(e, 0): 1, (0, e): 1})
    f2 = MultiPoly(2, {(1, 1): 1})
    for f in (f1, f2):
        if not rep.is_invariant(f):
            raise VerificationError(f"{f} is not invariant under {rep.name}")
    zero_locus = []
    for S, f, label in (((0,), f1, "x^e"), ((1,), f1, "y^e"), ((0, 1), f2, "x*y")):
        r = f.restrict_to_support(S)
        ok = (
            not r.is_zero()
            and len(r.terms) == 1
            and r.support_variables() == set(S)
        )
        if not ok:
            raise VerificationError(
                f"zero-locus step failed on support {S}", evidence=S
            )
        zero_locus.append({"S": [i + 1 for i in S], "monomial": str(r), "label": label})
    return {
        "n": n,
        "e": e,
        "conductor": n,
        "closure_order": 2 * e,
        "invariants": [str(f1), str(f2)],
        "zero_locus": zero_locus,
        "bound": max(e, 2),
        "sigma": n if e == n else None,
        "passed": True,
    }


def parse_repspec(text: str) -> MonomialRep:
    """``reg(<groupspec>)`` or ``ind(SD(p,d,e))``."""
    if text.startswith("reg(") and text.endswith(")"):
        group = parse_groupspec(text[4:-1])
        if not isinstance(group, AbelianGroup):
            raise DomainError("reg(...) expects an abelian group spec")
        return regular_representation(group)
    if text.startswith("ind(") and text.endswith(")"):
        group = parse_groupspec(text[4:-1])
        if not isinstance(group, SemidirectGroup):
            raise DomainError("ind(...) expects an SD(p,d,e) spec")
        return induced_module(group)
    raise ParseError(f"repspec must be reg(...) or ind(...), got {text!r}", 0)
