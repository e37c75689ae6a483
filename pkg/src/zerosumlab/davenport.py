"""Exact D_k(A), d_k(A), η(A), σ values and eventual-linearity profiles.

The D_k search walks lengths upward, keeping at each length the set of
canonical "bad" multisets (k_max ≤ k−1) over A∖{0}.  Badness is closed
under sub-multisets, so every bad multiset of length n extends a bad one
of length n−1 — extending the previous level by single elements and
deduplicating canonical forms is a complete enumeration.  D_k is the
first length whose bad set is empty; the scan is bounded a priori by
k·D(A) ≤ k·|A|, so termination is certified.  Zero entries are handled
analytically: each is exactly one block, and appending a non-zero entry
to a zero-free bad sequence shows zeros never lengthen extremal
sequences, so the search runs over A∖{0}.
"""

from __future__ import annotations

import time
from fractions import Fraction

from .errors import CapacityError, DomainError, VerificationError
from .groups import AbelianGroup, automorphism_group, subgroup_embeddable
from .sequences import (
    Sequence,
    _items_add_one,
    _kmax_items,
    k_max_naive,
)

GUARANTEED_ORDER = 16  # larger groups require an explicit time budget


class DavenportReport:
    """Result of one D_k computation, with the extremal witness."""

    __slots__ = ("group", "k", "value_Dk", "value_dk", "extremal_witness", "search_stats")

    def __init__(self, group, k, value_Dk, extremal_witness, search_stats):
        self.group = group
        self.k = k
        self.value_Dk = value_Dk
        self.value_dk = value_Dk - 1
        self.extremal_witness = extremal_witness
        self.search_stats = search_stats

    def as_dict(self):
        return {
            "group": self.group.spec(),
            "k": self.k,
            "value_Dk": self.value_Dk,
            "value_dk": self.value_dk,
            "extremal_witness": self.extremal_witness.literal(),
            "search_stats": self.search_stats,
        }

    def __repr__(self):
        return (
            f"DavenportReport({self.group.spec()}, k={self.k}, "
            f"D_k={self.value_Dk}, witness={self.extremal_witness.literal()})"
        )


class LinearityProfile:
    """Observed behaviour of k ↦ D_k: slope, onset k0 and offset D0."""

    __slots__ = ("group", "slope", "k0", "D0", "table", "status")

    def __init__(self, group, slope, k0, D0, table, status):
        self.group = group
        self.slope = slope
        self.k0 = k0
        self.D0 = D0
        self.table = table
        self.status = status

    def as_dict(self):
        return {
            "group": self.group.spec(),
            "slope": self.slope,
            "k0": self.k0,
            "D0": self.D0,
            "table": [list(row) for row in self.table],
            "status": self.status,
        }


def _canonical_maps(A: AbelianGroup):
    """Element maps of Aut(A), or None when symmetry reduction is skipped."""
    try:
        auts = automorphism_group(A)
    except CapacityError:
        return None
    return [a.element_map() for a in auts]


def _canonical_items(items, maps):
    if maps is None:
        return items
    best = items
    for m in maps:
        mapped = tuple(sorted((m[elem], mult) for elem, mult in items))
        if mapped < best:
            best = mapped
    return best


def _require_capacity(A: AbelianGroup, budget_seconds):
    if A.order > GUARANTEED_ORDER and budget_seconds is None:
        raise CapacityError(
            f"groups of order > {GUARANTEED_ORDER} need an explicit time budget "
            f"(attempted |A| = {A.order})",
            limit=GUARANTEED_ORDER,
        )


def davenport_table(A: AbelianGroup, k_upto: int, budget_seconds=None):
    """D_1 … D_{k_upto} in one shared frontier scan.

    >>> [r.value_Dk for r in davenport_table(AbelianGroup((3,)), 2)]
    [3, 6]
    """
    if k_upto < 1:
        raise DomainError(f"k must be >= 1, got {k_upto}")
    _require_capacity(A, budget_seconds)
    t0 = time.monotonic()

    if A.rank == 0:
        # all-zero sequences: k_max equals the length, so D_k = k exactly
        reports = []
        for k in range(1, k_upto + 1):
            witness = Sequence(A, (((), k - 1),)) if k > 1 else Sequence.empty(A)
            reports.append(
                DavenportReport(A, k, k, witness, {"nodes": 0, "levels": 0, "seconds": 0.0})
            )
        return reports

    maps = _canonical_maps(A)
    nonzero = [x for x in A.elements() if x != A.zero]
    cutoff = k_upto * A.order + 1
    frontier = {(): 0}
    level = 0
    nodes = 0
    unresolved = set(range(1, k_upto + 1))
    resolved_D: dict[int, int] = {}
    witness_items: dict[int, tuple] = {j: () for j in unresolved}
    final_witness: dict[int, tuple] = {}

    while unresolved:
        level += 1
        if level > cutoff:
            raise VerificationError(
                f"scan passed the certified cutoff {cutoff} for {A.spec()}; "
                "this contradicts D_k <= k·|A|"
            )
        next_frontier: dict[tuple, int] = {}
        for items in frontier:
            for g in nonzero:
                cand = _canonical_items(_items_add_one(items, g), maps)
                if cand in next_frontier:
                    continue
                nodes += 1
                if budget_seconds is not None and nodes % 256 == 0:
                    if time.monotonic() - t0 > budget_seconds:
                        raise CapacityError(
                            f"time budget of {budget_seconds}s exhausted at "
                            f"length {level} for {A.spec()}",
                            limit=budget_seconds,
                            partial={j: resolved_D[j] for j in resolved_D},
                        )
                km = _kmax_items(A, cand)
                if km <= k_upto - 1:
                    next_frontier[cand] = km
        min_km = min(next_frontier.values()) if next_frontier else k_upto
        for j in sorted(unresolved):
            if j - 1 < min_km:
                # no length-`level` sequence avoids j disjoint blocks
                resolved_D[j] = level
                final_witness[j] = witness_items[j]
                unresolved.discard(j)
        for j in unresolved:
            witness_items[j] = min(
                it for it, km in next_frontier.items() if km <= j - 1
            )
        frontier = next_frontier

    seconds = time.monotonic() - t0
    reports = []
    for k in range(1, k_upto + 1):
        witness = Sequence(A, final_witness[k])
        # post-hoc: the stored extremal witness really has no k disjoint blocks
        if k_max_naive(witness) > k - 1:
            raise VerificationError(
                f"witness re-verification failed for {A.spec()}, k={k}",
                evidence=witness,
            )
        stats = {"nodes": nodes, "levels": level, "seconds": round(seconds, 6)}
        reports.append(DavenportReport(A, k, resolved_D[k], witness, stats))
    return reports


def davenport_k(A: AbelianGroup, k: int = 1, budget_seconds=None) -> DavenportReport:
    """D_k(A) with extremal witness and stats.

    >>> davenport_k(AbelianGroup((3,)), 1).value_Dk
    3
    """
    return davenport_table(A, k, budget_seconds=budget_seconds)[k - 1]


def _has_short_zero_sum(group, items, bound) -> bool:
    """Any non-empty zero-sum sub-multiset of length <= bound?"""

    n = len(items)

    def rec(i, total, used, room):
        if used and total == group.zero:
            return True
        if i == n or room == 0:
            return False
        elem, mult = items[i]
        step = elem
        acc = total
        for c in range(0, min(mult, room) + 1):
            if c:
                acc = group.add(acc, step)
            if rec(i + 1, acc, used + c, room - c):
                return True
        return False

    return rec(0, group.zero, 0, bound)


def eta(A: AbelianGroup, budget_seconds=None) -> int:
    """Least ℓ such that every length-ℓ sequence over A contains a
    non-empty zero-sum block of length at most exp(A).

    >>> eta(AbelianGroup((2, 2)))
    4
    """
    _require_capacity(A, budget_seconds)
    t0 = time.monotonic()
    if A.rank == 0:
        return 1
    maps = _canonical_maps(A)
    nonzero = [x for x in A.elements() if x != A.zero]
    bound = A.exponent
    cap = 2 * A.order + 2
    frontier = {()}
    level = 0
    while frontier:
        level += 1
        if level > cap:
            raise CapacityError(
                f"eta scan for {A.spec()} exceeded the length ceiling {cap}",
                limit=cap,
            )
        if budget_seconds is not None and time.monotonic() - t0 > budget_seconds:
            raise CapacityError(
                f"time budget of {budget_seconds}s exhausted in eta scan",
                limit=budget_seconds,
            )
        next_frontier = set()
        for items in frontier:
            for g in nonzero:
                cand = _canonical_items(_items_add_one(items, g), maps)
                if cand in next_frontier:
                    continue
                if not _has_short_zero_sum(A, cand, bound):
                    next_frontier.add(cand)
        frontier = next_frontier
    return level


def sigma_abelian(A: AbelianGroup) -> int:
    """σ(A) = exp(A) for abelian groups.

    >>> sigma_abelian(AbelianGroup((2, 4)))
    4
    """
    return A.exponent


def _min_zero_sum_length(A: AbelianGroup, steps) -> int:
    """Shortest non-empty zero-sum sequence with support inside ``steps``."""
    from collections import deque

    queue = deque([(A.zero, 0)])
    seen = set()
    while queue:
        x, dist = queue.popleft()
        for t in steps:
            y = A.add(x, t)
            if y == A.zero:
                return dist + 1
            if y not in seen:
                seen.add(y)
                queue.append((y, dist + 1))
    raise VerificationError(f"no zero-sum combination over support {steps!r}")


def sigma_diagonal(A: AbelianGroup, chars) -> int:
    """σ of the diagonal action by the listed characters (via A ≅ Â).

    Maximum over non-empty subsets T of the least length of a non-empty
    zero-sum sequence supported inside T; cross-checked against the
    maximal order of a single listed character.

    >>> sigma_diagonal(AbelianGroup((6,)), [(2,), (3,)])
    3
    """
    chars = [A.check(c) for c in chars]
    if not chars:
        raise DomainError("sigma_diagonal needs at least one character")
    distinct = sorted(set(chars))
    if len(distinct) > 16:
        raise CapacityError("subset scan limited to 16 distinct characters", limit=16)
    best = 0
    for mask in range(1, 1 << len(distinct)):
        T = [distinct[i] for i in range(len(distinct)) if mask >> i & 1]
        best = max(best, _min_zero_sum_length(A, T))
    expected = max(A.element_order(c) for c in chars)
    if best != expected:
        raise VerificationError(
            f"subset scan gave {best} but the maximal character order is {expected}"
        )
    return best


def linearity_profile(A: AbelianGroup, k_upto: int, budget_seconds=None) -> LinearityProfile:
    """Detect D_k = k·exp(A) + D0 for k ≥ k0 within the computed range.

    Reports status "undetermined" (k0 = D0 = None) when the final
    increment differs from exp(A) — no extrapolation.

    >>> linearity_profile(AbelianGroup((2, 2)), 4).D0
    1
    """
    if k_upto < 2:
        raise DomainError(f"linearity detection needs k_upto >= 2, got {k_upto}")
    reports = davenport_table(A, k_upto, budget_seconds=budget_seconds)
    table = [(r.k, r.value_Dk) for r in reports]
    slope = A.exponent
    k0 = None
    for start in range(1, k_upto):
        if all(table[k][1] - table[k - 1][1] == slope for k in range(start, k_upto)):
            k0 = start
            break
    if k0 is None:
        return LinearityProfile(A, slope, None, None, table, "undetermined")
    D0 = table[-1][1] - k_upto * slope
    return LinearityProfile(A, slope, k0, D0, table, "stabilized")


def verify_inequalities(A: AbelianGroup, profile: LinearityProfile) -> dict:
    """Check the general inequalities on a computed D_k table.

    Instances: monotonicity D_k ≤ D_{k+1}; the trivial bound D_k ≤ k·D_1;
    r·D_k ≤ k·D_r for r ≤ k; the lower bound D_k ≥ k·exp(A); and the step
    bound D_{k+1} ≤ D_k + exp(A) from the observed onset k0 on.
    """
    table = dict(profile.table)
    exp = A.exponent
    instances = []

    def record(name, params, lhs, rhs, ok):
        instances.append(
            {"name": name, "params": params, "lhs": lhs, "rhs": rhs, "passed": ok}
        )

    ks = sorted(table)
    for k in ks[:-1]:
        record("monotone", {"k": k}, table[k], table[k + 1], table[k] <= table[k + 1])
    for k in ks:
        record("trivial", {"k": k}, table[k], k * table[1], table[k] <= k * table[1])
        record("lower-sigma", {"k": k}, k * exp, table[k], table[k] >= k * exp)
    for r in ks:
        for k in ks:
            if r < k:
                # D_k <= (k/r)·D_r, cross-multiplied to stay in integers
                record(
                    "k-over-r",
                    {"k": k, "r": r},
                    r * table[k],
                    k * table[r],
                    r * table[k] <= k * table[r],
                )
    if profile.status == "stabilized":
        for k in ks[:-1]:
            if k >= profile.k0:
                record(
                    "step",
                    {"k": k},
                    table[k + 1],
                    table[k] + exp,
                    table[k + 1] <= table[k] + exp,
                )
    return {
        "group": A.spec(),
        "instances": instances,
        "passed": all(i["passed"] for i in instances),
    }


def verify_subgroup_relations(A: AbelianGroup, B: AbelianGroup, ks=(1, 2), budget_seconds=None) -> dict:
    """σ-ratio monotonicity and D_k(A) ≤ D_{k·[A:B]}(B) for B ≤ A.

    >>> verify_subgroup_relations(AbelianGroup((4,)), AbelianGroup((2,)), ks=(1,))["passed"]
    True
    """
    if not subgroup_embeddable(B, A):
        raise DomainError(f"{B.spec()} is not realizable as a subgroup of {A.spec()}")
    index = A.order // B.order
    checks = []
    ratio_ok = Fraction(A.exponent, A.order) <= Fraction(B.exponent, B.order)
    checks.append(
        {
            "name": "sigma-ratio",
            "lhs": f"{A.exponent}/{A.order}",
            "rhs": f"{B.exponent}/{B.order}",
            "passed": ratio_ok,
        }
    )
    if ks:
        tableA = davenport_table(A, max(ks), budget_seconds=budget_seconds)
        tableB = davenport_table(B, max(ks) * index, budget_seconds=budget_seconds)
        for k in ks:
            lhs = tableA[k - 1].value_Dk
            rhs = tableB[k * index - 1].value_Dk
            checks.append(
                {
                    "name": "index-inequality",
                    "k": k,
                    "index": index,
                    "lhs": lhs,
                    "rhs": rhs,
                    "passed": lhs <= rhs,
                }
            )
    return {
        "group": A.spec(),
        "subgroup": B.spec(),
        "index": index,
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }
