"""Sequences (finite multisets) over a finite abelian group and the
block-packing number k_max.

A sequence is stored as sorted (element, multiplicity) runs, so equal
multisets are identical tuples — the encoding doubles as the
memoization key and the canonical total order used everywhere for
deterministic output.

k_max(S) is the largest number of pairwise-disjoint non-empty zero-sum
sub-multisets extractable from S.  The engine recursion uses three exact
reductions: entries equal to 0 each contribute exactly one block (any
block containing 0 splits); every zero-sum block factors into minimal
zero-sum blocks, so packings of minimal blocks suffice; and fixing the
least support element x, an optimal packing either uses no copy of x
(drop one copy) or uses x inside some minimal block containing it.
"""

from __future__ import annotations

import json
import os

from .errors import DomainError, ParseError, StructuralError
from .groups import AbelianGroup

ZSL_CACHE_ENV = "ZSL_CACHE_DIR"
_CACHE_FILE = "zsl_kmax_cache.json"

# k_max memo, shared across all queries: (group factors, items) -> int.
# Values are mathematical facts, so concurrent/idempotent inserts are safe.
_KMAX_MEMO: dict[tuple, int] = {}


class Sequence:
    """Immutable multiset of group elements with run-length storage."""

    __slots__ = ("group", "items", "length")

    def __init__(self, group: AbelianGroup, items=()):
        self.group = group
        norm = []
        for elem, mult in items:
            group.check(elem)
            if mult < 1:
                raise DomainError(f"multiplicity must be >= 1, got {mult} for {elem}")
            norm.append((elem, int(mult)))
        norm.sort()
        for (a, _), (b, _) in zip(norm, norm[1:]):
            if a == b:
                raise DomainError(f"duplicate run for element {a}")
        self.items = tuple(norm)
        self.length = sum(m for _, m in self.items)

    @classmethod
    def from_elements(cls, group: AbelianGroup, elements) -> "Sequence":
        counts: dict = {}
        for x in elements:
            group.check(x)
            counts[x] = counts.get(x, 0) + 1
        return cls(group, counts.items())

    @classmethod
    def empty(cls, group: AbelianGroup) -> "Sequence":
        return cls(group, ())

    # -- multiset plumbing --------------------------------------------------

    def __len__(self):
        return self.length

    def __iter__(self):
        for elem, mult in self.items:
            for _ in range(mult):
                yield elem

    def multiplicity(self, x) -> int:
        for elem, mult in self.items:
            if elem == x:
                return mult
        return 0

    def support(self):
        return tuple(elem for elem, _ in self.items)

    def with_extra(self, x) -> "Sequence":
        return Sequence(self.group, _items_add_one(self.items, self.group.check(x)))

    def __eq__(self, other):
        return (
            isinstance(other, Sequence)
            and self.group == other.group
            and self.items == other.items
        )

    def __hash__(self):
        return hash((self.group.factors, self.items))

    def __lt__(self, other):
        # deterministic total order on same-group sequences: run-length encoding
        return self.items < other.items

    def literal(self) -> str:
        """Round-trippable text form: ``[1,1,2]`` or ``[(1,0),(0,1)]``."""
        if self.group.rank == 1:
            return "[" + ",".join(str(x[0]) for x in self) + "]"
        return "[" + ",".join("(" + ",".join(map(str, x)) + ")" for x in self) + "]"

    def __repr__(self):
        return f"Sequence({self.group.spec()}, {self.literal()})"


# -- items-tuple helpers (run-length encodings, kept sorted) ----------------


def _items_add_one(items, x):
    out = []
    placed = False
    for elem, mult in items:
        if elem == x:
            out.append((elem, mult + 1))
            placed = True
        else:
            out.append((elem, mult))
    if not placed:
        out.append((x, 1))
        out.sort()
    return tuple(out)


def _items_subtract(items, sub):
    taken = dict(sub)
    out = []
    for elem, mult in items:
        t = taken.pop(elem, 0)
        if t > mult:
            raise DomainError(f"cannot remove {t} copies of {elem}, only {mult} present")
        if mult - t:
            out.append((elem, mult - t))
    if taken:
        raise DomainError(f"elements {sorted(taken)} not present")
    return tuple(out)


def _items_length(items):
    return sum(m for _, m in items)


def sequence_sum(S: Sequence):
    """Sum of all entries with multiplicity; the empty sequence sums to 0.

    >>> g = AbelianGroup((3,))
    >>> sequence_sum(Sequence.from_elements(g, [(1,), (2,)]))
    (0,)
    """
    g = S.group
    total = g.zero
    for elem, mult in S.items:
        total = g.add(total, g.scale(mult, elem))
    return total


def concat(S: Sequence, T: Sequence) -> Sequence:
    if S.group != T.group:
        raise StructuralError(
            f"cannot concatenate sequences over {S.group.spec()} and {T.group.spec()}"
        )
    counts = dict(S.items)
    for elem, mult in T.items:
        counts[elem] = counts.get(elem, 0) + mult
    return Sequence(S.group, counts.items())

def divides(T: Sequence, S: Sequence) -> bool:
    """True iff T is a sub-multiset of S."""
    if S.group != T.group:
        raise StructuralError(
            f"cannot compare sequences over {T.group.spec()} and {S.group.spec()}"
        )
    return all(S.multiplicity(elem) >= mult for elem, mult in T.items)


def subtract(S: Sequence, T: Sequence) -> Sequence:
    if S.group != T.group:
        raise StructuralError("sequence subtraction across different groups")
    return Sequence(S.group, _items_subtract(S.items, T.items))


# -- zero-sum sub-multiset enumeration ---------------------------------------


def _zero_sum_subitems(group, items, force_first=False):
    """All non-empty zero-sum sub-multisets of ``items`` as items tuples.

    With force_first, only sub-multisets using at least one copy of the
    first run's element.
    """
    n = len(items)
    results = []
    chosen = [0] * n

    def rec(i, total):
        if i == n:
            if total == group.zero and any(chosen):
                results.append(
                    tuple((items[j][0], chosen[j]) for j in range(n) if chosen[j])
                )
            return
        elem, mult = items[i]
        low = 1 if (force_first and i == 0) else 0
        for c in range(low, mult + 1):
            chosen[i] = c
            rec(i + 1, group.add(total, group.scale(c, elem)))
        chosen[i] = 0

    rec(0, group.zero)
    return results


def _is_minimal_zero_sum(group, items):
    """items is zero-sum; minimal iff no proper non-empty zero-sum sub-multiset."""
    total_len = _items_length(items)
    for sub in _zero_sum_subitems(group, items):
        if _items_length(sub) < total_len:
            return False
    return True


def minimal_zero_sum_subsequences(S: Sequence) -> list[Sequence]:
    """All minimal non-empty zero-sum sub-multisets, in encoding order.

    >>> g = AbelianGroup((3,))
    >>> seqs = minimal_zero_sum_subsequences(Sequence.from_elements(g, [(1,), (2,), (0,)]))
    >>> [s.literal() for s in seqs]
    ['[0]', '[1,2]']
    """
    g = S.group
    found = [
        sub
        for sub in _zero_sum_subitems(g, S.items)
        if _is_minimal_zero_sum(g, sub)
    ]
    found.sort()
    return [Sequence(g, sub) for sub in found]


# -- the k_max engine ---------------------------------------------------------


def _minimal_blocks_with_pivot(group, items):
    """Minimal zero-sum sub-multisets using the first run's element, sorted."""
    blocks = [
        sub
        for sub in _zero_sum_subitems(group, items, force_first=True)
        if _is_minimal_zero_sum(group, sub)
    ]
    blocks.sort()
    return blocks


def _kmax_items(group, items) -> int:
    if not items:
        return 0
    key = (group.factors, items)
    cached = _KMAX_MEMO.get(key)
    if cached is not None:
        return cached
    if items[0][0] == group.zero:
        # zero sorts first; each 0 is its own block and any block containing 0 splits
        val = items[0][1] + _kmax_items(group, items[1:])
    else:
        # drop one copy of the least support element, or use it in a minimal block
        val = _kmax_items(group, _items_subtract(items, ((items[0][0], 1),)))
        for block in _minimal_blocks_with_pivot(group, items):
            v = 1 + _kmax_items(group, _items_subtract(items, block))
            if v > val:
                val = v
    _KMAX_MEMO[key] = val
    return val


class BlockPacking:
    """k disjoint non-empty zero-sum blocks plus the unpacked remainder."""

    __slots__ = ("blocks", "remainder")

    def __init__(self, blocks, remainder: Sequence):
        self.blocks = tuple(sorted(blocks))
        self.remainder = remainder
        for b in self.blocks:
            if len(b) == 0:
                raise DomainError("packing blocks must be non-empty")
            if sequence_sum(b) != b.group.zero:
                raise DomainError(f"packing block {b.literal()} is not zero-sum")

    def verify_covers(self, S: Sequence) -> bool:
        total = self.remainder
        for b in self.blocks:
            total = concat(total, b)
        return total == S

    def __repr__(self):
        inner = ", ".join(b.literal() for b in self.blocks)
        return f"BlockPacking([{inner}], remainder={self.remainder.literal()})"


def k_max(S: Sequence) -> int:
    """Maximum number of pairwise-disjoint non-empty zero-sum blocks in S.

    >>> g = AbelianGroup((3,))
    >>> k_max(Sequence.from_elements(g, [(1,)] * 6))
    2
    >>> k_max(Sequence.from_elements(g, [(1,), (1,)]))
    0
    """
    return _kmax_items(S.group, S.items)


def k_max_with_witness(S: Sequence) -> tuple[int, BlockPacking]:
    """k_max together with an attaining packing (deterministic choice).

    The recursion prefers the lexicographically least usable block at each
    step; the final packing lists blocks in encoding order.
    """
    g = S.group
    blocks = []
    shed = []  # copies no optimal packing of the current rest uses
    items = S.items
    while items:
        best = _kmax_items(g, items)
        if best == 0:
            break
        if items[0][0] == g.zero:
            blocks.append(((g.zero, 1),))
            items = _items_subtract(items, ((g.zero, 1),))
            continue
        chosen = None
        for block in _minimal_blocks_with_pivot(g, items):
            if 1 + _kmax_items(g, _items_subtract(items, block)) == best:
                chosen = block
                break
        if chosen is None:
            # the least element is unused by every optimal packing; it
            # joins the uncovered remainder
            shed.append(items[0][0])
            items = _items_subtract(items, ((items[0][0], 1),))
            continue
        blocks.append(chosen)
        items = _items_subtract(items, chosen)
    remainder = Sequence(g, items)
    for elem in shed:
        remainder = remainder.with_extra(elem)
    packing = BlockPacking([Sequence(g, b) for b in blocks], remainder)
    assert len(packing.blocks) == _kmax_items(g, S.items)
    assert packing.verify_covers(S)
    return len(packing.blocks), packing


def k_max_naive(S: Sequence) -> int:
    """Independent oracle: recursion over arbitrary zero-sum blocks.

    No zero peeling, no minimality restriction, no shared memo — only a
    per-call table so repeated sub-multisets aren't recomputed.
    """
    g = S.group
    seen: dict = {}

    def rec(items):
        if items in seen:
            return seen[items]
        best = 0
        for block in _zero_sum_subitems(g, items):
            v = 1 + rec(_items_subtract(items, block))
            if v > best:
                best = v
        seen[items] = best
        return best

    return rec(S.items)


# -- canonical forms under automorphisms -------------------------------------


def _apply_automorphism(aut, x):
    return aut(x) if callable(aut) else aut[x]


def apply_to_sequence(aut, S: Sequence) -> Sequence:
    return Sequence(
        S.group, ((_apply_automorphism(aut, elem), mult) for elem, mult in S.items)
    )


def canonical_form(S: Sequence, auts) -> Sequence:
    """Lexicographically least automorphism image of S.

    Constant on orbits and idempotent; with auts the full automorphism
    group the result is a canonical orbit representative.

    >>> from .groups import automorphism_group
    >>> g = AbelianGroup((3,))
    >>> S = Sequence.from_elements(g, [(2,), (2,)])
    >>> canonical_form(S, automorphism_group(g)).literal()
    '[1,1]'
    """
    best = None
    for aut in auts:
        mapped = sorted(
            (_apply_automorphism(aut, elem), mult) for elem, mult in S.items
        )
        # merging is unnecessary: automorphisms are injective on elements
        key = tuple(mapped)
        if best is None or key < best:
            best = key
    if best is None:
        return S
    return Sequence(S.group, best)


# -- sequence literals --------------------------------------------------------


def parse_sequence(text: str, group: AbelianGroup) -> Sequence:
    """Parse ``[1,1,2]`` (rank 1) or ``[(1,0),(0,1)]`` (higher rank).

    >>> parse_sequence("[1,1,2]", AbelianGroup((3,))).items
    (((1,), 2), ((2,), 1))
    """
    s = text.replace(" ", "")
    if not s or s[0] != "[":
        raise ParseError("sequence literal must start with '['", 0)
    if s[-1] != "]":
        raise ParseError("sequence literal must end with ']'", len(s) - 1)
    body = s[1:-1]
    if not body:
        return Sequence.empty(group)
    elems = []
    pos = 1
    if group.rank == 1:
        for part in body.split(","):
            if not _is_int(part):
                raise ParseError(f"expected integer, got {part!r}", pos)
            elems.append((int(part),))
            pos += len(part) + 1
    else:
        while pos < len(s) - 1:
            if s[pos] != "(":
                raise ParseError("expected '('", pos)
            end = s.find(")", pos)
            if end == -1:
                raise ParseError("unclosed '('", pos)
            raw = s[pos + 1 : end]
            coords = raw.split(",") if raw else []
            if len(coords) != group.rank or not all(_is_int(c) for c in coords):
                raise ParseError(
                    f"expected {group.rank} integer coordinates", pos + 1
                )
            elems.append(tuple(int(c) for c in coords))
            pos = end + 1
            if pos < len(s) - 1:
                if s[pos] != ",":
                    raise ParseError("expected ',' between tuples", pos)
                pos += 1
    for x in elems:
        group.check(x)
    return Sequence.from_elements(group, elems)


def _is_int(text):
    return bool(text) and (text.lstrip("-").isdigit()) and text.count("-") <= 1


# -- optional on-disk memo spill ---------------------------------------------


def load_kmax_cache(directory: str) -> int:
    """Merge a previously spilled k_max memo; returns entries loaded."""
    path = os.path.join(directory, _CACHE_FILE)
    if not os.path.exists(path):
        return 0
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    loaded = 0
    for factors, items, value in data.get("entries", ()):
        key = (
            tuple(factors),
            tuple((tuple(elem), mult) for elem, mult in items),
        )
        _KMAX_MEMO[key] = value
        loaded += 1
    return loaded


def save_kmax_cache(directory: str) -> int:
    """Spill the k_max memo (values only — they are version-stable facts)."""
    os.makedirs(directory, exist_ok=True)
    entries = [
        [list(factors), [[list(elem), mult] for elem, mult in items], value]
        for (factors, items), value in sorted(_KMAX_MEMO.items())
    ]
    path = os.path.join(directory, _CACHE_FILE)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"schema_version": 1, "entries": entries}, fh)
    return len(entries)
