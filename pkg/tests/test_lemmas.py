from __future__ import annotations

import itertools

import pytest

from zerosumlab import (
    AbelianGroup,
    DomainError,
    Sequence,
    direct_product_witness,
    k_max_naive,
    sequence_sum,
    verify_direct_product_bound,
    zero_sum_with_support,
)

Z2 = AbelianGroup((2,))
Z3 = AbelianGroup((3,))
Z2xZ2 = AbelianGroup((2, 2))


def _support(seq: Sequence) -> set[int]:
    return {elem[0] for elem, _ in seq.items}


# --- prescribed-support zero sums -------------------------------------------

def test_support_lemma_exhaustive_small_primes():
    # every non-empty subset of Z_p^* carries a zero-sum sequence of
    # length <= p using exactly that support
    for p in (3, 5, 7, 11):
        group = AbelianGroup((p,))
        units = range(1, p)
        for size in range(1, p):
            for S in itertools.combinations(units, size):
                seq = zero_sum_with_support(p, S)
                assert seq.group == group
                assert _support(seq) == set(S)
                assert sequence_sum(seq) == group.zero
                assert len(seq) <= p


def test_support_lemma_sampled_p13():
    for S in [(1,), (5, 8), (1, 2, 3, 4), (2, 6, 7, 11, 12), tuple(range(1, 13))]:
        seq = zero_sum_with_support(13, S)
        assert _support(seq) == set(S)
        assert sequence_sum(seq) == seq.group.zero
        assert len(seq) <= 13


def test_support_lemma_zero_sum_support_untouched():
    # {1, 2} sums to 0 mod 3 already, so no multiplicity is raised
    seq = zero_sum_with_support(3, {1, 2})
    assert seq.literal() == "[1,2]"


def test_support_lemma_single_element():
    # the only way to kill a single generator is p copies of it
    assert zero_sum_with_support(5, {2}).literal() == "[2,2,2,2,2]"


def test_support_lemma_raise_is_minimal():
    # the raised multiplicity n_s + 1 uses the smallest available n_s,
    # keeping the total length within p
    seq = zero_sum_with_support(7, {1, 2, 3})
    assert len(seq) <= 7
    raised = [mult for _, mult in seq.items if mult > 1]
    assert len(raised) <= 1


def test_support_lemma_rejects_composite_modulus():
    with pytest.raises(DomainError):
        zero_sum_with_support(6, {1})
    with pytest.raises(DomainError):
        zero_sum_with_support(1, {1})


def test_support_lemma_rejects_bad_support():
    with pytest.raises(DomainError):
        zero_sum_with_support(5, set())
    with pytest.raises(DomainError):
        zero_sum_with_support(5, {0, 1})
    with pytest.raises(DomainError):
        zero_sum_with_support(5, {5})
    with pytest.raises(DomainError):
        zero_sum_with_support(5, {-1})


# --- direct-product witnesses ------------------------------------------------

def test_witness_embeds_both_factors():
    SG = Sequence.from_elements(Z2, [(1,)])
    TH = Sequence.from_elements(Z3, [(1,), (1,)])
    w = direct_product_witness(SG, TH)
    assert w.group.factors == (6,)
    assert len(w) == 3


def test_witness_packing_is_subadditive():
    # blocks of the product split into a G-part and an H-part
    SG = Sequence.from_elements(Z2, [(1,), (1,), (1,)])
    TH = Sequence.from_elements(Z3, [(1,), (2,), (1,)])
    w = direct_product_witness(SG, TH)
    assert k_max_naive(w) <= k_max_naive(SG) + k_max_naive(TH)


def test_witness_with_noncyclic_factor():
    SG = Sequence.from_elements(Z2xZ2, [(1, 0), (0, 1)])
    TH = Sequence.from_elements(Z3, [(1,)])
    w = direct_product_witness(SG, TH)
    assert w.group.order == 12
    assert len(w) == 3
    assert k_max_naive(w) == 0


# --- the product lower bound --------------------------------------------------

def test_product_bound_z2_z2():
    report = verify_direct_product_bound(Z2, Z2, 1, 2)
    assert report["passed"]
    # D_2(Z2 x Z2) = 5 = D_1(Z2) + D_2(Z2) - 1 exactly
    assert report["tight"]
    assert report["lhs_D_r_plus_s_minus_1"] == 5


def test_product_bound_more_pairs():
    for G, H, r, s in [(Z2, Z3, 1, 1), (Z2, Z2, 2, 2), (Z3, Z3, 1, 2)]:
        report = verify_direct_product_bound(G, H, r, s)
        assert report["passed"], (G.spec(), H.spec(), r, s)
        assert report["witness_kmax"] <= r + s - 2


def test_product_bound_witness_length():
    report = verify_direct_product_bound(Z2, Z3, 2, 1)
    w = report["witness"]
    # d_2(Z2) + d_1(Z3) = 3 + 2 letters
    assert len(w.strip("[]").split(",")) == 5


def test_product_bound_rejects_bad_indices():
    with pytest.raises(DomainError):
        verify_direct_product_bound(Z2, Z3, 0, 1)
    with pytest.raises(DomainError):
        verify_direct_product_bound(Z2, Z3, 1, -1)
