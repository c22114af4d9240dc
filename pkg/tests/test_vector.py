from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from majorkit.birkhoff import random_doubly_stochastic
from majorkit.errors import NotMajorizedError, ShapeError
from majorkit.exact import is_distribution, is_doubly_stochastic
from majorkit.vector import (
    check_vector_equiv,
    check_vector_majorization,
    hlp_chain,
    hlp_witness,
    reduce_vector_to_distributions,
)
from strategies import rationals

F = Fraction
same_length_pairs = st.integers(1, 6).flatmap(
    lambda n: st.tuples(st.lists(rationals, min_size=n, max_size=n), st.lists(rationals, min_size=n, max_size=n))
)


def test_textbook_examples():
    assert check_vector_majorization([1, 1, 1], [3, 0, 0])
    assert not check_vector_majorization([3, 0, 0], [1, 1, 1])
    assert not check_vector_majorization([1, 1], [1, 2])


def test_length_mismatch():
    with pytest.raises(ShapeError):
        check_vector_majorization([1], [1, 0])


@given(same_length_pairs)
def test_matches_threshold_oracle(pair):
    a, b = pair
    assert check_vector_majorization(a, b) == oracles.vector_majorized(a, b)


@given(st.lists(rationals, min_size=1, max_size=7), st.integers(1, 4), st.integers(0, 10**6))
def test_hlp_witness_on_mixtures(b, k, seed):
    D = random_doubly_stochastic(len(b), k, seed)
    a = D @ b
    chain = hlp_chain(a, b)
    assert len(chain.chain) <= len(b) - 1
    W = chain.matrix()
    assert is_doubly_stochastic(W) and W @ b == a


def test_hlp_chain_replays_step_by_step():
    chain = hlp_chain([2, 2, 2], [6, 0, 0])
    v = (F(6), F(0), F(0))
    for t in chain.chain:
        assert t.apply(v) == t.to_matrix() @ v
        v = t.apply(v)
    assert v == (F(2), F(2), F(2))
    assert chain.matrix() @ [6, 0, 0] == v


def test_hlp_refuses_non_majorized():
    with pytest.raises(NotMajorizedError):
        hlp_witness([3, 0, 0], [1, 1, 1])


@given(st.lists(rationals, min_size=1, max_size=6), st.permutations(range(6)))
def test_equivalence_finds_the_permutation(b, perm):
    perm = [p for p in perm if p < len(b)]
    a = [b[p] for p in perm]
    P = check_vector_equiv(a, b)
    assert P is not None and P.to_matrix() @ b == tuple(a)


def test_equivalence_rejects_different_multisets():
    assert check_vector_equiv([1, 2], [2, 2]) is None


@given(same_length_pairs)
def test_distribution_reduction_preserves_verdict(pair):
    a, b = pair
    b = list(b)
    b[0] += sum(a) - sum(b)
    red = reduce_vector_to_distributions(a, b)
    assert is_distribution(red.a) and is_distribution(red.b)
    assert check_vector_majorization(red.a, red.b) == check_vector_majorization(a, b)


def test_distribution_reduction_needs_equal_sums():
    with pytest.raises(NotMajorizedError):
        reduce_vector_to_distributions([1, 0], [1, 1])
