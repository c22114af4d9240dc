from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from majorkit.birkhoff import (
    birkhoff_decompose,
    decompose_and_check,
    random_column_stochastic,
    random_distribution,
    random_doubly_stochastic,
    random_zero_sum,
)
from majorkit.errors import PreconditionError
from majorkit.exact import Permutation, RMatrix, is_column_stochastic, is_distribution

F = Fraction


def test_half_j_is_two_permutations():
    half = RMatrix([[F(1, 2)] * 2] * 2)
    dec = birkhoff_decompose(half)
    assert len(dec) == 2 and dec.matrix() == half
    assert {P for _, P in dec.terms} == {Permutation.identity(2), Permutation.transposition(2, 0, 1)}


def test_permutation_matrix_is_one_term():
    P = Permutation([2, 0, 1])
    dec = birkhoff_decompose(P.to_matrix())
    assert dec.terms == ((F(1), P),)


def test_rejects_non_doubly_stochastic():
    with pytest.raises(PreconditionError):
        birkhoff_decompose(RMatrix([[1, 0], [1, 0]]))


@given(st.integers(1, 7), st.integers(1, 12), st.integers(0, 10**6))
def test_decomposition_reconstructs_within_bound(n, k, seed):
    D = random_doubly_stochastic(n, k, seed)
    assert oracles.is_doubly_stochastic([list(r) for r in D.rows])
    dec = birkhoff_decompose(D)
    assert dec.matrix() == D
    assert sum(w for w, _ in dec.terms) == 1 and all(w > 0 for w, _ in dec.terms)
    assert len(dec) <= (n - 1) ** 2 + 1
    assert decompose_and_check(D, dec.terms)


def test_many_terms_are_pruned():
    D = random_doubly_stochastic(3, 20, "prune")
    assert len(birkhoff_decompose(D)) <= 5


@given(st.integers(1, 6), st.integers(1, 4), st.integers(0, 10**6))
def test_generators_land_in_their_domains(n, m, seed):
    assert is_column_stochastic(random_column_stochastic(n, m, seed))
    assert is_distribution(random_distribution(n, seed))
    assert sum(random_zero_sum(n, seed)) == 0


def test_generators_are_deterministic():
    assert random_doubly_stochastic(4, 3, 11) == random_doubly_stochastic(4, 3, 11)
    assert random_doubly_stochastic(4, 3, 11) != random_doubly_stochastic(4, 3, 12)
