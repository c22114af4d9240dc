from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from majorkit import lp
from majorkit.birkhoff import random_doubly_stochastic
from majorkit.errors import ShapeError, UnsupportedError
from majorkit.exact import RMatrix, is_doubly_stochastic
from majorkit.matrix import (
    FAILS,
    HOLDS,
    NOT_REFUTED,
    REFUTED,
    check_directional,
    check_strong,
    check_strong_equiv,
    check_weak,
    refute_direction,
    strong_system,
    verify_strong_witness,
    verify_weak_witness,
)
from majorkit.vector import check_vector_majorization
from strategies import matrices, matrix_pairs

F = Fraction


def _exact_oracle(A, B):
    return oracles.strong_majorized_exact([list(r) for r in A.rows], [list(r) for r in B.rows])


def test_identity_and_row_swap():
    B = RMatrix([[1, 0], [0, 1]])
    assert check_strong(B, B).holds
    assert check_strong(RMatrix([[0, 1], [1, 0]]), B).holds


def test_averaging_holds_and_reverse_fails():
    B = RMatrix([[2, 0], [0, 2]])
    A = RMatrix([[1, 1], [1, 1]])
    v = check_strong(A, B)
    assert v.status == HOLDS and verify_strong_witness(A, B, v.witness)
    back = check_strong(B, A)
    assert back.status == FAILS and back.reason


def test_column_sum_screen_reason():
    v = check_strong(RMatrix([[1, 0], [0, 0]]), RMatrix([[1, 1], [0, 0]]))
    assert v.status == FAILS and "column" in v.reason


def test_columnwise_screen_refutes():
    # column sums agree but column 1 of A spreads wider than column 1 of B
    A = RMatrix([[2, 0], [-2, 0]])
    B = RMatrix([[1, 0], [-1, 0]])
    assert not check_strong(A, B).holds


def test_shape_mismatch():
    with pytest.raises(ShapeError):
        check_strong(RMatrix([[1]]), RMatrix([[1, 2]]))


@given(matrix_pairs(max_n=3, max_m=3))
def test_random_pairs_match_vertex_oracle(pair):
    A, B = pair
    A = A + RMatrix.outer([1] + [0] * (A.n_rows - 1), [y - x for x, y in zip(A.column_sums(), B.column_sums())])
    expected = _exact_oracle(A, B)
    for method in ("auto", "lp"):
        assert check_strong(A, B, method=method).holds == expected


@given(matrices(), st.integers(1, 3), st.integers(0, 10**6))
def test_mixtures_hold_with_verified_witness(B, k, seed):
    A = random_doubly_stochastic(B.n_rows, k, seed) @ B
    for method in ("auto", "lp"):
        v = check_strong(A, B, method=method)
        assert v.holds and is_doubly_stochastic(v.witness) and v.witness @ B == A


@given(matrix_pairs(max_n=3, max_m=2))
def test_lp_failures_carry_farkas_certificates(pair):
    A, B = pair
    v = check_strong(A, B, method="lp")
    if not v.holds:
        system = strong_system(A, B)
        assert lp.verify_certificate(system.E.rows, system.f, v.certificate)


@given(matrices(m=1))
def test_single_column_reduces_to_vectors(B):
    A = RMatrix([[x] for x in reversed(B.col(0))])
    assert check_strong(A, B).holds
    b = list(B.col(0))
    a = [sum(b) / len(b)] * len(b)
    assert check_strong(RMatrix([[x] for x in a]), B).holds == check_vector_majorization(a, b)


def test_weak_majorization():
    B = RMatrix([[1, 0], [0, 1]])
    A = RMatrix([[1, 0], [1, 0]])
    v = check_weak(A, B)
    assert v.holds and verify_weak_witness(A, B, v.witness)
    assert not check_strong(A, B).holds
    bad = check_weak(RMatrix([[2, 0], [0, 1]]), B)
    assert bad.status == FAILS and "row 1" in bad.reason


@given(matrices(), st.integers(1, 3), st.integers(0, 10**6))
def test_strong_implies_weak(B, k, seed):
    A = random_doubly_stochastic(B.n_rows, k, seed) @ B
    assert check_weak(A, B).holds


def test_directional_refutation_is_exact():
    A = RMatrix([[1, 0], [0, 1]])
    B = RMatrix([[1, 1], [0, 0]])
    v = check_directional(A, B)
    assert v.status == REFUTED and refute_direction(A, B, v.direction)


def test_directional_not_refuted_is_not_holds():
    # Av is majorized by Bv for every v, without strong majorization
    A = RMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    B = A
    assert check_directional(A, B).status == HOLDS
    v = check_directional(A, B, use_strong=False, budget=20)
    assert v.status == NOT_REFUTED and v.trials == 8 + 20


def test_directional_exhaustive_limit():
    A = RMatrix([[0] * 17])
    with pytest.raises(UnsupportedError):
        check_directional(A, A, use_strong=False)


@given(matrices(), st.permutations(range(4)))
def test_equivalence_recovers_permutation(B, perm):
    perm = [p for p in perm if p < B.n_rows]
    A = RMatrix([B.row(p) for p in perm])
    P = check_strong_equiv(A, B)
    assert P is not None and P.to_matrix() @ B == A


def test_equivalence_rejects():
    assert check_strong_equiv(RMatrix([[1], [1]]), RMatrix([[2], [0]])) is None
