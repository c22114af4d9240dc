from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from majorkit.birkhoff import random_doubly_stochastic
from majorkit.errors import PreconditionError, UnsupportedError
from majorkit.exact import RMatrix, is_column_stochastic, is_zero_one
from majorkit.matrix import check_strong
from majorkit.reductions import (
    DIAG,
    SHIFT,
    reduce_diag_scale,
    reduce_shift_normalize,
    theta,
    zero_one_bridge,
)
from strategies import matrices

F = Fraction
A0 = RMatrix([[-1, -2, 4, -6], [1, -4, 2, -6]])
B0 = RMatrix([[3, -6, 0, -6], [-3, 0, 6, -6]])


def m(rows):
    return RMatrix([[F(x) for x in r] for r in rows])


def test_shift_normalize_worked_values():
    A, B, cert = reduce_shift_normalize(A0, B0, lam=6, mu=20)
    assert cert.method == SHIFT and cert.lam == 6 and cert.mu == 20
    assert A == m([["9/20", "11/20", "11/20", "1/2"], ["11/20", "9/20", "9/20", "1/2"]])
    assert B == m([["13/20", "7/20", "7/20", "1/2"], ["7/20", "13/20", "13/20", "1/2"]])


def test_shift_normalize_canonical_parameters():
    # largest column sum after the shift is 18 (third column of B + 6J)
    _, _, cert = reduce_shift_normalize(A0, B0)
    assert (cert.lam, cert.mu) == (6, 18)


def test_column_stochastic_pair_is_a_fixed_point():
    C = m([["1/3", 1], ["2/3", 0]])
    A, B, cert = reduce_shift_normalize(C, C)
    assert (cert.lam, cert.mu, cert.v) == (0, 1, (0, 0))
    assert A == B == C


def test_diag_scale_worked_values():
    A, B, cert = reduce_diag_scale(A0, B0, lam=7)
    assert cert.method == DIAG and cert.D == RMatrix.diag([14, 8, 20, 2])
    assert A == m([["3/7", "5/8", "11/20", "1/2"], ["4/7", "3/8", "9/20", "1/2"]])
    assert B == m([["5/7", "1/8", "7/20", "1/2"], ["2/7", "7/8", "13/20", "1/2"]])


def test_diag_scale_default_avoids_zero_column():
    _, _, cert = reduce_diag_scale(A0, B0)
    assert cert.lam == 7


@pytest.mark.parametrize("kwargs", [{"lam": -1}, {"lam": 0}, {"lam": 6, "mu": 5}, {"lam": 6, "mu": 0}])
def test_shift_normalize_rejects_bad_parameters(kwargs):
    with pytest.raises(PreconditionError):
        reduce_shift_normalize(A0, B0, **kwargs)


def test_bad_anchor():
    with pytest.raises(UnsupportedError):
        reduce_diag_scale(A0, B0, anchor="C")


@st.composite
def equal_sum_pairs(draw):
    B = draw(matrices())
    if draw(st.booleans()):
        A = random_doubly_stochastic(B.n_rows, draw(st.integers(1, 3)), draw(st.integers(0, 10**6))) @ B
    else:
        A = draw(matrices(B.n_rows, B.n_cols))
        fix = [y - x for x, y in zip(A.column_sums(), B.column_sums())]
        A = A + RMatrix.outer([1] + [0] * (A.n_rows - 1), fix)
    return A, B


@given(equal_sum_pairs(), st.sampled_from(["A", "B"]))
def test_reductions_preserve_strong_verdict(pair, anchor):
    A, B = pair
    base = check_strong(A, B).holds
    for reduce in (reduce_shift_normalize, reduce_diag_scale):
        A2, B2, cert = reduce(A, B, anchor=anchor)
        assert is_column_stochastic(B2 if anchor == "B" else A2)
        assert check_strong(A2, B2).holds == base
        assert cert.replay(A, B) == (A2, B2)


def test_theta():
    T = theta(RMatrix([[1, 0, 2], [3, 0, 0]]))
    assert T == m([["1/4", "1/2", 1], ["3/4", "1/2", 0]])
    with pytest.raises(PreconditionError):
        theta(RMatrix([[1], [-1]]))


@given(matrices(elements=st.sampled_from([F(0), F(1)])))
def test_theta_is_column_stochastic_on_zero_one(A):
    assert is_zero_one(A) and is_column_stochastic(theta(A))


def test_zero_one_bridge_agreement():
    A = RMatrix([[1, 0], [0, 1], [0, 0]])
    B = RMatrix([[0, 0], [1, 0], [0, 1]])
    bridge = zero_one_bridge(A, B)
    assert bridge.all_agree() and bridge.strong
    C = RMatrix([[1, 1], [0, 0], [0, 0]])
    assert zero_one_bridge(A, C).decided_agree()
    assert not zero_one_bridge(A, C).strong


def test_zero_one_bridge_preconditions():
    with pytest.raises(PreconditionError):
        zero_one_bridge(RMatrix([[2]]), RMatrix([[2]]))
    with pytest.raises(PreconditionError):
        zero_one_bridge(RMatrix([[1], [0]]), RMatrix([[1], [1]]))
