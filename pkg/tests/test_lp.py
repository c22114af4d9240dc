from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from majorkit import lp
from majorkit.errors import ShapeError
from majorkit.exact import RMatrix

F = Fraction


def test_feasible_simple():
    out = lp.solve_rows([[F(1), F(1)]], [F(1)])
    assert out.feasible
    assert lp.verify_solution([[1, 1]], [1], out.x)


def test_infeasible_with_certificate():
    E, f = [[F(1), F(1)]], [F(-1)]
    out = lp.solve_rows(E, f)
    assert not out.feasible
    assert lp.verify_certificate(E, f, out.certificate)


def test_redundant_equalities():
    E = [[F(1), F(1), F(0)], [F(2), F(2), F(0)], [F(0), F(1), F(1)]]
    out = lp.solve_rows(E, [F(1), F(2), F(1)])
    assert out.feasible and lp.verify_solution(E, [1, 2, 1], out.x)


def test_inconsistent_equalities():
    E = [[F(1), F(0)], [F(1), F(0)]]
    out = lp.solve_rows(E, [F(1), F(2)])
    assert not out.feasible and lp.verify_certificate(E, [1, 2], out.certificate)


def test_system_shape_checked():
    with pytest.raises(ShapeError):
        lp.FeasibilitySystem(RMatrix([[1, 2]]), (1, 2))


def test_bad_certificate_rejected():
    assert not lp.verify_certificate([[1, 1]], [1], [F(1)])


systems = st.integers(1, 4).flatmap(
    lambda k: st.integers(1, 5).flatmap(
        lambda n: st.tuples(
            st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=k, max_size=k),
            st.lists(st.integers(-4, 4), min_size=k, max_size=k),
        )
    )
)


@given(systems)
def test_agrees_with_float_solver_and_certifies(system):
    E = [[F(x) for x in r] for r in system[0]]
    f = [F(x) for x in system[1]]
    out = lp.solve_rows(E, f)
    assert out.feasible == oracles.feasible_float(E, f)
    if out.feasible:
        assert lp.verify_solution(E, f, out.x)
    else:
        assert lp.verify_certificate(E, f, out.certificate)
