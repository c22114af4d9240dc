"""Hypothesis strategies for small exact rationals and matrices."""
from fractions import Fraction

from hypothesis import strategies as st

from majorkit.exact import RMatrix

rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def vectors(n):
    return st.lists(rationals, min_size=n, max_size=n)


@st.composite
def matrices(draw, n=None, m=None, elements=rationals):
    n = draw(st.integers(1, 4)) if n is None else n
    m = draw(st.integers(1, 3)) if m is None else m
    return RMatrix(draw(st.lists(st.lists(elements, min_size=m, max_size=m), min_size=n, max_size=n)))


@st.composite
def matrix_pairs(draw, max_n=4, max_m=3):
    n, m = draw(st.integers(1, max_n)), draw(st.integers(1, max_m))
    return draw(matrices(n, m)), draw(matrices(n, m))
