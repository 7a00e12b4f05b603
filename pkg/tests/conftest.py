from fractions import Fraction

import pytest
from hypothesis import strategies as st

from bvmetric import make_space


@st.composite
def spaces(draw, min_size=2, max_size=6, max_num=30, max_den=4):
    """Random valid finite spaces with small rational distances."""
    n = draw(st.integers(min_size, max_size))
    table = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            q = Fraction(draw(st.integers(1, max_num)), draw(st.integers(1, max_den)))
            table[i][j] = table[j][i] = q
    return make_space([f"p{i}" for i in range(n)], table)


@pytest.fixture
def line3():
    return make_space(["0", "1", "2"], [[abs(a - b) for b in range(3)] for a in range(3)])


@pytest.fixture
def spike_space():
    # a and b at distance 1, c and d within 1/100 of everything
    h = Fraction(1, 100)
    return make_space(
        ["a", "b", "c", "d"],
        [[0, 1, h, h], [1, 0, h, h], [h, h, 0, h], [h, h, h, 0]],
    )
