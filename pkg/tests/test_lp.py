from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog as scipy_linprog

from strongnash import lp


def test_simple_maximum():
    # max x + y  s.t.  x + 2y <= 4, 3x + y <= 6
    res = lp.linprog([1, 1], [[1, 2], [3, 1]], [4, 6])
    assert res.ok
    assert res.x == (Fraction(8, 5), Fraction(6, 5))
    assert res.value == Fraction(14, 5)


def test_infeasible_and_unbounded():
    assert lp.linprog([1], [[1]], [-1]).status == lp.INFEASIBLE
    assert lp.linprog([1], [[-1]], [0]).status == lp.UNBOUNDED


def test_free_variable_and_equality():
    # max y with y free, y = x - 3, x <= 1  ->  y = -2
    res = lp.linprog([0, 1], [[1, 0]], [1], [[1, -1]], [3], free=[1])
    assert res.ok and res.x == (1, -2) and res.value == -2
    # min y instead: x = 0, y = -3
    res = lp.linprog([0, -1], [[1, 0]], [1], [[1, -1]], [3], free=[1])
    assert res.x == (0, -3)


def test_degenerate_problem_terminates():
    # classic cycling example under the largest-coefficient rule
    c = [Fraction(3, 4), -150, Fraction(1, 50), -6]
    A = [[Fraction(1, 4), -60, Fraction(-1, 25), 9], [Fraction(1, 2), -90, Fraction(-1, 50), 3], [0, 0, 1, 0]]
    res = lp.linprog(c, A, [0, 0, 1])
    assert res.ok and res.value == Fraction(1, 20)


def test_row_length_checked():
    with pytest.raises(ValueError):
        lp.linprog([1, 1], [[1]], [1])


small = st.integers(-4, 4)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4), st.integers(0, 4), st.integers(0, 2), st.data())
def test_matches_scipy(n, m_ub, m_eq, data):
    c = data.draw(st.lists(small, min_size=n, max_size=n))
    A_ub = [data.draw(st.lists(small, min_size=n, max_size=n)) for _ in range(m_ub)]
    b_ub = data.draw(st.lists(small, min_size=m_ub, max_size=m_ub))
    A_eq = [data.draw(st.lists(small, min_size=n, max_size=n)) for _ in range(m_eq)]
    b_eq = data.draw(st.lists(small, min_size=m_eq, max_size=m_eq))
    free = data.draw(st.sets(st.integers(0, n - 1)))
    ours = lp.linprog(c, A_ub, b_ub, A_eq, b_eq, free=free)
    bounds = [(None, None) if j in free else (0, None) for j in range(n)]
    ref = scipy_linprog(
        -np.array(c, float),
        A_ub=np.array(A_ub, float).reshape(m_ub, n) if m_ub else None, b_ub=b_ub or None,
        A_eq=np.array(A_eq, float).reshape(m_eq, n) if m_eq else None, b_eq=b_eq or None,
        bounds=bounds, method="highs",
    )
    status = {0: lp.OPTIMAL, 2: lp.INFEASIBLE, 3: lp.UNBOUNDED}[ref.status]
    assert ours.status == status
    if ours.ok:
        assert abs(float(ours.value) + ref.fun) < 1e-7
        x = ours.x
        for row, b in zip(A_ub, b_ub):
            assert sum(Fraction(a) * v for a, v in zip(row, x)) <= b
        for row, b in zip(A_eq, b_eq):
            assert sum(Fraction(a) * v for a, v in zip(row, x)) == b
        assert all(x[j] >= 0 for j in range(n) if j not in free)
