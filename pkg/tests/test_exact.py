from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from collapsing_tasep.exact import solve_sparse


def test_small_system():
    rows = [{0: 2, 1: 1}, {0: 1, 1: 3}]
    assert solve_sparse(rows, [3, 5], 2) == [Fraction(4, 5), Fraction(7, 5)]


def test_rational_coefficients():
    rows = [{0: Fraction(1, 3)}, {0: 1, 1: Fraction(-1, 2)}]
    assert solve_sparse(rows, [1, 0], 2) == [3, 6]


def test_singular():
    with pytest.raises(ValueError):
        solve_sparse([{0: 1, 1: 1}, {0: 2, 1: 2}], [1, 2], 2)


@given(st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)
), st.data())
def test_matches_float_solve(matrix, data):
    n = len(matrix)
    a = np.array(matrix, dtype=float)
    if abs(np.linalg.det(a)) < 1e-6:
        return
    b = data.draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n))
    rows = [{j: v for j, v in enumerate(r) if v} for r in matrix]
    x = solve_sparse(rows, b, n)
    for r, rhs in zip(matrix, b):
        assert sum(Fraction(v) * xi for v, xi in zip(r, x)) == rhs
    np.testing.assert_allclose([float(v) for v in x], np.linalg.solve(a, b), rtol=1e-6, atol=1e-8)
