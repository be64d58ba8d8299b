from fractions import Fraction as F
from itertools import permutations
from math import prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from e6hodge import linalg


def leibniz(A):
    n = len(A)
    total = 0
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        total += (-1) ** inv * prod(A[i][p[i]] for i in range(n))
    return total


square = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n))


@given(square)
def test_det_matches_leibniz(A):
    assert linalg.det(A) == leibniz(A)
    assert linalg.det([[F(x) for x in r] for r in A]) == leibniz(A)


@given(square)
def test_inverse(A):
    n = len(A)
    if leibniz(A) == 0:
        with pytest.raises(ZeroDivisionError):
            linalg.inverse(A)
        return
    B = linalg.inverse(A)
    assert linalg.matmul(A, B) == [[int(i == j) for j in range(n)] for i in range(n)]


@given(st.lists(st.lists(st.integers(-4, 4), min_size=6, max_size=6), min_size=0, max_size=5))
def test_rank_nullity(A):
    N = linalg.nullspace(A, 6)
    assert (linalg.rank(A) if A else 0) + len(N) == 6
    for v in N:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)
    if N:
        assert linalg.rank(N) == len(N)


def test_transpose_and_matvec():
    A = [[1, 2, 3], [4, 5, 6]]
    assert linalg.transpose(A) == [[1, 4], [2, 5], [3, 6]]
    assert linalg.matvec(A, [1, 0, -1]) == [-2, -2]
