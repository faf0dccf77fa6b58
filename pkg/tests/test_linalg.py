import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ksgraph.linalg import Echelon, Inconsistent, SparseMatrix, dense_rank, kernel, rank, solve


@st.composite
def matrices(draw):
    r = draw(st.integers(0, 7))
    c = draw(st.integers(0, 7))
    density = draw(st.floats(0.1, 0.9))
    rng = random.Random(draw(st.integers(0, 10 ** 6)))
    rows = [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) if rng.random() < density else Fraction(0)
             for _ in range(c)] for _ in range(r)]
    # duplicate a row now and then to force dependencies
    if r > 1 and rng.random() < 0.5:
        rows[-1] = [x * 2 for x in rows[0]]
    return rows


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_rank_matches_dense_oracle(rows):
    m = SparseMatrix.from_dense(rows)
    assert rank(m) == dense_rank(rows)
    assert rank(m.transpose()) == rank(m)


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_kernel_is_kernel_of_full_dimension(rows):
    m = SparseMatrix.from_dense(rows)
    ker = kernel(m)
    assert len(ker) == m.col_count - rank(m)
    for v in ker:
        assert not any(m.apply(v))
    assert dense_rank(ker) == len(ker) if ker else True


@settings(max_examples=200, deadline=None)
@given(matrices(), st.integers(0, 10 ** 6))
def test_solve_consistent_systems(rows, seed):
    m = SparseMatrix.from_dense(rows)
    rng = random.Random(seed)
    x0 = [Fraction(rng.randint(-4, 4)) for _ in range(m.col_count)]
    b = m.apply(x0)
    x = solve(m, b)
    assert m.apply(x) == b


def test_inconsistent_system_raises():
    m = SparseMatrix.from_dense([[1, 1], [2, 2]])
    with pytest.raises(Inconsistent):
        solve(m, [1, 3])


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_echelon_rank_agrees(rows):
    e = Echelon()
    for row in rows:
        e.add({j: v for j, v in enumerate(row) if v})
    assert e.rank == dense_rank(rows)


def test_text_round_trip():
    m = SparseMatrix(3, 2, [(0, 1, Fraction(-1, 2)), (2, 0, 5)])
    assert SparseMatrix.from_text(m.to_text()) == m
    assert m.nnz == 2
