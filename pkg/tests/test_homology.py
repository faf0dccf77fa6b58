import pytest

from ksgraph.gclie import differential
from ksgraph.graphcore import enumerate_basis
from ksgraph.homology import coordinates, cohomology, matrix_of_differential
from ksgraph.linalg import rank


@pytest.mark.parametrize("n,l,basis,dim", [
    (1, 0, 1, 0),
    (2, 1, 1, 0),
    (3, 2, 1, 0),
    (3, 3, 1, 0),
    (4, 4, 9, 1),
    (4, 5, 6, 1),
    (5, 5, 48, 0),
    (5, 6, 72, 0),
])
def test_cohomology_slices(n, l, basis, dim):
    rep = cohomology(n, l)
    assert rep.dim_basis == basis
    assert rep.dim_cohomology == dim
    assert len(rep.representatives) == dim
    for r in rep.representatives:
        assert not differential(r)


def test_cohomology_report_json():
    data = cohomology(4, 5).to_json()
    assert data["dim"] == 1 and data["degree"] == 1 and data["loop_order"] == 2


def test_matrix_rows_basis_vs_image():
    m_full, src, rows_full = matrix_of_differential(4, 4)
    m_img, _, rows_img = matrix_of_differential(4, 4, rows="image")
    assert rank(m_full) == rank(m_img)
    assert set(rows_img) <= set(rows_full)
    assert len(rows_full) == len(enumerate_basis(5, 5))


def test_threads_do_not_change_result():
    a = cohomology(5, 6, threads=1).to_json()
    b = cohomology(5, 6, threads=2).to_json()
    assert a == b


def test_coordinates():
    basis = enumerate_basis(4, 5)
    rep = cohomology(4, 5).representatives[0]
    x = coordinates(rep, basis)
    assert sum(1 for c in x if c) == len(rep)
