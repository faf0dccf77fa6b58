import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ksgraph.gclie import bracket, circ, differential, insert, mc_residual
from ksgraph.graphcore import EDGE, POINT, Graph, GraphError, GraphSeries, GraphVector, enumerate_basis

SMALL = [g for n in range(1, 4) for l in range(0, 4) for g in enumerate_basis(n, l)]


def vec(g, c=1):
    return GraphVector({g: c})


def test_differential_of_point_is_edge():
    assert differential(vec(POINT)) == vec(EDGE)


def test_differential_of_edge_vanishes():
    assert not differential(vec(EDGE))


def test_insert_point_is_identity_up_to_reattachment():
    g = Graph(3, [(0, 1), (1, 2)])
    # a one-vertex guest just takes the place of v
    assert insert(g, 1, POINT) == GraphVector.from_graph(g)


def test_insert_checks_vertex():
    with pytest.raises(GraphError):
        insert(EDGE, 5, EDGE)


def test_circ_edge_into_edge():
    # inserting an edge into either end of an edge gives 3-vertex trees
    out = circ(vec(EDGE), vec(EDGE))
    assert {g.n for g in out.terms} <= {3}


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.sampled_from(SMALL))
def test_bracket_graded_antisymmetric(a, b):
    va, vb = vec(a), vec(b)
    sign = -1 if (a.degree * b.degree) % 2 else 1
    assert bracket(va, vb) == bracket(vb, va) * (-sign)


TRIPLES = [t for t in itertools.product(SMALL, repeat=3) if sum(g.n for g in t) <= 8]


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(TRIPLES))
def test_jacobi(triple):
    a, b, c = (vec(g) for g in triple)
    da, db = triple[0].degree, triple[1].degree
    lhs = bracket(a, bracket(b, c))
    rhs = bracket(bracket(a, b), c) + bracket(b, bracket(a, c)) * (-1 if da * db % 2 else 1)
    assert lhs == rhs


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_differential_squares_to_zero_small(n):
    for l in range(n - 1, n * (n - 1) // 2 + 1):
        for g in enumerate_basis(n, l):
            assert not differential(differential(vec(g)))


def test_differential_raises_degree_and_keeps_loop_order():
    for g in enumerate_basis(4, 4):
        for h in differential(vec(g)).terms:
            assert h.degree == g.degree + 1
            assert h.loop_order == g.loop_order


def test_mc_residual_of_edge_alone():
    s = GraphSeries({0: vec(EDGE)})
    res = mc_residual(s, 2)
    assert not res[0] and not res[1] and not res[2]
