import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphmorse.space import Cell, GraphSpace, edge, parse_cell, vertex

v1, v2, v3 = vertex(1), vertex(2), vertex(3)
e12, e13, e23 = edge(1, 2), edge(1, 3), edge(2, 3)
X3 = GraphSpace(3)


def subsets(space):
    return st.sets(st.sampled_from(space.cells))


def test_cell_count():
    for n in range(1, 8):
        assert len(GraphSpace(n)) == n + n * (n - 1) // 2


def test_canonical_order():
    assert sorted([e12, v3, e13, v1]) == [v1, v3, e12, e13]
    assert edge(3, 1) == e13


def test_names_round_trip():
    assert [c.name for c in X3.cells] == ["v1", "v2", "v3", "e1_2", "e1_3", "e2_3"]
    for c in X3.cells:
        assert parse_cell(c.name) == c
    for bad in ("x1", "e2_1", "e1_1", "v"):
        with pytest.raises(ValueError):
            parse_cell(bad)


def test_closure_examples():
    assert X3.closure({e13}) == {v1, v3, e13}
    assert X3.closure({v2}) == {v2}
    assert X3.closure(set()) == set()


def test_mouth_examples():
    assert X3.mouth({v1, e12}) == {v2}
    assert X3.mouth({v3}) == set()
    assert X3.mouth({v1, v2, e12}) == set()
    assert X3.mouth({e13}) == {v1, v3}


def test_out_of_range_rejected():
    with pytest.raises(ValueError):
        X3.closure({vertex(4)})
    with pytest.raises(ValueError):
        X3.is_connected({Cell(1, 1, 5)})


def test_connected_examples():
    assert X3.is_connected({v1, e12})
    assert not X3.is_connected({v1, v3})
    assert X3.is_connected({e12})
    assert X3.is_connected(set())
    assert not X3.is_connected({e12, v3})
    assert X3.is_connected({v1, e12, v2, e23})


def test_locally_closed_examples():
    assert X3.is_locally_closed({v1, e12})
    assert X3.is_locally_closed({v1, v2})


def test_locally_closed_vacuous_exhaustive():
    # brute-force convexity over every chain x <= y <= z confirms the predicate
    cells = X3.cells
    for r in range(len(cells) + 1):
        for A in itertools.combinations(cells, r):
            A = set(A)
            convex = all(y in A for x in A for z in A for y in cells
                         if X3.leq(x, y) and X3.leq(y, z))
            assert convex
            assert X3.is_locally_closed(A)


@given(subsets(GraphSpace(5)), subsets(GraphSpace(5)))
def test_closure_operator(A, B):
    S = GraphSpace(5)
    clA = S.closure(A)
    assert A <= clA
    assert S.closure(clA) == clA
    assert S.closure(A | B) >= clA


@given(subsets(GraphSpace(5)))
def test_mouth_is_vertices(A):
    S = GraphSpace(5)
    assert all(c.is_vertex for c in S.mouth(A))


@given(subsets(GraphSpace(5)))
def test_connected_implies_locally_closed(A):
    S = GraphSpace(5)
    if S.is_connected(A):
        assert S.is_locally_closed(A)


def test_restricted_edges():
    from graphmorse.relation import RelationMatrix

    W = RelationMatrix([[0, 0, 0.4], [0, 0, 0], [0, 0, 0]])
    S = GraphSpace.without_zero_edges(W)
    assert S.edges == (e13,)
    assert len(S) == 4
