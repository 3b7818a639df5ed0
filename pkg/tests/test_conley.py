import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from graphmorse.conley import conley_index, euler_characteristic, gf2_rank
from graphmorse.space import GraphSpace, edge, vertex

v1, v2, v3 = vertex(1), vertex(2), vertex(3)
e12, e13, e23 = edge(1, 2), edge(1, 3), edge(2, 3)
X3 = GraphSpace(3)
X5 = GraphSpace(5)


def to_tuple(c):
    return ("v", c.i) if c.is_vertex else ("e", c.i, c.j)


@pytest.mark.parametrize("M, expect", [
    ({v3}, (1, 0)),
    ({e13}, (0, 1)),
    ({v1, e12}, (0, 0)),
    ({v2, e23}, (0, 0)),
    (set(X3.cells), (1, 1)),
    ({v1, v2}, (2, 0)),
    ({v1, v2, e12}, (1, 0)),
])
def test_known_indices(M, expect):
    assert tuple(conley_index(X3, M)) == expect


def test_gf2_rank():
    assert gf2_rank([]) == 0
    assert gf2_rank([0b11, 0b110, 0b101]) == 2
    assert gf2_rank([0b1, 0b10, 0b100]) == 3


def test_rejects_foreign_cells():
    with pytest.raises(ValueError):
        conley_index(X3, {vertex(9)})


@given(st.sets(st.sampled_from(X5.cells)))
def test_euler_identity(M):
    b0, b1 = conley_index(X5, M)
    assert b0 - b1 == euler_characteristic(X5.closure(M)) - euler_characteristic(X5.mouth(M))


@given(st.sets(st.sampled_from(X5.cells)))
def test_rank_bounds(M):
    b0, b1 = conley_index(X5, M)
    assert 0 <= b1 <= sum(c.is_edge for c in M)
    assert 0 <= b0 <= sum(c.is_vertex for c in M)


@given(st.sets(st.sampled_from(X5.cells)))
def test_agrees_with_rational_homology(M):
    assert tuple(conley_index(X5, M)) == oracles.relative_betti({to_tuple(c) for c in M})


@given(st.integers(1, 5), st.integers(1, 5))
def test_transient_block(i, j):
    if i == j:
        return
    assert tuple(conley_index(X5, {vertex(i), edge(i, j)})) == (0, 0)
