"""Conley indices H_k(cl M, mo M) over GF(2)."""

from __future__ import annotations

from typing import Iterable, NamedTuple

from .space import Cell, GraphSpace


class ConleyIndex(NamedTuple):
    beta0: int
    beta1: int


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank of a GF(2) matrix whose rows are given as integer bitmasks."""
    pivots: dict[int, int] = {}
    rank = 0
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top in pivots:
                r ^= pivots[top]
            else:
                pivots[top] = r
                rank += 1
                break
    return rank


def euler_characteristic(cells: Iterable[Cell]) -> int:
    return sum(1 if c.is_vertex else -1 for c in cells)


def conley_index(space: GraphSpace, M: Iterable[Cell]) -> ConleyIndex:
    """Betti numbers of the relative pair (cl M, mo M).

    The relative complex keeps the edges and vertices of M; the mouth is
    quotiented out, so each edge's boundary is the sum of those endpoints
    that lie in M.
    """
    M = space.check(M)
    if not space.is_locally_closed(M):
        raise ValueError("Conley index requires a locally closed set")
    verts = sorted(c for c in M if c.is_vertex)
    edges = sorted(c for c in M if c.is_edge)
    bit = {v: k for k, v in enumerate(verts)}
    rows = []
    for e in edges:
        mask = 0
        for v in e.faces():
            if v in bit:
                mask |= 1 << bit[v]
        rows.append(mask)
    rank = gf2_rank(rows)
    return ConleyIndex(len(verts) - rank, len(edges) - rank)
