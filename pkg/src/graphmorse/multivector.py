"""Graph multivector fields built from a thresholded relation matrix."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .relation import RelationMatrix
from .space import Cell, GraphSpace


class DisjointSet:
    """Union-find over ``0..size-1`` with path halving and union by rank."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        self.parent[y] = x
        if self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        return True

    def groups(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


@dataclass(frozen=True)
class MultivectorField:
    """A partition of the cell space into connected blocks.

    ``blocks`` holds each block as a sorted tuple of cells, and the blocks
    themselves are sorted by their minimal cell, which doubles as the
    block identifier.
    """

    space: GraphSpace
    blocks: tuple[tuple[Cell, ...], ...]
    assignment: dict[Cell, Cell] = field(compare=False, repr=False)

    @classmethod
    def from_blocks(cls, space: GraphSpace, blocks) -> "MultivectorField":
        canon = sorted(tuple(sorted(b)) for b in blocks)
        assignment = {c: b[0] for b in canon for c in b}
        if len(assignment) != sum(len(b) for b in canon) or set(assignment) != set(space.cells):
            raise ValueError("blocks do not partition the cell space")
        return cls(space, tuple(canon), assignment)

    @classmethod
    def singletons(cls, space: GraphSpace) -> "MultivectorField":
        return cls.from_blocks(space, [[c] for c in space.cells])

    @property
    def block_ids(self) -> tuple[Cell, ...]:
        return tuple(b[0] for b in self.blocks)

    def block(self, block_id: Cell) -> tuple[Cell, ...]:
        return self._by_id[block_id]

    @property
    def _by_id(self) -> dict[Cell, tuple[Cell, ...]]:
        cache = self.__dict__.get("_by_id_cache")
        if cache is None:
            cache = {b[0]: b for b in self.blocks}
            object.__setattr__(self, "_by_id_cache", cache)
        return cache

    def block_of(self, cell: Cell) -> Cell:
        return self.assignment[cell]

    def __len__(self) -> int:
        return len(self.blocks)

    def to_json_obj(self) -> list[list[str]]:
        return [[c.name for c in b] for b in self.blocks]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


def build_mvf(space: GraphSpace, W: RelationMatrix, lam: float) -> MultivectorField:
    """Multivector field at threshold ``lam``.

    Every vertex and edge starts as a singleton.  For an edge (v_i, v_j),
    i < j, the vertex v_i joins the edge's block when ``W(i, j) > lam`` and
    v_j joins it when ``W(j, i) > lam``.  Blocks that share a cell are
    united, which the union-find handles as a side effect of each merge.
    """
    if W.n != space.n:
        raise ValueError(f"dimension mismatch: matrix n={W.n}, space n={space.n}")
    index = space.index
    ds = DisjointSet(len(space.cells))
    entries = W.entries
    for e in space.edges:
        i, j = e.i, e.j
        k = index[e]
        if entries[i - 1, j - 1] > lam:
            ds.union(index[space.vertices[i - 1]], k)
        if entries[j - 1, i - 1] > lam:
            ds.union(index[space.vertices[j - 1]], k)
    cells = space.cells
    return MultivectorField.from_blocks(space, [[cells[k] for k in g] for g in ds.groups()])


def refines(A: MultivectorField, B: MultivectorField) -> bool:
    """True iff every block of ``A`` lies inside a single block of ``B``."""
    if A.space != B.space:
        raise ValueError("multivector fields live on different spaces")
    where = B.assignment
    for blk in A.blocks:
        target = where[blk[0]]
        if any(where[c] != target for c in blk[1:]):
            return False
    return True
