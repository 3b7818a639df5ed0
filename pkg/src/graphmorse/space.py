"""The cell space X = V u E of the complete graph and its face order."""

from __future__ import annotations

import re
from collections import deque
from typing import Iterable, NamedTuple


class Cell(NamedTuple):
    """A vertex ``Cell(0, i, i)`` or an edge ``Cell(1, i, j)`` with ``i < j``.

    Tuple order puts all vertices before all edges, then sorts by index,
    which is the canonical total order used for block identifiers.
    """

    dim: int
    i: int
    j: int

    @property
    def is_vertex(self) -> bool:
        return self.dim == 0

    @property
    def is_edge(self) -> bool:
        return self.dim == 1

    def faces(self) -> tuple["Cell", ...]:
        """Proper faces (endpoints of an edge; none for a vertex)."""
        if self.dim == 0:
            return ()
        return (vertex(self.i), vertex(self.j))

    @property
    def name(self) -> str:
        if self.dim == 0:
            return f"v{self.i}"
        return f"e{self.i}_{self.j}"

    def __str__(self) -> str:
        return self.name


def vertex(i: int) -> Cell:
    return Cell(0, i, i)


def edge(i: int, j: int) -> Cell:
    if i == j:
        raise ValueError("an edge needs two distinct endpoints")
    if i > j:
        i, j = j, i
    return Cell(1, i, j)


_NAME = re.compile(r"^(?:v(\d+)|e(\d+)_(\d+))$")


def parse_cell(name: str) -> Cell:
    m = _NAME.match(name.strip())
    if not m:
        raise ValueError(f"not a cell name: {name!r}")
    if m.group(1) is not None:
        return vertex(int(m.group(1)))
    i, j = int(m.group(2)), int(m.group(3))
    if not i < j:
        raise ValueError(f"edge name must have i < j: {name!r}")
    return Cell(1, i, j)


class GraphSpace:
    """Vertices 1..n and the edges of the complete graph on them.

    ``edges`` restricts the edge set (used by ``--drop-zero-edges``); by
    default every pair i < j is present.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] | None = None):
        if n < 1:
            raise ValueError("a graph space needs at least one vertex")
        self.n = n
        if edges is None:
            edge_cells = [Cell(1, i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        else:
            edge_cells = sorted({edge(i, j) for i, j in edges})
            for e in edge_cells:
                if not 1 <= e.i < e.j <= n:
                    raise ValueError(f"edge {e} out of range for n={n}")
        self.vertices: tuple[Cell, ...] = tuple(vertex(i) for i in range(1, n + 1))
        self.edges: tuple[Cell, ...] = tuple(edge_cells)
        self.cells: tuple[Cell, ...] = self.vertices + self.edges
        self.index: dict[Cell, int] = {c: k for k, c in enumerate(self.cells)}
        self._incident: dict[Cell, list[Cell]] = {v: [] for v in self.vertices}
        for e in self.edges:
            self._incident[vertex(e.i)].append(e)
            self._incident[vertex(e.j)].append(e)

    @classmethod
    def complete(cls, n: int) -> "GraphSpace":
        return cls(n)

    @classmethod
    def without_zero_edges(cls, W) -> "GraphSpace":
        """Drop edges whose weights are zero in both directions."""
        n = W.n
        keep = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)
                if W(i, j) != 0 or W(j, i) != 0]
        return cls(n, keep)

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, cell) -> bool:
        return cell in self.index

    def __eq__(self, other):
        if not isinstance(other, GraphSpace):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"GraphSpace(n={self.n}, cells={len(self.cells)})"

    def check(self, A: Iterable[Cell]) -> frozenset[Cell]:
        A = frozenset(A)
        missing = [c for c in A if c not in self.index]
        if missing:
            raise ValueError(f"cells not in space: {sorted(missing)}")
        return A

    def incident_edges(self, v: Cell) -> list[Cell]:
        return self._incident[v]

    def leq(self, x: Cell, y: Cell) -> bool:
        """Face order: ``x <= y`` iff equal or x is an endpoint of edge y."""
        return x == y or x in y.faces()

    def down(self, y: Cell) -> tuple[Cell, ...]:
        return (y,) + y.faces()

    def closure(self, A: Iterable[Cell]) -> frozenset[Cell]:
        A = self.check(A)
        out = set(A)
        for c in A:
            out.update(c.faces())
        return frozenset(out)

    def mouth(self, A: Iterable[Cell]) -> frozenset[Cell]:
        A = self.check(A)
        return self.closure(A) - A

    def is_connected(self, A: Iterable[Cell]) -> bool:
        """Connectivity of A in the vertex-edge incidence graph restricted to A."""
        A = self.check(A)
        if len(A) <= 1:
            return True
        start = next(iter(A))
        seen = {start}
        queue = deque([start])
        while queue:
            c = queue.popleft()
            nbrs = c.faces() if c.is_edge else self._incident[c]
            for d in nbrs:
                if d in A and d not in seen:
                    seen.add(d)
                    queue.append(d)
        return len(seen) == len(A)

    def is_locally_closed(self, A: Iterable[Cell]) -> bool:
        """Order-convexity: x <= y <= z with x, z in A forces y in A."""
        A = self.check(A)
        for z in A:
            for y in self.down(z):
                if y in A:
                    continue
                if any(x in A for x in self.down(y)):
                    return False
        return True
